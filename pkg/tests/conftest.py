import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lcscheck.fixtures import load_builtin  # noqa: E402


@pytest.fixture(scope="session")
def fx():
    return load_builtin("lcs3-corrected-phi")


@pytest.fixture(scope="session")
def paper_fx():
    return load_builtin("lcs3-paper-phi")


@pytest.fixture(scope="session")
def flat_fx():
    return load_builtin("lcs3-flat-negative")

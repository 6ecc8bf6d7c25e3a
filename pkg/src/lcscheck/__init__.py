"""Exact tensor calculus for frame-defined Lorentzian manifolds.

The layers, bottom up: :mod:`symexpr` (rational functions over Q),
:mod:`manifold` (charts, frames, metrics, fields), :mod:`connection`
(Levi-Civita connection and derivatives), :mod:`curvature`, :mod:`lcs`
(structure axioms, soliton residuals, theorem suite), :mod:`fixtures`,
:mod:`deffile` and :mod:`cli`.
"""

from .symexpr import Expr, Indeterminate, Kind, ParseError, coordinates, parameters, parse
from .report import Check, Status, VerificationReport

__all__ = [
    "Check",
    "Expr",
    "Indeterminate",
    "Kind",
    "ParseError",
    "Status",
    "VerificationReport",
    "coordinates",
    "parameters",
    "parse",
]
__version__ = "0.1.0"

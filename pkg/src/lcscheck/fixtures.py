"""Built-in manifolds and the step that turns a :class:`Definition` into geometry.

The four built-ins live on the 3-dimensional chart (x, y, z) with z != 0
(the domain restriction is metadata only):

``lcs3-corrected-phi``
    frame e_i = z d/dx_i, g = diag(1, 1, -1), xi = e3, alpha = -1, rho = 0 and
    phi = (1/alpha) nabla xi, which fixes e1 and e2 and kills e3.
``lcs3-paper-phi``
    the same manifold with phi swapping e1 and e2.
``lcs3-flat-negative``
    flat R^3 with the Euclidean metric and xi = d/dz, so g(xi, xi) = +1.
``lcs3-degenerate-frame``
    e3 = z d/dx + z d/dy lies in the span of e1 and e2; building it fails.
"""

from __future__ import annotations

from dataclasses import dataclass

from .connection import ConnectionCoeffs, koszul
from .curvature import CurvatureBundle, curvature_bundle
from .deffile import Definition, dump
from .lcs import LcsStructure, SolitonCandidate
from .manifold import Chart, EndoField, FrameField, MetricSpec, OneForm, VectorField
from .symexpr import Expr

__all__ = ["FIXTURE_IDS", "Fixture", "UnknownFixtureError", "build", "definition", "load_builtin"]


class UnknownFixtureError(KeyError):
    def __str__(self) -> str:
        return f"unknown fixture {self.args[0]!r}; choose one of {', '.join(FIXTURE_IDS)}"


@dataclass(frozen=True, eq=False)
class Fixture:
    id: str
    definition: Definition
    chart: Chart
    frame: FrameField
    metric: MetricSpec
    conn: ConnectionCoeffs
    bundle: CurvatureBundle
    structure: LcsStructure
    candidate: SolitonCandidate | None

    @property
    def n(self) -> int:
        return self.chart.dim

    def to_text(self) -> str:
        return dump(self.definition)


def build(d: Definition, id: str = "input") -> Fixture:
    """Validate ``d`` and compute its connection and curvature.

    Raises :class:`~lcscheck.manifold.DegenerateError` for a singular frame or
    metric and :class:`~lcscheck.lcs.StructureError` for alpha identically zero.
    """
    chart = Chart.from_names(*d.coords)
    frame = FrameField(chart, [list(r) for r in d.frame])
    metric = MetricSpec.from_upper(d.n, d.metric)
    phi = EndoField.from_columns(d.phi_columns())
    eta = OneForm(d.eta) if d.eta is not None else None
    structure = LcsStructure.build(metric, VectorField(d.xi), phi, d.alpha, d.rho, eta)
    conn = koszul(metric, frame)
    bundle = curvature_bundle(conn)
    candidate = None
    if d.has_candidate:
        lam = d.lam if d.lam is not None else bundle.scalar
        if d.v is not None:
            candidate = SolitonCandidate(VectorField(d.v), lam, d.b)
        elif d.b is not None:
            candidate = SolitonCandidate.collinear(structure, d.b, lam)
        else:
            candidate = SolitonCandidate(structure.xi, lam)
    return Fixture(id, d, chart, frame, metric, conn, bundle, structure, candidate)


def _e(*vals) -> tuple[Expr, ...]:
    return tuple(Expr(v) for v in vals)


_z = Expr.symbol("z")
_SCALED = (_e(_z, 0, 0), _e(0, _z, 0), _e(0, 0, _z))
_STD = (_e(1, 0, 0), _e(0, 1, 0), _e(0, 0, 1))
_LORENTZ = _e(1, 0, 0, 1, 0, -1)
_EUCLID = _e(1, 0, 0, 1, 0, 1)
_PHI_DIAG = _e(1, 0, 0, 0, 1, 0, 0, 0, 0)
_PHI_SWAP = _e(0, 1, 0, 1, 0, 0, 0, 0, 0)
_E3 = _e(0, 0, 1)

_DEFINITIONS = {
    "lcs3-corrected-phi": Definition(
        ("x", "y", "z"), _SCALED, _LORENTZ, _E3, Expr(-1), Expr(0), _PHI_DIAG,
        comment=("3-dimensional (LCS) manifold on z != 0, phi = (1/alpha) nabla xi",),
    ),
    "lcs3-paper-phi": Definition(
        ("x", "y", "z"), _SCALED, _LORENTZ, _E3, Expr(-1), Expr(0), _PHI_SWAP,
        comment=("3-dimensional (LCS) manifold on z != 0, phi swaps e1 and e2",),
    ),
    "lcs3-flat-negative": Definition(
        ("x", "y", "z"), _STD, _EUCLID, _E3, Expr(1), Expr(0), _PHI_DIAG,
        comment=("flat Euclidean R^3 with xi = d/dz, which is spacelike",),
    ),
    "lcs3-degenerate-frame": Definition(
        ("x", "y", "z"), (_SCALED[0], _SCALED[1], _e(_z, _z, 0)), _LORENTZ, _E3, Expr(-1), Expr(0), _PHI_DIAG,
        comment=("e3 = z d/dx + z d/dy is not independent of e1 and e2",),
    ),
}

FIXTURE_IDS: tuple[str, ...] = tuple(sorted(_DEFINITIONS))


def definition(id: str) -> Definition:
    try:
        return _DEFINITIONS[id]
    except KeyError:
        raise UnknownFixtureError(id) from None


def load_builtin(id: str) -> Fixture:
    return build(definition(id), id)

"""Lorentzian concircular structures, Yamabe soliton residuals and the theorem suite.

Every check reduces a displayed relation to residual components that are
exact :class:`~lcscheck.symexpr.Expr` values; a check passes iff they are
all canonically zero.  Nothing is sampled numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .connection import (
    ConnectionCoeffs,
    cov_deriv_02,
    cov_deriv_11,
    cov_deriv_oneform,
    cov_deriv_vec,
    d_oneform,
    lie_deriv_endo,
    lie_deriv_metric,
    lie_deriv_oneform,
)
from .curvature import (
    CurvatureBundle,
    apply_curvature,
    bilinear,
    concircular,
    conharmonic,
    curvature_operator,
    endo_action_on_02,
    first_slot_trace,
    projective,
    riemann_from_coefficients,
    s_wedge_scalar,
    w2,
)
from .connection import metricity_residuals, torsion_residuals
from .manifold import ZERO, EndoField, MetricSpec, OneForm, VectorField, frozen, inner, object_array
from .report import Check, VerificationReport, make_check, na_check
from .symexpr import Expr, ExprError

__all__ = [
    "LambdaSolution",
    "LcsStructure",
    "SolitonCandidate",
    "StructureError",
    "check_axioms",
    "check_curvature",
    "check_derived_identities",
    "check_yamabe_soliton",
    "classify",
    "solve_lambda",
    "theorem_suite",
]

LAMBDA = "lambda"


class StructureError(ValueError):
    """The structure data is rejected before any check runs."""


def _e(i: int) -> str:
    return f"e{i + 1}"


def _args(*idx: int) -> str:
    return "(" + ",".join(_e(i) for i in idx) + ")"


def _vec(label: str, v: VectorField) -> Iterator[tuple[str, Expr]]:
    for l, c in enumerate(v):
        yield f"{label}[{_e(l)}]", c


def _pairs(n: int, symmetric: bool = False):
    for i in range(n):
        for j in range(i if symmetric else 0, n):
            yield i, j


def _tensor02(T: np.ndarray, prefix: str = "", symmetric: bool = False) -> Iterator[tuple[str, Expr]]:
    for i, j in _pairs(T.shape[0], symmetric):
        yield f"{prefix}{_args(i, j)}", T[i, j]


def _sub(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    out = object_array(a.shape)
    for idx in np.ndindex(*a.shape):
        out[idx] = a[idx] - b[idx]
    return out


def _scale(f, a: np.ndarray) -> np.ndarray:
    f = Expr(f)
    out = object_array(a.shape)
    for idx in np.ndindex(*a.shape):
        out[idx] = f * a[idx]
    return out


@dataclass(frozen=True, eq=False)
class LcsStructure:
    """(xi, eta, phi, alpha, rho) with eta always derived as g(., xi)."""

    xi: VectorField
    eta: OneForm
    phi: EndoField
    alpha: Expr
    rho: Expr
    supplied_eta: OneForm | None = None

    @classmethod
    def build(cls, g: MetricSpec, xi: VectorField, phi: EndoField, alpha, rho,
              eta: OneForm | None = None) -> "LcsStructure":
        alpha, rho = Expr(alpha), Expr(rho)
        if alpha.is_zero():
            raise StructureError("alpha is identically zero")
        n = g.n
        if len(xi) != n or phi.n != n:
            raise StructureError("structure dimensions do not match the metric")
        if eta is not None and len(eta) != n:
            raise StructureError("supplied eta has the wrong number of components")
        return cls(xi, g.lower(xi), phi, alpha, rho, eta)

    @property
    def n(self) -> int:
        return len(self.xi)


@dataclass(frozen=True)
class SolitonCandidate:
    """Potential field V, soliton constant lambda and optional collinearity factor b (V = b xi)."""

    v: VectorField
    lam: Expr
    b: Expr | None = None

    @classmethod
    def collinear(cls, structure: LcsStructure, b, lam) -> "SolitonCandidate":
        b = Expr(b)
        return cls(b * structure.xi, Expr(lam), b)


# ---------------------------------------------------------------------------
# structure axioms


def check_axioms(structure: LcsStructure, g: MetricSpec, conn: ConnectionCoeffs) -> VerificationReport:
    n = g.n
    frame = conn.frame
    e = frame.basis
    xi, eta, phi, alpha, rho = structure.xi, structure.eta, structure.phi, structure.alpha, structure.rho
    nabla_xi = [cov_deriv_vec(conn, e[i], xi) for i in range(n)]
    checks: list[Check] = []

    def phi_algebra():
        for j in range(n):
            yield from _vec(f"phi^2{_args(j)}", phi(phi(e[j])) - e[j] - eta[j] * xi)
        yield "eta(xi)", eta(xi) + 1
        yield from _vec("phi(xi)", phi(xi))
        for j in range(n):
            yield f"eta(phi{_args(j)})", eta(phi(e[j]))

    checks.append(make_check(
        "ax.1.phi-algebra",
        "Eq (2.1): phi^2 = I + eta(x)xi, eta(xi) = -1, phi xi = 0, eta o phi = 0",
        phi_algebra(),
    ))

    def phi_metric():
        for i, j in _pairs(n, symmetric=True):
            yield f"g(phi,phi){_args(i, j)}", inner(g, phi(e[i]), phi(e[j])) - g.g[i, j] - eta[i] * eta[j]
        for i, j in _pairs(n):
            yield f"g(phi.,.){_args(i, j)}", inner(g, phi(e[i]), e[j]) - inner(g, e[i], phi(e[j]))

    checks.append(make_check(
        "ax.2.phi-metric",
        "Eq (2.2): g(phi X, phi Y) = g(X,Y) + eta(X)eta(Y), g(phi X, Y) = g(X, phi Y)",
        phi_metric(),
    ))

    def nabla_phi():
        for i in range(n):
            dphi = cov_deriv_11(conn, phi, e[i])
            for j in range(n):
                expected = alpha * ((g.g[i, j] + 2 * eta[i] * eta[j]) * xi + eta[j] * e[i])
                yield from _vec(_args(i, j), dphi.column(j) - expected)

    checks.append(make_check(
        "ax.3.nabla-phi",
        "Eq (2.3): (nabla_X phi)Y = alpha[g(X,Y)xi + 2 eta(X)eta(Y)xi + eta(Y)X]",
        nabla_phi(),
    ))

    def phi_from_xi():
        inv_alpha = 1 / alpha
        for i in range(n):
            yield from _vec(_args(i), phi(e[i]) - inv_alpha * nabla_xi[i])

    checks.append(make_check("ax.4.phi-from-nabla-xi", "Eq (2.4): phi X = (1/alpha) nabla_X xi", phi_from_xi()))

    def concircular_xi():
        for i in range(n):
            yield from _vec(_args(i), nabla_xi[i] - alpha * (e[i] + eta[i] * xi))

    checks.append(make_check(
        "ax.5.concircular", "Sec. 2: nabla xi = alpha(I + eta(x)xi)", concircular_xi()
    ))
    checks.append(make_check(
        "ax.6.unit-timelike", "Sec. 2: g(xi, xi) = -1", [("g(xi,xi)+1", inner(g, xi, xi) + 1)]
    ))
    checks.append(make_check(
        "ax.7.d-alpha",
        "Sec. 2: nabla_X alpha = d alpha(X) = rho eta(X)",
        ((_args(i), frame.derivative(i, alpha) - rho * eta[i]) for i in range(n)),
    ))

    def nabla_xi_xi():
        for i in range(n):
            yield f"eta(nabla xi){_args(i)}", eta(nabla_xi[i])
        yield from _vec("nabla_xi xi", cov_deriv_vec(conn, xi, xi))

    checks.append(make_check("ax.8.nabla-xi-xi", "Eq (2.8): eta(nabla_X xi) = 0, nabla_xi xi = 0", nabla_xi_xi()))

    if structure.supplied_eta is not None:
        checks.append(make_check(
            "ax.9.eta-supplied",
            "Sec. 2: g(X, xi) = eta(X)",
            ((_args(i), structure.supplied_eta[i] - eta[i]) for i in range(n)),
        ))

    eta_xi = eta(xi)
    rho_derived = frame.apply(xi, alpha) / eta_xi if not eta_xi.is_zero() else None
    notes = (
        ("alpha-nonzero", "checked as not identically zero (weaker than nowhere zero)"),
        ("rho-derived", "-" if rho_derived is None else str(rho_derived)),
    )
    return VerificationReport(tuple(checks), notes)


# ---------------------------------------------------------------------------
# consequences of the axioms

_IDENTITY_LINES = (
    ("id.1.curvature", "Eq (2.9): R(X,Y)Z = (alpha^2 - rho)[g(Y,Z)X - g(X,Z)Y]"),
    ("id.2.curvature-xi", "Eq (2.10): R(X,Y)xi = (alpha^2 - rho)[eta(Y)X - eta(X)Y], R(xi,X)Y = (alpha^2 - rho)[g(X,Y)xi - eta(Y)X]"),
    ("id.3.eta-curvature", "Eq (2.11): eta(R(X,Y)Z) = (alpha^2 - rho)[eta(X)g(Y,Z) - eta(Y)g(X,Z)], eta(R(X,Y)xi) = 0"),
    ("id.4.ricci", "Eq (2.12): S(X,Y) = (alpha^2 - rho)(n - 1)g(X,Y)"),
    ("id.5.scalar", "Eq (2.13): r = n(n - 1)(alpha^2 - rho)"),
    ("id.6.nabla-eta", "Eq (2.14): nabla eta = alpha(g + eta(x)eta), nabla_xi eta = 0"),
    ("id.7.lie-xi", "Eq (2.15): L_xi phi = 0, L_xi eta = 0, L_xi g = 2 nabla eta = 2 alpha(g + eta(x)eta)"),
)


def check_derived_identities(structure: LcsStructure, g: MetricSpec, conn: ConnectionCoeffs,
                             bundle: CurvatureBundle) -> VerificationReport:
    n = g.n
    xi, eta, phi, alpha, rho = structure.xi, structure.eta, structure.phi, structure.alpha, structure.rho
    if inner(g, xi, xi) != -1:
        reason = "xi is not a unit timelike field (g(xi,xi) != -1)"
        return VerificationReport(tuple(na_check(i, ref, reason) for i, ref in _IDENTITY_LINES))

    frame = conn.frame
    e = frame.basis
    R = bundle.riemann
    k = alpha * alpha - rho
    refs = dict(_IDENTITY_LINES)
    checks = []

    def curvature():
        for i in range(n):
            for j in range(n):
                for m in range(n):
                    expected = k * (g.g[j, m] * e[i] - g.g[i, m] * e[j])
                    yield from _vec(_args(i, j, m), VectorField(R[i, j, m, :]) - expected)

    checks.append(make_check("id.1.curvature", refs["id.1.curvature"], curvature()))

    def curvature_xi():
        for i, j in _pairs(n):
            lhs = apply_curvature(R, e[i], e[j], xi)
            yield from _vec(f"R{_args(i, j)}xi", lhs - k * (eta[j] * e[i] - eta[i] * e[j]))
        for i, j in _pairs(n):
            lhs = apply_curvature(R, xi, e[i], e[j])
            yield from _vec(f"R(xi,{_e(i)}){_e(j)}", lhs - k * (g.g[i, j] * xi - eta[j] * e[i]))

    checks.append(make_check("id.2.curvature-xi", refs["id.2.curvature-xi"], curvature_xi()))

    def eta_curvature():
        for i in range(n):
            for j in range(n):
                for m in range(n):
                    lhs = eta(VectorField(R[i, j, m, :]))
                    yield f"eta(R){_args(i, j, m)}", lhs - k * (eta[i] * g.g[j, m] - eta[j] * g.g[i, m])
        for i, j in _pairs(n):
            yield f"eta(R{_args(i, j)}xi)", eta(apply_curvature(R, e[i], e[j], xi))

    checks.append(make_check("id.3.eta-curvature", refs["id.3.eta-curvature"], eta_curvature()))
    checks.append(make_check(
        "id.4.ricci", refs["id.4.ricci"],
        _tensor02(_sub(bundle.ricci, _scale(k * (n - 1), g.g))),
    ))
    checks.append(make_check(
        "id.5.scalar", refs["id.5.scalar"], [("r", bundle.scalar - n * (n - 1) * k)]
    ))

    nabla_eta = [cov_deriv_oneform(conn, eta, e[i]) for i in range(n)]

    def nabla_eta_lines():
        for i, j in _pairs(n):
            yield f"nabla eta{_args(i, j)}", nabla_eta[i][j] - alpha * (g.g[i, j] + eta[i] * eta[j])
        d_xi = cov_deriv_oneform(conn, eta, xi)
        for j in range(n):
            yield f"nabla_xi eta{_args(j)}", d_xi[j]

    checks.append(make_check("id.6.nabla-eta", refs["id.6.nabla-eta"], nabla_eta_lines()))

    def lie_xi():
        lphi = lie_deriv_endo(frame, xi, phi)
        for j in range(n):
            yield from _vec(f"L_xi phi{_args(j)}", lphi.column(j))
        leta = lie_deriv_oneform(frame, xi, eta)
        for j in range(n):
            yield f"L_xi eta{_args(j)}", leta[j]
        lg = lie_deriv_metric(conn, g, xi)
        for i, j in _pairs(n, symmetric=True):
            yield f"L_xi g{_args(i, j)}", lg[i, j] - 2 * alpha * (g.g[i, j] + eta[i] * eta[j])
        for i, j in _pairs(n):
            yield f"L_xi g - 2 nabla eta{_args(i, j)}", lg[i, j] - 2 * nabla_eta[i][j]

    checks.append(make_check("id.7.lie-xi", refs["id.7.lie-xi"], lie_xi()))
    return VerificationReport(tuple(checks))


# ---------------------------------------------------------------------------
# curvature invariants


def check_curvature(conn: ConnectionCoeffs, bundle: CurvatureBundle) -> VerificationReport:
    """Structural identities of the connection and every curvature tensor, plus value notes."""
    n = conn.n
    g = bundle.metric
    e = conn.frame.basis
    R = bundle.riemann
    S = bundle.ricci
    checks = []

    def torsion():
        for (i, j), t in torsion_residuals(conn):
            yield from _vec(_args(i, j), t)

    checks.append(make_check("cv.01.torsion-free", "Sec. 2: nabla is the Levi-Civita connection (torsion-free)", torsion()))
    checks.append(make_check(
        "cv.02.metric-compatible", "Sec. 2: nabla is the Levi-Civita connection (nabla g = 0)",
        ((_args(*idx), r) for idx, r in metricity_residuals(conn)),
    ))
    R2 = riemann_from_coefficients(conn)
    checks.append(make_check(
        "cv.03.riemann-two-paths", "Eq (1.3): R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z",
        ((_args(i, j, k) + f"[{_e(l)}]", R[i, j, k, l] - R2[i, j, k, l]) for i, j, k, l in np.ndindex(*R.shape)),
    ))
    checks.append(make_check(
        "cv.04.riemann-antisymmetric", "Eq (1.3): R(X,Y) = -R(Y,X)",
        ((_args(i, j, k) + f"[{_e(l)}]", R[i, j, k, l] + R[j, i, k, l]) for i, j, k, l in np.ndindex(*R.shape) if i <= j),
    ))

    def bianchi():
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    v = VectorField(R[i, j, k, :]) + VectorField(R[j, k, i, :]) + VectorField(R[k, i, j, :])
                    yield from _vec(_args(i, j, k), v)

    checks.append(make_check("cv.05.first-bianchi", "Eq (1.3): R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0", bianchi()))

    low = object_array((n, n, n, n))
    for i, j, k, l in np.ndindex(n, n, n, n):
        low[i, j, k, l] = inner(g, VectorField(R[i, j, k, :]), e[l])
    checks.append(make_check(
        "cv.06.riemann-skew-last-pair", "Eq (1.3): g(R(X,Y)Z,W) = -g(R(X,Y)W,Z)",
        ((_args(i, j, k, l), low[i, j, k, l] + low[i, j, l, k]) for i, j, k, l in np.ndindex(n, n, n, n)),
    ))
    checks.append(make_check(
        "cv.07.riemann-pair-symmetry", "Eq (1.3): g(R(X,Y)Z,W) = g(R(Z,W)X,Y)",
        ((_args(i, j, k, l), low[i, j, k, l] - low[k, l, i, j]) for i, j, k, l in np.ndindex(n, n, n, n)),
    ))
    checks.append(make_check(
        "cv.08.ricci-symmetric", "Sec. 1: S is the Ricci tensor (symmetric)",
        ((_args(i, j), S[i, j] - S[j, i]) for i, j in _pairs(n)),
    ))
    checks.append(make_check(
        "cv.09.ricci-operator", "Sec. 1: S(X,Y) = g(QX,Y)",
        ((_args(i, j), S[i, j] - inner(g, bundle.q(e[i]), e[j])) for i, j in _pairs(n)),
    ))
    checks.append(make_check(
        "cv.10.scalar-trace", "Sec. 1: r = tr(S)",
        [("r - tr(Q)", bundle.scalar - sum((bundle.q_op[i, i] for i in range(n)), ZERO))],
    ))
    trP = first_slot_trace(projective(bundle))
    checks.append(make_check("cv.11.projective-trace", "Eq (1.5): trace of P over its first slot is 0", _tensor02(trP)))
    trC = first_slot_trace(concircular(bundle))
    checks.append(make_check(
        "cv.12.concircular-trace", "Eq (1.6): trace of C over its first slot is S - (r/n)g",
        _tensor02(_sub(trC, _sub(S, _scale(bundle.scalar / n, g.g)))),
    ))
    if n >= 3:
        trH = first_slot_trace(conharmonic(bundle))
        checks.append(make_check(
            "cv.13.conharmonic-trace", "Eq (1.4): trace of H over its first slot is -(r/(n-2))g",
            _tensor02(_sub(trH, _scale(-bundle.scalar / (n - 2), g.g))),
        ))
    else:
        checks.append(na_check("cv.13.conharmonic-trace", "Eq (1.4): trace of H over its first slot is -(r/(n-2))g",
                               "conharmonic tensor needs n >= 3"))

    notes = []
    for i in range(n):
        for j in range(i + 1, n):
            notes.append((f"bracket{_args(i, j)}", _fmt_vec(conn.frame.structure[i][j])))
    for i in range(n):
        for j in range(n):
            notes.append((f"nabla_{_e(i)} {_e(j)}", _fmt_vec(conn.nabla_basis(i, j))))
    for i, j in _pairs(n, symmetric=True):
        notes.append((f"S{_args(i, j)}", str(S[i, j])))
    notes.append(("r", str(bundle.scalar)))
    return VerificationReport(tuple(checks), tuple(notes))


def _fmt_vec(v: VectorField) -> str:
    return "[" + ", ".join(str(c) for c in v) + "]"


# ---------------------------------------------------------------------------
# Yamabe soliton


@dataclass(frozen=True)
class LambdaSolution:
    """Outcome of solving the soliton residuals for lambda.

    ``kind`` is one of ``"none"``, ``"any"``, ``"unique"`` or ``"undetermined"``.
    """

    kind: str
    value: Expr | None = None

    def __str__(self) -> str:
        if self.kind == "unique":
            return f"{{{self.value}}}"
        return self.kind


def solve_lambda(residuals: list[Expr], name: str, coordinates: frozenset[str]) -> LambdaSolution:
    """Values of the constant ``name`` that annihilate every residual.

    Only components at most linear in ``name`` are solved; a solution that
    depends on a coordinate is not a constant and is rejected.
    """
    nonzero = [r for r in residuals if not r.is_zero()]
    if not nonzero:
        return LambdaSolution("any")
    candidate = None
    nonlinear = False
    for r in nonzero:
        try:
            coeffs = r.numerator().coefficients(name)
        except ExprError:
            nonlinear = True
            continue
        if name in r.denominator().free_symbols:
            nonlinear = True
            continue
        deg = max(coeffs)
        if deg == 0:
            return LambdaSolution("none")
        if deg > 1:
            nonlinear = True
            continue
        value = -coeffs.get(0, ZERO) / coeffs[1]
        if value.free_symbols & coordinates:
            return LambdaSolution("none")
        if candidate is None:
            candidate = value
        elif candidate != value:
            return LambdaSolution("none")
    if candidate is None:
        return LambdaSolution("undetermined") if nonlinear else LambdaSolution("none")
    if all(r.subs({name: candidate}).is_zero() for r in nonzero):
        return LambdaSolution("unique", candidate)
    return LambdaSolution("none")


def classify(lam: Expr) -> str:
    if not lam.is_constant():
        return "unclassified"
    v = lam.constant_value()
    if v < 0:
        return "expanding"
    if v == 0:
        return "steady"
    return "shrinking"


def soliton_residual(V: VectorField, lam, g: MetricSpec, conn: ConnectionCoeffs, r: Expr) -> np.ndarray:
    """(1/2) L_V g - (r - lambda) g on all frame pairs."""
    lg = lie_deriv_metric(conn, g, V)
    return frozen(_sub(_scale(Fraction(1, 2), lg), _scale(r - Expr(lam), g.g)))


def _field_symbols(v: VectorField) -> frozenset[str]:
    return frozenset().union(*(c.free_symbols for c in v))


def _fresh_lambda(taken: frozenset[str]) -> str:
    name = LAMBDA
    while name in taken:
        name += "_"
    return name


def check_yamabe_soliton(candidate: SolitonCandidate, g: MetricSpec, conn: ConnectionCoeffs,
                         bundle: CurvatureBundle, structure: LcsStructure | None = None) -> VerificationReport:
    n = g.n
    lam = candidate.lam
    res = soliton_residual(candidate.v, lam, g, conn, bundle.scalar)
    checks = [make_check(
        "sol.1.yamabe", "Eq (3.20): (1/2) L_V g = (r - lambda) g", _tensor02(res, symmetric=True)
    )]
    if candidate.b is not None and structure is not None:
        checks.append(make_check(
            "sol.2.collinear", "Sec. 3: V = b xi",
            _vec("V - b xi", candidate.v - candidate.b * structure.xi),
        ))

    coords = frozenset(conn.frame.chart.names)
    name = _fresh_lambda(bundle.scalar.free_symbols | _field_symbols(candidate.v))
    sym_res = soliton_residual(candidate.v, Expr.symbol(name), g, conn, bundle.scalar)
    comps = [sym_res[i, j] for i, j in _pairs(n, symmetric=True)]
    solution = str(solve_lambda(comps, name, coords))
    notes = (("admissible-lambda", solution), ("classification", classify(lam)))
    return VerificationReport(tuple(checks), notes)


# ---------------------------------------------------------------------------
# theorem suite


@dataclass(frozen=True, eq=False)
class _Context:
    mode: str
    g: MetricSpec
    conn: ConnectionCoeffs
    st: LcsStructure
    lam: Expr
    bundle: CurvatureBundle

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def k(self) -> Expr:
        return self.st.alpha * self.st.alpha - self.st.rho


def hypothesis_bundle(bundle: CurvatureBundle, lam) -> CurvatureBundle:
    """Bundle with S := (lambda/n) g, Q := (lambda/n) I and r := lambda; R is kept."""
    lam = Expr(lam)
    g = bundle.metric
    n = g.n
    c = lam / n
    Q = object_array((n, n))
    for i in range(n):
        Q[i, i] = c
    return bundle.with_ricci(frozen(_scale(c, g.g)), frozen(Q), lam)


def _soliton_core(ctx: _Context, candidate: SolitonCandidate | None) -> list[Check]:
    n, g, conn, st, lam = ctx.n, ctx.g, ctx.conn, ctx.st, ctx.lam
    frame = conn.frame
    e = frame.basis
    xi, eta, alpha = st.xi, st.eta, st.alpha
    S, r, k = ctx.bundle.ricci, ctx.bundle.scalar, ctx.k
    Q = EndoField(ctx.bundle.q_op)
    p = f"thm.{ctx.mode}."
    out = []
    lg_xi = lie_deriv_metric(conn, g, xi)

    # (a) soliton with potential xi
    out.append(make_check(p + "a1.eta-factor", "Thm 3.1, Eq (3.5): (r - lambda) eta(X) = 0",
                          ((_args(i), (r - lam) * eta[i]) for i in range(n))))
    out.append(make_check(p + "a2.r-equals-lambda", "Thm 3.1, Eq (3.6): r = lambda", [("r - lambda", r - lam)]))
    out.append(make_check(p + "a3.xi-killing", "Thm 3.1, Eq (3.7): L_xi g = 0", _tensor02(lg_xi, symmetric=True)))
    out.append(make_check(p + "a4.r-constant", "Thm 3.1: the scalar curvature is constant",
                          ((f"{_e(i)}(r)", frame.derivative(i, r)) for i in range(n))))

    # (b) Einstein
    out.append(make_check(p + "b1.lambda-value", "Prop 3.2, Eq (3.8): lambda = n(n - 1)(alpha^2 - rho)",
                          [("lambda - n(n-1)(alpha^2-rho)", lam - n * (n - 1) * k)]))
    out.append(make_check(p + "b2.einstein", "Prop 3.2, Eq (3.9): S(X,Y) = (lambda/n) g(X,Y)",
                          _tensor02(_sub(S, _scale(lam / n, g.g)), symmetric=True)))

    nabla_S = [cov_deriv_02(conn, S, e[i]) for i in range(n)]

    # (c) Ricci symmetric
    out.append(make_check(p + "c1.ricci-parallel", "Prop 3.3, Eq (3.11): nabla S = 0",
                          ((_args(i, j, m), nabla_S[i][j, m]) for i in range(n) for j, m in _pairs(n))))
    # (d) eta-recurrent Ricci tensor
    out.append(make_check(p + "d1.eta-recurrent", "Prop 3.4, Eq (new 2): (nabla_X S)(Y,Z) = eta(X) S(Y,Z)",
                          ((_args(i, j, m), nabla_S[i][j, m] - eta[i] * S[j, m]) for i in range(n) for j, m in _pairs(n))))

    # (e) parallel h = L_xi g - 2 r g
    h = _sub(lg_xi, _scale(2 * r, g.g))
    h_xixi = bilinear(h, xi, xi)
    out.append(make_check(p + "e1.h-xi-xi", "Thm 3.5, Eq (3.12): h(xi,xi) = 2 lambda",
                          [("h(xi,xi) - 2 lambda", h_xixi - 2 * lam)]))
    out.append(make_check(p + "e2.h-parallel", "Thm 3.5: h = L_xi g - 2rg is parallel",
                          ((_args(i, j, m), cov_deriv_02(conn, h, e[i])[j, m]) for i in range(n) for j, m in _pairs(n))))
    out.append(make_check(p + "e3.h-proportional", "Thm 3.5, Eq (3.14): h(X,Y) = -h(xi,xi) g(X,Y)",
                          _tensor02(_sub(h, _scale(-h_xixi, g.g)), symmetric=True)))

    # (f) Q and S parallel along xi
    dQ_xi = cov_deriv_11(conn, Q, xi)
    out.append(make_check(p + "f1.q-parallel-xi", "Thm 3.6, Eq (3.16): (nabla_xi Q)X = 0",
                          (item for j in range(n) for item in _vec(_args(j), dQ_xi.column(j)))))
    out.append(make_check(p + "f2.s-parallel-xi", "Thm 3.6, Eq (3.17): (nabla_xi S)(X,Y) = 0",
                          _tensor02(cov_deriv_02(conn, S, xi), symmetric=True)))

    def dq_all():
        for i in range(n):
            dQ = cov_deriv_11(conn, Q, e[i])
            for j in range(n):
                yield from _vec(_args(i, j), dQ.column(j))

    out.append(make_check(p + "f3.q-parallel", "Cor 3.7, Eq (3.19): (nabla_X Q)Y = 0", dq_all()))

    # (g) V = b xi
    out.extend(_collinear_checks(ctx, candidate))
    return out


_G_REFS = (
    ("g1.collinear", "Thm 3.8: V = b xi"),
    ("g2.reduced-soliton", "Thm 3.8, Eq (3.23): b alpha g(phi X,Y) + (Xb)eta(Y) + b alpha g(phi Y,X) + (Yb)eta(X) = 2(r - lambda)g(X,Y)"),
    ("g3.xi-b", "Thm 3.8, Eq (3.25): xi b = r - lambda"),
    ("g4.gradient-b", "Thm 3.8, Eq (3.26): Xb = -(r - lambda)eta(X)"),
    ("g5.eta-closed", "Thm 3.8: d eta = 0"),
    ("g6.conformal-killing", "Thm 3.8, Eq (3.28): L_V g = sigma g when r != lambda"),
    ("g7.b-constant", "Thm 3.8, Eq (3.29): Xb = 0 when r = lambda"),
    ("g8.v-killing", "Cor 3.9, Eq (3.30): L_V g = 0 when r = lambda"),
)


def _collinear_checks(ctx: _Context, candidate: SolitonCandidate | None) -> list[Check]:
    p = f"thm.{ctx.mode}."
    if candidate is None or candidate.b is None:
        return [na_check(p + cid, ref, "no collinearity factor b supplied") for cid, ref in _G_REFS]
    refs = dict(_G_REFS)
    n, g, conn, st, lam = ctx.n, ctx.g, ctx.conn, ctx.st, ctx.lam
    frame = conn.frame
    e = frame.basis
    xi, eta, phi, alpha = st.xi, st.eta, st.phi, st.alpha
    r = ctx.bundle.scalar
    b = candidate.b
    V = candidate.v
    db = [frame.derivative(i, b) for i in range(n)]
    out = [make_check(p + "g1.collinear", refs["g1.collinear"], _vec("V - b xi", V - b * xi))]

    def reduced():
        for i, j in _pairs(n, symmetric=True):
            lhs = (b * alpha * inner(g, phi(e[i]), e[j]) + db[i] * eta[j]
                   + b * alpha * inner(g, phi(e[j]), e[i]) + db[j] * eta[i])
            yield _args(i, j), lhs - 2 * (r - lam) * g.g[i, j]

    out.append(make_check(p + "g2.reduced-soliton", refs["g2.reduced-soliton"], reduced()))
    out.append(make_check(p + "g3.xi-b", refs["g3.xi-b"], [("xi(b) - (r - lambda)", frame.apply(xi, b) - (r - lam))]))
    out.append(make_check(p + "g4.gradient-b", refs["g4.gradient-b"],
                          ((f"{_e(i)}(b)", db[i] + (r - lam) * eta[i]) for i in range(n))))
    out.append(make_check(p + "g5.eta-closed", refs["g5.eta-closed"], _tensor02(d_oneform(frame, eta))))
    lv = lie_deriv_metric(conn, g, V)
    if not (r - lam).is_zero():
        sigma = sum((g.g_inv[i, j] * lv[i, j] for i in range(n) for j in range(n)), ZERO) / n
        out.append(make_check(p + "g6.conformal-killing", refs["g6.conformal-killing"],
                              _tensor02(_sub(lv, _scale(sigma, g.g)), symmetric=True)))
        out.append(na_check(p + "g7.b-constant", refs["g7.b-constant"], "r - lambda is not identically zero"))
        out.append(na_check(p + "g8.v-killing", refs["g8.v-killing"], "r - lambda is not identically zero"))
    else:
        out.append(na_check(p + "g6.conformal-killing", refs["g6.conformal-killing"], "r - lambda is identically zero"))
        out.append(make_check(p + "g7.b-constant", refs["g7.b-constant"], ((f"{_e(i)}(b)", db[i]) for i in range(n))))
        out.append(make_check(p + "g8.v-killing", refs["g8.v-killing"], _tensor02(lv, symmetric=True)))
    return out


def _curvature_conditions(ctx: _Context, classical_sign: bool) -> list[Check]:
    n, g, st, lam = ctx.n, ctx.g, ctx.st, ctx.lam
    e = ctx.conn.frame.basis
    xi, eta = st.xi, st.eta
    bundle = ctx.bundle
    S, R, k = bundle.ricci, bundle.riemann, ctx.k
    p = f"thm.{ctx.mode}."
    out = []

    P = projective(bundle)
    out.append(make_check(p + "h1.xi-projectively-flat", "Prop 3.10, Eq (3.34): P(X,Y)xi = 0",
                          (item for i, j in _pairs(n) for item in _vec(_args(i, j), apply_curvature(P, e[i], e[j], xi)))))
    C = concircular(bundle)
    out.append(make_check(p + "i1.xi-concircularly-flat", "Prop 3.11, Eq (3.38): C(X,Y)xi = 0",
                          (item for i, j in _pairs(n) for item in _vec(_args(i, j), apply_curvature(C, e[i], e[j], xi)))))
    ref_j = "Prop 3.12, Eq (3.40): H(X,Y)xi = -(lambda/((n-1)(n-2)))[eta(Y)X - eta(X)Y]"
    if n >= 3:
        H = conharmonic(bundle)
        f = lam / ((n - 1) * (n - 2))

        def conharm():
            for i, j in _pairs(n):
                v = apply_curvature(H, e[i], e[j], xi) + f * (eta[j] * e[i] - eta[i] * e[j])
                yield from _vec(_args(i, j), v)

        out.append(make_check(p + "j1.xi-conharmonic", ref_j, conharm()))
    else:
        out.append(na_check(p + "j1.xi-conharmonic", ref_j, "conharmonic tensor needs n >= 3"))

    def derived_action(T):
        for i in range(n):
            A = curvature_operator(T, xi, e[i])
            act = endo_action_on_02(A, S, classical_sign=classical_sign)
            for j, m in _pairs(n):
                yield _args(i, j, m), act[j, m]

    out.append(make_check(p + "k1.r-dot-s", "Thm 4.1, Eq (4.3): R(xi,X).S = 0", derived_action(R)))
    out.append(make_check(
        p + "l1.s-dot-r-scalar", "Thm 4.2: g((S(xi,X).R)(Y,xi,xi), xi) = 0",
        ((_args(i, j), s_wedge_scalar(R, S, g, xi, e[i], e[j], xi, xi)) for i, j in _pairs(n)),
    ))
    out.append(make_check(p + "l2.steady-factor", "Thm 4.2, Eq (4.6): (lambda/n)(alpha^2 - rho) = 0",
                          [("(lambda/n)(alpha^2-rho)", lam * k / n)]))
    W = w2(bundle)
    out.append(make_check(p + "m1.w2-dot-s", "Thm 4.3, Eq (4.10): W2(xi,X).S = 0", derived_action(W)))
    out.append(make_check(
        p + "n1.s-dot-w2-scalar", "Thm 4.4: g((S(xi,X).W2)(Y,xi,xi), xi) = 0",
        ((_args(i, j), s_wedge_scalar(W, S, g, xi, e[i], e[j], xi, xi)) for i, j in _pairs(n)),
    ))
    out.append(make_check(p + "n2.w2-factor", "Thm 4.4, Eq (4.13): lambda(1 - alpha^2 + rho) = 0",
                          [("lambda(1-alpha^2+rho)", lam * (1 - k))]))
    return out


MODES = ("raw", "hypothesis")


def theorem_suite(structure: LcsStructure, candidate: SolitonCandidate | None, g: MetricSpec,
                  conn: ConnectionCoeffs, bundle: CurvatureBundle, *, mode: str = "both",
                  classical_sign: bool = False) -> VerificationReport:
    """Residual checks for every soliton theorem, in raw and/or hypothesis mode.

    raw: the computed S, Q and r.  hypothesis: S := (lambda/n)g, Q := (lambda/n)I
    and r := lambda, with the computed R.  lambda defaults to the computed r.
    """
    modes = {"both": MODES, "raw": ("raw",), "hypothesis": ("hypothesis",)}[mode]
    lam = candidate.lam if candidate is not None and candidate.lam is not None else bundle.scalar
    checks: list[Check] = []
    for m in modes:
        b = bundle if m == "raw" else hypothesis_bundle(bundle, lam)
        ctx = _Context("raw" if m == "raw" else "hyp", g, conn, structure, Expr(lam), b)
        checks.extend(_soliton_core(ctx, candidate))
        checks.extend(_curvature_conditions(ctx, classical_sign))
    notes = (("lambda", str(lam)), ("derivation-sign", "classical" if classical_sign else "as displayed"))
    return VerificationReport(tuple(checks), notes)

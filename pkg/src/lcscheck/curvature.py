"""Riemann curvature, Ricci data and the derived curvature tensors.

Curvature-type tensors are n^4 object arrays with ``T[i, j, k, l]`` the
l-th frame component of T(e_i, e_j)e_k.  (0,2)-tensors are n x n arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .connection import ConnectionCoeffs, cov_deriv_vec
from .manifold import ZERO, EndoField, MetricSpec, VectorField, frozen, inner, object_array
from .symexpr import Expr

__all__ = [
    "CurvatureBundle",
    "DimensionError",
    "apply_curvature",
    "bilinear",
    "concircular",
    "conharmonic",
    "constant_curvature",
    "curvature_bundle",
    "curvature_operator",
    "endo_action_on_02",
    "first_slot_trace",
    "projective",
    "ricci_and_scalar",
    "riemann",
    "riemann_from_coefficients",
    "s_wedge_action_on",
    "s_wedge_scalar",
    "w2",
]


class DimensionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CurvatureBundle:
    metric: MetricSpec
    riemann: np.ndarray
    ricci: np.ndarray
    q_op: np.ndarray  # column j is Q e_j
    scalar: Expr

    @property
    def n(self) -> int:
        return self.metric.n

    @classmethod
    def from_riemann(cls, riemann_arr: np.ndarray, g: MetricSpec) -> "CurvatureBundle":
        S, Q, r = ricci_and_scalar(riemann_arr, g)
        return cls(g, riemann_arr, S, Q, r)

    def with_ricci(self, ricci: np.ndarray, q_op: np.ndarray, scalar: Expr) -> "CurvatureBundle":
        return CurvatureBundle(self.metric, self.riemann, ricci, q_op, Expr(scalar))

    def q(self, X: VectorField) -> VectorField:
        n = self.n
        return VectorField(sum((self.q_op[k, j] * X[j] for j in range(n)), ZERO) for k in range(n))


def _zero4(n: int) -> np.ndarray:
    return object_array((n, n, n, n))


def riemann(conn: ConnectionCoeffs) -> np.ndarray:
    """R(e_i,e_j)e_k = nabla_i nabla_j e_k - nabla_j nabla_i e_k - nabla_[e_i,e_j] e_k."""
    n = conn.n
    e = conn.frame.basis
    c = conn.frame.structure
    first = [[conn.nabla_basis(j, k) for k in range(n)] for j in range(n)]
    out = _zero4(n)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                v = (
                    cov_deriv_vec(conn, e[i], first[j][k])
                    - cov_deriv_vec(conn, e[j], first[i][k])
                    - cov_deriv_vec(conn, c[i][j], e[k])
                )
                for l in range(n):
                    out[i, j, k, l] = v[l]
    return frozen(out)


def riemann_from_coefficients(conn: ConnectionCoeffs) -> np.ndarray:
    """Component formula in terms of Gamma, frame derivatives of Gamma and structure functions.

    R^l_{ijk} = e_i(G^l_{jk}) - e_j(G^l_{ik}) + G^m_{jk} G^l_{im} - G^m_{ik} G^l_{jm} - c^m_{ij} G^l_{mk}
    where G^l_{ij} = gamma[i, j, l] and [e_i, e_j] = c^m_{ij} e_m.
    """
    n = conn.n
    G = conn.gamma
    frame = conn.frame
    c = frame.structure
    out = _zero4(n)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    v = frame.derivative(i, G[j, k, l]) - frame.derivative(j, G[i, k, l])
                    for m in range(n):
                        v = v + G[j, k, m] * G[i, m, l] - G[i, k, m] * G[j, m, l] - c[i][j][m] * G[m, k, l]
                    out[i, j, k, l] = v
    return frozen(out)


def ricci_and_scalar(riemann_arr: np.ndarray, g: MetricSpec):
    """S(Y,Z) = trace(X -> R(X,Y)Z); Q = g^-1 S; r = trace_g S."""
    n = g.n
    S = object_array((n, n))
    for j in range(n):
        for k in range(n):
            S[j, k] = sum((riemann_arr[i, j, k, i] for i in range(n)), ZERO)
    Q = object_array((n, n))
    for k in range(n):
        for j in range(n):
            Q[k, j] = sum((g.g_inv[k, m] * S[j, m] for m in range(n)), ZERO)
    r = sum((g.g_inv[i, j] * S[i, j] for i in range(n) for j in range(n)), ZERO)
    return frozen(S), frozen(Q), r


def curvature_bundle(conn: ConnectionCoeffs) -> CurvatureBundle:
    return CurvatureBundle.from_riemann(riemann(conn), conn.metric)


def constant_curvature(g: MetricSpec, k) -> np.ndarray:
    """R(X,Y)Z = k [g(Y,Z)X - g(X,Z)Y]."""
    k = Expr(k)
    n = g.n
    out = _zero4(n)
    for i in range(n):
        for j in range(n):
            for m in range(n):
                out[i, j, m, i] = out[i, j, m, i] + k * g.g[j, m]
                out[i, j, m, j] = out[i, j, m, j] - k * g.g[i, m]
    return frozen(out)


def bilinear(T: np.ndarray, X: VectorField, Y: VectorField) -> Expr:
    n = T.shape[0]
    total = ZERO
    for i in range(n):
        if X[i].is_zero():
            continue
        for j in range(n):
            if not Y[j].is_zero() and not T[i, j].is_zero():
                total = total + X[i] * Y[j] * T[i, j]
    return total


def apply_curvature(T: np.ndarray, X: VectorField, Y: VectorField, Z: VectorField) -> VectorField:
    """T(X, Y)Z for arbitrary frame-component fields (multilinear contraction)."""
    n = T.shape[0]
    out = [ZERO] * n
    for i in range(n):
        if X[i].is_zero():
            continue
        for j in range(n):
            if Y[j].is_zero():
                continue
            for k in range(n):
                if Z[k].is_zero():
                    continue
                f = X[i] * Y[j] * Z[k]
                for l in range(n):
                    if not T[i, j, k, l].is_zero():
                        out[l] = out[l] + f * T[i, j, k, l]
    return VectorField(out)


def curvature_operator(T: np.ndarray, X0: VectorField, X1: VectorField) -> EndoField:
    """The endomorphism Z -> T(X0, X1)Z."""
    n = T.shape[0]
    e = [VectorField.basis(n, k) for k in range(n)]
    return EndoField.from_columns([apply_curvature(T, X0, X1, e[k]).components for k in range(n)])


def first_slot_trace(T: np.ndarray) -> np.ndarray:
    n = T.shape[0]
    out = object_array((n, n))
    for j in range(n):
        for k in range(n):
            out[j, k] = sum((T[i, j, k, i] for i in range(n)), ZERO)
    return frozen(out)


def _combine(bundle: CurvatureBundle, term) -> np.ndarray:
    """R[i,j,k,:] + term(i, j, k) for every frame triple."""
    n = bundle.n
    out = _zero4(n)
    R = bundle.riemann
    for i in range(n):
        for j in range(n):
            for k in range(n):
                extra = term(i, j, k)
                for l in range(n):
                    out[i, j, k, l] = R[i, j, k, l] + extra[l]
    return frozen(out)


def _unit(n, i):
    return VectorField.basis(n, i)


def conharmonic(bundle: CurvatureBundle) -> np.ndarray:
    n = bundle.n
    if n < 3:
        raise DimensionError("conharmonic curvature needs n >= 3 (divides by n - 2)")
    g, S = bundle.metric.g, bundle.ricci
    Qe = [VectorField(bundle.q_op[:, i]) for i in range(n)]
    f = Expr(Fraction(-1, n - 2))

    def term(i, j, k):
        v = g[j, k] * Qe[i] - g[i, k] * Qe[j] + S[j, k] * _unit(n, i) - S[i, k] * _unit(n, j)
        return f * v

    return _combine(bundle, term)


def projective(bundle: CurvatureBundle) -> np.ndarray:
    """P(X,Y)Z = R(X,Y)Z - [S(Y,Z)X - S(X,Z)Y]/(n-1); equal to the g(QY,Z) form since g(QY,Z) = S(Y,Z)."""
    n = bundle.n
    S = bundle.ricci
    f = Expr(Fraction(-1, n - 1))
    return _combine(bundle, lambda i, j, k: f * (S[j, k] * _unit(n, i) - S[i, k] * _unit(n, j)))


def concircular(bundle: CurvatureBundle) -> np.ndarray:
    n = bundle.n
    g = bundle.metric.g
    f = -bundle.scalar / (n * (n - 1))
    return _combine(bundle, lambda i, j, k: f * (g[j, k] * _unit(n, i) - g[i, k] * _unit(n, j)))


def w2(bundle: CurvatureBundle) -> np.ndarray:
    n = bundle.n
    g = bundle.metric.g
    Qe = [VectorField(bundle.q_op[:, i]) for i in range(n)]
    f = Expr(Fraction(1, n - 1))
    return _combine(bundle, lambda i, j, k: f * (g[i, k] * Qe[j] - g[j, k] * Qe[i]))


def endo_action_on_02(A: EndoField, T: np.ndarray, *, classical_sign: bool = False) -> np.ndarray:
    """(A . T)(Y, Z) = T(AY, Z) + T(Y, AZ).

    ``classical_sign`` negates the result, matching the derivation convention
    (A . T)(Y, Z) = -T(AY, Z) - T(Y, AZ).
    """
    n = T.shape[0]
    cols = [A.column(j) for j in range(n)]
    e = [VectorField.basis(n, j) for j in range(n)]
    out = object_array((n, n))
    for j in range(n):
        for k in range(n):
            v = bilinear(T, cols[j], e[k]) + bilinear(T, e[j], cols[k])
            out[j, k] = -v if classical_sign else v
    return frozen(out)


def s_wedge_action_on(T: np.ndarray, S: np.ndarray, X0: VectorField, X: VectorField,
                      Y: VectorField, Z: VectorField, W: VectorField) -> VectorField:
    """Eight-term vector field (S(X0, X) . T)(Y, Z, W) with the first slot X0."""
    def tt(a, b, c):
        return apply_curvature(T, a, b, c)

    def s(a, b):
        return bilinear(S, a, b)

    TYZW = tt(Y, Z, W)
    return (
        s(X, TYZW) * X0
        - s(X0, TYZW) * X
        + s(X, Y) * tt(X0, Z, W)
        - s(X0, Y) * tt(X, Z, W)
        + s(X, Z) * tt(Y, X0, W)
        - s(X0, Z) * tt(Y, X, W)
        + s(X, W) * tt(Y, Z, X0)
        - s(X0, W) * tt(Y, Z, X)
    )


def s_wedge_scalar(T: np.ndarray, S: np.ndarray, g: MetricSpec, X0: VectorField,
                   X: VectorField, Y: VectorField, Z: VectorField, W: VectorField) -> Expr:
    """Inner product of :func:`s_wedge_action_on` with X0."""
    return inner(g, s_wedge_action_on(T, S, X0, X, Y, Z, W), X0)

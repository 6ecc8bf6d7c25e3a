"""Levi-Civita connection of a frame metric and the derivatives built on it."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .manifold import (
    ZERO,
    EndoField,
    FrameField,
    MetricSpec,
    OneForm,
    VectorField,
    frozen,
    inner,
    object_array,
)
from .symexpr import Expr

__all__ = [
    "ConnectionCoeffs",
    "ConnectionInvariantError",
    "cov_deriv_02",
    "cov_deriv_11",
    "cov_deriv_oneform",
    "cov_deriv_vec",
    "d_oneform",
    "koszul",
    "lie_deriv_endo",
    "lie_deriv_metric",
    "lie_deriv_metric_brackets",
    "lie_deriv_oneform",
    "metricity_residuals",
    "tensor_product",
    "torsion_residuals",
]


class ConnectionInvariantError(ArithmeticError):
    """Connection coefficients violate torsion-freeness or metric compatibility."""


@dataclass(frozen=True, eq=False)
class ConnectionCoeffs:
    """``gamma[i, j, k]`` is the k-th frame component of nabla_{e_i} e_j."""

    frame: FrameField
    metric: MetricSpec
    gamma: np.ndarray

    @property
    def n(self) -> int:
        return self.frame.n

    def nabla_basis(self, i: int, j: int) -> VectorField:
        return VectorField(self.gamma[i, j, :])

    def nabla_along(self, X: VectorField, j: int) -> VectorField:
        """nabla_X e_j, tensorial in X."""
        n = self.n
        return VectorField(
            sum((X[i] * self.gamma[i, j, k] for i in range(n) if not X[i].is_zero()), ZERO)
            for k in range(n)
        )


def koszul(g: MetricSpec, frame: FrameField, *, verify: bool = True) -> ConnectionCoeffs:
    """Solve 2 g(nabla_{e_i} e_j, e_k) = Koszul(i, j, k) for all frame triples.

    All six terms of the Koszul formula are evaluated, including the metric
    derivative terms that vanish for constant frame metrics.
    """
    n = frame.n
    if g.n != n:
        raise ValueError("metric and frame dimensions differ")
    e = frame.basis
    c = frame.structure
    gm = g.g
    rhs = object_array((n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                rhs[i, j, k] = (
                    frame.derivative(i, gm[j, k])
                    + frame.derivative(j, gm[k, i])
                    - frame.derivative(k, gm[i, j])
                    - inner(g, e[i], c[j][k])
                    - inner(g, e[j], c[i][k])
                    + inner(g, e[k], c[i][j])
                )
    gamma = object_array((n, n, n))
    for i in range(n):
        for j in range(n):
            for m in range(n):
                gamma[i, j, m] = sum((g.g_inv[m, k] * rhs[i, j, k] for k in range(n)), ZERO) / 2
    conn = ConnectionCoeffs(frame, g, frozen(gamma))
    if verify:
        bad = next(torsion_residuals(conn), None)
        if bad is not None:
            raise ConnectionInvariantError(f"torsion at {bad[0]}: {bad[1]}")
        bad = next(metricity_residuals(conn), None)
        if bad is not None:
            raise ConnectionInvariantError(f"metric incompatibility at {bad[0]}: {bad[1]}")
    return conn


def torsion_residuals(conn: ConnectionCoeffs) -> Iterator[tuple[tuple[int, int], VectorField]]:
    """Nonzero values of nabla_{e_i}e_j - nabla_{e_j}e_i - [e_i, e_j]."""
    n = conn.n
    for i in range(n):
        for j in range(n):
            t = conn.nabla_basis(i, j) - conn.nabla_basis(j, i) - conn.frame.structure[i][j]
            if not t.is_zero():
                yield (i, j), t


def metricity_residuals(conn: ConnectionCoeffs) -> Iterator[tuple[tuple[int, int, int], Expr]]:
    """Nonzero values of e_i g(e_j,e_k) - g(nabla_{e_i}e_j, e_k) - g(e_j, nabla_{e_i}e_k)."""
    n = conn.n
    g = conn.metric
    e = conn.frame.basis
    for i in range(n):
        for j in range(n):
            for k in range(n):
                r = (
                    conn.frame.derivative(i, g.g[j, k])
                    - inner(g, conn.nabla_basis(i, j), e[k])
                    - inner(g, e[j], conn.nabla_basis(i, k))
                )
                if not r.is_zero():
                    yield (i, j, k), r


def cov_deriv_vec(conn: ConnectionCoeffs, X: VectorField, Y: VectorField) -> VectorField:
    n = conn.n
    frame = conn.frame
    out = [ZERO] * n
    for i in range(n):
        if X[i].is_zero():
            continue
        for k in range(n):
            term = frame.derivative(i, Y[k])
            for j in range(n):
                if not Y[j].is_zero():
                    term = term + Y[j] * conn.gamma[i, j, k]
            out[k] = out[k] + X[i] * term
    return VectorField(out)


def cov_deriv_oneform(conn: ConnectionCoeffs, w: OneForm, X: VectorField) -> OneForm:
    """(nabla_X w)(e_j) = X(w(e_j)) - w(nabla_X e_j)."""
    frame = conn.frame
    return OneForm(
        tuple(frame.apply(X, w[j]) - w(conn.nabla_along(X, j)) for j in range(conn.n))
    )


def cov_deriv_02(conn: ConnectionCoeffs, T: np.ndarray, X: VectorField) -> np.ndarray:
    """(nabla_X T)(e_j, e_k) = X(T(e_j,e_k)) - T(nabla_X e_j, e_k) - T(e_j, nabla_X e_k)."""
    n = conn.n
    frame = conn.frame
    nab = [conn.nabla_along(X, j) for j in range(n)]
    out = object_array((n, n))
    for j in range(n):
        for k in range(n):
            v = frame.apply(X, T[j, k])
            for m in range(n):
                if not nab[j][m].is_zero():
                    v = v - nab[j][m] * T[m, k]
                if not nab[k][m].is_zero():
                    v = v - nab[k][m] * T[j, m]
            out[j, k] = v
    return frozen(out)


def cov_deriv_11(conn: ConnectionCoeffs, A: EndoField, X: VectorField) -> EndoField:
    """(nabla_X A)(Y) = nabla_X(A Y) - A(nabla_X Y), evaluated on the frame."""
    n = conn.n
    cols = []
    for j in range(n):
        cols.append(cov_deriv_vec(conn, X, A.column(j)) - A(conn.nabla_along(X, j)))
    return EndoField.from_columns([c.components for c in cols])


def lie_deriv_metric(conn: ConnectionCoeffs, g: MetricSpec, V: VectorField) -> np.ndarray:
    """(L_V g)(X, Y) = g(nabla_X V, Y) + g(nabla_Y V, X)."""
    n = conn.n
    e = conn.frame.basis
    nab = [cov_deriv_vec(conn, e[i], V) for i in range(n)]
    out = object_array((n, n))
    for i in range(n):
        for j in range(i, n):
            out[i, j] = out[j, i] = inner(g, nab[i], e[j]) + inner(g, nab[j], e[i])
    return frozen(out)


def lie_deriv_metric_brackets(frame: FrameField, g: MetricSpec, V: VectorField) -> np.ndarray:
    """Bracket expansion V(g(X,Y)) - g([V,X],Y) - g(X,[V,Y]); independent of the connection."""
    n = frame.n
    e = frame.basis
    br = [frame.bracket(V, e[i]) for i in range(n)]
    out = object_array((n, n))
    for i in range(n):
        for j in range(n):
            out[i, j] = frame.apply(V, g.g[i, j]) - inner(g, br[i], e[j]) - inner(g, e[i], br[j])
    return frozen(out)


def lie_deriv_oneform(frame: FrameField, X0: VectorField, w: OneForm) -> OneForm:
    return OneForm(
        tuple(frame.apply(X0, w[j]) - w(frame.bracket(X0, e)) for j, e in enumerate(frame.basis))
    )


def lie_deriv_endo(frame: FrameField, X0: VectorField, A: EndoField) -> EndoField:
    cols = [
        frame.bracket(X0, A.column(j)) - A(frame.bracket(X0, e))
        for j, e in enumerate(frame.basis)
    ]
    return EndoField.from_columns([c.components for c in cols])


def d_oneform(frame: FrameField, w: OneForm) -> np.ndarray:
    """(dw)(e_i, e_j) = e_i(w(e_j)) - e_j(w(e_i)) - w([e_i, e_j])."""
    n = frame.n
    out = object_array((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            v = frame.derivative(i, w[j]) - frame.derivative(j, w[i]) - w(frame.structure[i][j])
            out[i, j], out[j, i] = v, -v
    return frozen(out)


def tensor_product(a: OneForm, b: OneForm) -> np.ndarray:
    n = len(a)
    out = object_array((n, n))
    for i in range(n):
        for j in range(n):
            out[i, j] = a[i] * b[j]
    return frozen(out)

"""Charts, global frames, frame metrics and frame-component fields.

Every tensor in the package is stored in components against a global frame
e_1..e_n.  Coordinates enter only through :class:`FrameField`, which knows
the coordinate expansion of each e_a and converts when derivatives are
needed (directional derivatives and Lie brackets).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .symexpr import Expr, Indeterminate, Kind

__all__ = [
    "Chart",
    "DegenerateError",
    "EndoField",
    "FrameField",
    "MetricSpec",
    "OneForm",
    "VectorField",
    "apply",
    "determinant",
    "inner",
    "inverse",
    "lie_bracket",
    "object_array",
]

ZERO = Expr(0)
ONE = Expr(1)


class DegenerateError(ValueError):
    """A frame or metric matrix is not invertible as an exact rational matrix."""


def object_array(shape, fill=ZERO) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(fill)
    return out


def frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _as_expr_matrix(rows) -> np.ndarray:
    rows = [list(r) for r in rows]
    n = len(rows)
    m = object_array((n, len(rows[0]) if rows else 0))
    for i, r in enumerate(rows):
        if len(r) != m.shape[1]:
            raise ValueError("ragged matrix")
        for j, v in enumerate(r):
            m[i, j] = Expr(v)
    return m


def _eliminate(m: np.ndarray, rhs: np.ndarray | None):
    """Gauss-Jordan with exact zero-test pivoting.  Returns (det, solved rhs)."""
    a = m.copy()
    b = None if rhs is None else rhs.copy()
    n = a.shape[0]
    det = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if not a[r, col].is_zero()), None)
        if pivot is None:
            return ZERO, None
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            if b is not None:
                b[[col, pivot]] = b[[pivot, col]]
            det = -det
        p = a[col, col]
        det = det * p
        inv_p = ONE / p
        a[col] = [v * inv_p for v in a[col]]
        if b is not None:
            b[col] = [v * inv_p for v in b[col]]
        for r in range(n):
            if r != col and not a[r, col].is_zero():
                f = a[r, col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                if b is not None:
                    b[r] = [x - f * y for x, y in zip(b[r], b[col])]
    return det, b


def determinant(m) -> Expr:
    m = _as_expr_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError("determinant of a non-square matrix")
    return _eliminate(m, None)[0]


def inverse(m) -> np.ndarray:
    m = _as_expr_matrix(m)
    n = m.shape[0]
    eye = object_array((n, n))
    for i in range(n):
        eye[i, i] = ONE
    det, inv = _eliminate(m, eye)
    if inv is None:
        raise DegenerateError("matrix is not invertible (determinant is identically zero)")
    return frozen(inv)


@dataclass(frozen=True)
class Chart:
    coordinates: tuple[Indeterminate, ...]

    def __post_init__(self) -> None:
        coords = tuple(self.coordinates)
        object.__setattr__(self, "coordinates", coords)
        if len(coords) < 2:
            raise ValueError("chart dimension must be at least 2")
        names = [c.name for c in coords]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate coordinate names in {names}")
        if any(c.kind is not Kind.COORDINATE for c in coords):
            raise ValueError("chart coordinates must have kind COORDINATE")

    @classmethod
    def from_names(cls, *names: str) -> "Chart":
        return cls(tuple(Indeterminate(n, Kind.COORDINATE) for n in names))

    @property
    def dim(self) -> int:
        return len(self.coordinates)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.coordinates)


class VectorField:
    """Frame components of a vector field.  Immutable; supports linear arithmetic."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable) -> None:
        object.__setattr__(self, "components", tuple(Expr(c) for c in components))

    def __setattr__(self, name, value):
        raise AttributeError("VectorField is immutable")

    @classmethod
    def zero(cls, n: int) -> "VectorField":
        return cls([ZERO] * n)

    @classmethod
    def basis(cls, n: int, i: int) -> "VectorField":
        return cls([ONE if k == i else ZERO for k in range(n)])

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, k: int) -> Expr:
        return self.components[k]

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(a + b for a, b in zip(self.components, other.components, strict=True))

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField(a - b for a, b in zip(self.components, other.components, strict=True))

    def __neg__(self) -> "VectorField":
        return VectorField(-a for a in self.components)

    def __rmul__(self, f) -> "VectorField":
        f = Expr(f)
        return VectorField(f * a for a in self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __repr__(self) -> str:
        return f"VectorField({[str(c) for c in self.components]})"


@dataclass(frozen=True)
class OneForm:
    """Values omega(e_i) of a one-form on the frame."""

    components: tuple[Expr, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(Expr(c) for c in self.components))

    def __call__(self, X: VectorField) -> Expr:
        return sum((w * x for w, x in zip(self.components, X.components, strict=True)), ZERO)

    def __getitem__(self, i: int) -> Expr:
        return self.components[i]

    def __len__(self) -> int:
        return len(self.components)


class EndoField:
    """(1,1)-tensor with ``matrix[k, j]`` the k-th frame component of A(e_j)."""

    __slots__ = ("matrix",)

    def __init__(self, matrix) -> None:
        object.__setattr__(self, "matrix", frozen(_as_expr_matrix(matrix)))

    def __setattr__(self, name, value):
        raise AttributeError("EndoField is immutable")

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "EndoField":
        return cls(np.array([list(c) for c in columns], dtype=object).T)

    @classmethod
    def identity(cls, n: int) -> "EndoField":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def column(self, j: int) -> VectorField:
        return VectorField(self.matrix[:, j])

    def __call__(self, X: VectorField) -> VectorField:
        n = self.n
        return VectorField(
            sum((self.matrix[k, j] * X[j] for j in range(n)), ZERO) for k in range(n)
        )

    def __matmul__(self, other: "EndoField") -> "EndoField":
        return EndoField(np.dot(self.matrix, other.matrix))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EndoField):
            return NotImplemented
        return bool(np.all(self.matrix == other.matrix))

    def __hash__(self) -> int:
        return hash(tuple(self.matrix.flat))


class FrameField:
    """Global frame; row ``a`` of ``matrix`` holds the coordinate components of e_a."""

    def __init__(self, chart: Chart, rows) -> None:
        m = _as_expr_matrix(rows)
        n = chart.dim
        if m.shape != (n, n):
            raise ValueError(f"frame needs {n} vectors with {n} components, got {m.shape}")
        self.chart = chart
        self.matrix = frozen(m)
        try:
            self.inverse = inverse(m)
        except DegenerateError:
            raise DegenerateError("frame is degenerate: determinant of the component matrix is identically zero") from None

    @property
    def n(self) -> int:
        return self.chart.dim

    @cached_property
    def basis(self) -> tuple[VectorField, ...]:
        return tuple(VectorField.basis(self.n, i) for i in range(self.n))

    def to_coordinates(self, X: VectorField) -> tuple[Expr, ...]:
        n = self.n
        return tuple(sum((X[a] * self.matrix[a, i] for a in range(n)), ZERO) for i in range(n))

    def from_coordinates(self, w: Sequence[Expr]) -> VectorField:
        n = self.n
        return VectorField(sum((w[i] * self.inverse[i, a] for i in range(n)), ZERO) for a in range(n))

    def partials(self, f: Expr) -> tuple[Expr, ...]:
        return tuple(f.diff(c.name) for c in self.chart.coordinates)

    def derivative(self, a: int, f: Expr) -> Expr:
        """e_a(f)."""
        if f.is_constant():
            return ZERO
        return sum(
            (self.matrix[a, i] * d for i, d in enumerate(self.partials(f)) if not d.is_zero()),
            ZERO,
        )

    def apply(self, X: VectorField, f: Expr) -> Expr:
        if f.is_constant():
            return ZERO
        coords = self.to_coordinates(X)
        return sum((c * d for c, d in zip(coords, self.partials(f))), ZERO)

    def bracket(self, X: VectorField, Y: VectorField) -> VectorField:
        xc, yc = self.to_coordinates(X), self.to_coordinates(Y)
        w = [
            sum((xc[j] * yc[i].diff(c.name) - yc[j] * xc[i].diff(c.name)
                 for j, c in enumerate(self.chart.coordinates)), ZERO)
            for i in range(self.n)
        ]
        return self.from_coordinates(w)

    @cached_property
    def structure(self) -> tuple[tuple[VectorField, ...], ...]:
        """``structure[i][j]`` = [e_i, e_j] in frame components."""
        n = self.n
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            out[i][i] = VectorField.zero(n)
            for j in range(i + 1, n):
                b = self.bracket(self.basis[i], self.basis[j])
                out[i][j], out[j][i] = b, -b
        return tuple(tuple(r) for r in out)


class MetricSpec:
    """Frame metric ``g[i, j] = g(e_i, e_j)`` with its exact inverse."""

    def __init__(self, matrix) -> None:
        g = _as_expr_matrix(matrix)
        n = g.shape[0]
        if g.shape != (n, n):
            raise ValueError("metric must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if g[i, j] != g[j, i]:
                    raise ValueError(f"metric is not symmetric at ({i + 1},{j + 1})")
        self.g = frozen(g)
        try:
            self.g_inv = inverse(g)
        except DegenerateError:
            raise DegenerateError("metric is degenerate: determinant is identically zero") from None

    @classmethod
    def from_upper(cls, n: int, entries: Sequence) -> "MetricSpec":
        entries = list(entries)
        if len(entries) != n * (n + 1) // 2:
            raise ValueError(f"metric needs {n * (n + 1) // 2} upper-triangle entries, got {len(entries)}")
        g = object_array((n, n))
        it = iter(entries)
        for i in range(n):
            for j in range(i, n):
                g[i, j] = g[j, i] = Expr(next(it))
        return cls(g)

    def upper(self) -> list[Expr]:
        n = self.n
        return [self.g[i, j] for i in range(n) for j in range(i, n)]

    @property
    def n(self) -> int:
        return self.g.shape[0]

    def __call__(self, X: VectorField, Y: VectorField) -> Expr:
        return inner(self, X, Y)

    def lower(self, X: VectorField) -> OneForm:
        """The one-form g(., X)."""
        n = self.n
        return OneForm(tuple(sum((self.g[i, j] * X[j] for j in range(n)), ZERO) for i in range(n)))


def inner(g: MetricSpec, X: VectorField, Y: VectorField) -> Expr:
    n = g.n
    total = ZERO
    for i in range(n):
        if X[i].is_zero():
            continue
        for j in range(n):
            if not Y[j].is_zero() and not g.g[i, j].is_zero():
                total = total + X[i] * Y[j] * g.g[i, j]
    return total


def lie_bracket(frame: FrameField, X: VectorField, Y: VectorField) -> VectorField:
    return frame.bracket(X, Y)


def apply(frame: FrameField, X: VectorField, f: Expr) -> Expr:
    """Directional derivative X(f)."""
    return frame.apply(X, Expr(f))


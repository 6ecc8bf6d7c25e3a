"""Exact rational functions over Q in named indeterminates.

An :class:`Expr` is a quotient of two sparse polynomials kept in canonical
form: the numerator and denominator are coprime and the denominator is
monic with respect to the graded-lex order on alphabetically sorted
variable names.  Two expressions denoting the same rational function are
therefore structurally identical, which makes :func:`is_zero` decidable.

Polynomial arithmetic and gcd cancellation are delegated to FLINT's
multivariate polynomials over Q (``python-flint``); everything user-facing
(parsing, printing, substitution, evaluation) lives here.
"""

from __future__ import annotations

import enum
import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from flint import fmpq, fmpq_mpoly_ctx

__all__ = [
    "Expr",
    "ExprError",
    "Indeterminate",
    "Kind",
    "ParseError",
    "arith",
    "coordinates",
    "differentiate",
    "is_zero",
    "parameters",
    "parse",
]

NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


class ExprError(ValueError):
    """Raised for invalid expression operations (division by zero, bad variable)."""


class ParseError(ExprError):
    """Malformed expression text.  ``column`` is 1-based within the parsed text."""

    def __init__(self, message: str, column: int) -> None:
        super().__init__(f"column {column}: {message}")
        self.message = message
        self.column = column


class Kind(enum.Enum):
    COORDINATE = "coordinate"
    PARAMETER = "parameter"


@dataclass(frozen=True, order=True)
class Indeterminate:
    name: str
    kind: Kind = Kind.COORDINATE

    def __post_init__(self) -> None:
        if not NAME_RE.match(self.name):
            raise ExprError(f"invalid indeterminate name {self.name!r}")

    @property
    def expr(self) -> "Expr":
        return Expr.symbol(self.name)


def coordinates(*names: str) -> tuple[Indeterminate, ...]:
    return tuple(Indeterminate(n, Kind.COORDINATE) for n in names)


def parameters(*names: str) -> tuple[Indeterminate, ...]:
    return tuple(Indeterminate(n, Kind.PARAMETER) for n in names)


@functools.lru_cache(maxsize=None)
def _ring(names: tuple[str, ...]) -> fmpq_mpoly_ctx:
    return fmpq_mpoly_ctx.get(names, "deglex")


@functools.lru_cache(maxsize=None)
def _union_ring(a: fmpq_mpoly_ctx, b: fmpq_mpoly_ctx) -> fmpq_mpoly_ctx:
    return _ring(tuple(sorted(set(a.names()) | set(b.names()))))


def _frac(c: fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _cofactors(a, b):
    g = a.gcd(b)
    if g.is_one():
        return g, a, b
    return g, a / g, b / g


Coercible = Union["Expr", int, Fraction]


class Expr:
    """Immutable canonical rational function.

    Supports ``+ - * /``, integer ``**``, comparison with ``==`` (structural,
    hence semantic) and mixes freely with ``int`` and ``Fraction``.
    """

    __slots__ = ("_num", "_den", "_key")

    def __init__(self, value: Coercible = 0) -> None:
        if isinstance(value, Expr):
            self._num, self._den, self._key = value._num, value._den, value._key
            return
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise TypeError(f"cannot build Expr from {type(value).__name__}")
        ring = _ring(())
        q = Fraction(value)
        self._num = ring.constant(fmpq(q.numerator, q.denominator))
        self._den = ring.constant(1)
        self._key = None

    @classmethod
    def symbol(cls, name: str) -> "Expr":
        if not NAME_RE.match(name):
            raise ExprError(f"invalid indeterminate name {name!r}")
        ring = _ring((name,))
        return cls._raw(ring.gens()[0], ring.constant(1))

    @classmethod
    def _raw(cls, num, den) -> "Expr":
        e = object.__new__(cls)
        e._num, e._den, e._key = num, den, None
        return e

    @classmethod
    def _monic(cls, num, den) -> "Expr":
        if num.is_zero():
            return Expr(0)
        c = den.leading_coefficient()
        if c != 1:
            num, den = num / c, den / c
        return cls._raw(num, den)

    @classmethod
    def _build(cls, num, den) -> "Expr":
        if den.is_zero():
            raise ExprError("division by an identically-zero expression")
        if num.is_zero():
            return Expr(0)
        if not den.is_constant():
            _g, num, den = _cofactors(num, den)
        return cls._monic(num, den)

    def _is_scalar(self) -> bool:
        return self._num.is_constant() and self._den.is_constant()

    def _scalar(self) -> fmpq:
        # constants always carry denominator 1
        return self._num.leading_coefficient() if not self._num.is_zero() else fmpq(0)

    @staticmethod
    def _coerce(value: Coercible) -> "Expr":
        return value if isinstance(value, Expr) else Expr(value)

    def _common(self, other: "Expr"):
        ra, rb = self._num.context(), other._num.context()
        if ra is rb:
            return self._num, self._den, other._num, other._den
        ring = _union_ring(ra, rb)
        return (
            self._num.project_to_context(ring),
            self._den.project_to_context(ring),
            other._num.project_to_context(ring),
            other._den.project_to_context(ring),
        )

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: Coercible) -> "Expr":
        if not isinstance(other, (Expr, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        if other._num.is_zero():
            return self
        if self._num.is_zero():
            return other
        if other._is_scalar():
            return Expr._raw(self._num + self._den * other._scalar(), self._den)._zero_fix()
        if self._is_scalar():
            return Expr._raw(other._num + other._den * self._scalar(), other._den)._zero_fix()
        a, b, c, d = self._common(other)
        if b == d:
            return Expr._build(a + c, b)
        if d.is_constant():
            return Expr._raw(a + c * b, b)
        if b.is_constant():
            return Expr._raw(a * d + c, d)
        # Henrici: only the common part of the denominators can cancel
        g, bq, dq = _cofactors(b, d)
        num = a * dq + c * bq
        if num.is_zero():
            return Expr(0)
        if g.is_constant():
            return Expr._monic(num, bq * d)
        _h, num, g = _cofactors(num, g)
        return Expr._monic(num, bq * dq * g)

    __radd__ = __add__

    def _zero_fix(self) -> "Expr":
        return Expr(0) if self._num.is_zero() else self

    def __neg__(self) -> "Expr":
        return Expr._raw(-self._num, self._den)

    def __pos__(self) -> "Expr":
        return self

    def __sub__(self, other: Coercible) -> "Expr":
        if not isinstance(other, (Expr, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other: Coercible) -> "Expr":
        return self._coerce(other) + (-self)

    def __mul__(self, other: Coercible) -> "Expr":
        if not isinstance(other, (Expr, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        if self._num.is_zero() or other._num.is_zero():
            return Expr(0)
        if other._is_scalar():
            return Expr._raw(self._num * other._scalar(), self._den)
        if self._is_scalar():
            return Expr._raw(other._num * self._scalar(), other._den)
        a, b, c, d = self._common(other)
        # (a/b)(c/d) with gcd(a,b) = gcd(c,d) = 1 only needs the cross gcds
        if not d.is_constant():
            _g, a, d = _cofactors(a, d)
        if not b.is_constant():
            _g, c, b = _cofactors(c, b)
        return Expr._monic(a * c, b * d)

    __rmul__ = __mul__

    def __truediv__(self, other: Coercible) -> "Expr":
        if not isinstance(other, (Expr, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        if other._num.is_zero():
            raise ExprError("division by an identically-zero expression")
        return self * Expr._monic(other._den, other._num)

    def __rtruediv__(self, other: Coercible) -> "Expr":
        return self._coerce(other) / self

    def __pow__(self, k: int) -> "Expr":
        if isinstance(k, bool) or not isinstance(k, int):
            raise ExprError("non-integer exponent")
        if k == 0:
            return Expr(1)
        if k > 0:
            return Expr._raw(self._num**k, self._den**k)
        if self._num.is_zero():
            raise ExprError("division by an identically-zero expression")
        return Expr._monic(self._den ** (-k), self._num ** (-k))

    # -- canonical identity -------------------------------------------------

    @staticmethod
    def _poly_key(p) -> tuple:
        names = p.context().names()
        key = []
        for monom, coeff in p.terms():
            m = tuple((names[i], int(e)) for i, e in enumerate(monom) if e)
            key.append((m, _frac(coeff)))
        return tuple(key)

    @property
    def key(self) -> tuple:
        """Ring-independent canonical form: (numerator terms, denominator terms)."""
        if self._key is None:
            self._key = (self._poly_key(self._num), self._poly_key(self._den))
        return self._key

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Expr(other)
        if not isinstance(other, Expr):
            return NotImplemented
        if self._num.context() is other._num.context():
            return self._num == other._num and self._den == other._den
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __bool__(self) -> bool:
        return not self._num.is_zero()

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def is_polynomial(self) -> bool:
        return self._den.is_constant()

    def is_constant(self) -> bool:
        return self._is_scalar()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ExprError(f"{self} is not a constant")
        return _frac(self._scalar())

    @property
    def free_symbols(self) -> frozenset[str]:
        names = set()
        for (m, _c) in self.key[0] + self.key[1]:
            names.update(n for n, _e in m)
        return frozenset(names)

    def numerator(self) -> "Expr":
        return Expr._raw(self._num, self._num.context().constant(1))

    def denominator(self) -> "Expr":
        return Expr._raw(self._den, self._den.context().constant(1))

    # -- calculus and substitution -----------------------------------------

    def diff(self, name: str) -> "Expr":
        """Partial derivative by the quotient rule."""
        names = self._num.context().names()
        if name not in names or self._is_scalar():
            return Expr(0)
        n, d = self._num, self._den
        dn = n.derivative(name)
        if d.is_constant():
            return Expr._raw(dn, d)._zero_fix()
        # with g = gcd(d, d'), d = g u and d' = g v, the numerator n'u - nv is
        # coprime to u, so only a gcd against g is left to cancel
        g, u, v = _cofactors(d, d.derivative(name))
        num = dn * u - n * v
        if not g.is_constant():
            _h, num, g = _cofactors(num, g)
        return Expr._monic(num, u * u * g)

    def _coefficients(self, p, name: str) -> dict[int, "Expr"]:
        ring = p.context()
        names = ring.names()
        one = ring.constant(1)
        if name not in names:
            return {0: Expr._raw(p, one)}
        idx = names.index(name)
        parts: dict[int, dict] = {}
        for monom, coeff in p.terms():
            k = int(monom[idx])
            rest = monom[:idx] + (0,) + monom[idx + 1:]
            parts.setdefault(k, {})[rest] = coeff
        return {k: Expr._raw(ring.from_dict(terms), one) for k, terms in parts.items()}

    def coefficients(self, name: str) -> dict[int, "Expr"]:
        """Coefficients of ``self`` as a polynomial in ``name``.

        The denominator must not involve ``name``; it divides every coefficient.
        """
        if name in self.denominator().free_symbols:
            raise ExprError(f"{self} is not polynomial in {name}")
        den = self.denominator()
        return {k: c / den for k, c in sorted(self._coefficients(self._num, name).items())}

    def degree(self, name: str) -> int:
        if self._num.is_zero():
            return -1
        return max(self._coefficients(self._num, name))

    def subs(self, mapping: Mapping[str, Coercible]) -> "Expr":
        result = self
        for name, value in mapping.items():
            value = self._coerce(value)
            num = sum(
                (c * value**k for k, c in result._coefficients(result._num, name).items()),
                Expr(0),
            )
            den = sum(
                (c * value**k for k, c in result._coefficients(result._den, name).items()),
                Expr(0),
            )
            result = num / den
        return result

    def evaluate(self, point: Mapping[str, Union[int, Fraction]]) -> Fraction:
        """Exact value at ``point``; raises ZeroDivisionError at a pole."""
        num = _eval_poly(self.key[0], point)
        den = _eval_poly(self.key[1], point)
        if den == 0:
            raise ZeroDivisionError(f"{self} has a pole at {dict(point)}")
        return num / den

    # -- printing -----------------------------------------------------------

    def __str__(self) -> str:
        return _format(self)

    def __repr__(self) -> str:
        return f"Expr({str(self)!r})"


def _eval_poly(terms: tuple, point: Mapping[str, Union[int, Fraction]]) -> Fraction:
    total = Fraction(0)
    for monom, coeff in terms:
        value = coeff
        for name, e in monom:
            try:
                value *= Fraction(point[name]) ** e
            except KeyError:
                raise ExprError(f"no value supplied for {name!r}") from None
        total += value
    return total


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def _format_monomial(monom: tuple) -> str:
    return "*".join(n if e == 1 else f"{n}^{e}" for n, e in monom)


def _format_poly(terms: list[tuple[tuple, int]]) -> str:
    pos = [t for t in terms if t[1] > 0]
    neg = [t for t in terms if t[1] < 0]
    out = []
    for i, (monom, c) in enumerate(pos + neg):
        mag = abs(c)
        if not monom:
            body = str(mag)
        elif mag == 1:
            body = _format_monomial(monom)
        else:
            body = f"{mag}*{_format_monomial(monom)}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out) if out else "0"


def _format(e: Expr) -> str:
    num_terms, den_terms = e.key
    if not num_terms:
        return "0"
    scale = 1
    for _m, c in num_terms + den_terms:
        scale = _lcm(scale, c.denominator)
    num = [(m, int(c * scale)) for m, c in num_terms]
    den = [(m, int(c * scale)) for m, c in den_terms]
    from math import gcd

    content = 0
    for _m, c in num + den:
        content = gcd(content, c)
    num = [(m, c // content) for m, c in num]
    den = [(m, c // content) for m, c in den]
    top = _format_poly(num)
    if den == [((), 1)]:
        return top
    if len(num) > 1:
        top = f"({top})"
    bottom = _format_poly(den)
    atomic = len(den) == 1 and (
        not den[0][0] or (den[0][1] == 1 and len(den[0][0]) == 1)
    )
    if not atomic:
        bottom = f"({bottom})"
    return f"{top}/{bottom}"


# -- parsing ----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_]*)|(\S))")


class _Parser:
    def __init__(self, text: str, allowed: Mapping[str, Indeterminate]) -> None:
        self.text = text
        self.allowed = allowed
        self.tokens: list[tuple[str, str, int]] = []
        for m in _TOKEN_RE.finditer(text):
            if m.group(1) is not None:
                self.tokens.append(("num", m.group(1), m.start(1) + 1))
            elif m.group(2) is not None:
                self.tokens.append(("name", m.group(2), m.start(2) + 1))
            elif m.group(3) is not None:
                ch = m.group(3)
                if ch not in "+-*/^()":
                    raise ParseError(f"unexpected character {ch!r}", m.start(3) + 1)
                self.tokens.append(("op", ch, m.start(3) + 1))
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return ("end", "", len(self.text.rstrip()) + 1)

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> Expr:
        if not self.tokens:
            raise ParseError("empty expression", 1)
        e = self.expr()
        kind, value, col = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {value!r}", col)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            _, op, col = self.take()
            rhs = self.unary()
            if op == "*":
                e = e * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by an identically-zero subexpression", col)
                e = e / rhs
        return e

    def unary(self) -> Expr:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[:2] != ("op", "^"):
            return base
        _, _, col = self.take()
        exp_col = self.peek()[2]
        exponent = self.unary()
        if not exponent.is_constant() or exponent.constant_value().denominator != 1:
            raise ParseError("non-integer exponent", exp_col)
        k = int(exponent.constant_value())
        if k < 0 and base.is_zero():
            raise ParseError("division by an identically-zero subexpression", col)
        return base**k

    def atom(self) -> Expr:
        kind, value, col = self.take()
        if kind == "num":
            return Expr(int(value))
        if kind == "name":
            if value not in self.allowed:
                raise ParseError(f"unknown symbol {value!r}", col)
            return Expr.symbol(value)
        if (kind, value) == ("op", "("):
            e = self.expr()
            k2, v2, c2 = self.take()
            if (k2, v2) != ("op", ")"):
                raise ParseError("expected ')'", c2)
            return e
        if kind == "end":
            raise ParseError("unexpected end of expression", col)
        raise ParseError(f"unexpected {value!r}", col)


def parse(text: str, allowed: Iterable[Indeterminate | str] = ()) -> Expr:
    """Parse ``text`` into a normalized :class:`Expr`.

    Grammar: rational constants, names, binary ``+ - * /``, integer power
    ``^`` (right associative, binds tighter than unary minus), parentheses.
    """
    table = {}
    for v in allowed:
        ind = v if isinstance(v, Indeterminate) else Indeterminate(v, Kind.PARAMETER)
        table[ind.name] = ind
    e = _Parser(text, table).parse()
    if e.is_constant() or not table:
        return e
    # one shared ring per name set keeps later arithmetic free of ring conversions
    ring = _ring(tuple(sorted(table)))
    return Expr._raw(e._num.project_to_context(ring), e._den.project_to_context(ring))


def arith(a: Expr, b: Expr, op: str) -> Expr:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ExprError(f"unknown operation {op!r}")


def differentiate(e: Expr, v: Indeterminate) -> Expr:
    """Partial derivative with respect to the coordinate ``v``."""
    if v.kind is not Kind.COORDINATE:
        raise ExprError(f"cannot differentiate with respect to parameter {v.name!r}")
    return e.diff(v.name)


def is_zero(e: Expr) -> bool:
    return e.is_zero()

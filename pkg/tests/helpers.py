"""Random inputs shared by the property tests and the acceptance suite.

Expressions are generated as small trees so that they can be evaluated by
plain ``Fraction`` arithmetic, independently of the rational-function kernel.
"""

from __future__ import annotations

import random
from fractions import Fraction

from lcscheck.manifold import Chart, FrameField, MetricSpec
from lcscheck.symexpr import Expr, parse

VARS = ("x", "y", "z")


# --- expression trees -------------------------------------------------------
# A tree is ("const", Fraction) | ("var", name) | (op, left, right) | ("pow", t, k) | ("neg", t)


def random_tree(rng: random.Random, depth: int = 3, names=VARS):
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.4:
            return ("const", Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
        return ("var", rng.choice(names))
    kind = rng.choice(("+", "-", "*", "*", "/", "pow", "neg"))
    if kind == "pow":
        return ("pow", random_tree(rng, depth - 1, names), rng.randint(-2, 3))
    if kind == "neg":
        return ("neg", random_tree(rng, depth - 1, names))
    return (kind, random_tree(rng, depth - 1, names), random_tree(rng, depth - 1, names))


def rewrite(rng: random.Random, t):
    """An algebraically equal, structurally different tree."""
    tag = t[0]
    if tag in ("const", "var"):
        return ("*", ("const", Fraction(1)), t) if rng.random() < 0.3 else t
    if tag == "neg":
        return ("*", ("const", Fraction(-1)), rewrite(rng, t[1]))
    if tag == "pow":
        base, k = rewrite(rng, t[1]), t[2]
        if k >= 2:
            return ("*", base, ("pow", base, k - 1))
        if k < 0:
            return ("/", ("const", Fraction(1)), ("pow", base, -k))
        return ("pow", base, k)
    a, b = rewrite(rng, t[1]), rewrite(rng, t[2])
    if tag == "+":
        return ("+", b, a)
    if tag == "*":
        if b[0] == "+" and rng.random() < 0.5:
            return ("+", ("*", a, b[1]), ("*", a, b[2]))
        return ("*", b, a)
    if tag == "-":
        return ("+", a, ("neg", b))
    return ("*", a, ("/", ("const", Fraction(1)), b))


def to_text(t) -> str:
    tag = t[0]
    if tag == "const":
        q = t[1]
        s = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        return f"({s})"
    if tag == "var":
        return t[1]
    if tag == "neg":
        return f"(-{to_text(t[1])})"
    if tag == "pow":
        return f"({to_text(t[1])})^({t[2]})"
    return f"({to_text(t[1])} {tag} {to_text(t[2])})"


def eval_tree(t, point) -> Fraction:
    """Direct evaluation; raises ZeroDivisionError at a pole of any subterm."""
    tag = t[0]
    if tag == "const":
        return t[1]
    if tag == "var":
        return Fraction(point[t[1]])
    if tag == "neg":
        return -eval_tree(t[1], point)
    if tag == "pow":
        return eval_tree(t[1], point) ** t[2]
    a, b = eval_tree(t[1], point), eval_tree(t[2], point)
    if tag == "+":
        return a + b
    if tag == "-":
        return a - b
    if tag == "*":
        return a * b
    return a / b


def random_point(rng: random.Random, names=VARS) -> dict[str, Fraction]:
    return {n: Fraction(rng.randint(-40, 40), rng.randint(1, 9)) for n in names}


# --- random frames -----------------------------------------------------------

_DIAG = ("1", "2", "-1", "x", "y", "x^2 + 1", "y + 2", "1/2", "z", "x*y + 1")
_OFF = ("0", "0", "0", "1", "x", "y", "z", "2*x - 1", "x + y", "-z")


def random_frame(rng: random.Random, n: int) -> tuple[FrameField, MetricSpec, list[list[str]], list[int]]:
    """Lower-triangular frame with nonzero diagonal and a diagonal +-1 frame metric."""
    names = VARS[:n]
    chart = Chart.from_names(*names)
    rows = []
    for a in range(n):
        row = []
        for i in range(n):
            if i < a:
                text = rng.choice(_OFF)
            elif i == a:
                text = rng.choice(_DIAG)
            else:
                text = "0"
            row.append(text if _fits(text, names) else "1")
        rows.append(row)
    frame = FrameField(chart, [[parse(s, chart.coordinates) for s in r] for r in rows])
    signs = [rng.choice((1, -1)) for _ in range(n)]
    g = MetricSpec([[Expr(signs[i] if i == j else 0) for j in range(n)] for i in range(n)])
    return frame, g, rows, signs


def _fits(text: str, names) -> bool:
    return all(v in names for v in VARS if v in text)


# --- curvature invariants on one instance -------------------------------------


def curvature_invariants(frame: FrameField, g: MetricSpec) -> dict[str, bool]:
    """Evaluate every structural curvature law on one frame/metric pair."""
    from lcscheck.connection import koszul, metricity_residuals, torsion_residuals
    from lcscheck.curvature import (
        concircular,
        conharmonic,
        curvature_bundle,
        first_slot_trace,
        projective,
        riemann_from_coefficients,
    )

    n = frame.n
    conn = koszul(g, frame, verify=False)
    b = curvature_bundle(conn)
    R, S, r, G = b.riemann, b.ricci, b.scalar, g.g
    idx = range(n)

    def low(i, j, k, l):
        return sum((R[i, j, k, m] * G[m, l] for m in idx), Expr(0))

    out = {
        "torsion-free": all(v.is_zero() for _, v in torsion_residuals(conn)),
        "metric-compatible": all(v.is_zero() for _, v in metricity_residuals(conn)),
        "antisymmetry": all((R[i, j, k, l] + R[j, i, k, l]).is_zero()
                            for i in idx for j in idx for k in idx for l in idx),
        "first-bianchi": all((R[i, j, k, l] + R[j, k, i, l] + R[k, i, j, l]).is_zero()
                             for i in idx for j in idx for k in idx for l in idx),
        "pair-symmetry": all(low(i, j, k, l) == low(k, l, i, j) and low(i, j, k, l) == -low(i, j, l, k)
                             for i in idx for j in idx for k in idx for l in idx),
        "ricci-symmetry": all(S[i, j] == S[j, i] for i in idx for j in idx),
        "two-path-riemann": (riemann_from_coefficients(conn) == R).all(),
    }
    P = first_slot_trace(projective(b))
    out["projective-trace"] = all(v.is_zero() for v in P.flat)
    C = first_slot_trace(concircular(b))
    out["concircular-trace"] = all(C[i, j] == S[i, j] - r / n * G[i, j] for i in idx for j in idx)
    if n >= 3:
        H = first_slot_trace(conharmonic(b))
        out["conharmonic-trace"] = all(H[i, j] == -r / (n - 2) * G[i, j] for i in idx for j in idx)
    return out


# --- a warped product that passes the axioms but is not of constant curvature --

WARPED_DEF = """\
# -dt^2 + t^4 (dx^2 + dy^2), xi = d/dt
[chart]
dim = 3
coords = t x y

[frame]
e1 = 0, 1/t^2, 0
e2 = 0, 0, 1/t^2
e3 = 1, 0, 0

[metric]
g = 1, 0, 0, 1, 0, -1

[structure]
xi = 0, 0, 1
alpha = 2/t
rho = 2/t^2
phi = 1, 0, 0, 0, 1, 0, 0, 0, 0
"""

"""Manifold definition files: a line-oriented, sectioned text format.

Example::

    [chart]
    dim = 3
    coords = x y z

    [frame]
    e1 = z, 0, 0
    e2 = 0, z, 0
    e3 = 0, 0, z

    [metric]
    g = 1, 0, 0, 1, 0, -1

    [structure]
    xi = 0, 0, 1
    alpha = -1
    rho = 0
    phi = 1, 0, 0, 0, 1, 0, 0, 0, 0

Expression lists are comma separated.  ``#`` starts a comment.  ``phi``
lists the columns of the endomorphism one after another and ``g`` lists the
upper triangle row by row.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .symexpr import Expr, Indeterminate, Kind, ParseError, parse

__all__ = ["Definition", "DefinitionError", "dump", "parse_definition"]

_SECTIONS = {
    "chart": ("dim", "coords"),
    "params": ("names",),
    "frame": None,
    "metric": ("g",),
    "structure": ("xi", "alpha", "rho", "phi", "eta"),
    "candidate": ("v", "lambda", "b"),
}
_REQUIRED = {"chart": ("dim", "coords"), "metric": ("g",), "structure": ("xi", "alpha", "rho", "phi")}
_NAME = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


class DefinitionError(ValueError):
    """Malformed definition file; ``line`` and ``column`` are 1-based (0 when not applicable)."""

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        where = f"line {line}" + (f", column {column}" if column else "") if line else "definition"
        super().__init__(f"{where}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Definition:
    """Unvalidated geometric input; every scalar is already a normalized Expr."""

    coords: tuple[str, ...]
    frame: tuple[tuple[Expr, ...], ...]
    metric: tuple[Expr, ...]
    xi: tuple[Expr, ...]
    alpha: Expr
    rho: Expr
    phi: tuple[Expr, ...]
    params: tuple[str, ...] = ()
    eta: tuple[Expr, ...] | None = None
    v: tuple[Expr, ...] | None = None
    lam: Expr | None = None
    b: Expr | None = None
    comment: tuple[str, ...] = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def has_candidate(self) -> bool:
        return self.v is not None or self.lam is not None or self.b is not None

    def phi_columns(self) -> list[tuple[Expr, ...]]:
        n = self.n
        return [tuple(self.phi[j * n:(j + 1) * n]) for j in range(n)]


def _join(values) -> str:
    return ", ".join(str(v) for v in values)


def dump(d: Definition) -> str:
    out = [f"# {c}" if c else "#" for c in d.comment]
    if out:
        out.append("")
    out += ["[chart]", f"dim = {d.n}", f"coords = {' '.join(d.coords)}", ""]
    if d.params:
        out += ["[params]", f"names = {' '.join(d.params)}", ""]
    out.append("[frame]")
    out += [f"e{i + 1} = {_join(row)}" for i, row in enumerate(d.frame)]
    out += ["", "[metric]", f"g = {_join(d.metric)}", ""]
    out += ["[structure]", f"xi = {_join(d.xi)}", f"alpha = {d.alpha}", f"rho = {d.rho}", f"phi = {_join(d.phi)}"]
    if d.eta is not None:
        out.append(f"eta = {_join(d.eta)}")
    if d.has_candidate:
        out += ["", "[candidate]"]
        if d.v is not None:
            out.append(f"v = {_join(d.v)}")
        if d.lam is not None:
            out.append(f"lambda = {d.lam}")
        if d.b is not None:
            out.append(f"b = {d.b}")
    return "\n".join(out) + "\n"


@dataclass
class _Entry:
    value: str
    line: int
    column: int  # column of the first value character


def _split_commas(entry: _Entry) -> list[_Entry]:
    parts, start, depth = [], 0, 0
    text = entry.value
    for k, ch in enumerate(text + ","):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth <= 0:
            piece = text[start:k]
            lead = len(piece) - len(piece.lstrip())
            parts.append(_Entry(piece.strip(), entry.line, entry.column + start + lead))
            start = k + 1
    return parts


def _read_sections(text: str) -> dict[str, dict[str, _Entry]]:
    sections: dict[str, dict[str, _Entry]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise DefinitionError("unterminated section header", lineno, raw.index("[") + 1)
            name = stripped[1:-1].strip()
            if name not in _SECTIONS:
                raise DefinitionError(f"unknown section [{name}]", lineno, raw.index("[") + 1)
            if name in sections:
                raise DefinitionError(f"duplicate section [{name}]", lineno, raw.index("[") + 1)
            current = sections[name] = {}
            continue
        if current is None:
            raise DefinitionError("entry outside of any section", lineno, 1)
        if "=" not in line:
            raise DefinitionError("expected 'key = value'", lineno, len(raw) - len(raw.lstrip()) + 1)
        key_part, value_part = line.split("=", 1)
        key = key_part.strip()
        key_col = len(key_part) - len(key_part.lstrip()) + 1
        allowed = _SECTIONS[name]
        if allowed is None:
            if not re.fullmatch(r"e[1-9][0-9]*", key):
                raise DefinitionError(f"expected a frame vector name e<i>, got {key!r}", lineno, key_col)
        elif key not in allowed:
            raise DefinitionError(f"unknown key {key!r} in [{name}]", lineno, key_col)
        if key in current:
            raise DefinitionError(f"duplicate key {key!r}", lineno, key_col)
        value_col = len(key_part) + 2 + (len(value_part) - len(value_part.lstrip()))
        current[key] = _Entry(value_part.strip(), lineno, value_col)
    return sections


def parse_definition(text: str) -> Definition:
    """Parse definition-file text; raises :class:`DefinitionError` with line and column."""
    sec = _read_sections(text)
    for name, keys in _REQUIRED.items():
        if name not in sec:
            raise DefinitionError(f"missing section [{name}]")
        for k in keys:
            if k not in sec[name]:
                raise DefinitionError(f"missing key {k!r} in [{name}]")
    if "frame" not in sec:
        raise DefinitionError("missing section [frame]")

    chart = sec["chart"]
    try:
        n = int(chart["dim"].value)
    except ValueError:
        raise DefinitionError("dim must be an integer", chart["dim"].line, chart["dim"].column) from None
    if n < 2:
        raise DefinitionError("dim must be at least 2", chart["dim"].line, chart["dim"].column)
    coords = tuple(chart["coords"].value.split())
    params = tuple(sec["params"]["names"].value.split()) if "params" in sec and "names" in sec["params"] else ()
    for entry, names in ((chart["coords"], coords), (sec.get("params", {}).get("names"), params)):
        for nm in names:
            if not _NAME.match(nm):
                raise DefinitionError(f"invalid name {nm!r}", entry.line, entry.column)
    if len(coords) != n:
        raise DefinitionError(f"dim = {n} but {len(coords)} coordinates given", chart["coords"].line, chart["coords"].column)
    names = coords + params
    if len(set(names)) != len(names):
        raise DefinitionError("coordinate and parameter names must be distinct", chart["coords"].line, chart["coords"].column)
    allowed = [Indeterminate(c, Kind.COORDINATE) for c in coords] + [Indeterminate(p, Kind.PARAMETER) for p in params]

    def expr(entry: _Entry) -> Expr:
        try:
            return parse(entry.value, allowed)
        except ParseError as exc:
            raise DefinitionError(exc.message, entry.line, entry.column + exc.column - 1) from None

    def exprs(entry: _Entry, count: int, what: str) -> tuple[Expr, ...]:
        parts = _split_commas(entry)
        if len(parts) != count:
            raise DefinitionError(f"{what} needs {count} entries, got {len(parts)}", entry.line, entry.column)
        return tuple(expr(p) for p in parts)

    frame_sec = sec["frame"]
    expected = {f"e{i + 1}" for i in range(n)}
    if set(frame_sec) != expected:
        missing = sorted(expected - set(frame_sec)) or sorted(set(frame_sec) - expected)
        raise DefinitionError(f"[frame] must define e1..e{n}; problem with {', '.join(missing)}")
    frame = tuple(exprs(frame_sec[f"e{i + 1}"], n, f"e{i + 1}") for i in range(n))
    metric = exprs(sec["metric"]["g"], n * (n + 1) // 2, "g")
    st = sec["structure"]
    xi = exprs(st["xi"], n, "xi")
    alpha = expr(st["alpha"])
    rho = expr(st["rho"])
    phi = exprs(st["phi"], n * n, "phi")
    eta = exprs(st["eta"], n, "eta") if "eta" in st else None
    cand = sec.get("candidate", {})
    v = exprs(cand["v"], n, "v") if "v" in cand else None
    lam = expr(cand["lambda"]) if "lambda" in cand else None
    b = expr(cand["b"]) if "b" in cand else None
    return Definition(coords, frame, metric, xi, alpha, rho, phi, params, eta, v, lam, b, _header(text))


def _header(text: str) -> tuple[str, ...]:
    """Comment lines before the first section, as ``dump`` writes them."""
    out = []
    for raw in text.splitlines():
        s = raw.strip()
        if not s.startswith("#"):
            if s:
                break
            continue
        body = s[1:]
        out.append(body[1:] if body.startswith(" ") else body)
    return tuple(out)

"""Check outcomes and their deterministic text/JSON rendering."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterable

from .symexpr import Expr

__all__ = ["Check", "Status", "VerificationReport", "make_check", "na_check"]


class Status(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    NA = "N/A"


@dataclass(frozen=True)
class Check:
    id: str
    status: Status
    ref: str
    residual: Expr | None = None
    components: tuple[tuple[str, Expr], ...] = ()
    reason: str = ""

    @property
    def residual_text(self) -> str:
        return "-" if self.residual is None else str(self.residual)


def make_check(id: str, ref: str, residuals: Iterable[tuple[str, Expr]]) -> Check:
    """PASS iff every residual component is identically zero.

    The reported residual is the first nonzero component in iteration order.
    """
    nonzero = tuple((label, Expr(r)) for label, r in residuals if not Expr(r).is_zero())
    if nonzero:
        return Check(id, Status.FAIL, ref, nonzero[0][1], nonzero)
    return Check(id, Status.PASS, ref, Expr(0))


def na_check(id: str, ref: str, reason: str) -> Check:
    return Check(id, Status.NA, ref, None, (), reason)


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[Check, ...] = ()
    notes: tuple[tuple[str, str], ...] = field(default=())

    def __post_init__(self) -> None:
        checks = tuple(sorted(self.checks, key=lambda c: c.id))
        ids = [c.id for c in checks]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate check ids in report: {ids}")
        object.__setattr__(self, "checks", checks)
        object.__setattr__(self, "notes", tuple(self.notes))

    def __add__(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(self.checks + other.checks, self.notes + other.notes)

    def __getitem__(self, check_id: str) -> Check:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def __contains__(self, check_id: str) -> bool:
        return any(c.id == check_id for c in self.checks)

    def note(self, key: str) -> str:
        for k, v in self.notes:
            if k == key:
                return v
        raise KeyError(key)

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status is Status.FAIL]

    @property
    def ok(self) -> bool:
        return not self.failed

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            lines.append(f'CHECK {c.id} {c.status.value} residual={c.residual_text} ref="{c.ref}"')
            for label, r in c.components:
                lines.append(f"  {label}: {r}")
            if c.reason:
                lines.append(f"  reason: {c.reason}")
        for k, v in self.notes:
            lines.append(f"NOTE {k} {v}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "checks": [
                {
                    "id": c.id,
                    "status": c.status.value,
                    "residual": c.residual_text,
                    "ref": c.ref,
                    "components": [{"label": lab, "residual": str(r)} for lab, r in c.components],
                    **({"reason": c.reason} if c.reason else {}),
                }
                for c in self.checks
            ],
            "notes": [{"key": k, "value": v} for k, v in self.notes],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

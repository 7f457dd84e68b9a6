"""Per-inequality verdicts shared by the membership and bound checkers."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Iterable

import numpy as np

from .config import TOL


@dataclass(frozen=True)
class IndexEntry:
    n: int
    value: float
    bound: float
    margin: float
    attained: bool = False
    r: float | None = None  # ring radius, for grid checks
    label: str = ""


@dataclass(frozen=True)
class BoundReport:
    check_name: str
    lam: float | None
    per_index: tuple[IndexEntry, ...]
    aggregate: dict
    passed: bool
    attained: bool
    witness: str = ""
    notes: dict = field(default_factory=dict)

    @property
    def worst_margin(self) -> float:
        return self.aggregate["margin"]

    def attained_indices(self) -> list[int]:
        return [e.n for e in self.per_index if e.attained]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["per_index"] = [asdict(e) for e in self.per_index]
        d["pass"] = d.pop("passed")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "BoundReport":
        d = dict(d)
        d["passed"] = d.pop("pass")
        d["per_index"] = tuple(IndexEntry(**e) for e in d["per_index"])
        return cls(**d)


def build_report(
    check_name: str,
    lam: float | None,
    rows: Iterable[tuple],
    *,
    witness: str = "",
    tol: float | None = None,
    attain_tol: float | None = None,
    notes: dict | None = None,
) -> BoundReport:
    """Assemble a report from ``(n, value, bound[, r[, label]])`` rows.

    Margins are ``bound - value``.  The report passes when every margin is at
    least ``-tol``; an index counts as attained when its margin is within
    ``attain_tol`` of zero, and only passing reports can be attained.
    """
    tol = TOL.pass_tol if tol is None else tol
    attain_tol = TOL.attain_tol if attain_tol is None else attain_tol
    entries = []
    for row in rows:
        n, value, bound = row[:3]
        r = float(row[3]) if len(row) > 3 and row[3] is not None else None
        label = str(row[4]) if len(row) > 4 else ""
        margin = float(bound) - float(value)
        entries.append(
            IndexEntry(int(n), float(value), float(bound), margin, abs(margin) <= attain_tol, r, label)
        )
    if entries:
        worst = min(entries, key=lambda e: e.margin)
        aggregate = {"value": worst.value, "bound": worst.bound, "margin": worst.margin}
    else:
        aggregate = {"value": 0.0, "bound": 0.0, "margin": float("inf")}
    passed = all(e.margin >= -tol for e in entries) and bool(
        np.isfinite(aggregate["margin"]) or not entries
    )
    attained = passed and any(e.attained for e in entries)
    return BoundReport(
        check_name=check_name,
        lam=None if lam is None else float(lam),
        per_index=tuple(entries),
        aggregate=aggregate,
        passed=passed,
        attained=attained,
        witness=witness,
        notes=dict(notes or {}),
    )


def failed_report(check_name: str, lam: float | None, reason: str, witness: str = "") -> BoundReport:
    """A failing verdict for checks that could not be evaluated at all."""
    return BoundReport(
        check_name=check_name,
        lam=None if lam is None else float(lam),
        per_index=(),
        aggregate={"value": float("nan"), "bound": float("nan"), "margin": float("-inf")},
        passed=False,
        attained=False,
        witness=witness,
        notes={"error": reason},
    )

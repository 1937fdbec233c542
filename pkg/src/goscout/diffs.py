"""Differential analysis between two scans of the same module.

Occurrence identity across versions is (vector, file, detail) — line numbers
are deliberately excluded so whitespace-only refactors produce empty
added/removed sets. Deltas are plain count differences per vector.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .model import ModuleRef
from .report import SCHEMA_VERSION, ScanReport, _occurrence_obj
from .vectors import TAXONOMY, Occurrence

_VECTOR_ORDER = {v.id: i for i, v in enumerate(TAXONOMY)}


class ModuleMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class DiffRow:
    id: str
    before: int
    after: int

    @property
    def delta(self) -> int:
        return self.after - self.before


@dataclass
class DiffReport:
    baseline: ModuleRef
    candidate: ModuleRef
    rows: list[DiffRow]  # 12 entries, taxonomy order
    added: list[Occurrence] = field(default_factory=list)
    removed: list[Occurrence] = field(default_factory=list)
    loc_before: int = 0
    loc_after: int = 0


def _identity(occ: Occurrence) -> tuple[int, str, str]:
    return (_VECTOR_ORDER[occ.vector], occ.file, occ.detail)


def _multiset_only(
    primary: list[Occurrence], other: list[Occurrence]
) -> list[Occurrence]:
    """Occurrences of primary whose identity multiplicity exceeds other's."""
    budget = Counter(_identity(o) for o in primary)
    budget.subtract(Counter(_identity(o) for o in other))
    grouped: dict[tuple, list[Occurrence]] = defaultdict(list)
    for occ in primary:
        grouped[_identity(occ)].append(occ)
    out: list[Occurrence] = []
    for key, occs in grouped.items():
        extra = budget[key]
        if extra > 0:
            occs.sort(key=lambda o: (o.line, o.column))
            out.extend(occs[:extra])
    out.sort(key=lambda o: (_identity(o), o.line, o.column))
    return out


def diff_reports(a: ScanReport, b: ScanReport) -> DiffReport:
    """Compare baseline a against candidate b; module paths must agree."""
    if a.module.path != b.module.path:
        raise ModuleMismatchError(
            f"reports describe different modules: {a.module.path!r} vs {b.module.path!r}"
        )
    counts_a = a.counts()
    counts_b = b.counts()
    rows = [DiffRow(v.id, counts_a[v.id], counts_b[v.id]) for v in TAXONOMY]
    occs_a = [o for e in a.vectors for o in e.occurrences]
    occs_b = [o for e in b.vectors for o in e.occurrences]
    return DiffReport(
        baseline=a.module,
        candidate=b.module,
        rows=rows,
        added=_multiset_only(occs_b, occs_a),
        removed=_multiset_only(occs_a, occs_b),
        loc_before=a.loc,
        loc_after=b.loc,
    )


def _signed(n: int) -> str:
    return f"{n:+d}" if n else "0"


def _diff_occurrence_obj(occ: Occurrence) -> dict:
    return {"vector": occ.vector, **_occurrence_obj(occ)}


def diff_to_obj(d: DiffReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "baseline": {"path": d.baseline.path, "version": d.baseline.version},
        "candidate": {"path": d.candidate.path, "version": d.candidate.version},
        "rows": [
            {"id": r.id, "before": r.before, "after": r.after, "delta": r.delta}
            for r in d.rows
        ],
        "added": [_diff_occurrence_obj(o) for o in d.added],
        "removed": [_diff_occurrence_obj(o) for o in d.removed],
        "loc_before": d.loc_before,
        "loc_after": d.loc_after,
    }


def render_diff(d: DiffReport, fmt: str = "table") -> str | bytes:
    """Render as a fixed-width table (str) or as JSON bytes."""
    if fmt == "json":
        text = json.dumps(diff_to_obj(d), indent=2, ensure_ascii=False)
        return (text + "\n").encode("utf-8")
    if fmt != "table":
        raise ValueError(f"unknown diff format: {fmt!r}")
    lines = [f"baseline:  {d.baseline.label}", f"candidate: {d.candidate.label}"]
    header = f"{'ID':<4}{'BEFORE':>10}{'AFTER':>10}{'DELTA':>10}"
    lines.append(header)
    lines.append("-" * len(header))
    for r in d.rows:
        lines.append(f"{r.id:<4}{r.before:>10}{r.after:>10}{_signed(r.delta):>10}")
    lines.append("-" * len(header))
    lines.append(
        f"{'loc':<4}{d.loc_before:>10}{d.loc_after:>10}"
        f"{_signed(d.loc_after - d.loc_before):>10}"
    )
    if d.added:
        lines.append(f"added sites: {len(d.added)}")
    if d.removed:
        lines.append(f"removed sites: {len(d.removed)}")
    return "\n".join(lines) + "\n"

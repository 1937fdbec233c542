"""Scan reports: aggregation, bit-exact JSON rendering, and a plain table.

The JSON layout is frozen (schema_version "1") and rendering is pure: the
timestamp is injected by the caller, so identical report values always give
identical bytes. A JSON Schema for the format ships in goscout/schemas/.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .model import ModuleRef
from .vectors import TAXONOMY, VECTOR_BY_ID, Occurrence

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class ScanMeta:
    scanned_at: str  # ISO-8601 UTC, seconds precision (e.g. 2024-01-02T03:04:05Z)
    files_scanned: int
    files_failed: int
    loc: int


@dataclass
class VectorEntry:
    id: str
    name: str
    phase: str
    count: int
    occurrences: list[Occurrence] = field(default_factory=list)


@dataclass
class ScanReport:
    module: ModuleRef
    scanned_at: str
    files_scanned: int
    files_failed: int
    loc: int
    vectors: list[VectorEntry]  # always 12 entries, taxonomy order

    def counts(self) -> dict[str, int]:
        return {e.id: e.count for e in self.vectors}


def aggregate(
    module: ModuleRef, occurrences: list[Occurrence], meta: ScanMeta
) -> ScanReport:
    """Partition occurrences by vector into the fixed 12-entry report."""
    buckets: dict[str, list[Occurrence]] = {v.id: [] for v in TAXONOMY}
    for occ in occurrences:
        buckets[occ.vector].append(occ)
    entries = []
    for v in TAXONOMY:
        occs = sorted(buckets[v.id], key=lambda o: (o.file, o.line, o.column))
        entries.append(VectorEntry(v.id, v.name, v.phase, len(occs), occs))
    return ScanReport(
        module=module,
        scanned_at=meta.scanned_at,
        files_scanned=meta.files_scanned,
        files_failed=meta.files_failed,
        loc=meta.loc,
        vectors=entries,
    )


def _occurrence_obj(occ: Occurrence) -> dict:
    return {
        "package": occ.package_name,
        "file": occ.file,
        "line": occ.line,
        "column": occ.column,
        "detail": occ.detail,
    }


def report_to_obj(report: ScanReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "module": {"path": report.module.path, "version": report.module.version},
        "scanned_at": report.scanned_at,
        "files_scanned": report.files_scanned,
        "files_failed": report.files_failed,
        "loc": report.loc,
        "vectors": [
            {
                "id": e.id,
                "name": e.name,
                "phase": e.phase,
                "count": e.count,
                "occurrences": [_occurrence_obj(o) for o in e.occurrences],
            }
            for e in report.vectors
        ],
    }


def render_json(report: ScanReport) -> bytes:
    """UTF-8 JSON, two-space indent, LF endings, fixed member order."""
    text = json.dumps(report_to_obj(report), indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


class ReportFormatError(ValueError):
    pass


def parse_report(data: bytes | str) -> ScanReport:
    """Inverse of render_json; validates shape strictly enough to round-trip."""
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ReportFormatError(f"not a JSON report: {exc}") from exc
    try:
        module = ModuleRef(obj["module"]["path"], obj["module"]["version"])
        raw_vectors = obj["vectors"]
        if [v["id"] for v in raw_vectors] != [v.id for v in TAXONOMY]:
            raise ReportFormatError("vector entries missing or out of order")
        entries = []
        for raw in raw_vectors:
            vec = VECTOR_BY_ID[raw["id"]]
            occs = [
                Occurrence(
                    vector=vec.id,
                    package_name=o["package"],
                    file=o["file"],
                    line=o["line"],
                    column=o["column"],
                    detail=o["detail"],
                )
                for o in raw["occurrences"]
            ]
            if raw["count"] != len(occs):
                raise ReportFormatError(f"count mismatch for {vec.id}")
            entries.append(VectorEntry(vec.id, vec.name, vec.phase, len(occs), occs))
        return ScanReport(
            module=module,
            scanned_at=obj["scanned_at"],
            files_scanned=obj["files_scanned"],
            files_failed=obj["files_failed"],
            loc=obj["loc"],
            vectors=entries,
        )
    except (KeyError, TypeError) as exc:
        raise ReportFormatError(f"malformed report: {exc}") from exc


_NAME_WIDTH = max(len(v.name) for v in TAXONOMY)


def render_table(report: ScanReport) -> str:
    """Fixed-width per-vector counts with a files/LOC footer."""
    lines = [f"module: {report.module.label}"]
    header = f"{'ID':<4}{'NAME':<{_NAME_WIDTH + 2}}{'PHASE':<16}{'COUNT':>8}"
    lines.append(header)
    lines.append("-" * len(header))
    for e in report.vectors:
        lines.append(f"{e.id:<4}{e.name:<{_NAME_WIDTH + 2}}{e.phase:<16}{e.count:>8}")
    lines.append("-" * len(header))
    lines.append(
        f"files: {report.files_scanned} (failed: {report.files_failed})  loc: {report.loc}"
    )
    return "\n".join(lines) + "\n"

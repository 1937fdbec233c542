"""End-to-end scan of one module tree: discover, parse, analyze, aggregate."""

from __future__ import annotations

from datetime import datetime, timezone
from pathlib import Path

from .model import (
    DEFAULT_EXCLUDES,
    count_loc,
    discover_tree,
    read_module_identity,
)
from .report import ScanMeta, ScanReport, aggregate
from .vectors import analyze_module


def utc_now_label() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def build_excludes(
    extra: tuple[str, ...] | list[str] = (), include_testdata: bool = False
) -> tuple[str, ...]:
    base = [g for g in DEFAULT_EXCLUDES if not (include_testdata and g == "testdata")]
    return tuple(base) + tuple(extra)


def scan_module(
    root: Path | str,
    *,
    version: str | None = None,
    selected: set[str] | None = None,
    excludes: tuple[str, ...] | None = None,
    skip_generated: bool = False,
    scanned_at: str | None = None,
) -> ScanReport:
    """Scan the module tree rooted at root and return its report.

    scanned_at is injected for reproducible output; when None the current
    UTC time is used. Parse failures degrade gracefully and are visible as
    files_failed in the report.
    """
    root = Path(root)
    module = read_module_identity(root, version)
    units, strays = discover_tree(root, excludes, skip_generated=skip_generated)
    occurrences = analyze_module(units, selected)
    all_files = [sf for unit in units for sf in unit.go_files] + strays
    meta = ScanMeta(
        scanned_at=scanned_at or utc_now_label(),
        files_scanned=len(all_files),
        files_failed=sum(1 for sf in all_files if not sf.parse_ok),
        loc=count_loc(units) + sum(sf.line_count for sf in strays),
    )
    return aggregate(module, occurrences, meta)

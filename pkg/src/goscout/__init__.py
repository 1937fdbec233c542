"""goscout: supply-chain attack-surface measurement for Go modules."""

from .diffs import DiffReport, DiffRow, diff_reports, render_diff
from .model import (
    ModuleRef,
    PackageUnit,
    SourceFile,
    count_loc,
    discover_packages,
    parse_file,
    read_module_identity,
)
from .report import ScanReport, aggregate, parse_report, render_json, render_table
from .scan import scan_module
from .vectors import TAXONOMY, AttackVector, Occurrence, analyze_module

__version__ = "0.1.0"

__all__ = [
    "AttackVector",
    "DiffReport",
    "DiffRow",
    "ModuleRef",
    "Occurrence",
    "PackageUnit",
    "ScanReport",
    "SourceFile",
    "TAXONOMY",
    "aggregate",
    "analyze_module",
    "count_loc",
    "diff_reports",
    "discover_packages",
    "parse_file",
    "parse_report",
    "read_module_identity",
    "render_diff",
    "render_json",
    "render_table",
    "scan_module",
]

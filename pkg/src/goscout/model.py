"""Module discovery: walk a Go module tree, parse its sources, read identity.

A module tree is mapped to PackageUnits (one per directory and declared
package name) holding parsed SourceFiles plus any Go assembly files sitting
next to them. Discovery is deterministic: fixed walk order, sorted file
lists, and no symlink traversal.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from fnmatch import fnmatchcase
from pathlib import Path, PurePosixPath

from .gosyntax import GoFile, parse_go_source
from .lexer import GoSyntaxError

log = logging.getLogger(__name__)

DEFAULT_EXCLUDES = ("vendor", ".git", "testdata")

UNNAMED_MODULE = "(unnamed)"


@dataclass(frozen=True)
class ModuleRef:
    """Identity of a module under analysis.

    root is the local tree for freshly scanned modules and None for reports
    re-read from disk.
    """

    path: str
    version: str | None = None
    root: Path | None = None

    @property
    def label(self) -> str:
        return f"{self.path}@{self.version}" if self.version else self.path


@dataclass
class SourceFile:
    path: str  # relative to the module root, posix separators
    tree: GoFile | None
    parse_ok: bool
    parse_error: str | None
    line_count: int


@dataclass
class PackageUnit:
    import_dir: str  # relative to the module root, "." for the root itself
    package_name: str
    go_files: list[SourceFile] = field(default_factory=list)
    asm_files: list[str] = field(default_factory=list)
    root: Path | None = None  # base for resolving the relative paths


def parse_file(path: Path, rel: str | None = None) -> SourceFile:
    """Parse one .go file; never raises, failures yield parse_ok=False."""
    rel = rel if rel is not None else path.name
    try:
        raw = path.read_bytes()
    except OSError as exc:
        return SourceFile(rel, None, False, f"read error: {exc}", 0)
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        return SourceFile(rel, None, False, f"invalid UTF-8: {exc}", len(raw.splitlines()))
    line_count = len(text.splitlines())
    try:
        tree = parse_go_source(text)
    except GoSyntaxError as exc:
        return SourceFile(rel, None, False, str(exc), line_count)
    return SourceFile(rel, tree, True, None, line_count)


def _base_package(name: str) -> str:
    # External test packages ("foo_test") belong with their base package.
    if name.endswith("_test") and len(name) > len("_test"):
        return name[: -len("_test")]
    return name


def discover_tree(
    root: Path,
    excludes: tuple[str, ...] | list[str] | None = None,
    skip_generated: bool = False,
) -> tuple[list[PackageUnit], list[SourceFile]]:
    """Walk root and build PackageUnits.

    Returns (units, strays); strays are SourceFiles from directories where no
    file parsed well enough to name a package — they still count toward scan
    metadata so nothing is silently dropped.
    """
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"module root not readable: {root}")
    if excludes is None:
        excludes = DEFAULT_EXCLUDES
    units: list[PackageUnit] = []
    strays: list[SourceFile] = []

    for dirpath, dirnames, filenames in os.walk(root, followlinks=False):
        dirnames[:] = sorted(
            d
            for d in dirnames
            if not any(fnmatchcase(d, pat) for pat in excludes)
        )
        dpath = Path(dirpath)
        rel_dir = PurePosixPath(dpath.relative_to(root).as_posix())
        go_names = sorted(n for n in filenames if n.endswith(".go"))
        asm_names = sorted(n for n in filenames if n.endswith(".s"))
        if not go_names:
            continue
        parsed: list[SourceFile] = []
        for name in go_names:
            fpath = dpath / name
            if fpath.is_symlink():
                continue
            rel = str(rel_dir / name) if str(rel_dir) != "." else name
            sf = parse_file(fpath, rel)
            if skip_generated and sf.tree is not None and sf.tree.generated:
                continue
            parsed.append(sf)
        if not parsed:
            continue
        groups: dict[str, list[SourceFile]] = {}
        failed: list[SourceFile] = []
        for sf in parsed:
            if sf.tree is None:
                failed.append(sf)
            else:
                groups.setdefault(_base_package(sf.tree.package_name), []).append(sf)
        if not groups:
            strays.extend(failed)
            continue
        first_key = sorted(groups)[0]
        groups[first_key].extend(failed)  # keep failures attached, not dropped
        asm_rel = [
            str(rel_dir / n) if str(rel_dir) != "." else n
            for n in asm_names
            if not (dpath / n).is_symlink()
        ]
        for key in sorted(groups):
            files = sorted(groups[key], key=lambda sf: sf.path)
            declared = sorted(
                {sf.tree.package_name for sf in files if sf.tree is not None}
            )
            name = key if key in declared or not declared else declared[0]
            units.append(
                PackageUnit(
                    import_dir=str(rel_dir),
                    package_name=name,
                    go_files=files,
                    asm_files=list(asm_rel),
                    root=root,
                )
            )
    units.sort(key=lambda u: (u.import_dir, u.package_name))
    return units, strays


def discover_packages(
    root: Path, excludes: tuple[str, ...] | list[str] | None = None
) -> list[PackageUnit]:
    """Discover every package directory under root (root included)."""
    units, _ = discover_tree(root, excludes)
    return units


def read_module_identity(root: Path, version: str | None = None) -> ModuleRef:
    """Read the module path from go.mod; "(unnamed)" for manifest-less trees.

    The version always comes from the caller, never from the manifest.
    """
    root = Path(root)
    gomod = root / "go.mod"
    if gomod.is_file():
        try:
            text = gomod.read_text(encoding="utf-8", errors="replace")
        except OSError as exc:
            log.warning("cannot read %s: %s", gomod, exc)
            text = ""
        for raw_line in text.splitlines():
            line = raw_line.strip()
            if not line or line.startswith("//"):
                continue
            if line.startswith("module"):
                rest = line[len("module") :]
                if rest[:1] not in (" ", "\t"):
                    continue
                token = rest.split("//", 1)[0].strip().split()
                if token:
                    return ModuleRef(token[0].strip('"'), version, root)
        log.warning("go.mod without module directive under %s", root)
        return ModuleRef(UNNAMED_MODULE, version, root)
    return ModuleRef(UNNAMED_MODULE, version, root)


def count_loc(packages: list[PackageUnit]) -> int:
    """Total line count over all Go files, parsed or not."""
    return sum(sf.line_count for unit in packages for sf in unit.go_files)

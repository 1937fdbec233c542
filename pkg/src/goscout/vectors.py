"""The twelve attack-vector analyzers.

Each analyzer matches one syntactic pattern over a parsed file; two
pre-processing collectors (polymorphic methods, assembly symbols) feed the
dynamic-dispatch and assembly-call analyzers. All matching is purely
syntactic: qualified calls are matched on the qualifier text as written, so
aliased imports are missed and dot imports over-match by design (documented
in the README).
"""

from __future__ import annotations

import bisect
import logging
import re
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path

from .model import PackageUnit, SourceFile

log = logging.getLogger(__name__)

DETAIL_LIMIT = 200

PRE_BUILD = "pre_build"
INITIALIZATION = "initialization"
EXECUTION = "execution"


@dataclass(frozen=True)
class AttackVector:
    id: str
    name: str
    phase: str


TAXONOMY: tuple[AttackVector, ...] = (
    AttackVector("P1", "static_code_generation", PRE_BUILD),
    AttackVector("P2", "testing_functions", PRE_BUILD),
    AttackVector("I1", "global_var_init", INITIALIZATION),
    AttackVector("I2", "init_hook", INITIALIZATION),
    AttackVector("E1", "constructor", EXECUTION),
    AttackVector("E2", "reflection", EXECUTION),
    AttackVector("E3", "interface_polymorphism", EXECUTION),
    AttackVector("E4", "unsafe_pointer", EXECUTION),
    AttackVector("E5", "cgo_linking", EXECUTION),
    AttackVector("E6", "assembly_linking", EXECUTION),
    AttackVector("E7", "plugin_linking", EXECUTION),
    AttackVector("E8", "external_exec", EXECUTION),
)

VECTOR_BY_ID = {v.id: v for v in TAXONOMY}
VECTOR_IDS = tuple(v.id for v in TAXONOMY)
_VECTOR_ORDER = {v.id: i for i, v in enumerate(TAXONOMY)}

# Vectors whose matches name a callee; their detail is never empty.
INVOCATION_VECTORS = frozenset({"E1", "E3", "E4", "E5", "E6", "E7", "E8"})


@dataclass(frozen=True, order=True)
class Occurrence:
    vector: str
    package_name: str
    file: str
    line: int
    column: int
    detail: str


# P1 ------------------------------------------------------------------------

GENERATE_DIRECTIVE = "//go:generate"


def analyze_go_generate(sf: SourceFile, package_name: str) -> list[Occurrence]:
    """Generator directives: comments starting exactly with //go:generate."""
    out = []
    for c in sf.tree.comments:
        if c.text.startswith(GENERATE_DIRECTIVE):
            out.append(
                Occurrence("P1", package_name, sf.path, c.line, c.col, c.text[:DETAIL_LIMIT])
            )
    return out


# P2 ------------------------------------------------------------------------

_TEST_PREFIXES = ("Test", "Benchmark", "Example", "Fuzz")


def analyze_test_functions(sf: SourceFile, package_name: str) -> list[Occurrence]:
    """Functions the test runner would pick up, matched by name prefix only."""
    out = []
    in_test_file = sf.path.endswith("_test.go")
    for fd in sf.tree.funcs:
        if fd.name.startswith(_TEST_PREFIXES):
            detail = fd.name + (" [test-file]" if in_test_file else "")
            out.append(Occurrence("P2", package_name, sf.path, fd.line, fd.col, detail))
    return out


# I1 ------------------------------------------------------------------------


def analyze_global_vars(sf: SourceFile, package_name: str) -> list[Occurrence]:
    """Package-level var specs whose initializer contains a call expression.

    One occurrence per specification, however many names or calls it holds;
    syntactic type conversions count like calls (they are indistinguishable
    without type information).
    """
    out = []
    call_positions = sorted(c.open_idx for c in sf.tree.calls)
    if not call_positions:
        return out
    for spec in sf.tree.var_specs:
        if spec.rhs_range is None:
            continue
        lo, hi = spec.rhs_range
        i = bisect.bisect_left(call_positions, lo)
        if i < len(call_positions) and call_positions[i] < hi:
            detail = ", ".join(spec.names)[:DETAIL_LIMIT]
            out.append(Occurrence("I1", package_name, sf.path, spec.line, spec.col, detail))
    return out


# I2 ------------------------------------------------------------------------


def analyze_init_funcs(sf: SourceFile, package_name: str) -> list[Occurrence]:
    """Top-level functions named init with no receiver; all of them count."""
    return [
        Occurrence("I2", package_name, sf.path, fd.line, fd.col, "init")
        for fd in sf.tree.funcs
        if fd.name == "init" and not fd.is_method
    ]


# E1 ------------------------------------------------------------------------

_NEW_NAME_RE = re.compile(r"^New($|[A-Z])")


def analyze_constructors(sf: SourceFile, package_name: str) -> list[Occurrence]:
    """Calls to New or New<Upper>... — Go's constructor naming convention."""
    out = []
    for call in sf.tree.calls:
        if call.name and _NEW_NAME_RE.match(call.name):
            out.append(
                Occurrence(
                    "E1",
                    package_name,
                    sf.path,
                    call.line,
                    call.col,
                    call.callee_text[:DETAIL_LIMIT],
                )
            )
    return out


# E2 ------------------------------------------------------------------------


def analyze_reflect(sf: SourceFile, package_name: str) -> list[Occurrence]:
    """Imports of the reflect package (aliased or dot imports included)."""
    return [
        Occurrence("E2", package_name, sf.path, imp.line, imp.col, "import reflect")
        for imp in sf.tree.imports
        if imp.path == "reflect"
    ]


# E3 ------------------------------------------------------------------------

PolymorphicMethodSet = dict[str, set[str]]


def collect_polymorphic_methods(packages: list[PackageUnit]) -> PolymorphicMethodSet:
    """Method name -> receiver base types, keeping names with >= 2 receivers.

    Pointer/generic wrappers are stripped, so (T) and (*T) are one receiver.
    """
    methods: dict[str, set[str]] = defaultdict(set)
    for unit in packages:
        for sf in unit.go_files:
            if sf.tree is None:
                continue
            for fd in sf.tree.funcs:
                if fd.recv_base:
                    methods[fd.name].add(fd.recv_base)
    return {name: bases for name, bases in methods.items() if len(bases) >= 2}


def analyze_interface_calls(
    sf: SourceFile, package_name: str, methods: PolymorphicMethodSet
) -> list[Occurrence]:
    """Dynamically dispatched method calls: receiver.M(...) with M polymorphic.

    Calls whose receiver identifier names an import are package-qualified
    function calls, not dispatch, and are excluded.
    """
    out = []
    if not methods:
        return out
    import_names = sf.tree.import_names()
    for call in sf.tree.calls:
        if not call.is_selector or call.name not in methods:
            continue
        if call.receiver_is_ident and call.receiver_text in import_names:
            continue
        detail = f"{call.receiver_text}.{call.name}"[:DETAIL_LIMIT]
        out.append(Occurrence("E3", package_name, sf.path, call.line, call.col, detail))
    return out


# E4 ------------------------------------------------------------------------


def analyze_unsafe(sf: SourceFile, package_name: str) -> list[Occurrence]:
    """Call-shaped expressions qualified with unsafe (Pointer, Add, Slice...)."""
    return [
        Occurrence("E4", package_name, sf.path, c.line, c.col, c.name[:DETAIL_LIMIT])
        for c in sf.tree.calls
        if c.qualifier == "unsafe"
    ]


# E5 ------------------------------------------------------------------------


def analyze_cgo(sf: SourceFile, package_name: str) -> list[Occurrence]:
    """C.<name>(...) calls in files that import the "C" pseudo-package."""
    if "C" not in sf.tree.import_paths():
        return []
    return [
        Occurrence(
            "E5", package_name, sf.path, c.line, c.col, f"C.{c.name}"[:DETAIL_LIMIT]
        )
        for c in sf.tree.calls
        if c.qualifier == "C"
    ]


# E6 ------------------------------------------------------------------------

AsmFunctionSet = dict[str, tuple[str, int]]

# TEXT directive opening a Go assembly function: optional symbol prefix ending
# in a middle dot (U+00B7, legacy U+2219), identifier, then (SB).
_TEXT_DIRECTIVE_RE = re.compile(
    r"^\s*TEXT\s+(?:[^\s(]*[·∙])?([A-Za-z_][A-Za-z0-9_]*)\s*\(SB\)"
)


def collect_asm_functions(asm_files: list[str], root: Path | None = None) -> AsmFunctionSet:
    """Symbols defined by TEXT directives in .s files, with their location."""
    symbols: AsmFunctionSet = {}
    for rel in asm_files:
        path = Path(root, rel) if root is not None else Path(rel)
        try:
            text = path.read_text(encoding="utf-8", errors="replace")
        except OSError as exc:
            log.warning("skipping unreadable assembly file %s: %s", path, exc)
            continue
        for lineno, line in enumerate(text.splitlines(), start=1):
            m = _TEXT_DIRECTIVE_RE.match(line)
            if m:
                symbols.setdefault(m.group(1), (rel, lineno))
    return symbols


def analyze_asm_calls(
    sf: SourceFile, package_name: str, asm: AsmFunctionSet
) -> list[Occurrence]:
    """Bare-identifier calls resolving to assembly symbols of the same package."""
    out = []
    if not asm:
        return out
    for call in sf.tree.calls:
        if call.name and not call.is_selector and call.name in asm:
            asm_file, _ = asm[call.name]
            detail = f"{call.name} ({asm_file})"[:DETAIL_LIMIT]
            out.append(Occurrence("E6", package_name, sf.path, call.line, call.col, detail))
    return out


# E7 ------------------------------------------------------------------------


def analyze_plugin(sf: SourceFile, package_name: str) -> list[Occurrence]:
    """plugin.Open(...) call sites; detail carries the plugin path expression."""
    return [
        Occurrence(
            "E7",
            package_name,
            sf.path,
            c.line,
            c.col,
            sf.tree.call_args_text(c, DETAIL_LIMIT),
        )
        for c in sf.tree.calls
        if c.qualifier == "plugin" and c.name == "Open"
    ]


# E8 ------------------------------------------------------------------------

EXEC_CALLEES = frozenset(
    {
        ("exec", "Command"),
        ("exec", "CommandContext"),
        ("syscall", "ForkExec"),
        ("syscall", "Exec"),
        ("os", "StartProcess"),
    }
)


def analyze_exec(sf: SourceFile, package_name: str) -> list[Occurrence]:
    """Process-spawning calls: exec.Command and friends, matched textually."""
    return [
        Occurrence(
            "E8",
            package_name,
            sf.path,
            c.line,
            c.col,
            f"{c.qualifier}.{c.name}"[:DETAIL_LIMIT],
        )
        for c in sf.tree.calls
        if c.qualifier and (c.qualifier, c.name) in EXEC_CALLEES
    ]


# Module-level driver --------------------------------------------------------


def analyze_module(
    packages: list[PackageUnit], selected: set[str] | frozenset[str] | None = None
) -> list[Occurrence]:
    """Run the selected analyzers over every parsed file of every package.

    The module-wide polymorphic-method collector and per-package assembly
    collectors run first; failed files contribute nothing. Output order is
    (file, line, column, vector id).
    """
    if selected is None:
        selected = frozenset(VECTOR_IDS)
    unknown = set(selected) - set(VECTOR_IDS)
    if unknown:
        raise ValueError(f"unknown vector ids: {', '.join(sorted(unknown))}")

    methods: PolymorphicMethodSet = {}
    if "E3" in selected:
        methods = collect_polymorphic_methods(packages)

    out: list[Occurrence] = []
    for unit in packages:
        asm: AsmFunctionSet = {}
        if "E6" in selected and unit.asm_files:
            asm = collect_asm_functions(unit.asm_files, unit.root)
        for sf in unit.go_files:
            if not sf.parse_ok:
                continue
            pkg = unit.package_name
            if "P1" in selected:
                out.extend(analyze_go_generate(sf, pkg))
            if "P2" in selected:
                out.extend(analyze_test_functions(sf, pkg))
            if "I1" in selected:
                out.extend(analyze_global_vars(sf, pkg))
            if "I2" in selected:
                out.extend(analyze_init_funcs(sf, pkg))
            if "E1" in selected:
                out.extend(analyze_constructors(sf, pkg))
            if "E2" in selected:
                out.extend(analyze_reflect(sf, pkg))
            if "E3" in selected:
                out.extend(analyze_interface_calls(sf, pkg, methods))
            if "E4" in selected:
                out.extend(analyze_unsafe(sf, pkg))
            if "E5" in selected:
                out.extend(analyze_cgo(sf, pkg))
            if "E6" in selected:
                out.extend(analyze_asm_calls(sf, pkg, asm))
            if "E7" in selected:
                out.extend(analyze_plugin(sf, pkg))
            if "E8" in selected:
                out.extend(analyze_exec(sf, pkg))
    out.sort(key=lambda o: (o.file, o.line, o.column, o.vector))
    return out

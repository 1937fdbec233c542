import json
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from goscout.model import ModuleRef
from goscout.report import (
    ReportFormatError,
    ScanMeta,
    aggregate,
    parse_report,
    render_json,
    render_table,
    report_to_obj,
)
from goscout.scan import scan_module
from goscout.vectors import VECTOR_IDS, Occurrence

from conftest import FIXTURES, GOLDEN, write_tree

SCHEMA = json.loads(
    (Path(__file__).resolve().parent.parent / "src/goscout/schemas/scan_report.schema.json").read_text()
)

META = ScanMeta("2024-01-01T00:00:00Z", files_scanned=3, files_failed=0, loc=42)
MOD = ModuleRef("example.com/demo", "v1.0.0")


occurrences_st = st.lists(
    st.builds(
        Occurrence,
        vector=st.sampled_from(VECTOR_IDS),
        package_name=st.sampled_from(["main", "util", "core"]),
        file=st.sampled_from(["a.go", "sub/b.go", "c_test.go"]),
        line=st.integers(1, 400),
        column=st.integers(1, 120),
        detail=st.text(
            alphabet=st.characters(blacklist_categories=("Cs",), blacklist_characters="\x00"),
            max_size=24,
        ),
    ),
    max_size=40,
)


def test_aggregate_empty_gives_twelve_zero_entries():
    report = aggregate(MOD, [], META)
    assert [e.id for e in report.vectors] == list(VECTOR_IDS)
    assert all(e.count == 0 and e.occurrences == [] for e in report.vectors)


def test_aggregate_partition_counts():
    occs = [
        Occurrence("E8", "m", "a.go", 3, 1, "exec.Command"),
        Occurrence("E8", "m", "a.go", 9, 1, "syscall.Exec"),
        Occurrence("P1", "m", "b.go", 1, 1, "//go:generate x"),
    ]
    report = aggregate(MOD, occs, META)
    counts = report.counts()
    assert counts["P1"] == 1 and counts["E8"] == 2
    assert sum(counts.values()) == 3


def test_aggregate_idempotent():
    occs = [Occurrence("I2", "m", "a.go", 5, 1, "init")]
    r1 = aggregate(MOD, occs, META)
    r2 = aggregate(MOD, occs, META)
    assert render_json(r1) == render_json(r2)


@given(occurrences_st)
def test_count_conservation(occs):
    report = aggregate(MOD, occs, META)
    assert sum(e.count for e in report.vectors) == len(occs)
    assert all(e.count == len(e.occurrences) for e in report.vectors)


@given(occurrences_st)
def test_render_parse_round_trip(occs):
    report = aggregate(MOD, occs, META)
    again = parse_report(render_json(report))
    assert render_json(again) == render_json(report)
    assert again.counts() == report.counts()


@given(occurrences_st)
def test_rendered_documents_validate_against_schema(occs):
    report = aggregate(MOD, occs, META)
    jsonschema.validate(json.loads(render_json(report)), SCHEMA)


def test_json_bytes_shape():
    data = render_json(aggregate(MOD, [], META))
    text = data.decode("utf-8")
    assert "\r" not in text and text.endswith("\n")
    assert text.splitlines()[1] == '  "schema_version": "1",'
    keys = list(json.loads(text).keys())
    assert keys == [
        "schema_version",
        "module",
        "scanned_at",
        "files_scanned",
        "files_failed",
        "loc",
        "vectors",
    ]


def test_zero_report_matches_golden(tmp_path):
    write_tree(tmp_path, {"main.go": "package main\n\nfunc main() {}\n"})
    report = scan_module(tmp_path, scanned_at="2024-01-01T00:00:00Z")
    assert render_json(report) == (GOLDEN / "empty_scan.json").read_bytes()


def test_fixture_scan_validates_against_schema():
    report = scan_module(FIXTURES / "e8_exec", scanned_at="2024-01-01T00:00:00Z")
    jsonschema.validate(json.loads(render_json(report)), SCHEMA)


def test_parse_report_rejects_garbage():
    with pytest.raises(ReportFormatError):
        parse_report(b"not json")
    with pytest.raises(ReportFormatError):
        parse_report(b'{"module": {"path": "x", "version": null}}')


def test_table_zero_report():
    table = render_table(aggregate(MOD, [], META))
    rows = [l for l in table.splitlines() if l[:2] in VECTOR_IDS]
    assert len(rows) == 12
    assert all(row.rstrip().endswith("0") for row in rows)


def test_table_counts_right_aligned_no_separators():
    occs = [Occurrence("P2", "m", "a.go", i, 1, f"Test{i}") for i in range(1, 1201)]
    table = render_table(aggregate(MOD, occs, META))
    (p2_row,) = [l for l in table.splitlines() if l.startswith("P2")]
    assert p2_row.rstrip().endswith(" 1200")
    assert "," not in p2_row


def test_table_row_order_matches_json_order():
    report = aggregate(MOD, [], META)
    table_ids = [l[:2] for l in render_table(report).splitlines() if l[:2] in VECTOR_IDS]
    json_ids = [v["id"] for v in report_to_obj(report)["vectors"]]
    assert table_ids == json_ids


def test_renderer_agreement_on_counts():
    occs = [
        Occurrence("E5", "m", "a.go", 4, 2, "C.hello"),
        Occurrence("E6", "m", "b.go", 9, 14, "Add (add.s)"),
    ]
    report = aggregate(MOD, occs, META)
    obj = json.loads(render_json(report))
    json_counts = {v["id"]: v["count"] for v in obj["vectors"]}
    table = render_table(report)
    for line in table.splitlines():
        if line[:2] in VECTOR_IDS:
            assert int(line.split()[-1]) == json_counts[line[:2]]
    assert json_counts["E5"] == 1 and json_counts["E6"] == 1

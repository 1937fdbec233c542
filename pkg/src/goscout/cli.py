"""Command-line interface.

Exit codes are stable for CI use: 0 success, 1 fatal error, 2 parse-degraded
scan under --strict, 3 diff --fail-on-increase tripped. Batch (corpus) mode
never aborts on a single module failure.
"""

from __future__ import annotations

import csv
import io
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import click

from .diffs import ModuleMismatchError, diff_reports, render_diff
from .fetch import ProxyConfig, ProxyError, escape_module_path, fetch_module, resolve_versions
from .report import ReportFormatError, ScanReport, parse_report, render_json, render_table
from .scan import build_excludes, scan_module, utc_now_label
from .vectors import VECTOR_IDS


def _fail(message: str, code: int = 1):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _parse_vectors(spec: str | None) -> set[str] | None:
    if spec is None:
        return None
    chosen = set()
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        if token not in VECTOR_IDS:
            _fail(f"unknown vector id: {token}")
        chosen.add(token)
    return chosen or None


def _proxy_config(proxy: str | None, cache_dir: str | None) -> ProxyConfig:
    kwargs = {"base_url": ProxyConfig.resolve_base_url(proxy)}
    if cache_dir:
        kwargs["cache_dir"] = Path(cache_dir)
    return ProxyConfig(**kwargs)


def _split_target(target: str) -> tuple[str, str]:
    path, sep, version = target.rpartition("@")
    if not sep or not path or not version:
        _fail(f"target {target!r} is neither a local path nor module@version")
    return path, version


@dataclass
class ScanFlags:
    vectors: set[str] | None
    excludes: tuple[str, ...]
    skip_generated: bool
    timestamp: str | None


def _scan_target(
    target: str, flags: ScanFlags, proxy: str | None, cache_dir: str | None
) -> ScanReport:
    if Path(target).exists():
        root, version = Path(target), None
    else:
        mod_path, version = _split_target(target)
        cfg = _proxy_config(proxy, cache_dir)
        root = fetch_module(mod_path, version, cfg)
    return scan_module(
        root,
        version=version,
        selected=flags.vectors,
        excludes=flags.excludes,
        skip_generated=flags.skip_generated,
        scanned_at=flags.timestamp,
    )


def _scan_options(fn):
    fn = click.option(
        "--vectors", default=None, help="Comma-separated vector ids to run (default all)."
    )(fn)
    fn = click.option(
        "--exclude",
        multiple=True,
        help="Additional directory-name glob to skip (repeatable).",
    )(fn)
    fn = click.option(
        "--include-testdata",
        is_flag=True,
        help="Do not skip testdata directories.",
    )(fn)
    fn = click.option(
        "--skip-generated", is_flag=True, help="Skip machine-generated files."
    )(fn)
    fn = click.option("--proxy", default=None, help="Module proxy base URL.")(fn)
    fn = click.option("--cache-dir", default=None, help="Download cache directory.")(fn)
    fn = click.option("--timestamp", default=None, hidden=True)(fn)
    return fn


@click.group()
@click.version_option(package_name="goscout")
def main():
    """Measure the supply-chain attack surface of Go modules."""


@main.command("scan")
@click.argument("target")
@click.option("--json", "json_path", default=None, help="Also write the JSON report here.")
@click.option("--strict", is_flag=True, help="Exit 2 when any file failed to parse.")
@click.option("--module-version", default=None, help="Version label for local scans.")
@_scan_options
def cmd_scan(
    target,
    json_path,
    strict,
    module_version,
    vectors,
    exclude,
    include_testdata,
    skip_generated,
    proxy,
    cache_dir,
    timestamp,
):
    """Scan a module tree (local path or module@version) and print the table."""
    flags = ScanFlags(
        vectors=_parse_vectors(vectors),
        excludes=build_excludes(exclude, include_testdata),
        skip_generated=skip_generated,
        timestamp=timestamp,
    )
    try:
        report = _scan_target(target, flags, proxy, cache_dir)
    except (ProxyError, FileNotFoundError) as exc:
        _fail(str(exc))
    if module_version and report.module.version is None:
        report.module = type(report.module)(
            report.module.path, module_version, report.module.root
        )
    if json_path:
        Path(json_path).write_bytes(render_json(report))
    click.echo(render_table(report), nl=False)
    if strict and report.files_failed > 0:
        click.echo(f"warning: {report.files_failed} file(s) failed to parse", err=True)
        sys.exit(2)


def _load_side(
    value: str, flags: ScanFlags, proxy: str | None, cache_dir: str | None
) -> ScanReport:
    p = Path(value)
    if p.is_file():
        try:
            return parse_report(p.read_bytes())
        except ReportFormatError as exc:
            _fail(f"{value}: {exc}")
    return _scan_target(value, flags, proxy, cache_dir)


@main.command("diff")
@click.argument("baseline")
@click.argument("candidate")
@click.option("--json", "json_path", default=None, help="Write the diff JSON here.")
@click.option(
    "--fail-on-increase",
    is_flag=True,
    help="Exit 3 when any vector count increased.",
)
@_scan_options
def cmd_diff(
    baseline,
    candidate,
    json_path,
    fail_on_increase,
    vectors,
    exclude,
    include_testdata,
    skip_generated,
    proxy,
    cache_dir,
    timestamp,
):
    """Compare two scans (report files, local trees, or module@version)."""
    flags = ScanFlags(
        vectors=_parse_vectors(vectors),
        excludes=build_excludes(exclude, include_testdata),
        skip_generated=skip_generated,
        timestamp=timestamp,
    )
    try:
        rep_a = _load_side(baseline, flags, proxy, cache_dir)
        rep_b = _load_side(candidate, flags, proxy, cache_dir)
        d = diff_reports(rep_a, rep_b)
    except ModuleMismatchError as exc:
        _fail(str(exc))
    except (ProxyError, FileNotFoundError) as exc:
        _fail(str(exc))
    if json_path:
        Path(json_path).write_bytes(render_diff(d, "json"))
    click.echo(render_diff(d, "table"), nl=False)
    if fail_on_increase and any(r.delta > 0 for r in d.rows):
        sys.exit(3)


CSV_HEADER = [
    "module",
    "version",
    *VECTOR_IDS,
    "loc",
    "files",
    "status",
]


@dataclass
class CorpusRow:
    module: str
    version: str
    counts: dict
    loc: int
    files_scanned: int
    status: str  # ok | fetch_error | parse_degraded

    def as_list(self) -> list:
        return [
            self.module,
            self.version,
            *[self.counts.get(v, 0) for v in VECTOR_IDS],
            self.loc,
            self.files_scanned,
            self.status,
        ]


def _corpus_entry(
    mod_path: str,
    version: str,
    flags: ScanFlags,
    cfg: ProxyConfig,
    report_dir: Path | None,
) -> CorpusRow:
    try:
        root = fetch_module(mod_path, version, cfg)
        report = scan_module(
            root,
            version=version,
            selected=flags.vectors,
            excludes=flags.excludes,
            skip_generated=flags.skip_generated,
            scanned_at=flags.timestamp,
        )
    except (ProxyError, OSError) as exc:
        click.echo(f"warning: {mod_path}@{version}: {exc}", err=True)
        return CorpusRow(mod_path, version, {}, 0, 0, "fetch_error")
    if report_dir is not None:
        report_dir.mkdir(parents=True, exist_ok=True)
        name = f"{escape_module_path(mod_path).replace('/', '_')}@{version}.json"
        (report_dir / name).write_bytes(render_json(report))
    degraded = report.files_failed > 0 or report.files_scanned == 0
    return CorpusRow(
        mod_path,
        version,
        report.counts(),
        report.loc,
        report.files_scanned,
        "parse_degraded" if degraded else "ok",
    )


@main.command("corpus")
@click.argument("list_file")
@click.option("--csv", "csv_path", default=None, help="Write the CSV here (default stdout).")
@click.option("--report-dir", default=None, help="Archive per-module JSON reports here.")
@click.option("--jobs", default=1, show_default=True, help="Concurrent module scans.")
@_scan_options
def cmd_corpus(
    list_file,
    csv_path,
    report_dir,
    jobs,
    vectors,
    exclude,
    include_testdata,
    skip_generated,
    proxy,
    cache_dir,
    timestamp,
):
    """Fetch and scan every module@version listed in LIST_FILE; emit a CSV.

    Lines starting with # and blank lines are ignored. A failing module gets
    a fetch_error row with zeroed counts; the batch keeps going.
    """
    flags = ScanFlags(
        vectors=_parse_vectors(vectors),
        excludes=build_excludes(exclude, include_testdata),
        skip_generated=skip_generated,
        timestamp=timestamp,
    )
    try:
        lines = Path(list_file).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        _fail(str(exc))
    try:
        cfg = _proxy_config(proxy, cache_dir)
    except ProxyError as exc:
        _fail(str(exc))
    entries = []
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        mod_path, _, version = line.rpartition("@")
        if not mod_path or not version:
            click.echo(f"warning: skipping malformed corpus line: {line!r}", err=True)
            continue
        entries.append((mod_path, version))
    rdir = Path(report_dir) if report_dir else None

    def run(entry):
        return _corpus_entry(entry[0], entry[1], flags, cfg, rdir)

    if jobs > 1 and len(entries) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(run, entries))
    else:
        rows = [run(e) for e in entries]

    total = CorpusRow("TOTAL", "", {}, 0, 0, "")
    for row in rows:
        if row.status != "ok":
            continue
        for v in VECTOR_IDS:
            total.counts[v] = total.counts.get(v, 0) + row.counts.get(v, 0)
        total.loc += row.loc
        total.files_scanned += row.files_scanned
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.as_list())
    writer.writerow(total.as_list())
    if csv_path:
        Path(csv_path).write_text(buf.getvalue(), encoding="utf-8")
    else:
        click.echo(buf.getvalue(), nl=False)


@main.command("fetch")
@click.argument("target")
@click.option("--proxy", default=None, help="Module proxy base URL.")
@click.option("--cache-dir", default=None, help="Download cache directory.")
def cmd_fetch(target, proxy, cache_dir):
    """Resolve or download a module.

    With module@version, download the archive into the cache and print the
    extraction root; with a bare module path, print its known versions.
    """
    try:
        cfg = _proxy_config(proxy, cache_dir)
        if "@" in target:
            mod_path, version = _split_target(target)
            click.echo(str(fetch_module(mod_path, version, cfg)))
        else:
            for version in resolve_versions(target, cfg):
                click.echo(version)
    except ProxyError as exc:
        _fail(str(exc))


if __name__ == "__main__":
    main()

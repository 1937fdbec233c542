#!/usr/bin/env python3
"""Scan several releases of one module and print vector counts side by side.

Network-dependent: downloads each release from the module proxy (GOPROXY or
--proxy). Example:

    python scripts/compare_releases.py k8s.io/kubernetes \
        v1.26.0 v1.27.0 v1.28.0 v1.29.0 v1.30.2 --exclude-vendor=no
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from goscout.fetch import ProxyConfig, fetch_module
from goscout.report import render_json
from goscout.scan import scan_module
from goscout.vectors import TAXONOMY


def parse_args():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("module", help="module path, e.g. k8s.io/kubernetes")
    ap.add_argument("versions", nargs="+", help="versions to compare, oldest first")
    ap.add_argument("--proxy", default=None, help="module proxy base URL")
    ap.add_argument("--cache-dir", default=None, help="download cache directory")
    ap.add_argument("--report-dir", default=None, help="write per-version JSON here")
    ap.add_argument(
        "--exclude-vendor",
        choices=("yes", "no"),
        default="no",
        help="skip vendored code (reference counts include it)",
    )
    return ap.parse_args()


def main() -> int:
    args = parse_args()
    kwargs = {"base_url": ProxyConfig.resolve_base_url(args.proxy)}
    if args.cache_dir:
        kwargs["cache_dir"] = Path(args.cache_dir)
    cfg = ProxyConfig(**kwargs)
    excludes = (".git", "vendor") if args.exclude_vendor == "yes" else (".git",)

    reports = []
    for version in args.versions:
        print(f"fetching {args.module}@{version} ...", file=sys.stderr)
        root = fetch_module(args.module, version, cfg)
        print(f"scanning {root} ...", file=sys.stderr)
        report = scan_module(root, version=version, excludes=excludes)
        reports.append(report)
        if args.report_dir:
            out = Path(args.report_dir)
            out.mkdir(parents=True, exist_ok=True)
            name = f"{args.module.replace('/', '_')}@{version}.json"
            (out / name).write_bytes(render_json(report))

    width = max(len(v) for v in args.versions) + 2
    header = f"{'':<4}" + "".join(f"{v:>{width}}" for v in args.versions)
    print(header)
    print("-" * len(header))
    for vec in TAXONOMY:
        cells = "".join(f"{r.counts()[vec.id]:>{width}}" for r in reports)
        print(f"{vec.id:<4}{cells}")
    print("-" * len(header))
    print(f"{'loc':<4}" + "".join(f"{r.loc:>{width}}" for r in reports))
    return 0


if __name__ == "__main__":
    sys.exit(main())

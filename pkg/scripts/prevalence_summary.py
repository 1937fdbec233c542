#!/usr/bin/env python3
"""Summarize a corpus CSV (from `goscout corpus`) into per-vector totals.

Prints total occurrences per vector across all successfully scanned modules,
most frequent first, plus how many modules contain each vector at all.
Optionally renders a bar chart with --plot.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from goscout.vectors import VECTOR_BY_ID, VECTOR_IDS


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv_file", help="CSV produced by `goscout corpus`")
    ap.add_argument("--plot", default=None, help="write a bar chart PNG here")
    args = ap.parse_args()

    totals = {v: 0 for v in VECTOR_IDS}
    containing = {v: 0 for v in VECTOR_IDS}
    modules = 0
    with open(args.csv_file, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            if row["module"] == "TOTAL" or row["status"] != "ok":
                continue
            modules += 1
            for v in VECTOR_IDS:
                n = int(row[v])
                totals[v] += n
                if n:
                    containing[v] += 1

    print(f"modules analyzed: {modules}")
    print(f"{'ID':<4}{'NAME':<24}{'TOTAL':>10}{'MODULES':>10}")
    for v in sorted(VECTOR_IDS, key=lambda v: -totals[v]):
        print(f"{v:<4}{VECTOR_BY_ID[v].name:<24}{totals[v]:>10}{containing[v]:>10}")

    if args.plot:
        try:
            import matplotlib

            matplotlib.use("Agg")
            import matplotlib.pyplot as plt
        except ImportError:
            print("matplotlib not installed; skipping plot", file=sys.stderr)
            return 1
        order = sorted(VECTOR_IDS, key=lambda v: -totals[v])
        fig, ax = plt.subplots(figsize=(8, 4))
        ax.bar(order, [totals[v] for v in order], color="#356fa8")
        ax.set_yscale("log")
        ax.set_ylabel("total occurrences (log)")
        ax.set_title(f"Attack-vector prevalence across {modules} modules")
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)
        print(f"wrote {args.plot}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

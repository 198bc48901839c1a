#!/usr/bin/env python3
"""Run the full verification suite and write the JSON report.

Usage: python scripts/run_verify_paper.py [report.json]
"""

import sys

from convexa.cli import render, verify_paper
from convexa.quadrature import QuadSpec


def main() -> int:
    out = sys.argv[1] if len(sys.argv) > 1 else "verify_paper_report.json"
    report = verify_paper(QuadSpec())
    with open(out, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(render(report, "json"))
    failures = [r for r in report.results if r["status"] != "hold"]
    print(f"{len(report.results)} checks, {len(failures)} failures -> {out}")
    print(f"overall: {report.overall.value}")
    for record in failures:
        print(f"  FAIL {record['name']}: metric={record['metric']:.6g}")
    return 0 if not failures else 1


if __name__ == "__main__":
    sys.exit(main())

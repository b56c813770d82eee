#!/usr/bin/env python3
"""Run the statement audit over the default catalog and summarize the report.

Writes the JSON-lines report and prints a per-statement verdict table, so a
full run documents in one place that no statement has a counterexample.
"""

from __future__ import annotations

import argparse
import collections
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import List

from acdlab.audit import audit_many, has_counterexample, resolve_statements, rows_to_jsonl
from acdlab.constructions import default_catalog, to_text


@dataclass
class AuditConfig:
    statements: List[str] = field(default_factory=lambda: ["all"])
    jobs: int = 1
    out: Path = Path("audit_report.jsonl")
    catalog: Path | None = None


def load_catalog(config: AuditConfig) -> List[str]:
    if config.catalog is None:
        return [to_text(s) for s in default_catalog()]
    texts = []
    for line in config.catalog.read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            texts.append(line)
    return texts


def main(argv: List[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("statements", nargs="*", default=["all"],
                        help="statement names or aliases (default: all)")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes")
    parser.add_argument("--out", type=Path, default=Path("audit_report.jsonl"))
    parser.add_argument("--catalog", type=Path, default=None,
                        help="file with one group spec per line (default: built-in catalog)")
    args = parser.parse_args(argv)
    config = AuditConfig(statements=args.statements or ["all"], jobs=args.jobs,
                         out=args.out, catalog=args.catalog)

    names = []
    for s in config.statements:
        names.extend(resolve_statements(s))
    texts = load_catalog(config)
    print(f"auditing {len(names)} statements over {len(texts)} groups "
          f"with {config.jobs} job(s)")
    start = time.perf_counter()
    rows = audit_many(names, texts, jobs=config.jobs)
    elapsed = time.perf_counter() - start
    config.out.write_text(rows_to_jsonl(rows))

    by_statement = collections.defaultdict(collections.Counter)
    for r in rows:
        by_statement[r.statement][r.verdict] += 1
    width = max(len(s) for s in by_statement)
    print(f"\n{'statement':<{width}}  consistent  sharp  COUNTEREXAMPLE")
    for name in sorted(by_statement):
        c = by_statement[name]
        print(f"{name:<{width}}  {c['consistent']:>10d}  {c['sharp-boundary']:>5d}"
              f"  {c['COUNTEREXAMPLE']:>14d}")
    print(f"\n{len(rows)} rows in {elapsed:.1f}s -> {config.out}")
    if has_counterexample(rows):
        print("COUNTEREXAMPLE found: see report for details", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

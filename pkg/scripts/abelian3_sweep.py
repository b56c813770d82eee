#!/usr/bin/env python3
"""Sweep the cyclic-on-module families and compare averages to the closed form.

For each C_d acting on (C_p)^a in the catalog (p^a up to a limit) and each
audited value field, prints the engine's exact average degree next to
d*(index + p^a - 1)/(d*index + p^a - 1) and flags the boundary families.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from acdlab.audit import _abelian3_fields
from acdlab.chartab import character_table
from acdlab.constructions import FieldSemidirect, build, default_catalog, to_text
from acdlab.fieldvals import a_k_subgroup, format_field
from acdlab.group import point_stabilizer, subgroup_as_group
from acdlab.stats import AcdQuery, abelian3_formula, acd


@dataclass
class SweepConfig:
    max_module: int = 125
    only_exceptions: bool = False


def family(q: int, d: int, index: int) -> str:
    if d == 2:
        return "d=2 boundary"
    if d == 3 and index == 3 and q < 10:
        return "d=3 small module"
    if d == q - 1 and index == d:
        return "full complement"
    return ""


def main(argv: List[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-module", type=int, default=125,
                        help="largest p^a to include (default 125)")
    parser.add_argument("--only-exceptions", action="store_true",
                        help="print only the boundary families")
    args = parser.parse_args(argv)
    config = SweepConfig(max_module=args.max_module, only_exceptions=args.only_exceptions)

    entries = [
        s for s in default_catalog()
        if isinstance(s, FieldSemidirect) and s.d > 1 and s.p**s.a <= config.max_module
    ]
    start = time.perf_counter()
    mismatches = 0
    print(f"{'group':<14} {'field':<12} {'index':>5} {'average':>9} {'formula':>9}  family")
    for s in entries:
        q = s.p**s.a
        G = build(s)
        T = character_table(G)
        H, _ = subgroup_as_group(G, point_stabilizer(G, 0))
        TH = character_table(H)
        for k in _abelian3_fields(s.p, s.d):
            index = H.order // a_k_subgroup(H, TH, k).order
            got = acd(G, T, AcdQuery(field=k))
            want = abelian3_formula(s.p, s.a, s.d, index)
            tag = family(q, s.d, index)
            if got != want:
                mismatches += 1
                tag = (tag + " MISMATCH").strip()
            if config.only_exceptions and not tag:
                continue
            print(f"{to_text(s):<14} {format_field(k):<12} {index:>5d} "
                  f"{str(Fraction(got)):>9} {str(Fraction(want)):>9}  {tag}")
    print(f"\n{len(entries)} groups in {time.perf_counter() - start:.1f}s, "
          f"{mismatches} mismatching rows")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())

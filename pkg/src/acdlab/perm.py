"""Permutations on the points 0..degree-1, stored as immutable image tuples.

``p[i]`` is the image of point ``i``.  Composition is function composition:
``compose(p, q)`` applies ``q`` first, then ``p``.
"""

from __future__ import annotations

import math
from typing import List, Sequence, Tuple

from .errors import InputError

Perm = Tuple[int, ...]


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def validate(images: Sequence[int]) -> Perm:
    """Check that images describe a bijection of 0..deg-1 and return it as a tuple."""
    p = tuple(images)
    n = len(p)
    if n == 0:
        raise InputError("a permutation needs at least one point")
    seen = [False] * n
    for x in p:
        if not isinstance(x, int) or not 0 <= x < n or seen[x]:
            raise InputError(f"not a permutation of 0..{n - 1}: {p}")
        seen[x] = True
    return p


def compose(p: Perm, q: Perm) -> Perm:
    """p after q: (p * q)(i) = p[q[i]]."""
    return tuple(p[x] for x in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def cycles(p: Perm) -> List[Tuple[int, ...]]:
    """Nontrivial cycles, each starting at its smallest point, sorted by that point."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = p[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = p[x]
        out.append(tuple(cyc))
    return out


def order_of(p: Perm) -> int:
    """Least n >= 1 with p^n = identity (lcm of cycle lengths)."""
    n = 1
    for cyc in cycles(p):
        n = math.lcm(n, len(cyc))
    return n


def power(p: Perm, k: int) -> Perm:
    """p^k for any integer k, computed cycle-wise."""
    out = list(range(len(p)))
    for cyc in cycles(p):
        ln = len(cyc)
        shift = k % ln
        for idx, pt in enumerate(cyc):
            out[pt] = cyc[(idx + shift) % ln]
    return tuple(out)


def format_cycles(p: Perm) -> str:
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cs)

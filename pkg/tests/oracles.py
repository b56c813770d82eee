"""Slow, independent reference computations used to cross-check the engine.

Everything here is written from definitions with no shortcuts, so it doubles
as the ground truth for the fast implementations under test.
"""

from __future__ import annotations

import math
from typing import FrozenSet, List, Set

from acdlab.chartab import CharacterTable, galois_conjugate
from acdlab.group import (
    FiniteGroup,
    SubgroupHandle,
    conjugacy_classes,
    normal_closure,
    p_prime_part,
    power_map,
)
from acdlab.number_theory import unit_group_generators


def all_normal_subgroups(G: FiniteGroup) -> List[FrozenSet[int]]:
    """Every normal subgroup, as the lattice join-closure of class closures.

    A normal subgroup is a union of conjugacy classes, and every one is the
    normal closure of the class representatives it contains, so breadth-first
    joins over single-class extensions reach all of them.
    """
    C = conjugacy_classes(G)
    seen: Set[FrozenSet[int]] = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        N = frontier.pop()
        for rep in C.reps:
            if rep in N:
                continue
            bigger = frozenset(normal_closure(G, set(N) | {rep}).member_set())
            if bigger not in seen:
                seen.add(bigger)
                frontier.append(bigger)
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def p_nilpotent_brute(G: FiniteGroup, p: int) -> bool:
    """Normal p-complement by exhaustive search of the normal subgroup lattice."""
    target = p_prime_part(G.order, p)
    return any(len(N) == target for N in all_normal_subgroups(G))


def subgroup_is_normal_brute(G: FiniteGroup, H: SubgroupHandle) -> bool:
    members = H.member_set()
    return all(G.conjugate(g, h) in members for h in members for g in range(G.order))


def galois_cross_check(G: FiniteGroup, T: CharacterTable, all_units: bool = False) -> None:
    """Value-level Galois action agrees with the power-map route.

    Checks sigma_t row by row two ways: sigma applied to each value, and the
    same character read at the class of g^t.  Unit-group generators suffice
    (the identity composes), `all_units` forces the exhaustive loop.
    """
    e = T.exponent
    C = T.classes
    if all_units:
        ts = [t for t in range(1, e + 1) if math.gcd(t, e) == 1]
    else:
        ts = sorted(set(unit_group_generators(e)) | {e - 1 if e > 1 else 1})
    for t in ts:
        pm = power_map(G, C, t)
        for r in range(T.num_chars):
            r2 = galois_conjugate(T, r, t)
            for c in range(C.num_classes):
                v = T.value(r2, c)
                assert v == T.value(r, c).galois(t)
                assert v == T.value(r, pm[c])

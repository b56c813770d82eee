"""Field-of-values classification of characters and the A^k(G) subgroup.

A field descriptor is one of Q(zeta_m) (with Q = Q(zeta_1)), the reals, or
the complexes.  Because character values are stored at their minimal
conductor, membership in Q(zeta_m) reduces to a divisibility test, and
membership in R to fixedness under conjugation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm
from typing import List, Optional

from .chartab import CharacterTable, character_kernel
from .errors import InputError
from .group import FiniteGroup, SubgroupHandle
from .number_theory import is_prime


@dataclass(frozen=True)
class FieldSpec:
    """An abelian field descriptor: Cyclotomic(m), Reals, or Complexes."""

    variant: str
    m: int = 0

    def __post_init__(self):
        if self.variant not in ("cyclotomic", "reals", "complexes"):
            raise InputError(f"unknown field variant {self.variant!r}")
        if self.variant == "cyclotomic":
            if self.m < 1:
                raise InputError(f"cyclotomic conductor must be >= 1, got {self.m}")
            m = self.m
            if m % 4 == 2:
                m //= 2  # Q(zeta_2k) = Q(zeta_k) for odd k
            object.__setattr__(self, "m", m)
        else:
            object.__setattr__(self, "m", 0)

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("cyclotomic", 1)

    @staticmethod
    def cyclotomic(m: int) -> "FieldSpec":
        return FieldSpec("cyclotomic", m)

    @staticmethod
    def reals() -> "FieldSpec":
        return FieldSpec("reals")

    @staticmethod
    def complexes() -> "FieldSpec":
        return FieldSpec("complexes")

    def contains_root_of_unity(self, n: int) -> bool:
        """Whether zeta_n lies in the field."""
        if n in (1, 2):
            return True
        if self.variant == "complexes":
            return True
        if self.variant == "reals":
            return False
        m = self.m
        if n % 2 == 0 and n % 4 != 0:
            n //= 2
        return m % n == 0


def parse_field(text: str) -> FieldSpec:
    """Parse Q, R, C, Qp(p), or Q(zeta_m)."""
    s = "".join(text.split())
    if s == "Q":
        return FieldSpec.rationals()
    if s == "R":
        return FieldSpec.reals()
    if s == "C":
        return FieldSpec.complexes()
    m = re.fullmatch(r"Qp\((\d+)\)", s)
    if m:
        p = int(m.group(1))
        if not is_prime(p):
            raise InputError(f"Qp(p) needs a prime, got {p}")
        return FieldSpec.cyclotomic(p)
    m = re.fullmatch(r"Q\(zeta_(\d+)\)", s)
    if m:
        return FieldSpec.cyclotomic(int(m.group(1)))
    raise InputError(f"cannot parse field {text!r}: expected Q, R, C, Qp(p), or Q(zeta_m)")


def format_field(k: FieldSpec) -> str:
    if k.variant == "complexes":
        return "C"
    if k.variant == "reals":
        return "R"
    return "Q" if k.m == 1 else f"Q(zeta_{k.m})"


def has_values_in(T: CharacterTable, char: int, k: FieldSpec) -> bool:
    """Whether every value of the character row lies in the field.

    Values sit at their minimal conductor, so Q(zeta_m) membership is
    conductor divisibility; R membership is invariance under conjugation.
    """
    row = T.rows[char]
    if k.variant == "complexes":
        return True
    if k.variant == "reals":
        return all(v.conductor == 1 or v == v.conjugate() for v in row)
    return all(k.m % v.conductor == 0 for v in row)


def value_conductor(T: CharacterTable, char: int) -> int:
    """Conductor of the field of values of a row (debug helper)."""
    return lcm(*(v.conductor for v in T.rows[char]))


def irr_subset(T: CharacterTable, k: FieldSpec, p: Optional[int] = None) -> List[int]:
    """Rows with values in k and, when p is given, degree not divisible by p."""
    if p is not None and not is_prime(p):
        raise InputError(f"p-filter must be prime, got {p}")
    return [
        r
        for r in range(T.num_chars)
        if (p is None or T.degrees[r] % p != 0) and has_values_in(T, r, k)
    ]


def a_k_subgroup(G: FiniteGroup, T: CharacterTable, k: FieldSpec) -> SubgroupHandle:
    """A^k(G): intersection of kernels of linear characters with values in k."""
    if T.group is not G:
        raise InputError("table does not belong to the given group")
    members = set(range(G.order))
    for r in range(T.num_chars):
        if T.degrees[r] == 1 and has_values_in(T, r, k):
            members &= character_kernel(T, r).member_set()
    return SubgroupHandle(G, sorted(members))

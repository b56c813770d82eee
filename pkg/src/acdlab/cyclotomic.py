"""Exact arithmetic in cyclotomic fields, with a canonical minimal form.

A value is stored as a coordinate vector over the power basis
1, z, ..., z^(phi(m)-1) of Q(zeta_m), where m is the smallest conductor
containing the value (and m is never 2 mod 4, folding Q(zeta_2k)=Q(zeta_k)
for odd k).  Canonicalization makes equality and hashing structural, so
values coming from different computations compare reliably.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Dict, List, Mapping, Sequence, Tuple, Union

import numpy as np

from .errors import DomainError, InputError
from .number_theory import divisors, euler_phi, fixing_unit_generators, prime_divisors

Rat = Union[int, Fraction]


def _polydiv_exact(num: Sequence[int], den: Sequence[int]) -> List[int]:
    """Divide integer polynomials (lowest-degree first); den monic, exact."""
    num = list(num)
    dn = len(den) - 1
    assert den[-1] == 1
    qn = len(num) - 1 - dn
    quot = [0] * (qn + 1)
    for k in range(qn, -1, -1):
        c = num[k + dn]
        quot[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    assert all(c == 0 for c in num), "non-exact polynomial division"
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> Tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, lowest degree first."""
    if m < 1:
        raise InputError(f"conductor must be >= 1, got {m}")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m)[:-1]:
        poly = _polydiv_exact(poly, cyclotomic_poly(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def reduction_rows(m: int) -> np.ndarray:
    """Matrix (m x phi(m)) whose row j gives zeta_m^j over the power basis."""
    phi = euler_phi(m)
    top = list(cyclotomic_poly(m)[:phi])
    rows: List[List[int]] = []
    cur = [1] + [0] * (phi - 1)
    for _ in range(m):
        rows.append(cur)
        carry = cur[phi - 1]
        nxt = [0] + cur[: phi - 1]
        if carry:
            nxt = [a - carry * b for a, b in zip(nxt, top)]
        cur = nxt
    big = max(abs(c) for row in rows for c in row)
    dtype = np.int64 if big < 2**60 else object
    out = np.array(rows, dtype=dtype)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _sigma_matrix(m: int, t: int) -> np.ndarray:
    """Matrix of the Galois map zeta_m -> zeta_m^t on power-basis coordinates."""
    phi = euler_phi(m)
    idx = [(j * t) % m for j in range(phi)]
    out = reduction_rows(m)[idx]
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _fixing_gens(m: int, g: int) -> Tuple[int, ...]:
    return tuple(fixing_unit_generators(m, g))


@lru_cache(maxsize=None)
def _subfield_solver(m: int, p: int):
    """Change-of-basis data for rewriting values of Q(zeta_{m/p}) inside Q(zeta_m).

    Returns (pivots, E, R) with R = E*B the reduced row echelon form of the
    basis matrix B whose rows are zeta_m^(p*j) over the conductor-m basis.
    A coordinate vector v in the row span of B equals (v at pivots) * R, and
    its subfield coordinates are (v at pivots) * E.
    """
    sub = m // p
    k = euler_phi(sub)
    R_m = reduction_rows(m)
    n = R_m.shape[1]
    rows = [[Fraction(int(R_m[(p * j) % m, c])) for c in range(n)] for j in range(k)]
    ident = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    pivots: List[int] = []
    r = 0
    for c in range(n):
        sel = next((i for i in range(r, k) if rows[i][c] != 0), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        ident[r], ident[sel] = ident[sel], ident[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        ident[r] = [x * inv for x in ident[r]]
        for i in range(k):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                ident[i] = [a - f * b for a, b in zip(ident[i], ident[r])]
        pivots.append(c)
        r += 1
        if r == k:
            break
    assert r == k, "subfield basis rows must be independent"
    return (
        tuple(pivots),
        tuple(tuple(row) for row in ident),
        tuple(tuple(row) for row in rows),
    )


def _as_rat(x: Rat) -> Rat:
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, (int, np.integer)):
        return int(x)
    raise InputError(f"coefficients must be integers or Fractions, got {type(x).__name__}")


def _reduce_terms(m: int, terms: Dict[int, Rat]) -> List[Rat]:
    """Coordinates of sum(c * zeta_m^j) over the conductor-m power basis."""
    phi = euler_phi(m)
    R = reduction_rows(m)
    if all(isinstance(c, int) for c in terms.values()) and R.dtype == np.int64:
        v = np.zeros(phi, dtype=np.int64)
        for j, c in terms.items():
            v += c * R[j]
        return [int(x) for x in v]
    out: List[Rat] = [Fraction(0)] * phi
    for j, c in terms.items():
        row = R[j]
        for i in range(phi):
            if row[i]:
                out[i] += c * int(row[i])
    return out


def _apply_sigma(v: List[Rat], m: int, t: int) -> List[Rat]:
    M = _sigma_matrix(m, t)
    phi = len(v)
    if all(isinstance(c, int) for c in v) and M.dtype == np.int64:
        arr = np.asarray(v, dtype=np.int64) @ M
        return [int(x) for x in arr]
    out: List[Rat] = [Fraction(0)] * phi
    for j, c in enumerate(v):
        if c:
            row = M[j]
            for i in range(phi):
                if row[i]:
                    out[i] += c * int(row[i])
    return out


def _canonical(m: int, raw: Mapping[int, Rat]) -> Tuple[int, Tuple[Rat, ...]]:
    """Reduce an exponent->coefficient sum at conductor m to canonical form."""
    if not isinstance(m, int) or m < 1:
        raise InputError(f"conductor must be a positive integer, got {m!r}")
    terms: Dict[int, Rat] = {}
    for j, c in raw.items():
        c = _as_rat(c)
        if c == 0:
            continue
        j = int(j) % m
        acc = terms.get(j, 0) + c
        if acc == 0:
            terms.pop(j, None)
        else:
            terms[j] = _as_rat(acc)
    if not terms:
        return 1, (0,)

    # Fold conductors 2 mod 4 (zeta_2k = -zeta_k for odd k) and common
    # exponent factors; iterate until stable.
    while True:
        if m % 4 == 2:
            half = m // 2
            folded: Dict[int, Rat] = {}
            for j, c in terms.items():
                if j % 2 == 0:
                    jj, cc = j // 2, c
                else:
                    jj, cc = ((j + half) % m) // 2, -c
                acc = folded.get(jj, 0) + cc
                if acc == 0:
                    folded.pop(jj, None)
                else:
                    folded[jj] = _as_rat(acc)
            m, terms = half, folded
            if not terms:
                return 1, (0,)
            continue
        g = m
        for j in terms:
            g = gcd(g, j)
        if g > 1:
            m = m // g
            terms = {j // g: c for j, c in terms.items()}
            continue
        break

    if m == 1:
        return 1, (terms[0],)
    v = _reduce_terms(m, terms)
    if all(c == 0 for c in v[1:]):
        return 1, (_as_rat(v[0]),)
    if len(terms) == 1:
        # A single term c*zeta_m^j with gcd(j, m) = 1 generates Q(zeta_m).
        return m, tuple(_as_rat(c) for c in v)

    for p in prime_divisors(m):
        sub = m // p
        if all(_apply_sigma(v, m, t) == v for t in _fixing_gens(m, sub)):
            pivots, E, R = _subfield_solver(m, p)
            b = [Fraction(v[c]) for c in pivots]
            k, n = len(E), len(v)
            check = [sum(b[i] * R[i][c] for i in range(k)) for c in range(n)]
            assert all(check[c] == v[c] for c in range(n)), "fixed value must lie in subfield"
            coords = {j: sum(b[i] * E[i][j] for i in range(k)) for j in range(k)}
            return _canonical(sub, coords)

    return m, tuple(_as_rat(c) for c in v)


class CyclotomicValue:
    """An element of some Q(zeta_m), stored in canonical minimal form."""

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor: int, terms: Mapping[int, Rat]):
        m, coeffs = _canonical(conductor, terms)
        object.__setattr__(self, "conductor", m)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, conductor: int, coeffs: Tuple[Rat, ...]) -> "CyclotomicValue":
        val = object.__new__(cls)
        object.__setattr__(val, "conductor", conductor)
        object.__setattr__(val, "coeffs", coeffs)
        object.__setattr__(val, "_hash", None)
        return val

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicValue is immutable")

    @classmethod
    def from_terms(cls, conductor: int, terms: Mapping[int, Rat]) -> "CyclotomicValue":
        return cls(conductor, terms)

    @classmethod
    def rational(cls, x: Rat) -> "CyclotomicValue":
        return cls._raw(1, (_as_rat(x),))

    @classmethod
    def root_of_unity(cls, m: int, j: int = 1) -> "CyclotomicValue":
        return cls(m, {j: 1})

    @classmethod
    def zero(cls) -> "CyclotomicValue":
        return cls._raw(1, (0,))

    # -- structure -----------------------------------------------------

    def terms(self) -> Dict[int, Rat]:
        """Exponent -> coefficient form over the conductor's power basis."""
        return {j: c for j, c in enumerate(self.coeffs) if c != 0}

    def is_zero(self) -> bool:
        return self.conductor == 1 and self.coeffs[0] == 0

    def is_rational(self) -> bool:
        return self.conductor == 1

    def is_integer(self) -> bool:
        return self.conductor == 1 and isinstance(self.coeffs[0], int)

    def rational_value(self) -> Fraction:
        if self.conductor != 1:
            raise DomainError(f"value has conductor {self.conductor}, not rational")
        return Fraction(self.coeffs[0])

    def is_real(self) -> bool:
        return self == self.conjugate()

    # -- Galois action ---------------------------------------------------

    def galois(self, t: int) -> "CyclotomicValue":
        """Image under zeta_m -> zeta_m^t; t must be a unit mod the conductor."""
        m = self.conductor
        if m == 1:
            return self
        if gcd(t, m) != 1:
            raise InputError(f"galois exponent {t} is not a unit mod {m}")
        v = _apply_sigma(list(self.coeffs), m, t % m)
        # Galois maps preserve the minimal conductor, so no re-descent needed.
        return CyclotomicValue._raw(m, tuple(_as_rat(c) for c in v))

    def conjugate(self) -> "CyclotomicValue":
        return self.galois(self.conductor - 1) if self.conductor > 1 else self

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(x: Number) -> "CyclotomicValue":
        if isinstance(x, CyclotomicValue):
            return x
        return CyclotomicValue.rational(_as_rat(x))

    def __add__(self, other: "Number") -> "CyclotomicValue":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self
            c0 = _as_rat(self.coeffs[0] + other)
            if self.conductor == 1:
                return CyclotomicValue._raw(1, (c0,))
            return CyclotomicValue._raw(self.conductor, (c0,) + self.coeffs[1:])
        if not isinstance(other, CyclotomicValue):
            return NotImplemented
        L = lcm(self.conductor, other.conductor)
        s1, s2 = L // self.conductor, L // other.conductor
        merged: Dict[int, Rat] = {j * s1 % L: c for j, c in self.terms().items()}
        for j, c in other.terms().items():
            k = j * s2 % L
            merged[k] = merged.get(k, 0) + c
        return CyclotomicValue(L, merged)

    def __radd__(self, other: "Number") -> "CyclotomicValue":
        return self.__add__(other)

    def __neg__(self) -> "CyclotomicValue":
        return CyclotomicValue._raw(self.conductor, tuple(_as_rat(-c) for c in self.coeffs))

    def __sub__(self, other: "Number") -> "CyclotomicValue":
        o = self._coerce(other)
        return self.__add__(-o)

    def __rsub__(self, other: "Number") -> "CyclotomicValue":
        return (-self).__add__(other)

    def __mul__(self, other: "Number") -> "CyclotomicValue":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return CyclotomicValue.zero()
            return CyclotomicValue._raw(
                self.conductor, tuple(_as_rat(c * other) for c in self.coeffs)
            )
        if not isinstance(other, CyclotomicValue):
            return NotImplemented
        L = lcm(self.conductor, other.conductor)
        s1, s2 = L // self.conductor, L // other.conductor
        prod: Dict[int, Rat] = {}
        t2 = other.terms()
        for j1, c1 in self.terms().items():
            for j2, c2 in t2.items():
                k = (j1 * s1 + j2 * s2) % L
                prod[k] = prod.get(k, 0) + c1 * c2
        return CyclotomicValue(L, prod)

    def __rmul__(self, other: "Number") -> "CyclotomicValue":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "CyclotomicValue":
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = CyclotomicValue.rational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __truediv__(self, other: Rat) -> "CyclotomicValue":
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self.__mul__(Fraction(1, 1) / other)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- comparison and encoding -----------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, CyclotomicValue):
            return self.conductor == other.conductor and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.conductor == 1 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            # Rational values hash like their plain number, matching __eq__.
            h = hash(self.coeffs[0]) if self.conductor == 1 else hash((self.conductor, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def sort_key(self) -> Tuple:
        return (self.conductor, tuple(Fraction(c) for c in self.coeffs))

    def to_json_dict(self) -> Dict:
        return {
            "m": self.conductor,
            "c": [[Fraction(c).numerator, Fraction(c).denominator] for c in self.coeffs],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "CyclotomicValue":
        coeffs = {j: Fraction(n, d) for j, (n, d) in enumerate(data["c"])}
        return cls(int(data["m"]), coeffs)

    def __str__(self) -> str:
        if self.conductor == 1:
            return str(self.coeffs[0])
        parts: List[str] = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = c if c > 0 else -c
            base = f"z{self.conductor}^{j}" if j > 1 else ("1" if j == 0 else f"z{self.conductor}")
            if base == "1":
                body = str(mag)
            elif mag == 1:
                body = base
            else:
                body = f"{mag}*{base}"
            parts.append(("- " if c < 0 else "+ ") + body)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self) -> str:
        if self.conductor == 1:
            return f"CyclotomicValue.rational({self.coeffs[0]!r})"
        return f"CyclotomicValue({self.conductor}, {self.terms()!r})"


Number = Union[int, Fraction, CyclotomicValue]


def zeta(m: int, j: int = 1) -> CyclotomicValue:
    """The root of unity zeta_m^j."""
    return CyclotomicValue.root_of_unity(m, j)

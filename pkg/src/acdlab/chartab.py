"""Exact complex character tables via modular class-algebra eigenvectors.

The pipeline: split the class algebra over a prime field F_q (q = 1 mod the
group exponent, q^2 > 4|G|) into one-dimensional eigenspaces of the class
matrices, recover degrees from the second orthogonality relation, then lift
each value to an exact cyclotomic number through the root-of-unity
multiplicity transform at the conductor of the class representative.  All
arithmetic is integer-exact; no floating point anywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd, isqrt, lcm
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .cyclotomic import CyclotomicValue, Rat, reduction_rows
from .errors import InputError
from .group import (
    ClassData,
    FiniteGroup,
    SubgroupHandle,
    conjugacy_classes,
    exponent,
)
from .linalg_mod import charpoly_mod, nullspace_mod, poly_roots_mod, rref_mod, sqrt_mod
from .number_theory import is_prime, multiplicative_order, primitive_root


def choose_conductor_prime(exp: int, order: int) -> int:
    """Smallest prime q = 1 (mod exp) with q^2 > 4*order.

    The size bound makes square roots of degrees unique in F_q; the congruence
    makes F_q contain all needed roots of unity.  Such q never divides the
    group order: an element of order q would force q | exp.
    """
    if exp < 1 or order < 1:
        raise InputError("exponent and order must be positive")
    q = exp + 1 if exp > 1 else 2
    while True:
        if q * q > 4 * order and is_prime(q):
            assert order % q != 0
            return q
        q += exp


def class_matrix(G: FiniteGroup, C: ClassData, i: int) -> np.ndarray:
    """Matrix N with N[j, k] = #{x in class i : x^(-1) * rep_k lies in class j}.

    These counts are the structure constants of the class algebra: the
    products K_i K_j = sum_k N[j, k] K_k written against fixed class sums.
    """
    k = C.num_classes
    inv = G.inverse_table()
    npE = G.np_elements()
    xinv_rows = npE[[inv[x] for x in C.members[i]]]
    class_of = np.asarray(C.class_of, dtype=np.int64)
    N = np.zeros((k, k), dtype=np.int64)
    for kk, z in enumerate(C.reps):
        prod_rows = xinv_rows[:, npE[z]]
        classes = class_of[G.index_rows(prod_rows)]
        N[:, kk] = np.bincount(classes, minlength=k)
    return N


def class_coefficients(G: FiniteGroup, C: Optional[ClassData] = None) -> np.ndarray:
    """Full class-algebra structure-constant table a[i, j, k]."""
    if C is None:
        C = conjugacy_classes(G)
    return np.stack([class_matrix(G, C, i) for i in range(C.num_classes)])


@dataclass(frozen=True)
class ModTable:
    """Character data over F_q, rows in eigenspace-refinement order."""

    q: int
    exponent: int
    omega_root: int  # fixed primitive exponent-th root of unity mod q
    degrees: Tuple[int, ...]
    omega: np.ndarray  # central character values omega(K_c) mod q
    chi: np.ndarray  # character values mod q


def _split_eigenspaces(G: FiniteGroup, C: ClassData, q: int) -> List[np.ndarray]:
    """Common eigenvectors (as normalized rows) of all class matrices mod q."""
    k = C.num_classes
    spaces: List[Tuple[np.ndarray, List[int]]] = [(np.eye(k, dtype=np.int64), list(range(k)))]
    i = 1
    while any(W.shape[0] > 1 for W, _ in spaces):
        assert i < k, "class matrices must jointly separate the eigenvectors"
        NT = class_matrix(G, C, i).T % q
        nxt: List[Tuple[np.ndarray, List[int]]] = []
        for W, piv in spaces:
            s = W.shape[0]
            if s == 1:
                nxt.append((W, piv))
                continue
            img = (W @ NT) % q
            B = img[:, piv]
            assert np.array_equal((B @ W) % q, img), "subspace must be invariant"
            roots = poly_roots_mod(charpoly_mod(B, q), q)
            if len(roots) <= 1:
                nxt.append((W, piv))
                continue
            total = 0
            for lam in roots:
                A = (B.T - lam * np.eye(s, dtype=np.int64)) % q
                U = nullspace_mod(A, q)
                t = U.shape[0]
                assert t >= 1
                Wn, pivn = rref_mod((U @ W) % q, q)
                assert Wn.shape[0] == t
                nxt.append((Wn, list(pivn)))
                total += t
            assert total == s, "restriction must be diagonalizable over F_q"
        spaces = nxt
        i += 1
    out = []
    for W, piv in spaces:
        assert piv[0] == 0 and W[0, 0] == 1, "central character must be 1 on the identity class"
        out.append(W[0])
    return out


def compute_mod_table(G: FiniteGroup) -> ModTable:
    C = conjugacy_classes(G)
    e = exponent(G)
    q = choose_conductor_prime(e, G.order)
    k = C.num_classes

    omega_rows = np.stack(_split_eigenspaces(G, C, q))
    assert omega_rows.shape == (k, k)

    omega_root = pow(primitive_root(q), (q - 1) // e, q)
    assert multiplicative_order(omega_root, q) == e

    sizes = np.asarray(C.sizes, dtype=np.int64)
    inv_sizes = np.array([pow(int(s), -1, q) for s in C.sizes], dtype=np.int64)
    obar = omega_rows[:, list(C.inverse_class)]
    summand = (omega_rows * obar) % q
    summand = (summand * inv_sizes[None, :]) % q
    s = summand.sum(axis=1) % q

    degrees: List[int] = []
    bound = isqrt(G.order)
    for r in range(k):
        sr = int(s[r])
        assert sr != 0
        d2 = (G.order * pow(sr, -1, q)) % q
        d = sqrt_mod(d2, q)
        d = min(d, q - d)
        assert 1 <= d <= bound and (d * d) % q == d2
        degrees.append(d)
    assert sum(d * d for d in degrees) == G.order, "degree squares must sum to the order"

    deg = np.asarray(degrees, dtype=np.int64)
    chi = (omega_rows * inv_sizes[None, :]) % q
    chi = (chi * deg[:, None]) % q
    assert np.array_equal(chi[:, 0], deg)
    return ModTable(
        q=q, exponent=e, omega_root=omega_root, degrees=tuple(degrees), omega=omega_rows, chi=chi
    )


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """Exact irreducible character table; row 0 is the trivial character.

    Rows are sorted by degree and then by value columns; columns follow the
    conjugacy class order of the group (identity class first).
    """

    group: FiniteGroup
    classes: ClassData
    exponent: int
    degrees: Tuple[int, ...]
    rows: Tuple[Tuple[CyclotomicValue, ...], ...]

    @property
    def num_chars(self) -> int:
        return len(self.rows)

    def value(self, char: int, cls: int) -> CyclotomicValue:
        return self.rows[char][cls]


def character_table(G: FiniteGroup) -> CharacterTable:
    C = conjugacy_classes(G)
    mt = compute_mod_table(G)
    q, e, k = mt.q, mt.exponent, C.num_classes
    orders = G.orders()

    dlog = {pow(mt.omega_root, j, q): j for j in range(e)}
    linear = [r for r in range(k) if mt.degrees[r] == 1]
    nonlinear = [r for r in range(k) if mt.degrees[r] > 1]
    values: List[List[Optional[CyclotomicValue]]] = [[None] * k for _ in range(k)]
    root_memo: Dict[int, CyclotomicValue] = {}

    for c in range(k):
        g = C.reps[c]
        m = int(orders[g])
        for r in linear:
            j = dlog.get(int(mt.chi[r, c]))
            assert j is not None, "linear character values must be exponent-th roots of unity"
            val = root_memo.get(j)
            if val is None:
                val = root_memo[j] = CyclotomicValue(e, {j: 1})
            values[r][c] = val
        if not nonlinear:
            continue
        # Multiplicity transform: chi(g) = sum_j m_j zeta_m^j with
        # m_j = (1/m) sum_t chi_q(g^t) omega_m^(-jt); the m_j are the true
        # eigenvalue multiplicities, integers in [0, degree], so the lift
        # is unique once q > 2*sqrt(|G|) >= 2*degree.
        power_classes = [C.class_of[G.power(g, t)] for t in range(m)]
        om_m = pow(mt.omega_root, e // m, q)
        ptab = np.array([pow(om_m, t, q) for t in range(m)], dtype=np.int64)
        tt = np.arange(m)
        Wm = ptab[(-np.outer(tt, tt)) % m]
        V = mt.chi[np.ix_(nonlinear, power_classes)]
        MV = ((V @ Wm) % q * pow(m, -1, q)) % q
        for a, r in enumerate(nonlinear):
            mults = MV[a]
            assert int(mults.sum()) == mt.degrees[r], "multiplicities must sum to the degree"
            values[r][c] = CyclotomicValue(m, {int(j): int(mults[j]) for j in range(m) if mults[j]})

    rows = [tuple(row) for row in values]
    trivial = [r for r in range(k) if all(v == 1 for v in rows[r])]
    assert len(trivial) == 1, "exactly one trivial character"
    order_keys = sorted(
        (r for r in range(k) if r != trivial[0]),
        key=lambda r: (mt.degrees[r], tuple(v.sort_key() for v in rows[r])),
    )
    perm = trivial + order_keys
    degrees = tuple(mt.degrees[r] for r in perm)
    assert all(G.order % d == 0 for d in degrees), "degrees must divide the group order"
    return CharacterTable(
        group=G,
        classes=C,
        exponent=e,
        degrees=degrees,
        rows=tuple(rows[r] for r in perm),
    )


# -- orthogonality -----------------------------------------------------------


@dataclass(frozen=True)
class OrthogonalityReport:
    ok: bool
    row_failures: Tuple[Tuple[int, int, CyclotomicValue], ...]
    column_failures: Tuple[Tuple[int, int, CyclotomicValue], ...]


def _hermitian_pair_failures(
    vecs: Sequence[Sequence[CyclotomicValue]],
    weights: Sequence[int],
    diag: Sequence[int],
) -> List[Tuple[int, int, CyclotomicValue]]:
    """Exact check that sum_c w_c v_a(c) conj(v_b(c)) = diag[a] * delta_ab.

    Coordinates holding a single integer monomial are batched through one
    numpy scatter-add at the joint conductor; the few multi-term coordinates
    go through exact exponent-dictionary accumulation per pair.
    """
    n, ncoord = len(vecs), len(weights)
    conds = np.ones((n, ncoord), dtype=np.int64)
    exps = np.zeros((n, ncoord), dtype=np.int64)
    cofs = np.zeros((n, ncoord), dtype=np.int64)
    hard: List[List[int]] = [[] for _ in range(n)]
    L = 1
    for a, vec in enumerate(vecs):
        for c, val in enumerate(vec):
            t = val.terms()
            if len(t) == 1:
                ((j, co),) = t.items()
                if isinstance(co, int):
                    conds[a, c] = val.conductor
                    exps[a, c] = j
                    cofs[a, c] = co
                    L = lcm(L, val.conductor)
                    continue
            if len(t) > 0:
                hard[a].append(c)
    exps = exps * (L // conds)

    ia, ib = np.triu_indices(n)
    P = ia.shape[0]
    D = (exps[ia] - exps[ib]) % L
    Wgt = np.asarray(weights, dtype=np.int64)[None, :] * cofs[ia] * cofs[ib]
    R = np.zeros((P, L), dtype=np.int64)
    np.add.at(R, (np.arange(P)[:, None], D), Wgt)
    S = R @ reduction_rows(L)

    hard_flag = np.array([bool(h) for h in hard])
    plain = ~(hard_flag[ia] | hard_flag[ib])
    rational = ~S[:, 1:].any(axis=1) if S.shape[1] > 1 else np.ones(P, dtype=bool)
    expected0 = np.where(ia == ib, np.asarray(diag, dtype=np.int64)[ia], 0)
    ok_plain = plain & rational & (S[:, 0] == expected0)

    failures: List[Tuple[int, int, CyclotomicValue]] = []
    for p in np.nonzero(~ok_plain)[0]:
        a, b = int(ia[p]), int(ib[p])
        coords = sorted(set(hard[a]) | set(hard[b]))
        Lp = L
        for c in coords:
            Lp = lcm(Lp, vecs[a][c].conductor, vecs[b][c].conductor)
        acc: Dict[int, Rat] = {}
        s0 = Lp // L
        for j in range(L):
            if R[p, j]:
                acc[j * s0 % Lp] = acc.get(j * s0 % Lp, 0) + int(R[p, j])
        for c in coords:
            va, vb = vecs[a][c], vecs[b][c]
            sa, sb = Lp // va.conductor, Lp // vb.conductor
            w = weights[c]
            tb = vb.terms()
            for j1, c1 in va.terms().items():
                for j2, c2 in tb.items():
                    key = (j1 * sa - j2 * sb) % Lp
                    acc[key] = acc.get(key, 0) + w * c1 * c2
        got = CyclotomicValue(Lp, acc)
        if got != (diag[a] if a == b else 0):
            failures.append((a, b, got))
    return failures


def verify_orthogonality(T: CharacterTable) -> OrthogonalityReport:
    """Exact first (row) and second (column) orthogonality relations."""
    k = T.num_chars
    order = T.group.order
    sizes = T.classes.sizes
    row_fail = _hermitian_pair_failures(T.rows, sizes, [order] * k)
    columns = [[T.rows[r][c] for r in range(k)] for c in range(T.classes.num_classes)]
    col_fail = _hermitian_pair_failures(columns, [1] * k, [order // s for s in sizes])
    return OrthogonalityReport(
        ok=not row_fail and not col_fail,
        row_failures=tuple(row_fail),
        column_failures=tuple(col_fail),
    )


# -- derived data ------------------------------------------------------------


def character_kernel(T: CharacterTable, char: int) -> SubgroupHandle:
    """Elements where the character takes its degree value."""
    deg = T.degrees[char]
    idx: List[int] = []
    for c in range(T.classes.num_classes):
        if T.rows[char][c] == deg:
            idx.extend(T.classes.members[c])
    return SubgroupHandle(T.group, sorted(idx))


def galois_conjugate(T: CharacterTable, char: int, t: int) -> int:
    """Row index of the Galois twist zeta -> zeta^t of a character row."""
    if gcd(t, T.exponent) != 1:
        raise InputError(f"galois exponent {t} is not a unit mod the exponent {T.exponent}")
    target = tuple(v.galois(t % v.conductor) if v.conductor > 1 else v for v in T.rows[char])
    lookup = {row: r for r, row in enumerate(T.rows)}
    r = lookup.get(target)
    assert r is not None, "a Galois twist of an irreducible row must be in the table"
    return r


def table_to_json_dict(T: CharacterTable) -> Dict:
    """Stable, exact JSON form of the table (integers and fractions only)."""
    return {
        "format": "acdlab.character-table.v1",
        "order": T.group.order,
        "exponent": T.exponent,
        "num_classes": T.classes.num_classes,
        "class_sizes": list(T.classes.sizes),
        "class_orders": [int(T.group.orders()[r]) for r in T.classes.reps],
        "class_rep_words": [list(T.group.word_for(r)) for r in T.classes.reps],
        "degrees": list(T.degrees),
        "values": [[v.to_json_dict() for v in row] for row in T.rows],
    }


def table_to_json(T: CharacterTable) -> str:
    return json.dumps(table_to_json_dict(T), sort_keys=True, separators=(",", ":"))

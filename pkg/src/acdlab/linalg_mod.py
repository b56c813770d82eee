"""Exact linear algebra over a prime field F_q on int64 numpy arrays.

q stays below ~10^6 here, so products fit comfortably in int64 and every
routine reduces mod q after each elimination step.  Everything is
deterministic: pivots are chosen first-nonzero, roots are listed ascending.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np


def rref_mod(A: np.ndarray, q: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form mod q; returns (nonzero rows, pivot columns)."""
    R = np.mod(np.asarray(A, dtype=np.int64), q)
    if R.ndim != 2:
        raise ValueError("rref_mod needs a matrix")
    rows, cols = R.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            R[[r, pr]] = R[[pr, r]]
        R[r] = R[r] * pow(int(R[r, c]), -1, q) % q
        col = R[:, c].copy()
        col[r] = 0
        R = (R - np.outer(col, R[r])) % q
        pivots.append(c)
        r += 1
    return R[:r], pivots


def nullspace_mod(A: np.ndarray, q: int) -> np.ndarray:
    """Row basis of the right null space {v : A v = 0} mod q, in RREF order."""
    R, pivots = rref_mod(A, q)
    cols = A.shape[1]
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-int(R[i, fc])) % q
    return basis


def charpoly_mod(A: np.ndarray, q: int) -> np.ndarray:
    """Coefficients of det(xI - A) mod q, lowest degree first, monic.

    Reduces A to upper Hessenberg form by similarity transforms, then runs the
    leading-minor recurrence on the Hessenberg matrix.
    """
    H = np.mod(np.asarray(A, dtype=np.int64), q)
    n = H.shape[0]
    if n == 0:
        return np.array([1], dtype=np.int64)
    for c in range(n - 2):
        nz = np.nonzero(H[c + 1:, c])[0]
        if nz.size == 0:
            continue
        piv = c + 1 + int(nz[0])
        if piv != c + 1:
            H[[c + 1, piv]] = H[[piv, c + 1]]
            H[:, [c + 1, piv]] = H[:, [piv, c + 1]]
        inv = pow(int(H[c + 1, c]), -1, q)
        for r in range(c + 2, n):
            if H[r, c] != 0:
                f = int(H[r, c]) * inv % q
                H[r] = (H[r] - f * H[c + 1]) % q
                H[:, c + 1] = (H[:, c + 1] + f * H[:, r]) % q
    # p_k = charpoly of the leading k-by-k block; subdiagonal products feed the
    # correction terms of the Hessenberg determinant expansion.
    polys: List[np.ndarray] = [np.array([1], dtype=np.int64)]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        # (x - H[k-1,k-1]) * prev
        pk = np.zeros(k + 1, dtype=np.int64)
        pk[1:] += prev
        pk[:-1] -= int(H[k - 1, k - 1]) * prev
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * int(H[i, i - 1]) % q
            coeff = int(H[i - 1, k - 1]) * prod % q
            if coeff:
                pk[: i] -= coeff * polys[i - 1]
            if prod == 0:
                break
        polys.append(np.mod(pk, q))
    return polys[n]


def poly_roots_mod(coeffs: np.ndarray, q: int) -> List[int]:
    """Distinct roots in F_q of the polynomial with the given low-first coefficients.

    Exhaustive vectorized Horner scan over the field; fine for q up to ~10^6.
    """
    xs = np.arange(q, dtype=np.int64)
    acc = np.zeros(q, dtype=np.int64)
    for c in np.asarray(coeffs, dtype=np.int64)[::-1]:
        acc = (acc * xs + int(c)) % q
    return [int(x) for x in np.nonzero(acc == 0)[0]]


def sqrt_mod(a: int, q: int) -> int:
    """A square root of a modulo an odd prime q (Tonelli-Shanks); a must be a QR."""
    a %= q
    if a == 0:
        return 0
    if pow(a, (q - 1) // 2, q) != 1:
        raise ValueError(f"{a} is not a quadratic residue mod {q}")
    if q % 4 == 3:
        return pow(a, (q + 1) // 4, q)
    s, m = q - 1, 0
    while s % 2 == 0:
        s //= 2
        m += 1
    z = 2
    while pow(z, (q - 1) // 2, q) != q - 1:
        z += 1
    c = pow(z, s, q)
    t = pow(a, s, q)
    r = pow(a, (s + 1) // 2, q)
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % q
            i += 1
        b = pow(c, 1 << (m - i - 1), q)
        m = i
        c = b * b % q
        t = t * c % q
        r = r * b % q
    return r

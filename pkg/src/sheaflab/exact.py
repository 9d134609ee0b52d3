"""Exact linear algebra over the rationals.

Matrices are numpy ``object`` arrays holding ``fractions.Fraction`` entries.
Floats are converted with ``Fraction(float)``, which is exact.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(float(x))


def as_exact(A) -> np.ndarray:
    """Copy of ``A`` as a 2-D object array of ``Fraction``."""
    a = np.asarray(A, dtype=object)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    out = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        out[idx] = to_fraction(x)
    return out


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    if 0 in A.shape or 0 in B.shape:
        return zeros((A.shape[0], B.shape[1]))
    return A.dot(B)


def rref(A) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    M = as_exact(A)
    m, n = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if M[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            M[[r, p]] = M[[p, r]]
        piv = M[r, c]
        if piv != 1:
            M[r, c:] = [x / piv for x in M[r, c:]]
        for i in range(m):
            if i != r and M[i, c] != 0:
                f = M[i, c]
                M[i, c:] = [a - f * b for a, b in zip(M[i, c:], M[r, c:])]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A) -> int:
    a = np.asarray(A, dtype=object)
    if a.size == 0:
        return 0
    return len(rref(a)[1])


def nullspace(A) -> np.ndarray:
    """Basis of ``ker A`` as columns, one per free variable (echelon form)."""
    a = np.asarray(A, dtype=object)
    n = a.shape[1] if a.ndim == 2 else 0
    if a.size == 0:
        return identity(n)
    R, pivots = rref(a)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = zeros((n, len(free)))
    for k, f in enumerate(free):
        basis[f, k] = Fraction(1)
        for row, p in enumerate(pivots):
            basis[p, k] = -R[row, f]
    return basis


def is_zero(A) -> bool:
    a = np.asarray(A, dtype=object)
    return all(x == 0 for x in a.flat)


def to_float(A) -> np.ndarray:
    return np.asarray(A, dtype=object).astype(float)

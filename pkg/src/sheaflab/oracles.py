"""Independent reference computations used to cross-check the main code paths.

Nothing here imports from the modules it is meant to check: signs, ranks,
Smith invariants and monomial membership are recomputed from scratch with
plain Python integers and ``Fraction``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

import numpy as np


def graph_laplacian(n: int, edges) -> np.ndarray:
    """Degree minus adjacency, integer dtype, vertices 1-based."""
    L = np.zeros((n, n), dtype=np.int64)
    for i, j in edges:
        L[i - 1, j - 1] -= 1
        L[j - 1, i - 1] -= 1
        L[i - 1, i - 1] += 1
        L[j - 1, j - 1] += 1
    return L


def closure(facets) -> dict[int, list[tuple[int, ...]]]:
    """All nonempty subsets of the facets, grouped by dimension and sorted."""
    out: dict[int, set] = {}
    for f in facets:
        f = tuple(sorted(f))
        for r in range(1, len(f) + 1):
            for s in itertools.combinations(f, r):
                out.setdefault(r - 1, set()).add(s)
    return {q: sorted(v) for q, v in out.items()}


def boundary(simplices: dict[int, list[tuple[int, ...]]], q: int, weight=None) -> list[list[Fraction]]:
    """Matrix of the q-th (optionally weighted) boundary; rows (q-1)-simplices."""
    rows, cols = simplices.get(q - 1, []), simplices.get(q, [])
    pos = {s: i for i, s in enumerate(rows)}
    M = [[Fraction(0)] * len(cols) for _ in rows]
    for c, s in enumerate(cols):
        for k in range(len(s)):
            f = s[:k] + s[k + 1:]
            scale = Fraction(1) if weight is None else Fraction(weight[s], weight[f])
            M[pos[f]][c] += (-1) ** k * scale
    return M


def rank(M) -> int:
    """Rank over Q by Gauss-Jordan elimination on a ``Fraction`` copy."""
    A = [[Fraction(x) for x in row] for row in M]
    if not A or not A[0]:
        return 0
    m, n = len(A), len(A[0])
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == m:
            break
    return r


def betti_numbers(facets, n_vertices: int | None = None) -> list[int]:
    """Rational Betti numbers of the complex generated by ``facets`` (plus isolated vertices)."""
    facets = [tuple(f) for f in facets]
    if n_vertices:
        facets += [(v,) for v in range(1, n_vertices + 1)]
    S = closure(facets)
    top = max(S) if S else -1
    out = []
    for q in range(top + 1):
        nq = len(S[q])
        rq = rank(boundary(S, q)) if q > 0 else 0
        rq1 = rank(boundary(S, q + 1)) if q + 1 <= top else 0
        out.append(nq - rq - rq1)
    return out


def _minors_gcd(M: list[list[int]], k: int) -> int:
    m, n = len(M), len(M[0]) if M else 0
    g = 0
    for rows in itertools.combinations(range(m), k):
        for cols in itertools.combinations(range(n), k):
            sub = [[Fraction(M[i][j]) for j in cols] for i in rows]
            g = gcd(g, abs(int(_det(sub))))
            if g == 1:
                return 1
    return g


def _det(A: list[list[Fraction]]) -> Fraction:
    A = [row[:] for row in A]
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return d


def invariant_factors(M) -> list[int]:
    """Invariant factors ``d_k = D_k / D_{k-1}`` from determinantal divisors.

    ``D_k`` is the gcd of all k x k minors.  Exponential in size; only meant
    for the small matrices of the tests.
    """
    M = [[int(Fraction(x)) for x in row] for row in M]
    if not M or not M[0]:
        return []
    out, prev = [], 1
    for k in range(1, min(len(M), len(M[0])) + 1):
        Dk = _minors_gcd(M, k)
        if Dk == 0:
            break
        out.append(Dk // prev)
        prev = Dk
    return out


def integral_homology(d_q, d_q1, n_q: int) -> tuple[int, list[int]]:
    """``(free rank, torsion)`` of ``ker d_q / im d_{q+1}``.

    Free rank comes from rational ranks; torsion is the invariant factors of
    ``d_{q+1}`` above 1.  If ``m x`` is a boundary then ``d_q x`` is torsion
    in a free group, hence zero, so the torsion of ``coker d_{q+1}`` already
    lies in ``H_q``.
    """
    r_q = rank(d_q) if d_q else 0
    r_q1 = rank(d_q1) if d_q1 else 0
    tors = [f for f in invariant_factors(d_q1) if f > 1] if d_q1 else []
    return n_q - r_q - r_q1, tors


def monomial_in_ideal(mono, generators) -> bool:
    """Brute force: try dividing ``mono`` by each generator."""
    for g in generators:
        q = [a - b for a, b in zip(mono, g)]
        if all(x >= 0 for x in q):
            return True
    return False


def ideal_contained(gens_I, gens_J) -> bool:
    return all(monomial_in_ideal(g, gens_J) for g in gens_I)


def fibre_product_count(m: int, n: int, k: int) -> int:
    return sum(1 for a in range(m) for b in range(n) if a % k == b % k)

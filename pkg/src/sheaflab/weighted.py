"""Weighted simplicial homology and its cosheaf description.

A weight assigns a nonzero integer to every simplex so that a face's weight
divides the weight of each coface.  The weighted boundary of a q-simplex is

    d^w(sigma) = sum_k (-1)^k * w(sigma) / w(d_k sigma) * d_k sigma

with ``d_k`` dropping the k-th vertex of the sorted tuple.  Everything in
this module is exact (Python integers and ``Fraction``).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from . import exact
from .complex import Simplex, SimplicialComplex, _sign, boundary_faces
from .hodge import EXACT, cohomology_dimension
from .sheaf import CONTRAVARIANT, RATIONAL, Sheaf


class WeightFunction(Mapping):
    """Integer weight per simplex.

    Rational values are lifted to integers by multiplying every weight by the
    least common multiple of the denominators; all weight ratios, and hence
    the weighted boundary maps, are unchanged.
    """

    def __init__(self, values: Mapping[Sequence[int], object]):
        fr = {tuple(int(v) for v in s): Fraction(x) for s, x in values.items()}
        den = lcm(*(x.denominator for x in fr.values())) if fr else 1
        self.scale = den
        self._w = {s: int(x * den) for s, x in fr.items()}

    def __getitem__(self, s):
        return self._w[tuple(s)]

    def __iter__(self):
        return iter(self._w)

    def __len__(self):
        return len(self._w)

    def __repr__(self):
        return f"WeightFunction({self._w!r})"

    @classmethod
    def constant(cls, K: SimplicialComplex, value: int = 1) -> "WeightFunction":
        return cls({s: value for s in K})


def _weights(w) -> WeightFunction:
    return w if isinstance(w, WeightFunction) else WeightFunction(w)


@dataclass(frozen=True)
class WeightViolation:
    face: Simplex
    coface: Simplex | None
    reason: str


def validate_weight(K: SimplicialComplex, w) -> list[WeightViolation]:
    """Zero weights and codim-1 pairs where ``w(face)`` does not divide ``w(coface)``."""
    w = _weights(w)
    missing = [s for s in K if s not in w]
    if missing:
        raise ValueError(f"weight missing for simplex {list(missing[0])} ({len(missing)} missing)")
    out = []
    for s in K:
        if w[s] == 0:
            out.append(WeightViolation(s, None, "zero weight"))
    for q in range(K.dim):
        for s in K.simplices(q):
            for t in K.cofaces(s):
                if w[s] != 0 and w[t] % w[s] != 0:
                    out.append(WeightViolation(s, t, f"{w[s]} does not divide {w[t]}"))
    return out


def _require_valid(K, w) -> WeightFunction:
    w = _weights(w)
    bad = validate_weight(K, w)
    if bad:
        v = bad[0]
        raise ValueError(f"invalid weight: {v.reason} at {v.face}" +
                         (f" -> {v.coface}" if v.coface else ""))
    return w


def weighted_boundary_matrix(K: SimplicialComplex, w, q: int) -> np.ndarray:
    """Exact matrix of ``d^w_q`` with rows ``K_(q-1)`` and columns ``K_(q)``."""
    w = _require_valid(K, w)
    if not 1 <= q <= K.dim:
        raise ValueError(f"boundary degree q={q} out of range 1..{K.dim}")
    return _boundary(K, w, q)


def _boundary(K: SimplicialComplex, w: WeightFunction, q: int) -> np.ndarray:
    rows, cols = K.simplices(q - 1), K.simplices(q)
    D = exact.zeros((len(rows), len(cols)))
    for c, s in enumerate(cols):
        for face in boundary_faces(s):
            D[K.index(face), c] = _sign(face, s) * Fraction(w[s], w[face])
    return D


def _int_matrix(A) -> list[list[int]]:
    out = []
    for row in np.asarray(A, dtype=object):
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError(f"non-integer entry {x}")
            r.append(int(x))
        out.append(r)
    return out


# -- Smith normal form ----------------------------------------------------


class SmithForm(NamedTuple):
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``Vinv = V^{-1}``."""

    D: list[list[int]]
    U: list[list[int]]
    V: list[list[int]]
    Vinv: list[list[int]]

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]], n_cols: int | None = None) -> SmithForm:
    """Smith normal form of an integer matrix by row and column reduction.

    The pivot at each step is the smallest nonzero entry (in absolute value)
    of the remaining submatrix, which keeps intermediate entries small.
    Diagonal entries come out nonnegative with each dividing the next.
    """
    D = [list(map(int, r)) for r in A]
    m = len(D)
    n = len(D[0]) if m else (n_cols or 0)
    U, V, Vi = _eye(m), _eye(n), _eye(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for r in M:
                r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, f):  # row dst += f * row src
        D[dst] = [a + f * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):  # col dst += f * col src
        for M in (D, V):
            for r in M:
                r[dst] += f * r[src]
        Vi[src] = [a - f * b for a, b in zip(Vi[src], Vi[dst])]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(m, n):
        nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        dirty = True
            if not dirty:
                # pivot must also divide the rest of the submatrix
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if D[i][j] % p), None)
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            nz = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]]
            nz += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
        if D[t][t] < 0:
            negate_row(t)
        t += 1
    return SmithForm(D, U, V, Vi)


def invariant_factors(A: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form."""
    return [d for d in smith_normal_form(A).diagonal if d]


class IntegralHomology(NamedTuple):
    rank: int
    torsion: list[int]


def _matmul_int(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def integral_homology(d_q: list[list[int]], d_q1: list[list[int]], n_q: int) -> IntegralHomology:
    """``ker d_q / im d_{q+1}`` over the integers from two boundary matrices.

    The Smith form of ``d_q`` yields a basis of ``ker d_q`` (last columns of
    ``V``); ``d_{q+1}`` is rewritten in that basis via ``V^{-1}`` and reduced
    again.
    """
    if d_q and d_q[0]:
        S = smith_normal_form(d_q)
        r, Vinv = S.rank, S.Vinv
    else:
        r, Vinv = 0, _eye(n_q)
    k = n_q - r
    if not d_q1 or not d_q1[0]:
        return IntegralHomology(k, [])
    coords = _matmul_int(Vinv, d_q1)
    if any(any(row) for row in coords[:r]):
        raise ArithmeticError("image of the next boundary map is not inside the kernel")
    M = coords[r:]
    if not M:
        return IntegralHomology(0, [])
    facs = invariant_factors(M)
    return IntegralHomology(k - len(facs), [f for f in facs if f > 1])


def weighted_homology(K: SimplicialComplex, w, q: int, coeff: str = "Q"):
    """``H_q(K; w)``: its dimension over Q, or ``(rank, torsion)`` over Z."""
    w = _require_valid(K, w)
    if q < 0:
        raise ValueError(f"degree must be nonnegative, got {q}")
    n_q = len(K.simplices(q))
    d_q = _boundary(K, w, q) if 1 <= q <= K.dim else None
    d_q1 = _boundary(K, w, q + 1) if q + 1 <= K.dim else None
    if coeff.upper() in ("Q", "QQ"):
        if n_q == 0:
            return 0
        r_q = exact.rank(d_q) if d_q is not None else 0
        r_q1 = exact.rank(d_q1) if d_q1 is not None else 0
        return n_q - r_q - r_q1
    if coeff.upper() in ("Z", "ZZ"):
        if n_q == 0:
            return IntegralHomology(0, [])
        a = _int_matrix(d_q) if d_q is not None else []
        b = _int_matrix(d_q1) if d_q1 is not None else []
        return integral_homology(a, b, n_q)
    raise ValueError(f"coefficients must be Q or Z, got {coeff!r}")


def weight_cosheaf(K: SimplicialComplex, w) -> Sheaf:
    """Contravariant sheaf with stalk Q everywhere and map ``r -> w(tau)/w(sigma) * r``."""
    w = _require_valid(K, w)
    maps = {}
    for q in range(K.dim):
        for s in K.simplices(q):
            for t in K.cofaces(s):
                maps[(s, t)] = [[Fraction(w[t], w[s])]]
    return Sheaf(K, {s: 1 for s in K}, maps, CONTRAVARIANT, RATIONAL)


@dataclass(frozen=True)
class EquivalenceReport:
    q: int
    homology_dim: int
    cohomology_dim: int

    @property
    def equal(self) -> bool:
        return self.homology_dim == self.cohomology_dim


def verify_weighted_equivalence(K: SimplicialComplex, w, q: int) -> EquivalenceReport:
    """Compare weighted homology with the cohomology of :func:`weight_cosheaf`."""
    w = _require_valid(K, w)
    h = weighted_homology(K, w, q, "Q")
    if q > K.dim:
        return EquivalenceReport(q, h, 0)
    c = cohomology_dimension(weight_cosheaf(K, w), q, mode=EXACT)
    return EquivalenceReport(q, h, c)


def homology_table(K: SimplicialComplex, w, coeff: str = "Z") -> list[tuple[int, int, list[int]]]:
    rows = []
    for q in range(K.dim + 1):
        h = weighted_homology(K, w, q, coeff)
        if isinstance(h, IntegralHomology):
            rows.append((q, h.rank, h.torsion))
        else:
            rows.append((q, h, []))
    return rows


# -- CSV ------------------------------------------------------------------


def read_weights_csv(path) -> WeightFunction:
    """Rows ``dim, v0, ..., v_dim, weight``; weights may be ``p/q`` strings."""
    vals = {}
    with open(path, newline="") as fh:
        for k, row in enumerate(csv.reader(fh)):
            row = [c.strip() for c in row if c.strip()]
            if not row or row[0].startswith("#"):
                continue
            try:
                q = int(row[0])
            except ValueError:
                if k == 0:
                    continue
                raise
            if len(row) != q + 3:
                raise ValueError(f"{path}: row {k + 1} should have {q + 3} fields, got {len(row)}")
            vals[tuple(sorted(int(v) for v in row[1:q + 2]))] = Fraction(row[q + 2])
    return WeightFunction(vals)


def write_weights_csv(path, K: SimplicialComplex, w) -> None:
    w = _weights(w)
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        for s in K:
            wr.writerow([len(s) - 1, *s, w[s]])


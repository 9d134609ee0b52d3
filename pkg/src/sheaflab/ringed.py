"""Ring-valued sheaves with computable carriers.

Two families are supported:

* monomial ideals in ``F[x_1, ..., x_n]`` attached to simplices, checked for
  the containments that make ``S/I`` (covariant) or the localizations at
  primes (contravariant) into sheaves of rings;
* ``Z/n`` stalks with reduction maps, whose ring of global sections is
  enumerated outright.
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Mapping, Sequence

from .complex import Simplex, SimplicialComplex
from .sheaf import CONTRAVARIANT, COVARIANT

Exponent = tuple[int, ...]


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimalize(gens: Iterable[Exponent]) -> frozenset[Exponent]:
    gens = sorted(set(gens), key=lambda g: (sum(g), g))
    keep: list[Exponent] = []
    for g in gens:
        if not any(_divides(h, g) for h in keep):
            keep.append(g)
    return frozenset(keep)


@dataclass(frozen=True)
class MonomialIdeal:
    """Ideal generated by monomials, given as exponent vectors.

    The generator set is kept minimal.  No generators is the zero ideal; the
    all-zeros exponent vector is the unit ideal.
    """

    n_vars: int
    generators: frozenset[Exponent] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n_vars < 1:
            raise ValueError("n_vars must be positive")
        gens = []
        for g in self.generators:
            g = tuple(int(e) for e in g)
            if len(g) != self.n_vars or any(e < 0 for e in g):
                raise ValueError(f"bad exponent vector {g} for {self.n_vars} variables")
            gens.append(g)
        object.__setattr__(self, "generators", _minimalize(gens))

    @classmethod
    def from_monomials(cls, n_vars: int, monomials: Iterable[Iterable[int]]) -> "MonomialIdeal":
        """Each monomial is a multiset of 1-based variable indices, e.g. ``(1, 2)`` for x1*x2."""
        gens = []
        for mono in monomials:
            e = [0] * n_vars
            for v in mono:
                e[v - 1] += 1
            gens.append(tuple(e))
        return cls(n_vars, frozenset(gens))

    def contains_monomial(self, e: Exponent) -> bool:
        return any(_divides(g, e) for g in self.generators)

    def __le__(self, other: "MonomialIdeal") -> bool:
        return monomial_ideal_contains(self, other)

    def __str__(self) -> str:
        if not self.generators:
            return "(0)"

        def mono(g):
            parts = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(g) if e]
            return "*".join(parts) or "1"

        return "(" + ", ".join(mono(g) for g in sorted(self.generators, reverse=True)) + ")"


def monomial_ideal_contains(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """Whether ``I`` is contained in ``J``: each generator of ``I`` lies in ``J``."""
    if I.n_vars != J.n_vars:
        raise ValueError(f"ideals live in different rings ({I.n_vars} vs {J.n_vars} variables)")
    return all(J.contains_monomial(g) for g in I.generators)


@dataclass(frozen=True)
class IdealSheafAssignment:
    complex: SimplicialComplex
    variance: str
    ideals: Mapping[Simplex, MonomialIdeal]


@dataclass(frozen=True)
class ContainmentCheck:
    face: Simplex
    coface: Simplex
    holds: bool


def _vertex_ideal(n: int, s: Simplex) -> MonomialIdeal:
    return MonomialIdeal.from_monomials(n, [(v,) for v in s])


def _edge_product_ideal(n: int, s: Simplex) -> MonomialIdeal:
    return MonomialIdeal.from_monomials(n, itertools.combinations(s, 2))


def _complement_prime(n: int, s: Simplex) -> MonomialIdeal:
    return MonomialIdeal.from_monomials(n, [(v,) for v in range(1, n + 1) if v not in s])


_KINDS = {
    "vertex": (_vertex_ideal, COVARIANT),
    "edge_product": (_edge_product_ideal, COVARIANT),
    "complement_prime": (_complement_prime, CONTRAVARIANT),
}


def build_ideal_sheaf(K: SimplicialComplex, kind: str) -> IdealSheafAssignment:
    """One of the three monomial-ideal assignments on ``K``.

    ``vertex``: ``(x_i | i in sigma)``; ``edge_product``:
    ``(x_i x_j | {i, j} in sigma)``; ``complement_prime``:
    ``(x_i | i not in sigma)``, which reverses containment.
    """
    kind = kind.replace("-", "_")
    if kind not in _KINDS:
        raise ValueError(f"unknown ideal-sheaf kind {kind!r}; choose from {sorted(_KINDS)}")
    make, variance = _KINDS[kind]
    n = K.n_vertices
    return IdealSheafAssignment(K, variance, {s: make(n, s) for s in K})


def containment_checks(A: IdealSheafAssignment) -> list[ContainmentCheck]:
    """Verdict for each codim-1 incident pair in the assignment's variance."""
    K = A.complex
    missing = [s for s in K if s not in A.ideals]
    if missing:
        raise ValueError(f"no ideal assigned to simplex {list(missing[0])}")
    out = []
    for q in range(K.dim):
        for s in K.simplices(q):
            for t in K.cofaces(s):
                if A.variance == COVARIANT:
                    ok = monomial_ideal_contains(A.ideals[s], A.ideals[t])
                else:
                    ok = monomial_ideal_contains(A.ideals[t], A.ideals[s])
                out.append(ContainmentCheck(s, t, ok))
    return out


def validate_ideal_functor(A: IdealSheafAssignment) -> list[ContainmentCheck]:
    """Failing containments; empty means the assignment is a functor."""
    return [c for c in containment_checks(A) if not c.holds]


def ideal_sheaf_report(A: IdealSheafAssignment) -> dict:
    checks = containment_checks(A)
    return {
        "variance": A.variance,
        "ideals": [{"simplex": list(s), "ideal": str(A.ideals[s])} for s in A.complex],
        "checks": [{"face": list(c.face), "coface": list(c.coface), "holds": c.holds}
                   for c in checks],
        "valid": all(c.holds for c in checks),
    }


# -- Z/n ring sheaves -----------------------------------------------------


class EnumerationLimitError(ValueError):
    pass


@dataclass(frozen=True)
class ZnRingSheaf:
    """``Z/n_sigma`` on each simplex with reduction maps along faces."""

    complex: SimplicialComplex
    moduli: Mapping[Simplex, int]

    def __post_init__(self):
        K = self.complex
        mods = {}
        for s in K:
            if s not in self.moduli:
                raise ValueError(f"no modulus for simplex {list(s)}")
            n = int(self.moduli[s])
            if n < 1:
                raise ValueError(f"modulus at {list(s)} must be a positive integer, got {n}")
            mods[s] = n
        for q in range(K.dim):
            for s in K.simplices(q):
                for t in K.cofaces(s):
                    if mods[s] % mods[t]:
                        raise ValueError(
                            f"no unital map Z/{mods[s]} -> Z/{mods[t]} along {list(s)} <= {list(t)}: "
                            f"{mods[t]} does not divide {mods[s]}")
        object.__setattr__(self, "moduli", mods)


@dataclass(frozen=True)
class GlobalSections:
    size: int
    elements: list[tuple[int, ...]]

    def to_dict(self, max_elements: int = 10_000) -> dict:
        d: dict = {"size": self.size}
        if self.size <= max_elements:
            d["elements"] = [list(e) for e in self.elements]
        return d


def zn_global_sections(S: ZnRingSheaf, limit: int = 10**7) -> GlobalSections:
    """Vertex tuples ``(a_i)`` with ``a_i = a_j mod n_e`` on every edge ``e = [i, j]``."""
    K = S.complex
    verts = [v[0] for v in K.simplices(0)]
    mods = [S.moduli[(v,)] for v in verts]
    total = prod(mods)
    if total > limit:
        raise EnumerationLimitError(
            f"product of vertex moduli is {total}, above the enumeration bound {limit}")
    earlier: dict[int, list[tuple[int, int]]] = {v: [] for v in verts}
    for i, j in K.simplices(1):
        earlier[j].append((i, S.moduli[(i, j)]))
    out: list[tuple[int, ...]] = []
    val: dict[int, int] = {}

    def extend(k: int):
        if k == len(verts):
            out.append(tuple(val[v] for v in verts))
            return
        v = verts[k]
        for a in range(mods[k]):
            if all((a - val[u]) % ne == 0 for u, ne in earlier[v]):
                val[v] = a
                extend(k + 1)
        val.pop(v, None)

    extend(0)
    return GlobalSections(len(out), out)


def fibre_product_zn(m: int, n: int, k: int) -> list[tuple[int, int]]:
    """``{(a, b) in Z/m x Z/n : a = b mod k}``."""
    if min(m, n, k) < 1:
        raise ValueError("moduli must be positive")
    if m % k or n % k:
        raise ValueError(f"need k | m and k | n, got m={m}, n={n}, k={k}")
    return [(a, b) for a in range(m) for b in range(n) if (a - b) % k == 0]


def one_edge_sheaf(m: int, n: int, k: int) -> ZnRingSheaf:
    K = SimplicialComplex(2, [(1, 2)])
    return ZnRingSheaf(K, {(1,): m, (2,): n, (1, 2): k})


def ring_closure_failures(S: ZnRingSheaf, sections: Sequence[tuple[int, ...]]) -> list[str]:
    """Componentwise +, * and the unit must stay inside the section set."""
    verts = [v[0] for v in S.complex.simplices(0)]
    mods = [S.moduli[(v,)] for v in verts]
    members = set(sections)
    fails = []
    one = tuple(1 % n for n in mods)
    zero = tuple(0 for _ in mods)
    if one not in members:
        fails.append("missing unit")
    if zero not in members:
        fails.append("missing zero")
    for a in sections:
        for b in sections:
            s = tuple((x + y) % n for x, y, n in zip(a, b, mods))
            p = tuple((x * y) % n for x, y, n in zip(a, b, mods))
            if s not in members:
                fails.append(f"{a} + {b}")
            if p not in members:
                fails.append(f"{a} * {b}")
    return fails


def read_moduli_csv(path) -> dict[Simplex, int]:
    """Rows ``dim, v0, ..., v_dim, modulus``."""
    out = {}
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
            out[tuple(sorted(int(v) for v in row[1:q + 2]))] = int(row[q + 2])
    return out

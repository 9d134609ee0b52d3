"""Cellular sheaves of finite-dimensional vector spaces on simplicial complexes.

Only codimension-1 restriction maps are stored.  A map is keyed by the
incident pair ``(face, coface)`` regardless of variance:

* covariant sheaves map ``face -> coface``; the matrix has shape
  ``dim F(coface) x dim F(face)``;
* contravariant sheaves (functors on the opposite poset) map
  ``coface -> face``; the matrix has shape ``dim F(face) x dim F(coface)``.

An absent pair stands for the zero map.  Entries are ``float64`` for the
``"real"`` field and ``Fraction`` objects for the ``"rational"`` field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Mapping

import numpy as np

from . import exact
from .complex import (
    Simplex,
    SimplicialComplex,
    complex_from_dict,
    complex_to_dict,
    dumps_json,
    _num_str,
)

COVARIANT = "covariant"
CONTRAVARIANT = "contravariant"
REAL = "real"
RATIONAL = "rational"

DEFAULT_TOL = 1e-9


def as_field(A, field: str) -> np.ndarray:
    """Coerce a matrix to the representation used by ``field``."""
    if field == RATIONAL:
        return exact.as_exact(A)
    a = np.asarray(A)
    if a.dtype == object:
        a = a.astype(float)
    return np.array(a, dtype=float)


@dataclass(frozen=True, eq=False)
class Sheaf:
    complex: SimplicialComplex
    stalk_dims: Mapping[Simplex, int]
    restrictions: Mapping[tuple[Simplex, Simplex], np.ndarray] = field(default_factory=dict)
    variance: str = COVARIANT
    field: str = REAL

    def __post_init__(self):
        K = self.complex
        if self.variance not in (COVARIANT, CONTRAVARIANT):
            raise ValueError(f"variance must be covariant or contravariant, got {self.variance!r}")
        if self.field not in (REAL, RATIONAL):
            raise ValueError(f"field must be real or rational, got {self.field!r}")
        dims = {}
        for s in K:
            if s not in self.stalk_dims:
                raise ValueError(f"missing stalk dimension for simplex {s}")
            d = self.stalk_dims[s]
            if int(d) != d or d < 0:
                raise ValueError(f"stalk dimension at {s} must be a nonnegative integer, got {d!r}")
            dims[s] = int(d)
        maps = {}
        for (face, coface), M in self.restrictions.items():
            face, coface = tuple(face), tuple(coface)
            if face not in K or coface not in K:
                raise ValueError(f"restriction on ({face}, {coface}) references a simplex outside K")
            if len(coface) != len(face) + 1 or not set(face) <= set(coface):
                raise ValueError(f"({face}, {coface}) is not a codimension-1 incident pair")
            M = as_field(M, self.field)
            if M.ndim != 2:
                M = M.reshape(self._shape(dims, face, coface))
            if M.shape != self._shape(dims, face, coface):
                raise ValueError(
                    f"restriction ({face}, {coface}) has shape {M.shape}, "
                    f"expected {self._shape(dims, face, coface)}")
            M.setflags(write=False)
            maps[(face, coface)] = M
        object.__setattr__(self, "stalk_dims", dims)
        object.__setattr__(self, "restrictions", maps)

    def _shape(self, dims, face, coface) -> tuple[int, int]:
        if self.variance == COVARIANT:
            return dims[coface], dims[face]
        return dims[face], dims[coface]

    def restriction(self, face, coface) -> np.ndarray:
        """The stored map on ``(face, coface)``; zero matrix if absent."""
        key = (tuple(face), tuple(coface))
        if key in self.restrictions:
            return self.restrictions[key]
        shape = self._shape(self.stalk_dims, *key)
        return exact.zeros(shape) if self.field == RATIONAL else np.zeros(shape)

    def cochain_dim(self, q: int) -> int:
        return sum(self.stalk_dims[s] for s in self.complex.simplices(q))

    @cached_property
    def violations(self) -> list["Violation"]:
        return validate_sheaf(self)

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def to_field(self, field: str) -> "Sheaf":
        if field == self.field:
            return self
        return Sheaf(self.complex, self.stalk_dims, self.restrictions, self.variance, field)


@dataclass(frozen=True)
class Violation:
    """Two codim-1 paths from ``source`` to ``target`` whose composites differ."""

    source: Simplex
    target: Simplex
    via: tuple[Simplex, Simplex]
    discrepancy: float


def _composite(F: Sheaf, low: Simplex, mid: Simplex, high: Simplex) -> np.ndarray:
    if F.variance == COVARIANT:
        A, B = F.restriction(mid, high), F.restriction(low, mid)
    else:
        A, B = F.restriction(low, mid), F.restriction(mid, high)
    if F.field == RATIONAL:
        return exact.matmul(A, B)
    return A @ B


def validate_sheaf(F: Sheaf, tol: float = DEFAULT_TOL) -> list[Violation]:
    """Check path independence of every codimension-2 composite.

    For each ``sigma`` and ``rho`` two dimensions up with ``sigma <= rho`` the
    two intermediate simplices give two composites; pairs whose max-entry
    difference exceeds ``tol`` are reported (exact comparison in rational
    mode).  For contravariant sheaves the arrows run from ``rho`` to ``sigma``.
    """
    K = F.complex
    out = []
    for q in range(K.dim - 1):
        for sigma in K.simplices(q):
            tops: dict[Simplex, list[Simplex]] = {}
            for tau in K.cofaces(sigma):
                for rho in K.cofaces(tau):
                    tops.setdefault(rho, []).append(tau)
            for rho, mids in sorted(tops.items()):
                t1, t2 = sorted(mids)
                diff = _composite(F, sigma, t1, rho) - _composite(F, sigma, t2, rho)
                if diff.size == 0:
                    continue
                if F.field == RATIONAL:
                    gap = max(abs(x) for x in diff.flat)
                    bad = gap != 0
                else:
                    gap = float(np.max(np.abs(diff)))
                    bad = gap > tol
                if bad:
                    if F.variance == COVARIANT:
                        out.append(Violation(sigma, rho, (t1, t2), float(gap)))
                    else:
                        out.append(Violation(rho, sigma, (t1, t2), float(gap)))
    return out


def constant_sheaf(K: SimplicialComplex, d: int = 1, field: str = REAL,
                   variance: str = COVARIANT) -> Sheaf:
    """Every stalk ``R^d``; every codim-1 restriction the identity."""
    if int(d) != d or d < 1:
        raise ValueError(f"stalk dimension must be a positive integer, got {d!r}")
    eye = exact.identity(d) if field == RATIONAL else np.eye(d)
    maps = {(f, c): eye for q in range(K.dim) for f in K.simplices(q) for c in K.cofaces(f)}
    return Sheaf(K, {s: d for s in K}, maps, variance, field)


def tensor_product(F: Sheaf, G: Sheaf) -> Sheaf:
    """Stalkwise tensor product; restrictions are Kronecker products."""
    if F.complex != G.complex:
        raise ValueError("tensor product needs both sheaves on the same complex")
    if F.variance != G.variance:
        raise ValueError(f"variance mismatch: {F.variance} vs {G.variance}")
    if F.field != G.field:
        raise ValueError(f"field mismatch: {F.field} vs {G.field}")
    dims = {s: F.stalk_dims[s] * G.stalk_dims[s] for s in F.complex}
    maps = {}
    for key in set(F.restrictions) & set(G.restrictions):
        maps[key] = np.kron(F.restrictions[key], G.restrictions[key])
    return Sheaf(F.complex, dims, maps, F.variance, F.field)


# -- JSON -----------------------------------------------------------------


def sheaf_to_dict(F: Sheaf, coords=None) -> dict:
    K = F.complex
    return {
        "complex": complex_to_dict(K, coords),
        "variance": F.variance,
        "field": F.field,
        "stalks": [{"simplex": list(s), "dim": F.stalk_dims[s]} for s in K],
        "restrictions": [
            {"face": list(f), "coface": list(c),
             "matrix": [[_num_str(x) for x in row] for row in F.restrictions[(f, c)]]}
            for (f, c) in sorted(F.restrictions, key=lambda k: (len(k[0]), k))
        ],
    }


def sheaf_from_dict(d: dict) -> Sheaf:
    K = complex_from_dict(d["complex"])
    if not isinstance(K, SimplicialComplex):
        K = K.complex
    fld = d.get("field", REAL)
    dims = {tuple(e["simplex"]): int(e["dim"]) for e in d["stalks"]}
    maps = {}
    for e in d.get("restrictions", []):
        rows = e["matrix"]
        if fld == RATIONAL:
            M = exact.as_exact([[Fraction(x) for x in r] for r in rows]) if rows else None
        else:
            M = np.array([[float(x) for x in r] for r in rows], dtype=float) if rows else None
        key = (tuple(e["face"]), tuple(e["coface"]))
        if M is None:
            continue
        maps[key] = M
    return Sheaf(K, dims, maps, d.get("variance", COVARIANT), fld)


def save_sheaf(path, F: Sheaf, coords=None) -> None:
    Path(path).write_text(dumps_json(sheaf_to_dict(F, coords)))


def load_sheaf(path) -> Sheaf:
    return sheaf_from_dict(json.loads(Path(path).read_text()))

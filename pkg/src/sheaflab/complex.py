"""Finite abstract simplicial complexes.

Vertices are the integers ``1..n``.  A q-simplex is stored as a strictly
increasing tuple of q+1 vertices, and the simplices of each dimension are
kept in lexicographic order.  That order fixes the row/column layout of every
matrix assembled elsewhere in the package.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

Simplex = tuple[int, ...]


class SimplicialComplex:
    """Downward-closed family of vertex tuples over ``{1, ..., n}``.

    Every vertex is a 0-simplex.  Instances are treated as immutable.
    """

    def __init__(self, n_vertices: int, simplices: Iterable[Sequence[int]] = ()):
        if int(n_vertices) != n_vertices or n_vertices < 1:
            raise ValueError(f"n_vertices must be a positive integer, got {n_vertices!r}")
        n_vertices = int(n_vertices)
        found: set[Simplex] = {(i,) for i in range(1, n_vertices + 1)}
        for s in simplices:
            t = tuple(int(v) for v in s)
            if not t:
                raise ValueError("empty simplex")
            if any(b <= a for a, b in zip(t, t[1:])):
                raise ValueError(f"simplex {t} is not strictly increasing")
            if t[0] < 1 or t[-1] > n_vertices:
                raise ValueError(f"simplex {t} has a vertex outside 1..{n_vertices}")
            found.add(t)
        for t in found:
            for k in range(len(t)):
                face = t[:k] + t[k + 1:]
                if face and face not in found:
                    raise ValueError(f"face {face} of {t} is missing (not downward closed)")

        top = max(len(t) for t in found) - 1
        by_dim: list[list[Simplex]] = [[] for _ in range(top + 1)]
        for t in found:
            by_dim[len(t) - 1].append(t)
        self.n_vertices = n_vertices
        self._by_dim = tuple(tuple(sorted(lst)) for lst in by_dim)
        self._index = [{s: i for i, s in enumerate(lst)} for lst in self._by_dim]
        cof: dict[Simplex, list[Simplex]] = {s: [] for s in found}
        for lst in self._by_dim[1:]:
            for t in lst:
                for face in boundary_faces(t):
                    cof[face].append(t)
        self._cofaces = {s: tuple(v) for s, v in cof.items()}

    @property
    def dim(self) -> int:
        return len(self._by_dim) - 1

    @property
    def simplices_by_dim(self) -> tuple[tuple[Simplex, ...], ...]:
        return self._by_dim

    def simplices(self, q: int) -> tuple[Simplex, ...]:
        """The q-simplices in canonical order (empty if q is out of range)."""
        if 0 <= q <= self.dim:
            return self._by_dim[q]
        return ()

    def __iter__(self):
        for lst in self._by_dim:
            yield from lst

    def __len__(self) -> int:
        return sum(len(lst) for lst in self._by_dim)

    def __contains__(self, s) -> bool:
        t = tuple(s)
        q = len(t) - 1
        return 0 <= q <= self.dim and t in self._index[q]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.n_vertices == other.n_vertices and self._by_dim == other._by_dim

    def __hash__(self):
        return hash((self.n_vertices, self._by_dim))

    def __repr__(self) -> str:
        counts = ", ".join(str(len(lst)) for lst in self._by_dim)
        return f"SimplicialComplex(n_vertices={self.n_vertices}, f=({counts}))"

    def index(self, s: Sequence[int]) -> int:
        """Position of ``s`` within its dimension's canonical list."""
        t = tuple(s)
        try:
            return self._index[len(t) - 1][t]
        except (IndexError, KeyError):
            raise KeyError(f"simplex {t} is not in the complex") from None

    def cofaces(self, s: Sequence[int]) -> tuple[Simplex, ...]:
        """Codimension-1 cofaces of ``s``, in canonical order."""
        t = tuple(s)
        if t not in self._cofaces:
            raise KeyError(f"simplex {t} is not in the complex")
        return self._cofaces[t]

    def facets(self) -> list[Simplex]:
        """Maximal simplices, sorted lexicographically."""
        return sorted(s for s, c in self._cofaces.items() if not c)

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(lst) for lst in self._by_dim)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(s in other for s in self)


@dataclass(frozen=True)
class GeometricComplex:
    """A simplicial complex with one coordinate vector per vertex.

    ``coords`` has shape ``(n_vertices, d)``; row ``i - 1`` holds ``r_i``.
    Object arrays of ``Fraction`` are accepted for exact computations.
    """

    complex: SimplicialComplex
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords)
        if c.ndim != 2 or c.shape[0] != self.complex.n_vertices or c.shape[1] < 1:
            raise ValueError(
                f"coords must have shape ({self.complex.n_vertices}, d>=1), got {c.shape}")
        object.__setattr__(self, "coords", c)

    @property
    def ambient_dim(self) -> int:
        return self.coords.shape[1]

    def position(self, i: int) -> np.ndarray:
        return self.coords[i - 1]


def boundary_faces(s: Sequence[int]) -> list[Simplex]:
    """``[d_0(s), ..., d_q(s)]`` where ``d_k`` drops the k-th vertex."""
    t = tuple(s)
    if len(t) < 2:
        return []
    return [t[:k] + t[k + 1:] for k in range(len(t))]


def _sign(face: Simplex, coface: Simplex) -> int:
    if len(coface) != len(face) + 1:
        return 0
    for k in range(len(coface)):
        if coface[:k] + coface[k + 1:] == face:
            return -1 if k % 2 else 1
    return 0


def incidence_sign(K: SimplicialComplex, sigma: Sequence[int], tau: Sequence[int]) -> int:
    """``[sigma : tau]``: ``(-1)^k`` if ``sigma`` is ``tau`` minus its k-th vertex, else 0."""
    s, t = tuple(sigma), tuple(tau)
    for x in (s, t):
        if x not in K:
            raise KeyError(f"simplex {x} is not in the complex")
    return _sign(s, t)


def build_from_facets(n_vertices: int, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Downward closure of ``facets`` together with every singleton ``[i]``."""
    if int(n_vertices) != n_vertices or n_vertices < 1:
        raise ValueError(f"n_vertices must be a positive integer, got {n_vertices!r}")
    out: set[Simplex] = set()
    for f in facets:
        verts = sorted(set(int(v) for v in f))
        if not verts:
            raise ValueError("empty facet")
        bad = [v for v in verts if v < 1 or v > n_vertices]
        if bad:
            raise ValueError(f"facet {tuple(verts)} has vertices out of range 1..{n_vertices}: {bad}")
        for r in range(1, len(verts) + 1):
            out.update(combinations(verts, r))
    return SimplicialComplex(n_vertices, out)


def _cliques(adj: list[set[int]], n: int, max_dim: int) -> list[Simplex]:
    # grow cliques by intersecting neighbour sets restricted to larger vertices
    out: list[Simplex] = []

    def grow(clique: Simplex, cand: set[int]):
        out.append(clique)
        if len(clique) - 1 >= max_dim:
            return
        for v in sorted(cand):
            grow(clique + (v,), {u for u in cand & adj[v] if u > v})

    for v in range(1, n + 1):
        grow((v,), {u for u in adj[v] if u > v})
    return out


def rips_complex(points, epsilon: float, max_dim: int = 2) -> GeometricComplex:
    """Vietoris-Rips complex: edges at Euclidean distance ``<= epsilon``, cliques up to ``max_dim``."""
    pts = np.asarray(points)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    n = pts.shape[0]
    if n < 1:
        raise ValueError("need at least one point")
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    if max_dim < 0:
        raise ValueError(f"max_dim must be >= 0, got {max_dim!r}")
    x = pts.astype(float)
    dist = np.sqrt(((x[:, None, :] - x[None, :, :]) ** 2).sum(axis=-1))
    adj: list[set[int]] = [set() for _ in range(n + 1)]
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i, j] <= epsilon:
                adj[i + 1].add(j + 1)
                adj[j + 1].add(i + 1)
    K = SimplicialComplex(n, _cliques(adj, n, max_dim))
    return GeometricComplex(K, pts)


# -- file formats ---------------------------------------------------------


def complex_to_dict(K: SimplicialComplex, coords=None) -> dict:
    d: dict = {"n_vertices": K.n_vertices, "facets": [list(f) for f in K.facets()]}
    if coords is not None:
        d["coords"] = [[_num_str(x) for x in row] for row in np.asarray(coords)]
    return d


def complex_from_dict(d: dict) -> SimplicialComplex | GeometricComplex:
    K = build_from_facets(d["n_vertices"], d.get("facets", []))
    if "coords" in d:
        return GeometricComplex(K, parse_matrix(d["coords"]))
    return K


def save_complex(path, K, coords=None) -> None:
    if isinstance(K, GeometricComplex):
        K, coords = K.complex, K.coords
    Path(path).write_text(dumps_json(complex_to_dict(K, coords)))


def load_complex(path) -> SimplicialComplex | GeometricComplex:
    return complex_from_dict(json.loads(Path(path).read_text()))


def dumps_json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def read_points_csv(path, exact: bool = False) -> np.ndarray:
    """One row per vertex, ``d`` columns; a non-numeric first row is a header.

    ``exact=True`` parses each decimal or ``p/q`` entry as a ``Fraction``.
    """
    conv = Fraction if exact else float
    rows = []
    with open(path, newline="") as fh:
        for k, row in enumerate(csv.reader(fh)):
            row = [c.strip() for c in row if c.strip()]
            if not row:
                continue
            try:
                rows.append([conv(c) for c in row])
            except ValueError:
                if k == 0:
                    continue
                raise ValueError(f"{path}: non-numeric row {k + 1}: {row}") from None
    if not rows:
        raise ValueError(f"{path}: no points")
    if len({len(r) for r in rows}) != 1:
        raise ValueError(f"{path}: rows have differing numbers of columns")
    return np.array(rows, dtype=object if exact else float)


def _num_str(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def parse_matrix(rows) -> np.ndarray:
    """Nested lists of decimal / ``"p/q"`` strings (or numbers) to an array.

    Any ``"p/q"`` entry makes the result an exact ``Fraction`` object array.
    """
    rows = [list(r) for r in rows]
    exact = any(isinstance(x, str) and "/" in x for r in rows for x in r)
    if exact:
        out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                out[i, j] = Fraction(x)
        return out
    return np.array([[float(x) for x in r] for r in rows], dtype=float).reshape(len(rows), -1)

"""Named sheaf models: GNM, ANM, the face-extension sheaf and its tensor extension.

Coordinates come from a :class:`~sheaflab.complex.GeometricComplex`.  Passing
``field="rational"`` keeps every entry an exact ``Fraction`` (coordinates,
weights and face vectors are converted exactly); ANM maps involve a square
root and are real-only.
"""

from __future__ import annotations

from typing import Callable, Mapping

import numpy as np

from . import exact
from .complex import GeometricComplex, Simplex, SimplicialComplex
from .sheaf import RATIONAL, REAL, Sheaf, tensor_product

EdgeWeights = Mapping[Simplex, float]
FaceData = Mapping[Simplex, np.ndarray]


class DegenerateGeometryError(ValueError):
    pass


def _vec(x, field: str) -> np.ndarray:
    if field == RATIONAL:
        return exact.as_exact(np.asarray(x, dtype=object).reshape(1, -1))[0]
    return np.asarray(x, dtype=object).astype(float).reshape(-1)


def _scalar(x, field: str):
    return exact.to_fraction(x) if field == RATIONAL else float(x)


def _positions(G: GeometricComplex, field: str) -> np.ndarray:
    if field == RATIONAL:
        return exact.as_exact(G.coords)
    return np.asarray(G.coords, dtype=object).astype(float)


def _edge_weight(w, e: Simplex, field: str):
    if w is None:
        return _scalar(1, field)
    if callable(w):
        return _scalar(w(e), field)
    if isinstance(w, Mapping):
        if e not in w:
            raise ValueError(f"missing weight for edge {list(e)}")
        return _scalar(w[e], field)
    return _scalar(w, field)


def _unwrap(K) -> SimplicialComplex:
    return K.complex if isinstance(K, GeometricComplex) else K


def gnm_sheaf(G, lam=1, dim: int = 3, field: str = REAL) -> Sheaf:
    """Stalks ``R^dim`` everywhere and every vertex-to-edge map ``lam * I``."""
    K = _unwrap(G)
    if K.dim > 1:
        raise ValueError(f"gnm_sheaf needs a graph (dimension <= 1), got dimension {K.dim}")
    lam = _scalar(lam, field)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    eye = exact.identity(dim) if field == RATIONAL else np.eye(dim)
    maps = {(v, e): lam * eye for e in K.simplices(1) for v in ((e[0],), (e[1],))}
    return Sheaf(K, {s: dim for s in K}, maps, field=field)


def _equilibrium(G: GeometricComplex, e: Simplex, d0) -> float:
    ri, rj = (np.asarray(G.position(v), dtype=object).astype(float) for v in e)
    if d0 is None:
        d = float(np.linalg.norm(rj - ri))
    elif callable(d0):
        d = float(d0(e))
    elif isinstance(d0, Mapping):
        d = float(d0[e]) if e in d0 else float(np.linalg.norm(rj - ri))
    else:
        d = float(d0)
    if not d > 0:
        raise DegenerateGeometryError(
            f"edge {list(e)} has equilibrium distance {d!r}; coincident endpoints are not allowed")
    return d


def _check_ambient(G, what: str):
    if not isinstance(G, GeometricComplex):
        raise ValueError(f"{what} needs a GeometricComplex with vertex coordinates")
    if G.ambient_dim != 3:
        raise ValueError(f"{what} needs coordinates in R^3, got R^{G.ambient_dim}")


def anm_sheaf(G: GeometricComplex, gamma: float = 1.0, d0=None) -> Sheaf:
    """ANM sheaf: vertex stalks ``R^3``, edge stalks ``R``.

    Both endpoint maps of edge ``[i, j]`` are the row
    ``sqrt(gamma) / d0_ij * (r_j - r_i)^T``.  ``d0`` (scalar, mapping or
    callable on edges) defaults to the current edge length.
    """
    _check_ambient(G, "anm_sheaf")
    K = G.complex
    if K.dim > 1:
        raise ValueError(f"anm_sheaf needs a graph (dimension <= 1), got dimension {K.dim}")
    if not gamma > 0:
        raise ValueError(f"spring constant gamma must be positive, got {gamma!r}")
    dims = {s: 3 if len(s) == 1 else 1 for s in K}
    maps = {}
    for e in K.simplices(1):
        d = _equilibrium(G, e, d0)
        i, j = e
        row = (np.sqrt(gamma) / d) * (_vec(G.position(j), REAL) - _vec(G.position(i), REAL))
        maps[((i,), e)] = row.reshape(1, 3)
        maps[((j,), e)] = row.reshape(1, 3)
    return Sheaf(K, dims, maps)


def anm_hessian_direct(G: GeometricComplex, gamma: float = 1.0, d0=None) -> np.ndarray:
    """The 3n x 3n ANM Hessian built from its pairwise block formula.

    ``H_ij = -gamma / d0_ij^2 * (r_j - r_i)(r_j - r_i)^T`` for each edge and
    ``H_ii = -sum_{j != i} H_ij``.
    """
    _check_ambient(G, "anm_hessian_direct")
    K = G.complex
    if not gamma > 0:
        raise ValueError(f"spring constant gamma must be positive, got {gamma!r}")
    n = K.n_vertices
    x = np.asarray(G.coords, dtype=object).astype(float)
    H = np.zeros((3 * n, 3 * n))
    for e in K.simplices(1):
        i, j = e
        d = _equilibrium(G, e, d0)
        dx, dy, dz = x[j - 1] - x[i - 1]
        block = (-gamma / d**2) * np.array([
            [dx * dx, dx * dy, dx * dz],
            [dx * dy, dy * dy, dy * dz],
            [dx * dz, dy * dz, dz * dz],
        ])
        a, b = 3 * (i - 1), 3 * (j - 1)
        H[a:a + 3, b:b + 3] = block
        H[b:b + 3, a:a + 3] = block
    for i in range(n):
        a = 3 * i
        H[a:a + 3, a:a + 3] = -sum(
            H[a:a + 3, 3 * j:3 * j + 3] for j in range(n) if j != i)
    return H


def auto_normals(G: GeometricComplex, field: str = REAL) -> dict[Simplex, np.ndarray]:
    """``(r_j - r_i) x (r_k - r_i)`` for each triangle ``[i, j, k]``, not normalized."""
    _check_ambient(G, "auto_normals")
    pos = _positions(G, field)
    out = {}
    for f in G.complex.simplices(2):
        i, j, k = f
        a, b = pos[j - 1] - pos[i - 1], pos[k - 1] - pos[i - 1]
        v = np.array([a[1] * b[2] - a[2] * b[1],
                      a[2] * b[0] - a[0] * b[2],
                      a[0] * b[1] - a[1] * b[0]], dtype=object)
        v = v if field == RATIONAL else v.astype(float)
        norm = float(np.linalg.norm(v.astype(float)))
        if norm <= 1e-12:
            raise DegenerateGeometryError(f"triangle {list(f)} is collinear; no normal vector")
        out[f] = v
    return out


def _check_perpendicular(G: GeometricComplex, normals, field: str):
    pos = _positions(G, field)
    for f in G.complex.simplices(2):
        if f not in normals:
            raise ValueError(f"missing normal vector for triangle {list(f)}")
        v = _vec(normals[f], field)
        i, j, k = f
        for edge in (pos[j - 1] - pos[i - 1], pos[k - 1] - pos[i - 1]):
            dot = sum(a * b for a, b in zip(v, edge))
            if field == RATIONAL:
                ok = dot == 0
            else:
                scale = float(np.linalg.norm(v.astype(float))) * float(
                    np.linalg.norm(np.asarray(edge, dtype=float)))
                ok = abs(float(dot)) <= 1e-10 * scale
            if not ok:
                raise DegenerateGeometryError(
                    f"normal {list(v)} of triangle {list(f)} is not perpendicular to its edges")


def face_extension_sheaf(G: GeometricComplex, w=None, normals="auto",
                         field: str = REAL) -> Sheaf:
    """Sheaf on a geometric 2-complex whose vertex-to-face composites vanish.

    Stalks are ``R`` on vertices, ``R^3`` on edges and ``R`` on triangles.
    Both endpoint maps of ``[i, j]`` are the column ``w_ij (r_j - r_i)``; each
    edge of ``[i, j, k]`` maps to it by the row ``v_ijk^T`` with ``v_ijk``
    normal to the triangle.  ``w`` is a mapping from edges, a callable, a
    constant, or ``None`` for all ones.
    """
    _check_ambient(G, "face_extension_sheaf")
    K = G.complex
    if K.dim > 2:
        raise ValueError(f"face_extension_sheaf needs dimension <= 2, got {K.dim}")
    pos = _positions(G, field)
    if isinstance(normals, str):
        if normals != "auto":
            raise ValueError(f"normals must be 'auto' or a mapping, got {normals!r}")
        normals = auto_normals(G, field)
    else:
        normals = {tuple(f): _vec(v, field) for f, v in normals.items()}
        _check_perpendicular(G, normals, field)

    dims = {s: 3 if len(s) == 2 else 1 for s in K}
    maps = {}
    for e in K.simplices(1):
        i, j = e
        col = (_edge_weight(w, e, field) * (pos[j - 1] - pos[i - 1])).reshape(3, 1)
        maps[((i,), e)] = col
        maps[((j,), e)] = col
    for f in K.simplices(2):
        row = np.asarray(normals[f], dtype=object).reshape(1, 3)
        for e in ((f[0], f[1]), (f[0], f[2]), (f[1], f[2])):
            maps[(e, f)] = row
    return Sheaf(K, dims, maps, field=field)


def face_vector_sheaf(K, face_vectors: FaceData, field: str = REAL,
                      vertex_map: Callable[[Simplex, Simplex], np.ndarray] | None = None) -> Sheaf:
    """The companion sheaf used by the tensor extension.

    Stalks ``R^3`` on vertices and edges, ``R`` on triangles.  Vertex-to-edge
    maps are the identity unless ``vertex_map(vertex, edge)`` overrides them;
    edge-to-triangle maps are ``w_tau^T``.
    """
    K = _unwrap(K)
    dims = {s: 1 if len(s) == 3 else 3 for s in K}
    eye = exact.identity(3) if field == RATIONAL else np.eye(3)
    maps = {}
    for e in K.simplices(1):
        for v in ((e[0],), (e[1],)):
            maps[(v, e)] = eye if vertex_map is None else vertex_map(v, e)
    for f in K.simplices(2):
        if f not in face_vectors:
            raise ValueError(f"missing face vector for triangle {list(f)}")
        row = _vec(face_vectors[f], field).reshape(1, 3)
        for e in ((f[0], f[1]), (f[0], f[2]), (f[1], f[2])):
            maps[(e, f)] = row
    return Sheaf(K, dims, maps, field=field)


def tensor_extension_sheaf(G: GeometricComplex, w=None, face_vectors: FaceData | None = None,
                           normals="auto", field: str = REAL, vertex_map=None) -> Sheaf:
    """``face_extension_sheaf(G, w) (x) face_vector_sheaf(G, face_vectors)``.

    Stalk dimensions are 3 on vertices, 9 on edges and 1 on triangles.
    """
    K = G.complex
    if face_vectors is None:
        if K.dim >= 2:
            raise ValueError("tensor_extension_sheaf needs one face vector per triangle")
        face_vectors = {}
    F = face_extension_sheaf(G, w, normals, field)
    Gs = face_vector_sheaf(K, {tuple(k): v for k, v in face_vectors.items()}, field, vertex_map)
    return tensor_product(F, Gs)


__all__ = [
    "DegenerateGeometryError",
    "anm_hessian_direct",
    "anm_sheaf",
    "auto_normals",
    "face_extension_sheaf",
    "face_vector_sheaf",
    "gnm_sheaf",
    "tensor_extension_sheaf",
]

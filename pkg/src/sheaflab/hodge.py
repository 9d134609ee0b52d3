"""Coboundary matrices, Hodge Laplacians, cohomology and global sections.

For a covariant sheaf the degree-q operator maps q-cochains to
(q+1)-cochains; block ``(tau, sigma)`` is ``[sigma:tau] * F(sigma -> tau)``.
For a contravariant sheaf the operator runs the other way (a weighted
boundary map); block ``(sigma, tau)`` is ``[sigma:tau] * F(tau -> sigma)``.
Rows and columns follow the canonical simplex order of the complex.

``hodge_laplacian(F, q, "up")`` is ``C^T C`` for the operator leaving degree
q towards degree q+1 (the usual ``L^q``); ``"down"`` is the part coming from
degree q-1; ``"full"`` is their sum.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from . import exact
from .complex import Simplex, _sign
from .sheaf import COVARIANT, RATIONAL, Sheaf

FLOAT = "float"
EXACT = "rational"


class InvalidSheafError(ValueError):
    pass


def _offsets(F: Sheaf, q: int) -> dict[Simplex, int]:
    out, pos = {}, 0
    for s in F.complex.simplices(q):
        out[s] = pos
        pos += F.stalk_dims[s]
    return out


def _check(F: Sheaf, q: int, check: bool) -> None:
    if not 0 <= q < F.complex.dim:
        raise ValueError(
            f"coboundary degree q={q} out of range 0..{F.complex.dim - 1} "
            f"(complex has dimension {F.complex.dim})")
    if check and not F.is_valid:
        v = F.violations[0]
        raise InvalidSheafError(
            f"sheaf fails the composition axiom ({len(F.violations)} violation(s), "
            f"first: {v.source} -> {v.target} via {v.via}); pass check=False to assemble anyway")


def coboundary_matrix(F: Sheaf, q: int, *, check: bool = True, sparse: bool = False):
    """Block matrix of the degree-q (co)boundary operator.

    Shape is ``(dim C^{q+1}, dim C^q)`` for covariant sheaves and the
    transpose shape for contravariant ones.  ``sparse=True`` assembles a CSR
    matrix from triplets (real field only).
    """
    _check(F, q, check)
    K = F.complex
    lo, hi = _offsets(F, q), _offsets(F, q + 1)
    n_lo, n_hi = F.cochain_dim(q), F.cochain_dim(q + 1)
    cov = F.variance == COVARIANT
    shape = (n_hi, n_lo) if cov else (n_lo, n_hi)

    if sparse:
        if F.field == RATIONAL:
            raise ValueError("sparse assembly is only available for the real field")
        rows, cols, vals = [], [], []
        for (face, coface), M in F.restrictions.items():
            if len(face) != q + 1 or M.size == 0:
                continue
            r0, c0 = (hi[coface], lo[face]) if cov else (lo[face], hi[coface])
            sgn = _sign(face, coface)
            ii, jj = np.nonzero(M)
            rows.extend(r0 + ii)
            cols.extend(c0 + jj)
            vals.extend(sgn * M[ii, jj])
        return sp.csr_matrix((vals, (rows, cols)), shape=shape)

    C = exact.zeros(shape) if F.field == RATIONAL else np.zeros(shape)
    for sigma in K.simplices(q):
        for tau in K.cofaces(sigma):
            key = (sigma, tau)
            if key not in F.restrictions:
                continue
            M = F.restrictions[key]
            if M.size == 0:
                continue
            sgn = _sign(sigma, tau)
            if cov:
                C[hi[tau]:hi[tau] + M.shape[0], lo[sigma]:lo[sigma] + M.shape[1]] = sgn * M
            else:
                C[lo[sigma]:lo[sigma] + M.shape[0], hi[tau]:hi[tau] + M.shape[1]] = sgn * M
    return C


@dataclass
class CochainSystem:
    """All (co)boundary matrices of a sheaf plus block offsets per degree."""

    sheaf: Sheaf
    matrices: list
    offsets: list[dict[Simplex, int]]

    @property
    def dims(self) -> list[int]:
        return [self.sheaf.cochain_dim(q) for q in range(self.sheaf.complex.dim + 1)]

    def composite_residual(self) -> float:
        """Largest entry of any ``C^{q+1} C^q`` (or its contravariant analogue)."""
        worst = 0.0
        cov = self.sheaf.variance == COVARIANT
        for A, B in zip(self.matrices, self.matrices[1:]):
            P = _mul(B, A) if cov else _mul(A, B)
            if P.size:
                worst = max(worst, float(np.max(np.abs(exact.to_float(P)))))
        return worst


def cochain_system(F: Sheaf, *, check: bool = True) -> CochainSystem:
    mats = [coboundary_matrix(F, q, check=check) for q in range(F.complex.dim)]
    offs = [_offsets(F, q) for q in range(F.complex.dim + 1)]
    return CochainSystem(F, mats, offs)


def _mul(A, B):
    if A.dtype == object or B.dtype == object:
        return exact.matmul(exact.as_exact(A), exact.as_exact(B))
    return A @ B


def _zeros(F: Sheaf, n: int):
    return exact.zeros((n, n)) if F.field == RATIONAL else np.zeros((n, n))


def hodge_laplacian(F: Sheaf, q: int, part: str = "full", *, check: bool = True):
    """``up``, ``down`` or ``full`` Hodge Laplacian in degree ``q``.

    Adjoints are matrix transposes (standard inner product on cochains).
    """
    K = F.complex
    if not 0 <= q <= K.dim:
        raise ValueError(f"degree q={q} out of range 0..{K.dim}")
    if part not in ("up", "down", "full"):
        raise ValueError(f"part must be up, down or full, got {part!r}")
    n = F.cochain_dim(q)
    cov = F.variance == COVARIANT
    L = _zeros(F, n)
    if part in ("up", "full") and q < K.dim:
        A = coboundary_matrix(F, q, check=check)
        L = L + (_mul(A.T, A) if cov else _mul(A, A.T))
    if part in ("down", "full") and q > 0:
        A = coboundary_matrix(F, q - 1, check=check)
        L = L + (_mul(A, A.T) if cov else _mul(A.T, A))
    return L


def default_rank_tol() -> float | None:
    env = os.environ.get("SHEAFLAB_RANK_TOL")
    return float(env) if env else None


def _kernel_split(L: np.ndarray, rank_tol: float | None):
    """SVD of a symmetric PSD matrix and the number of singular values above threshold.

    Default threshold ``max(m, n) * eps * s_max``; ``rank_tol`` replaces the
    ``max(m, n) * eps`` factor.
    """
    L = exact.to_float(L) if L.dtype == object else np.asarray(L, dtype=float)
    if L.size == 0:
        return None, np.zeros(0), 0
    _, s, vt = np.linalg.svd(L)
    smax = s[0] if s.size else 0.0
    factor = max(L.shape) * np.finfo(float).eps if rank_tol is None else rank_tol
    r = int(np.sum(s > factor * smax)) if smax > 0 else 0
    return vt, s, r


def cohomology_dimension(F: Sheaf, q: int, mode: str = FLOAT,
                         rank_tol: float | None = None, *, check: bool = True) -> int:
    """``dim H^q(K; F)``.

    ``mode="float"``: nullity of the full Hodge Laplacian from its singular
    values.  ``mode="rational"``: ``dim C^q - rank C^q - rank C^{q-1}`` by
    exact elimination.
    """
    K = F.complex
    if not 0 <= q <= K.dim:
        raise ValueError(f"degree q={q} out of range 0..{K.dim}")
    n = F.cochain_dim(q)
    if mode == EXACT:
        r = 0
        if q < K.dim:
            r += exact.rank(exact.as_exact(coboundary_matrix(F, q, check=check)))
        if q > 0:
            r += exact.rank(exact.as_exact(coboundary_matrix(F, q - 1, check=check)))
        return n - r
    if mode != FLOAT:
        raise ValueError(f"mode must be float or rational, got {mode!r}")
    if rank_tol is None:
        rank_tol = default_rank_tol()
    L = hodge_laplacian(F, q, "full", check=check)
    _, _, r = _kernel_split(L, rank_tol)
    return n - r


def global_sections(F: Sheaf, mode: str = FLOAT, rank_tol: float | None = None,
                    *, check: bool = True) -> np.ndarray:
    """Basis of ``ker Delta^0 = ker C^0`` as columns of a vertex-cochain matrix.

    Orthonormal columns in float mode, an echelon basis of exact rationals in
    rational mode.  Only defined for covariant sheaves.
    """
    if F.variance != COVARIANT:
        raise ValueError("global sections are only defined here for covariant sheaves")
    K = F.complex
    n = F.cochain_dim(0)
    if mode == EXACT:
        if K.dim == 0:
            return exact.identity(n)
        return exact.nullspace(exact.as_exact(coboundary_matrix(F, 0, check=check)))
    if mode != FLOAT:
        raise ValueError(f"mode must be float or rational, got {mode!r}")
    if rank_tol is None:
        rank_tol = default_rank_tol()
    L = hodge_laplacian(F, 0, "full", check=check)
    vt, _, r = _kernel_split(L, rank_tol)
    if vt is None:
        return np.zeros((0, 0))
    return vt[r:].T.copy()


def spectrum(M) -> np.ndarray:
    """Ascending eigenvalues of the symmetrized ``(M + M^T) / 2``."""
    a = np.asarray(M)
    a = exact.to_float(a) if a.dtype == object else a.astype(float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"spectrum needs a square matrix, got shape {a.shape}")
    if a.size == 0:
        return np.zeros(0)
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a - a.T)) > 1e-9 * scale:
        raise ValueError("matrix is not symmetric within 1e-9")
    return np.linalg.eigvalsh((a + a.T) / 2)


# -- output formats -------------------------------------------------------


def format_float(x) -> str:
    return format(float(x) + 0.0, ".17g")  # + 0.0 folds -0.0 into 0


def write_matrix_market(path, M) -> None:
    """Coordinate-format Matrix Market; exact matrices also get a ``.json`` sidecar."""
    import json
    from pathlib import Path

    a = np.asarray(M)
    rows, cols = a.shape
    nz = [(i, j, a[i, j]) for i in range(rows) for j in range(cols) if a[i, j] != 0]
    lines = ["%%MatrixMarket matrix coordinate real general",
             f"{rows} {cols} {len(nz)}"]
    lines += [f"{i + 1} {j + 1} {format_float(v)}" for i, j, v in nz]
    Path(path).write_text("\n".join(lines) + "\n")
    if a.dtype == object:
        side = {"shape": [rows, cols],
                "entries": [[i + 1, j + 1, str(exact.to_fraction(v))] for i, j, v in nz]}
        Path(str(path) + ".json").write_text(json.dumps(side, sort_keys=True) + "\n")


def matrix_to_csv(M) -> str:
    a = np.asarray(M)
    if a.dtype == object:
        body = [",".join(str(exact.to_fraction(x)) for x in row) for row in a]
    else:
        body = [",".join(format_float(x) for x in row) for row in a]
    return "\n".join(body) + ("\n" if body else "")


def spectrum_to_text(values) -> str:
    return "".join(format_float(v) + "\n" for v in values)

"""End-to-end acceptance checks A1-A10.

Each ``aN`` function draws its own random instances from a seeded generator,
runs them through the library and compares against an independent reference
(:mod:`sheaflab.oracles`, a literal formula, or a second code path).
``run_all`` returns one :class:`CriterionResult` per criterion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from . import exact, oracles
from .complex import GeometricComplex, SimplicialComplex, build_from_facets, rips_complex
from .constructors import (
    DegenerateGeometryError,
    anm_hessian_direct,
    anm_sheaf,
    auto_normals,
    face_extension_sheaf,
    gnm_sheaf,
    tensor_extension_sheaf,
)
from .hodge import EXACT, FLOAT, coboundary_matrix, cochain_system, cohomology_dimension, hodge_laplacian
from .ringed import (
    build_ideal_sheaf,
    fibre_product_zn,
    one_edge_sheaf,
    ring_closure_failures,
    validate_ideal_functor,
    zn_global_sections,
)
from .sheaf import RATIONAL, Sheaf, constant_sheaf
from .weighted import (
    WeightFunction,
    verify_weighted_equivalence,
    weighted_boundary_matrix,
    weighted_homology,
)

WEIGHT_VALUES = (1, 2, 4, 8, 3, 6)


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{self.name:<4} {'PASS' if self.passed else 'FAIL'}  {self.detail}"


def _rng(seed: int, k: int) -> np.random.Generator:
    return np.random.default_rng([seed, k])


def _exact_equal(A, B) -> bool:
    A, B = np.asarray(A, dtype=object), np.asarray(B, dtype=object)
    return A.shape == B.shape and all(a == b for a, b in zip(A.flat, B.flat))


def _kron_eye(A, d: int = 3):
    return np.kron(np.asarray(A, dtype=object), exact.identity(d))


# -- random instances ------------------------------------------------------


def random_graph(rng, n_max: int = 12) -> SimplicialComplex:
    n = int(rng.integers(2, n_max + 1))
    p = rng.uniform(0.2, 0.8)
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < p]
    return SimplicialComplex(n, edges)


def random_geometric_graph(rng, n_max: int = 10, epsilon: float = 0.8) -> GeometricComplex:
    n = int(rng.integers(2, n_max + 1))
    return rips_complex(rng.uniform(0, 1, (n, 3)), epsilon, max_dim=1)


def random_geometric_2complex(rng, n_min: int = 4, n_max: int = 8,
                              integer_coords: bool = False) -> GeometricComplex:
    """Rips 2-complex with at least one triangle, none of them collinear."""
    while True:
        n = int(rng.integers(n_min, n_max + 1))
        if integer_coords:
            pts = np.array([[Fraction(int(x)) for x in row]
                            for row in rng.integers(0, 4, (n, 3))], dtype=object)
            G = rips_complex(pts, 2.5, max_dim=2)
        else:
            G = rips_complex(rng.uniform(0, 1, (n, 3)), 0.9, max_dim=2)
        if G.complex.dim < 2:
            continue
        try:
            auto_normals(G, RATIONAL if integer_coords else "real")
        except DegenerateGeometryError:
            continue
        return G


def random_complex(rng, n_max: int = 8) -> SimplicialComplex:
    n = int(rng.integers(1, n_max + 1))
    facets = []
    for _ in range(int(rng.integers(0, 2 * n + 1))):
        size = int(rng.integers(1, min(4, n) + 1))
        facets.append(sorted(rng.choice(np.arange(1, n + 1), size, replace=False).tolist()))
    return build_from_facets(n, facets)


def random_weight(rng, K: SimplicialComplex) -> WeightFunction:
    """Values from ``WEIGHT_VALUES``; all divide one top value so divisibility is always satisfiable."""
    top = int(rng.choice([8, 6]))
    pool = [v for v in WEIGHT_VALUES if top % v == 0]
    w: dict = {}
    for q in range(K.dim + 1):
        for s in K.simplices(q):
            base = 1
            for k in range(len(s) if q else 0):
                base = np.lcm(base, w[s[:k] + s[k + 1:]])
            w[s] = int(rng.choice([v for v in pool if v % base == 0]))
    return WeightFunction(w)


# -- instance streams shared with A7 ---------------------------------------


def _a1_cases(seed: int) -> Iterator[tuple[SimplicialComplex, Sheaf]]:
    rng = _rng(seed, 1)
    for _ in range(50):
        K = random_graph(rng, 12)
        yield K, constant_sheaf(K, 1, RATIONAL)


def _a2_cases(seed: int) -> Iterator[tuple[SimplicialComplex, Fraction, Sheaf]]:
    rng = _rng(seed, 2)
    for _ in range(20):
        K = random_graph(rng, 8)
        for lam in (Fraction(1), Fraction(2), Fraction(-3), Fraction(1, 2)):
            yield K, lam, gnm_sheaf(K, lam, field=RATIONAL)


def _a3_cases(seed: int) -> Iterator[tuple[GeometricComplex, float, Sheaf]]:
    rng = _rng(seed, 3)
    for _ in range(20):
        G = random_geometric_graph(rng, 10, 0.8)
        gamma = float(rng.uniform(0.5, 3.0))
        yield G, gamma, anm_sheaf(G, gamma)


def _a45_cases(seed: int) -> Iterator[tuple[GeometricComplex, dict, Sheaf]]:
    rng = _rng(seed, 4)
    for _ in range(20):
        G = random_geometric_2complex(rng)
        w = {e: float(rng.uniform(0.5, 2.0)) for e in G.complex.simplices(1)}
        yield G, w, face_extension_sheaf(G, w)


def _a6_cases(seed: int) -> Iterator[tuple[GeometricComplex, Sheaf, Sheaf]]:
    rng = _rng(seed, 6)
    for _ in range(10):
        G = random_geometric_2complex(rng, 4, 6, integer_coords=True)
        w = {e: Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 4)))
             for e in G.complex.simplices(1)}
        fv = {}
        for f in G.complex.simplices(2):
            v = [0, 0, 0]
            while not any(v):
                v = [int(x) for x in rng.integers(-2, 3, 3)]
            fv[f] = v
        F = face_extension_sheaf(G, w, field=RATIONAL)
        yield G, F, tensor_extension_sheaf(G, w, fv, field=RATIONAL)


# -- criteria ---------------------------------------------------------------


def a1(seed: int = 0) -> CriterionResult:
    bad = 0
    count = 0
    for K, F in _a1_cases(seed):
        L = hodge_laplacian(F, 0, "up")
        ref = oracles.graph_laplacian(K.n_vertices, K.simplices(1) if K.dim >= 1 else [])
        bad += not _exact_equal(L, ref)
        count += 1
    return CriterionResult("A1", bad == 0, f"{count - bad}/{count} graphs: constant-sheaf L0 == D - A exactly")


def a2(seed: int = 0) -> CriterionResult:
    bad = count = 0
    for K, lam, F in _a2_cases(seed):
        L = hodge_laplacian(F, 0, "up")
        Lg = oracles.graph_laplacian(K.n_vertices, K.simplices(1) if K.dim >= 1 else [])
        ref = (lam * lam) * _kron_eye(Lg.astype(object))
        bad += not _exact_equal(L, ref)
        count += 1
    return CriterionResult("A2", bad == 0,
                           f"{count - bad}/{count} (graph, lambda) pairs: L0 == lambda^2 kron(L, I3) exactly")


def a3(seed: int = 0) -> CriterionResult:
    worst = 0.0
    bad = count = 0
    for G, gamma, F in _a3_cases(seed):
        L = hodge_laplacian(F, 0, "up")
        H = anm_hessian_direct(G, gamma)
        err = float(np.max(np.abs(L - H)))
        scale = 1.0 + float(np.max(np.abs(H)))
        worst = max(worst, err / scale)
        bad += err > 1e-10 * scale
        count += 1
    return CriterionResult("A3", bad == 0,
                           f"{count - bad}/{count} geometric graphs; worst |L0 - H| / (1 + max|H|) = {worst:.3e}")


def _rel(a, b) -> float:
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    scale = float(np.max(np.abs(b)))
    err = float(np.max(np.abs(a - b)))
    return err / scale if scale > 0 else err


def a4(seed: int = 0) -> CriterionResult:
    invalid = 0
    worst = 0.0
    count = 0
    for G, w, F in _a45_cases(seed):
        count += 1
        invalid += bool(F.violations)
        L = hodge_laplacian(F, 0, "up")
        K = G.complex
        ref = np.zeros_like(L)
        for (i, j) in K.simplices(1):
            d = G.position(j) - G.position(i)
            ref[i - 1, j - 1] = ref[j - 1, i - 1] = -w[(i, j)] ** 2 * float(d @ d)
        off = ~np.eye(K.n_vertices, dtype=bool)
        for (i, j) in zip(*np.nonzero(off)):
            r, x = ref[i, j], L[i, j]
            e = abs(x - r) / abs(r) if r != 0 else abs(x)
            worst = max(worst, e)
    ok = invalid == 0 and worst <= 1e-12
    return CriterionResult("A4", ok,
                           f"{count} 2-complexes, {invalid} with sheaf violations; "
                           f"worst relative off-diagonal error {worst:.3e}")


def a5(seed: int = 0) -> CriterionResult:
    worst = 0.0
    blocks = 0
    for G, w, F in _a45_cases(seed):
        C = coboundary_matrix(F, 0)
        M = C @ C.T
        for k, (i, j) in enumerate(G.complex.simplices(1)):
            d = (G.position(j) - G.position(i)).reshape(3, 1)
            ref = 2 * w[(i, j)] ** 2 * (d @ d.T)
            worst = max(worst, _rel(M[3 * k:3 * k + 3, 3 * k:3 * k + 3], ref))
            blocks += 1
    return CriterionResult("A5", worst <= 1e-12,
                           f"{blocks} edge blocks; worst relative error {worst:.3e}")


def a6(seed: int = 0) -> CriterionResult:
    fails = {"C0": 0, "L0": 0, "CCt": 0}
    count = 0
    for G, F, FG in _a6_cases(seed):
        count += 1
        C, CG = coboundary_matrix(F, 0), coboundary_matrix(FG, 0)
        fails["C0"] += not _exact_equal(CG, _kron_eye(C))
        fails["L0"] += not _exact_equal(hodge_laplacian(FG, 0, "up"),
                                        _kron_eye(hodge_laplacian(F, 0, "up")))
        fails["CCt"] += not _exact_equal(exact.matmul(CG, CG.T), _kron_eye(exact.matmul(C, C.T)))
    ok = not any(fails.values())
    return CriterionResult("A6", ok, f"{count} rational 2-complexes; failures {fails}")


def _all_sheaves(seed: int) -> Iterator[Sheaf]:
    for _, F in _a1_cases(seed):
        yield F
    for _, _, F in _a2_cases(seed):
        yield F
    for _, _, F in _a3_cases(seed):
        yield F
    for _, _, F in _a45_cases(seed):
        yield F
    for _, F, FG in _a6_cases(seed):
        yield F
        yield FG


def _euler(F: Sheaf, mode: str) -> tuple[int, int]:
    K = F.complex
    chain = sum((-1) ** q * F.cochain_dim(q) for q in range(K.dim + 1))
    if mode == EXACT:
        Fx = F.to_field(RATIONAL)
        coh = sum((-1) ** q * cohomology_dimension(Fx, q, EXACT, check=False) for q in range(K.dim + 1))
    else:
        coh = sum((-1) ** q * cohomology_dimension(F, q, FLOAT) for q in range(K.dim + 1))
    return chain, coh


def a7(seed: int = 0) -> CriterionResult:
    n = 0
    worst_dd = 0.0
    exact_dd_fail = 0
    sym_fail = psd_fail = euler_fail = float_euler_fail = 0
    for F in _all_sheaves(seed):
        n += 1
        K = F.complex
        if K.dim >= 1:
            res = cochain_system(F).composite_residual()
            if F.field == RATIONAL:
                exact_dd_fail += res != 0
            else:
                worst_dd = max(worst_dd, res)
        for q in range(K.dim + 1):
            L = exact.to_float(hodge_laplacian(F, q, "full"))
            if L.size == 0:
                continue
            top = float(np.max(np.abs(L)))
            sym_fail += float(np.max(np.abs(L - L.T))) > 1e-9 * max(1.0, top)
            ev = np.linalg.eigvalsh((L + L.T) / 2)
            psd_fail += ev[0] < -1e-9 * max(1.0, float(np.max(np.abs(ev))))
        chain, coh = _euler(F, EXACT)
        euler_fail += chain != coh
        chain, coh = _euler(F, FLOAT)
        float_euler_fail += chain != coh
    ok = worst_dd <= 1e-9 and not (exact_dd_fail or sym_fail or psd_fail or euler_fail or float_euler_fail)
    return CriterionResult(
        "A7", ok,
        f"{n} sheaves; max float |C^(q+1) C^q| = {worst_dd:.3e}, exact nonzero composites {exact_dd_fail}, "
        f"asymmetric {sym_fail}, non-PSD {psd_fail}, Euler mismatches exact/float "
        f"{euler_fail}/{float_euler_fail}")


def a8(seed: int = 0) -> CriterionResult:
    rng = _rng(seed, 8)
    mism = betti_mism = 0
    checks = 0
    used: set[int] = set()
    for _ in range(50):
        K = random_complex(rng, 8)
        w = random_weight(rng, K)
        used.update(w.values())
        betti = oracles.betti_numbers(K.facets(), K.n_vertices)
        for q in range(K.dim + 1):
            rep = verify_weighted_equivalence(K, w, q)
            checks += 1
            mism += not rep.equal
            betti_mism += rep.homology_dim != betti[q]
    return CriterionResult("A8", mism == 0 and betti_mism == 0,
                           f"50 weighted complexes, {checks} degrees; homology/cosheaf mismatches {mism}, "
                           f"unweighted-Betti mismatches {betti_mism}; weight values used {sorted(used)}")


def a9(seed: int = 0) -> CriterionResult:
    S = one_edge_sheaf(12, 18, 6)
    gs = zn_global_sections(S)
    fp = fibre_product_zn(12, 18, 6)
    size_ok = gs.size == 36 and len(gs.elements) == 36
    set_ok = set(gs.elements) == set(fp)
    closure = ring_closure_failures(S, gs.elements)
    rng = _rng(seed, 9)
    functor_fail = 0
    for _ in range(20):
        K = random_complex(rng, 8)
        for kind in ("vertex", "edge_product", "complement_prime"):
            functor_fail += bool(validate_ideal_functor(build_ideal_sheaf(K, kind)))
    ok = size_ok and set_ok and not closure and functor_fail == 0
    return CriterionResult("A9", ok,
                           f"|sections| = {gs.size}, equals fibre product: {set_ok}, "
                           f"closure failures {len(closure)}, ideal-functor failures {functor_fail}/60")


def a10(seed: int = 0) -> CriterionResult:
    K = build_from_facets(3, [(1, 2, 3)])
    w = {s: 2 ** (len(s) - 1) for s in K}
    lib = weighted_homology(K, w, 1, "Z")
    S = oracles.closure([(1, 2, 3)])
    ref = oracles.integral_homology(oracles.boundary(S, 1, w), oracles.boundary(S, 2, w), len(S[1]))
    ref_lib_mats = oracles.integral_homology(weighted_boundary_matrix(K, w, 1).tolist(),
                                             weighted_boundary_matrix(K, w, 2).tolist(), 3)
    got = (lib.rank, list(lib.torsion))
    ok = got == (0, [2]) and ref == (0, [2]) and ref_lib_mats == (0, [2])
    return CriterionResult("A10", ok,
                           f"library H1 = rank {got[0]}, torsion {got[1]}; oracle {ref}; "
                           f"oracle on library matrices {ref_lib_mats}")


CRITERIA: dict[str, Callable[[int], CriterionResult]] = {
    "A1": a1, "A2": a2, "A3": a3, "A4": a4, "A5": a5,
    "A6": a6, "A7": a7, "A8": a8, "A9": a9, "A10": a10,
}


def run_all(seed: int = 0) -> list[CriterionResult]:
    return [f(seed) for f in CRITERIA.values()]


def format_table(results: list[CriterionResult]) -> str:
    return "\n".join(r.line() for r in results) + "\n"


def complex_checks(K) -> CriterionResult:
    """Identity checks on one user-supplied complex.

    Constant sheaf: exact zero composites, Euler identity and Betti numbers
    against the brute-force oracle.  With coordinates in R^3 the
    face-extension formulas are checked too (and the ANM Hessian on graphs).
    """
    G = K if isinstance(K, GeometricComplex) else None
    K = G.complex if G is not None else K
    problems = []
    F = constant_sheaf(K, 1, RATIONAL)
    if K.dim >= 1 and cochain_system(F).composite_residual() != 0:
        problems.append("constant sheaf has nonzero composite coboundaries")
    chain, coh = _euler(F, EXACT)
    if chain != coh:
        problems.append(f"Euler mismatch {chain} != {coh}")
    betti = oracles.betti_numbers(K.facets(), K.n_vertices)
    dims = [cohomology_dimension(F, q, EXACT) for q in range(K.dim + 1)]
    if dims != betti:
        problems.append(f"constant-sheaf cohomology {dims} != Betti numbers {betti}")
    checked = ["constant sheaf"]
    if G is not None and G.ambient_dim == 3 and K.dim <= 2:
        try:
            Fe = face_extension_sheaf(G)
        except DegenerateGeometryError as exc:
            problems.append(f"face extension: {exc}")
        else:
            checked.append("face extension")
            if Fe.violations:
                problems.append(f"face extension has {len(Fe.violations)} sheaf violations")
            if K.dim >= 1:
                C = coboundary_matrix(Fe, 0)
                L, M = C.T @ C, C @ C.T
                for k, (i, j) in enumerate(K.simplices(1)):
                    d = (G.position(j) - G.position(i)).astype(float)
                    if abs(L[i - 1, j - 1] + d @ d) > 1e-12 * (d @ d):
                        problems.append(f"L0[{i},{j}] != -|r_j - r_i|^2")
                    if _rel(M[3 * k:3 * k + 3, 3 * k:3 * k + 3], 2 * np.outer(d, d)) > 1e-12:
                        problems.append(f"diagonal block of edge {[i, j]} != 2 d d^T")
        if K.dim <= 1:
            checked.append("ANM")
            L, H = hodge_laplacian(anm_sheaf(G), 0, "up"), anm_hessian_direct(G)
            if np.max(np.abs(L - H), initial=0.0) > 1e-10 * (1 + np.max(np.abs(H), initial=0.0)):
                problems.append("ANM Laplacian differs from the Hessian")
    detail = f"{', '.join(checked)} on {K!r}: " + ("; ".join(problems) if problems else "all identities hold")
    return CriterionResult("K", not problems, detail)

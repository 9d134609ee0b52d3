from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sheaflab import exact, oracles
from sheaflab.complex import GeometricComplex, build_from_facets, rips_complex
from sheaflab.constructors import (
    DegenerateGeometryError,
    anm_hessian_direct,
    anm_sheaf,
    auto_normals,
    face_extension_sheaf,
    gnm_sheaf,
    tensor_extension_sheaf,
)
from sheaflab.fixtures import k3_graph, tetrahedron, unit_right_triangle
from sheaflab.hodge import coboundary_matrix, hodge_laplacian
from sheaflab.sheaf import RATIONAL, constant_sheaf

UNIT_X_EDGE = rips_complex([[0, 0, 0], [1, 0, 0]], 1.5, 1)


def _kron3(L):
    return np.kron(np.asarray(L, dtype=object), exact.identity(3))


def test_gnm_single_edge():
    K = build_from_facets(2, [(1, 2)])
    L = hodge_laplacian(gnm_sheaf(K, 1, field=RATIONAL), 0)
    assert exact.is_zero(L - _kron3([[1, -1], [-1, 1]]))


def test_gnm_k3_lambda_two():
    L = hodge_laplacian(gnm_sheaf(k3_graph(), 2, field=RATIONAL), 0)
    L_k3 = [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    assert exact.is_zero(L - 4 * _kron3(L_k3))


def test_gnm_stalk_one_is_constant_sheaf():
    K = k3_graph().complex
    assert np.array_equal(hodge_laplacian(gnm_sheaf(K, 1, dim=1), 0),
                          hodge_laplacian(constant_sheaf(K), 0))


def test_gnm_errors(full_triangle):
    with pytest.raises(ValueError, match="nonzero"):
        gnm_sheaf(k3_graph(), 0)
    with pytest.raises(ValueError, match="graph"):
        gnm_sheaf(full_triangle, 1)


@given(st.integers(1, 7), st.fractions(min_value=-5, max_value=5, max_denominator=4))
def test_gnm_factorization_random(n, lam):
    if lam == 0:
        lam = Fraction(1)
    rng = np.random.default_rng(n)
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < 0.5]
    K = build_from_facets(n, edges)
    L = hodge_laplacian(gnm_sheaf(K, lam, field=RATIONAL), 0)
    assert exact.is_zero(L - lam * lam * _kron3(oracles.graph_laplacian(n, edges)))


def test_anm_unit_edge_map():
    F = anm_sheaf(UNIT_X_EDGE, 1.0)
    assert np.allclose(F.restriction((1,), (1, 2)), [[1, 0, 0]])
    assert np.array_equal(F.restriction((1,), (1, 2)), F.restriction((2,), (1, 2)))


def test_anm_forced_equilibrium_distance():
    F = anm_sheaf(UNIT_X_EDGE, 4.0, d0=2.0)
    assert np.allclose(F.restriction((1,), (1, 2)), [[1, 0, 0]])
    F = anm_sheaf(UNIT_X_EDGE, 4.0, d0={(1, 2): 2.0})
    assert np.allclose(F.restriction((2,), (1, 2)), [[1, 0, 0]])


def test_anm_errors():
    G = rips_complex([[0, 0, 0], [0, 0, 0]], 1.0, 1)
    with pytest.raises(DegenerateGeometryError, match=r"\[1, 2\]"):
        anm_sheaf(G)
    with pytest.raises(DegenerateGeometryError):
        anm_hessian_direct(G)
    with pytest.raises(ValueError, match="gamma"):
        anm_sheaf(UNIT_X_EDGE, 0.0)
    with pytest.raises(ValueError, match="R\\^3"):
        anm_sheaf(rips_complex([[0, 0], [1, 0]], 2.0, 1))
    with pytest.raises(ValueError, match="GeometricComplex"):
        anm_sheaf(UNIT_X_EDGE.complex)
    with pytest.raises(ValueError, match="graph"):
        anm_sheaf(unit_right_triangle())


def test_hessian_unit_edge():
    H = anm_hessian_direct(UNIT_X_EDGE, 1.0)
    assert np.allclose(H[:3, 3:], -np.diag([1, 0, 0]))
    assert np.allclose(H[:3, :3], np.diag([1, 0, 0]))


def test_hessian_right_triangle():
    H = anm_hessian_direct(k3_graph(), 1.0)
    assert np.allclose(H[:3, :3], np.diag([1, 1, 0]))
    assert np.allclose(H, H.T)


def test_hessian_no_edges():
    G = GeometricComplex(build_from_facets(3, []), np.eye(3))
    assert not anm_hessian_direct(G).any()


@given(st.integers(2, 8), st.floats(0.1, 10.0), st.integers(0, 2**31))
def test_anm_laplacian_is_hessian(n, gamma, seed):
    pts = np.random.default_rng(seed).uniform(0, 1, (n, 3))
    G = rips_complex(pts, 0.8, 1)
    L = hodge_laplacian(anm_sheaf(G, gamma), 0, "up")
    H = anm_hessian_direct(G, gamma)
    assert np.abs(L - H).max() <= 1e-10 * (1 + np.abs(H).max())


def test_anm_scale_covariance():
    G = k3_graph()
    L1 = hodge_laplacian(anm_sheaf(G, 1.0), 0)
    L3 = hodge_laplacian(anm_sheaf(G, 3.0), 0)
    assert np.allclose(L3, 3 * L1)


def test_face_extension_triangle_example():
    G = unit_right_triangle()
    assert np.array_equal(auto_normals(G)[(1, 2, 3)], [0, 0, 1])
    F = face_extension_sheaf(G)
    assert np.array_equal(F.restriction((1, 2), (1, 2, 3)), [[0, 0, 1]])
    comp = F.restriction((1, 2), (1, 2, 3)) @ F.restriction((1,), (1, 2))
    assert np.array_equal(comp, [[0]])
    assert F.is_valid


def test_face_extension_laplacian_entries():
    G = unit_right_triangle()
    F = face_extension_sheaf(G)
    L = hodge_laplacian(F, 0, "up")
    assert L[0, 1] == -1
    assert L[0, 2] == -1
    assert L[1, 2] == -2
    C = coboundary_matrix(F, 0)
    assert np.allclose((C @ C.T)[:3, :3], 2 * np.diag([1, 0, 0]))


def test_face_extension_weights_and_exact():
    G = unit_right_triangle()
    w = {(1, 2): Fraction(1, 2), (1, 3): 2, (2, 3): 3}
    F = face_extension_sheaf(G, w, field=RATIONAL)
    L = hodge_laplacian(F, 0, "up")
    assert L[0, 1] == Fraction(-1, 4)
    assert L[1, 2] == -18
    assert F.is_valid
    Fc = face_extension_sheaf(G, w=lambda e: 2.0)
    assert hodge_laplacian(Fc, 0)[0, 1] == -4


def test_face_extension_user_normals():
    G = unit_right_triangle()
    F = face_extension_sheaf(G, normals={(1, 2, 3): [0, 0, 5]})
    assert np.array_equal(F.restriction((1, 3), (1, 2, 3)), [[0, 0, 5]])
    with pytest.raises(DegenerateGeometryError, match="perpendicular"):
        face_extension_sheaf(G, normals={(1, 2, 3): [1, 0, 1]})
    with pytest.raises(ValueError, match="missing normal"):
        face_extension_sheaf(G, normals={})
    with pytest.raises(ValueError):
        face_extension_sheaf(G, normals="unit")


def test_face_extension_collinear_rejected():
    G = rips_complex([[0, 0, 0], [1, 0, 0], [2, 0, 0]], 2.5, 2)
    with pytest.raises(DegenerateGeometryError, match="collinear"):
        face_extension_sheaf(G)


def test_face_extension_rejects_3_simplices():
    with pytest.raises(ValueError, match="dimension"):
        face_extension_sheaf(tetrahedron())


def test_tensor_extension_triangle():
    G = unit_right_triangle()
    fv = {(1, 2, 3): [0, 0, 1]}
    T = tensor_extension_sheaf(G, None, fv, field=RATIONAL)
    F = face_extension_sheaf(G, field=RATIONAL)
    assert [T.stalk_dims[s] for s in ((1,), (1, 2), (1, 2, 3))] == [3, 9, 1]
    C, CT = coboundary_matrix(F, 0), coboundary_matrix(T, 0)
    assert CT.shape == (27, 9)
    assert exact.is_zero(CT - _kron3(C))
    assert exact.is_zero(hodge_laplacian(T, 0, "up") - _kron3(hodge_laplacian(F, 0, "up")))
    assert exact.is_zero(exact.matmul(CT, CT.T) - _kron3(exact.matmul(C, C.T)))
    assert T.is_valid


def test_tensor_extension_needs_face_vectors():
    with pytest.raises(ValueError, match="face vector"):
        tensor_extension_sheaf(unit_right_triangle())
    with pytest.raises(ValueError, match="missing face vector"):
        tensor_extension_sheaf(unit_right_triangle(), face_vectors={(1, 2, 4): [1, 0, 0]})
    T = tensor_extension_sheaf(k3_graph())
    assert T.stalk_dims[(1, 2)] == 9

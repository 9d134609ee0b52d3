import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sheaflab.complex import (
    GeometricComplex,
    SimplicialComplex,
    build_from_facets,
    complex_from_dict,
    complex_to_dict,
    incidence_sign,
    load_complex,
    read_points_csv,
    rips_complex,
    save_complex,
)
from sheaflab import fixtures
from tests.strategies import complexes


def test_build_full_triangle():
    K = build_from_facets(3, [{1, 2, 3}])
    assert K.f_vector() == (3, 3, 1)
    assert K.simplices(1) == ((1, 2), (1, 3), (2, 3))


def test_build_single_vertex_no_facets():
    K = build_from_facets(1, [])
    assert list(K) == [(1,)]
    assert K.dim == 0


def test_build_two_edges():
    K = build_from_facets(4, [{1, 2}, {3, 4}])
    assert K.f_vector() == (4, 2)
    assert K.simplices(1) == ((1, 2), (3, 4))


def test_build_errors():
    with pytest.raises(ValueError, match="out of range"):
        build_from_facets(3, [(1, 4)])
    with pytest.raises(ValueError, match="empty facet"):
        build_from_facets(3, [()])
    with pytest.raises(ValueError):
        build_from_facets(0, [])


def test_constructor_rejects_non_closed_family():
    with pytest.raises(ValueError, match="downward closed"):
        SimplicialComplex(3, [(1, 2, 3)])
    with pytest.raises(ValueError, match="strictly increasing"):
        SimplicialComplex(3, [(2, 1)])


def test_incidence_sign_examples(full_triangle):
    assert incidence_sign(full_triangle, (2, 3), (1, 2, 3)) == 1
    assert incidence_sign(full_triangle, (1, 3), (1, 2, 3)) == -1
    assert incidence_sign(full_triangle, (1, 2), (1, 2, 3)) == 1
    assert incidence_sign(full_triangle, (1,), (1, 2, 3)) == 0
    assert incidence_sign(full_triangle, (3,), (1, 2)) == 0


def test_incidence_sign_non_face():
    K = build_from_facets(5, [(1, 2), (3, 4, 5)])
    assert incidence_sign(K, (1, 2), (3, 4, 5)) == 0


def test_incidence_sign_unknown_simplex(hollow):
    with pytest.raises(KeyError):
        incidence_sign(hollow, (1, 2), (1, 2, 3))


@given(complexes())
def test_sign_identity_two_steps(K):
    # sum over intermediate tau of [sigma:tau][tau:rho] vanishes
    for q in range(K.dim - 1):
        for rho in K.simplices(q + 2):
            for sigma in itertools.combinations(rho, q + 1):
                total = sum(incidence_sign(K, sigma, tau) * incidence_sign(K, tau, rho)
                            for tau in K.simplices(q + 1))
                assert total == 0


@given(complexes())
def test_downward_closed_and_canonical(K):
    for s in K:
        for k in range(len(s)):
            face = s[:k] + s[k + 1:]
            assert not face or face in K
    for q in range(K.dim + 1):
        assert list(K.simplices(q)) == sorted(K.simplices(q))
        assert all(K.index(s) == i for i, s in enumerate(K.simplices(q)))
    assert K.simplices(0) == tuple((i,) for i in range(1, K.n_vertices + 1))


def test_cofaces_and_facets(full_triangle):
    assert full_triangle.cofaces((1,)) == ((1, 2), (1, 3))
    assert full_triangle.facets() == [(1, 2, 3)]


def test_rips_unit_triangle():
    G = rips_complex([[0, 0], [1, 0], [0, 1]], 1.5, 2)
    assert isinstance(G, GeometricComplex)
    assert G.complex.f_vector() == (3, 3, 1)


def test_rips_far_points():
    G = rips_complex([[0.0], [2.0]], 1.0, 1)
    assert G.complex.f_vector() == (2,)


def test_rips_unit_square():
    G = rips_complex(fixtures.unit_square_cloud(), 1.05, 2)
    assert G.complex.simplices(1) == ((1, 2), (1, 4), (2, 3), (3, 4))
    assert G.complex.dim == 1


def test_rips_threshold_inclusive():
    G = rips_complex([[0.0, 0.0], [3.0, 4.0]], 5.0, 1)
    assert (1, 2) in G.complex


def test_rips_preconditions():
    with pytest.raises(ValueError):
        rips_complex([[0.0]], 0.0)
    with pytest.raises(ValueError):
        rips_complex(np.zeros((0, 2)), 1.0)


def test_rips_higher_dim():
    pts = np.eye(4)
    G = rips_complex(pts, 2.0, 3)
    assert G.complex.f_vector() == (4, 6, 4, 1)


@given(st.lists(st.tuples(st.floats(0, 1), st.floats(0, 1)), min_size=1, max_size=8),
       st.floats(0.05, 1.0), st.floats(0.0, 1.0))
def test_rips_monotone(points, e1, extra):
    small = rips_complex(points, e1, 2).complex
    big = rips_complex(points, e1 + extra, 2).complex
    assert small.is_subcomplex_of(big)


def test_geometric_complex_shape_check(hollow):
    with pytest.raises(ValueError):
        GeometricComplex(hollow, np.zeros((2, 3)))


def test_json_round_trip_byte_identical(tmp_path):
    for name in ("unit_right_triangle.json", "hollow_triangle.json", "k3_graph.json", "tetrahedron.json"):
        src = fixtures.fixture_path(name)
        out = tmp_path / name
        save_complex(out, load_complex(src))
        assert out.read_bytes() == src.read_bytes()
        again = tmp_path / ("2" + name)
        save_complex(again, load_complex(out))
        assert again.read_bytes() == out.read_bytes()


def test_dict_round_trip_with_fractions():
    from fractions import Fraction

    K = build_from_facets(2, [(1, 2)])
    coords = np.array([[Fraction(1, 3)], [Fraction(2)]], dtype=object)
    d = complex_to_dict(K, coords)
    assert d["coords"] == [["1/3"], ["2"]]
    G = complex_from_dict(d)
    assert G.coords[0, 0] == Fraction(1, 3)


def test_points_csv_header_and_exact(tmp_path):
    p = tmp_path / "pts.csv"
    p.write_text("x,y\n0.1,2\n1/2,3\n")
    with pytest.raises(ValueError):
        read_points_csv(p)
    p.write_text("x,y\n0.1,2\n0.5,3\n")
    assert read_points_csv(p).shape == (2, 2)
    from fractions import Fraction

    assert read_points_csv(p, exact=True)[0, 0] == Fraction(1, 10)


def test_fixtures_load():
    assert fixtures.unit_right_triangle().complex.f_vector() == (3, 3, 1)
    assert fixtures.hollow_triangle().f_vector() == (3, 3)
    assert fixtures.k3_graph().complex.f_vector() == (3, 3)
    assert fixtures.tetrahedron().complex.f_vector() == (4, 6, 4, 1)
    with pytest.raises(KeyError):
        fixtures.fixture_path("nope.json")

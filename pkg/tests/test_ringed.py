from math import lcm, prod

import pytest
from hypothesis import given, strategies as st

from sheaflab import oracles
from sheaflab.complex import build_from_facets
from sheaflab.fixtures import fixture_path
from sheaflab.ringed import (
    EnumerationLimitError,
    IdealSheafAssignment,
    MonomialIdeal,
    ZnRingSheaf,
    build_ideal_sheaf,
    containment_checks,
    fibre_product_zn,
    ideal_sheaf_report,
    monomial_ideal_contains,
    one_edge_sheaf,
    read_moduli_csv,
    ring_closure_failures,
    validate_ideal_functor,
    zn_global_sections,
)
from sheaflab.sheaf import CONTRAVARIANT, COVARIANT
from tests.strategies import complexes


def _ideal(n, *monos):
    return MonomialIdeal.from_monomials(n, monos)


def test_containment_examples():
    assert monomial_ideal_contains(_ideal(2, (1, 2)), _ideal(2, (1,)))
    assert not monomial_ideal_contains(_ideal(2, (1,)), _ideal(2, (1, 2)))
    assert monomial_ideal_contains(_ideal(3, (1,)), _ideal(3, (1,), (2,)))
    assert monomial_ideal_contains(MonomialIdeal(2), _ideal(2, (1,)))
    assert _ideal(2, (1,)) <= _ideal(2, ())
    with pytest.raises(ValueError, match="different rings"):
        monomial_ideal_contains(_ideal(2, (1,)), _ideal(3, (1,)))


def test_ideal_normalization_and_printing():
    I = _ideal(3, (1,), (1, 2), (2, 2))
    assert I.generators == {(1, 0, 0), (0, 2, 0)}
    assert str(I) == "(x1, x2^2)"
    assert str(MonomialIdeal(2)) == "(0)"
    assert str(_ideal(2, ())) == "(1)"
    with pytest.raises(ValueError):
        MonomialIdeal(2, frozenset({(1,)}))
    with pytest.raises(ValueError):
        MonomialIdeal(0)


def test_vertex_kind_on_triangle(full_triangle):
    A = build_ideal_sheaf(full_triangle, "vertex")
    assert A.variance == COVARIANT
    assert str(A.ideals[(1, 2)]) == "(x1, x2)"
    assert A.ideals[(1, 2, 3)] == _ideal(3, (1,), (2,), (3,))
    assert validate_ideal_functor(A) == []


def test_edge_product_kind_on_triangle(full_triangle):
    A = build_ideal_sheaf(full_triangle, "edge-product")
    assert A.ideals[(1,)] == MonomialIdeal(3)
    assert A.ideals[(1, 2, 3)] == _ideal(3, (1, 2), (1, 3), (2, 3))
    assert validate_ideal_functor(A) == []


def test_complement_prime_kind_on_triangle(full_triangle):
    A = build_ideal_sheaf(full_triangle, "complement_prime")
    assert A.variance == CONTRAVARIANT
    assert A.ideals[(1,)] == _ideal(3, (2,), (3,))
    assert A.ideals[(1, 2, 3)] == MonomialIdeal(3)
    assert validate_ideal_functor(A) == []
    with pytest.raises(ValueError, match="unknown"):
        build_ideal_sheaf(full_triangle, "radical")


def test_shrunk_ideal_is_reported(full_triangle):
    A = build_ideal_sheaf(full_triangle, "vertex")
    ideals = dict(A.ideals)
    ideals[(1, 2)] = _ideal(3, (1,))
    bad = validate_ideal_functor(IdealSheafAssignment(full_triangle, COVARIANT, ideals))
    assert [(c.face, c.coface) for c in bad] == [((2,), (1, 2))]
    del ideals[(1, 3)]
    with pytest.raises(ValueError, match=r"\[1, 3\]"):
        containment_checks(IdealSheafAssignment(full_triangle, COVARIANT, ideals))


def test_single_vertex_trivially_valid():
    K = build_from_facets(1, [])
    for kind in ("vertex", "edge_product", "complement_prime"):
        r = ideal_sheaf_report(build_ideal_sheaf(K, kind))
        assert r["valid"] and r["checks"] == []


def test_report_layout(hollow):
    r = ideal_sheaf_report(build_ideal_sheaf(hollow, "vertex"))
    assert r["variance"] == COVARIANT
    assert r["ideals"][0] == {"simplex": [1], "ideal": "(x1)"}
    assert len(r["checks"]) == 6


exponents = st.lists(st.integers(0, 3), min_size=3, max_size=3).map(tuple)


@given(st.lists(exponents, max_size=5), st.lists(exponents, max_size=5))
def test_containment_matches_oracle(gi, gj):
    I = MonomialIdeal(3, frozenset(gi))
    J = MonomialIdeal(3, frozenset(gj))
    assert monomial_ideal_contains(I, J) == oracles.ideal_contained(gi, gj)


@given(st.lists(exponents, max_size=5), exponents)
def test_membership_matches_oracle(gens, m):
    assert MonomialIdeal(3, frozenset(gens)).contains_monomial(m) == oracles.monomial_in_ideal(m, gens)


@given(complexes(max_vertices=6), st.sampled_from(["vertex", "edge_product", "complement_prime"]))
def test_standard_kinds_are_functors(K, kind):
    assert validate_ideal_functor(build_ideal_sheaf(K, kind)) == []


def test_zn_one_edge_example():
    S = one_edge_sheaf(12, 18, 6)
    G = zn_global_sections(S)
    assert G.size == 36 == oracles.fibre_product_count(12, 18, 6)
    assert sorted(G.elements) == fibre_product_zn(12, 18, 6)
    assert ring_closure_failures(S, G.elements) == []


def test_zn_from_csv():
    m = read_moduli_csv(fixture_path("one_edge_moduli.csv"))
    assert m == {(1,): 12, (2,): 18, (1, 2): 6}


def test_zn_trivial_and_disjoint():
    K = build_from_facets(3, [(1, 2, 3)])
    assert zn_global_sections(ZnRingSheaf(K, {s: 1 for s in K})).elements == [(0, 0, 0)]
    D = build_from_facets(2, [])
    G = zn_global_sections(ZnRingSheaf(D, {(1,): 2, (2,): 3}))
    assert G.size == 6


@pytest.mark.parametrize("m,n", [(2, 3), (4, 6), (5, 5), (1, 7)])
def test_fibre_product_coprime_gluing(m, n):
    assert len(fibre_product_zn(m, n, 1)) == m * n


def test_fibre_product_diagonal():
    assert fibre_product_zn(4, 4, 4) == [(a, a) for a in range(4)]
    with pytest.raises(ValueError):
        fibre_product_zn(4, 6, 4)
    with pytest.raises(ValueError):
        fibre_product_zn(0, 6, 1)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_one_edge_sections_are_fibre_product(a, b, k):
    m, n = a * k, b * k
    G = zn_global_sections(one_edge_sheaf(m, n, k))
    assert sorted(G.elements) == fibre_product_zn(m, n, k)
    assert G.size == oracles.fibre_product_count(m, n, k)


@st.composite
def path_moduli(draw):
    n = draw(st.integers(2, 5))
    edges = [(i, i + 1) for i in range(1, n)]
    ne = {e: draw(st.sampled_from([1, 2, 3])) for e in edges}
    nv = {}
    for v in range(1, n + 1):
        need = 1
        for e in edges:
            if v in e:
                need = lcm(need, ne[e])
        nv[v] = need * draw(st.sampled_from([1, 2]))
    K = build_from_facets(n, edges)
    mods = {(v,): nv[v] for v in nv}
    mods.update(ne)
    return ZnRingSheaf(K, mods)


@given(path_moduli())
def test_tree_section_count(S):
    # on a tree each edge condition cuts by exactly n_e
    vs = prod(S.moduli[s] for s in S.complex.simplices(0))
    es = prod(S.moduli[s] for s in S.complex.simplices(1))
    G = zn_global_sections(S)
    assert G.size * es == vs
    assert ring_closure_failures(S, G.elements) == []


def test_zn_errors():
    K = build_from_facets(2, [(1, 2)])
    with pytest.raises(ValueError, match="does not divide"):
        ZnRingSheaf(K, {(1,): 4, (2,): 6, (1, 2): 4})
    with pytest.raises(ValueError, match="positive"):
        ZnRingSheaf(K, {(1,): 0, (2,): 6, (1, 2): 1})
    with pytest.raises(ValueError, match="no modulus"):
        ZnRingSheaf(K, {(1,): 2, (2,): 2})
    with pytest.raises(EnumerationLimitError):
        zn_global_sections(one_edge_sheaf(12, 18, 6), limit=100)


def test_sections_to_dict_cutoff():
    G = zn_global_sections(one_edge_sheaf(4, 4, 4))
    assert G.to_dict() == {"size": 4, "elements": [[0, 0], [1, 1], [2, 2], [3, 3]]}
    assert G.to_dict(max_elements=3) == {"size": 4}


def test_ring_closure_detects_non_subring():
    S = one_edge_sheaf(4, 4, 4)
    assert "missing unit" in ring_closure_failures(S, [(0, 0), (2, 2)])

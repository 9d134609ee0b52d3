"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from sheaflab.complex import build_from_facets


@st.composite
def complexes(draw, max_vertices=8, max_facet=4):
    n = draw(st.integers(1, max_vertices))
    verts = st.integers(1, n)
    facets = draw(st.lists(st.sets(verts, min_size=1, max_size=min(max_facet, n)), max_size=2 * n))
    return build_from_facets(n, facets)


@st.composite
def graphs(draw, max_vertices=10):
    n = draw(st.integers(1, max_vertices))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_from_facets(n, chosen)

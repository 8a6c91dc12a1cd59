"""The compiled and pure-Python kernels must agree exactly."""

import pytest
from hypothesis import given, settings, strategies as st

from flowpoly import kernels
from flowpoly.flowspace import circuit_basis
from flowpoly.multigraph import MultiGraph
from flowpoly.orientation import Orientation

needs_cython = pytest.mark.skipif("cython" not in kernels.BACKENDS,
                                  reason="compiled kernels not built")


@st.composite
def graphs(draw, max_v=5, max_e=7):
    nv = draw(st.integers(1, max_v))
    m = draw(st.integers(0, max_e))
    edges = draw(st.lists(st.tuples(st.integers(0, nv - 1), st.integers(0, nv - 1)),
                          min_size=m, max_size=m))
    return MultiGraph.from_edges(nv, edges)


@st.composite
def problems(draw):
    g = draw(graphs())
    bits = tuple(draw(st.lists(st.integers(0, 1), min_size=g.num_edges, max_size=g.num_edges)))
    basis = circuit_basis(g, Orientation(bits))
    q = draw(st.integers(1, 4))
    kind = draw(st.sampled_from(["modular", "open", "closed", "two_sided"]))
    if kind == "modular":
        nz = draw(st.booleans())
        args = (list(range(1, q) if nz else range(q)), 0, 0, q, nz)
    elif kind == "open":
        args = (list(range(1, q)), 1, q - 1, 0, False)
    elif kind == "closed":
        args = (list(range(q + 1)), 0, q, 0, False)
    else:
        args = ([v for v in range(1 - q, q) if v], 1 - q, q - 1, 0, True)
    return [list(r) for r in basis.rows], len(basis.cotree), args


def test_backend_selection():
    assert kernels.DEFAULT in kernels.BACKENDS
    assert "python" in kernels.BACKENDS


@needs_cython
@settings(max_examples=150, deadline=None)
@given(problems())
def test_count_and_list_agree(problem):
    rows, ncot, (values, lo, hi, mod, nz) = problem
    py, cy = kernels.BACKENDS["python"], kernels.BACKENDS["cython"]
    n_py = py.count_flows(rows, ncot, values, lo, hi, mod, nz)
    assert n_py == cy.count_flows(rows, ncot, values, lo, hi, mod, nz)
    listed = cy.list_flows(rows, ncot, values, lo, hi, mod, nz)
    assert sorted(listed) == sorted(py.list_flows(rows, ncot, values, lo, hi, mod, nz))
    assert len(listed) == n_py
    # the canonical reduction and cache must not change the count
    assert kernels.count_flows(rows, ncot, values, lo, hi, mod, nz) == n_py


@needs_cython
@settings(max_examples=100, deadline=None)
@given(graphs(max_v=6, max_e=9))
def test_graph_kernels_agree(g):
    py, cy = kernels.BACKENDS["python"], kernels.BACKENDS["cython"]
    eu = [u for u, _ in g.edges]
    ev = [v for _, v in g.edges]
    assert bytes(py.totally_cyclic_flags(g.num_vertices, eu, ev)) == \
        bytes(cy.totally_cyclic_flags(g.num_vertices, eu, ev))
    ranks_py = py.subset_ranks(g.num_vertices, eu, ev)
    ranks_cy = cy.subset_ranks(g.num_vertices, eu, ev)
    assert bytes(ranks_py) == bytes(ranks_cy)
    m = g.num_edges
    assert list(py.cyclic_masks(ranks_py, m)) == list(cy.cyclic_masks(ranks_cy, m))
    assert [list(r) for r in py.rank_histogram(ranks_py, m)] == \
        [list(r) for r in cy.rank_histogram(ranks_cy, m)]


def test_pure_python_pipeline_matches_default():
    from flowpoly.counting import integral_flow_poly
    import flowpoly.kernels as k
    g = MultiGraph.from_edges(3, [(0, 1), (0, 1), (1, 2), (2, 0), (2, 2)])
    expected = integral_flow_poly(g).poly
    saved = k.DEFAULT
    try:
        k.DEFAULT = "python"
        k._count_cached.cache_clear()
        from flowpoly.flowspace import circuit_basis as cb
        cb.cache_clear()
        assert integral_flow_poly(g).poly == expected
    finally:
        k.DEFAULT = saved

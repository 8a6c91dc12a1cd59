"""Randomized identities on small multigraphs, each against an independent oracle."""

from hypothesis import given, settings, strategies as st

from flowpoly.counting import (MODULAR_METHODS, modular_flow_poly, tutte, tutte_subset_sum)
from flowpoly.flowspace import (count_modular_flows, enumerate_modular_flows, is_flow,
                                lift_modular_flow)
from flowpoly.multigraph import MultiGraph, bridges, contract, cycle_rank, delete
from flowpoly.orientation import (Orientation, count_totally_cyclic, enumerate_orientations,
                                  find_directed_cut, is_totally_cyclic)
from flowpoly.polyalg import BiPoly
from flowpoly.verify import verify

from test_kernels import graphs

props = settings(max_examples=60, deadline=None)


@props
@given(graphs(max_v=5, max_e=8))
def test_four_way_modular_agreement(g):
    polys = {m: modular_flow_poly(g, m).poly for m in MODULAR_METHODS}
    assert len(set(polys.values())) == 1, polys


@props
@given(graphs(max_v=5, max_e=8))
def test_tutte_recursion_matches_definition(g):
    assert tutte(g) == tutte_subset_sum(g)


@props
@given(graphs(max_v=5, max_e=7))
def test_deletion_contraction_holds(g):
    if not g.num_edges:
        return
    e = 0
    if g.is_loop(e):
        assert tutte(g) == tutte(delete(g, [e])) * BiPoly.y()
    elif e in bridges(g):
        assert tutte(g) == tutte(contract(g, [e])) * BiPoly.x()
    else:
        assert tutte(g) == tutte(delete(g, [e])) + tutte(contract(g, [e]))


@props
@given(graphs(max_v=5, max_e=7), st.integers(1, 4))
def test_modular_poly_counts_flows(g, q):
    phi = modular_flow_poly(g, "tutte").poly
    assert phi(q) == count_modular_flows(g, Orientation.default(g), q)
    # total flows mod q
    assert count_modular_flows(g, Orientation.default(g), q, nowhere_zero=False) == \
        q ** cycle_rank(g)


@props
@given(graphs(max_v=5, max_e=7))
def test_cut_witness_iff_not_totally_cyclic(g):
    count = 0
    for rho in enumerate_orientations(g):
        cut = find_directed_cut(g, rho)
        if cut is None:
            count += 1
        else:
            assert all(rho.ends(g, e)[0] in cut.side for e in cut.edges)
        assert (cut is None) == is_totally_cyclic(g, rho)
    assert count == count_totally_cyclic(g)


@props
@given(graphs(max_v=5, max_e=7), st.integers(2, 4), st.integers(0, 2 ** 7 - 1))
def test_lifting(g, q, mask):
    eps = Orientation.from_mask(mask % (1 << g.num_edges), g.num_edges)
    for ft in enumerate_modular_flows(g, eps, q, nowhere_zero=True)[:20]:
        res = lift_modular_flow(g, eps, ft, q)
        assert is_flow(g, eps, res.flow)
        assert all(0 < abs(x) < q and (x - y) % q == 0 for x, y in zip(res.flow, ft))


@settings(max_examples=25, deadline=None)
@given(graphs(max_v=4, max_e=6))
def test_verify_on_arbitrary_graphs(g):
    # graphs with bridges included: every check must still hold
    report = verify(g, q_max=2)
    assert report.passed, [c.to_json() for c in report.failures()]

import pytest

from flowpoly.multigraph import (GraphFormatError, MultiGraph, bridges, components, contract,
                                 cycle_rank, cyclic_part, delete, fundamental_circuit, induced,
                                 is_bridgeless, maximal_spanning_forest, parse_graph, rank)
from flowpoly.orientation import Orientation
from flowpoly.flowspace import is_flow

from conftest import bouquet, fixture_graph


def test_parse_and_dump_roundtrip():
    g = parse_graph('{"vertices": ["u", "v"], "edges": [["u", "v"], ["v", "v"]]}')
    assert g.edges == ((0, 1), (1, 1))
    assert parse_graph(g.dumps()) == g


@pytest.mark.parametrize("text, loc", [
    ('{"vertices": ["a"], "edges": [["a", "b"]]}', "$.edges[0][1]"),
    ('{"vertices": ["a", "a"], "edges": []}', "$.vertices[1]"),
    ('{"vertices": ["a"], "edges": [["a"]]}', "$.edges[0]"),
    ('{"vertices": 3}', "$.vertices"),
    ('[1, 2]', "$"),
    ('{"vertices": ["a"],\n "edges": [}', "line 2, column 12"),
])
def test_parse_errors_have_locations(text, loc):
    with pytest.raises(GraphFormatError) as info:
        parse_graph(text)
    assert info.value.location == loc


def test_ranks_and_components():
    b4 = bouquet(4)
    assert (rank(b4), cycle_rank(b4)) == (1, 3)
    d = fixture_graph("disjoint")
    assert len(components(d)) == 3
    assert cycle_rank(d) == 3
    e = fixture_graph("edgeless")
    assert cycle_rank(e) == 0 and len(components(e)) == 2


def test_bridges():
    assert bridges(fixture_graph("bridge")) == {3}
    assert bridges(fixture_graph("single_edge")) == {0}
    assert is_bridgeless(bouquet(2))
    # a loop is never a bridge, a parallel pair never either
    assert is_bridgeless(fixture_graph("loop"))
    assert cyclic_part(fixture_graph("bridge")) == {0, 1, 2}


def test_forest_is_greedy():
    f = maximal_spanning_forest(fixture_graph("theta"))
    assert f.tree == (0, 2) and f.cotree == (1, 3, 4)


def test_fundamental_circuits_are_flows():
    for name in ["b4", "k4", "theta", "disjoint", "loop"]:
        g = fixture_graph(name)
        f = maximal_spanning_forest(g)
        for bits in [(0,) * g.num_edges, tuple(i % 2 for i in range(g.num_edges))]:
            rho = Orientation(bits)
            for e in f.cotree:
                c = fundamental_circuit(g, f, e, rho)
                assert c[e] == 1
                assert is_flow(g, rho, c)


def test_contract_keeps_loops_and_labels():
    b2 = bouquet(2)
    g = contract(b2, [0])
    assert g.num_vertices == 1 and g.edges == ((0, 0),)
    assert g.vertices == ("0",)
    tri = fixture_graph("c3")
    g = contract(tri, [0, 1])
    assert g.edges == ((0, 0),)


def test_delete_and_induced():
    k4 = fixture_graph("k4")
    assert delete(k4, [0]).num_edges == 5
    sub = induced(k4, [0, 3, 1])
    assert sub.num_vertices == 4 and sub.num_edges == 3
    assert sub.edges == (k4.edges[0], k4.edges[1], k4.edges[3])

from fractions import Fraction

import pytest

from flowpoly.counting import (MODULAR_METHODS, MethodMismatch, bs1_check, dual_polys,
                               flat_poset, integral_flow_poly, integral_flow_poly_all,
                               interpolate_counts, local_flow_polys, local_polys_for,
                               modular_dual_flow_poly_from_reciprocity, modular_flow_poly,
                               modular_flow_poly_all, s_n_brute, s_n_closed_form, s_n_poly,
                               tutte, tutte_specializations, tutte_subset_sum)
from flowpoly.errors import DomainError, InvariantViolation, ResourceLimitError, limits
from flowpoly.multigraph import MultiGraph
from flowpoly.orientation import Orientation
from flowpoly.polyalg import BiPoly, Poly

from conftest import CORPUS, bouquet, fixture_graph

t = Poly.t()
x, y = BiPoly.x(), BiPoly.y()
O = Orientation.parse


def test_tutte_base_cases():
    assert tutte(fixture_graph("single_edge")) == x
    assert tutte(fixture_graph("loop")) == y
    assert tutte(fixture_graph("edgeless")) == BiPoly.one()
    assert tutte(fixture_graph("c3")) == x * x + x + y


@pytest.mark.parametrize("name", CORPUS + ["edgeless", "single_edge"])
def test_tutte_matches_subset_sum(name):
    g = fixture_graph(name)
    assert tutte(g) == tutte_subset_sum(g)


def test_tutte_memo_distinguishes_nonisomorphic():
    # same degree sequence, different graphs: a 6-cycle and two triangles
    hexagon = MultiGraph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    triangles = MultiGraph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    assert tutte(hexagon) == tutte_subset_sum(hexagon)
    assert tutte(triangles) == tutte_subset_sum(triangles)
    assert tutte(hexagon) != tutte(triangles)


def test_modular_examples():
    b4 = bouquet(4)
    for m in MODULAR_METHODS:
        assert modular_flow_poly(b4, m).poly == Poly([-3, 6, -4, 1])
        assert modular_flow_poly(fixture_graph("single_edge"), m).poly.is_zero()
        assert modular_flow_poly(fixture_graph("k4"), m).poly == (t - 1) * (t - 2) * (t - 3)
        assert modular_flow_poly(fixture_graph("edgeless"), m).poly == Poly([1])


def test_modular_interp_samples():
    rep = modular_flow_poly(bouquet(4), "interp")
    assert rep.samples == [(1, 0), (2, 1), (3, 6), (4, 21), (5, 52)]


def test_unknown_method():
    with pytest.raises(DomainError):
        modular_flow_poly(bouquet(2), "magic")
    with pytest.raises(DomainError):
        integral_flow_poly(bouquet(2), "magic")


def test_modular_all_reports_every_method():
    reports = modular_flow_poly_all(fixture_graph("theta"))
    assert [r.method for r in reports] == list(MODULAR_METHODS)


def test_subset_cap():
    with limits(max_subsets=2 ** 3):
        with pytest.raises(ResourceLimitError):
            modular_flow_poly(bouquet(4), "subset")


def test_integral_examples():
    b4 = bouquet(4)
    phi = Poly([-14, Fraction(86, 3), -20, Fraction(16, 3)])
    for r in integral_flow_poly_all(b4):
        assert r.poly == phi
    assert phi(2) == 6 and phi(3) == 36
    assert integral_flow_poly(bouquet(2)).poly == 2 * t - 2
    assert integral_flow_poly(fixture_graph("loop")).poly == 2 * t - 2
    assert integral_flow_poly(fixture_graph("edgeless")).poly == Poly([1])


def test_integral_degree_is_cycle_rank():
    for name in ["b3", "k4", "theta", "disjoint"]:
        g = fixture_graph(name)
        from flowpoly.multigraph import cycle_rank
        assert integral_flow_poly(g).poly.degree == cycle_rank(g)


def test_local_examples():
    lp = local_flow_polys(bouquet(2), O("01"))
    assert lp.open == t - 1 and lp.closed == t + 1
    assert local_flow_polys(bouquet(4), O("0011")).closed(1) == 6


def test_local_non_totally_cyclic_is_zero():
    lp = local_flow_polys(bouquet(4), O("0000"))
    assert lp.open.is_zero() and not lp.totally_cyclic
    assert "warning" in lp.to_json()


def test_local_parallel_matches_serial():
    g = fixture_graph("theta")
    from flowpoly.orientation import totally_cyclic_orientations
    tcs = totally_cyclic_orientations(g)
    serial = [lp.to_json() for lp in local_polys_for(g, tcs, 1)]
    parallel = [lp.to_json() for lp in local_polys_for(g, tcs, 2)]
    assert serial == parallel


def test_dual_examples():
    dp = dual_polys(bouquet(4))
    assert dp.closed_modular(0) == 3
    assert dp.closed_integral(0) == 14
    loop = dual_polys(fixture_graph("loop"))
    assert loop.closed_modular == t + 1
    assert loop.closed_integral == 2 * t + 2


def test_dual_from_reciprocity():
    assert modular_dual_flow_poly_from_reciprocity(bouquet(4)) == Poly([3, 6, 4, 1])
    assert modular_dual_flow_poly_from_reciprocity(fixture_graph("single_edge")).is_zero()
    assert modular_dual_flow_poly_from_reciprocity(fixture_graph("c3")) == t + 1


def test_tutte_specializations():
    s = tutte_specializations(bouquet(4))
    assert (s["T(0,1)"], s["T(0,2)"]) == (3, 14)
    s = tutte_specializations(fixture_graph("c3"))
    assert (s["T(0,1)"], s["T(0,2)"]) == (1, 2)
    s = tutte_specializations(fixture_graph("k4"))
    assert (s["T(0,1)"], s["T(0,2)"]) == (6, 24)
    assert s["flow"] == (t - 1) * (t - 2) * (t - 3)


def test_bs1_examples():
    r = bs1_check(bouquet(4), 1)
    assert r.lhs == r.rhs == -14
    r = bs1_check(fixture_graph("loop"), 2)
    assert r.lhs == r.rhs == -3
    assert sum(term["flows"] * term["totally_cyclic_quotient"] for term in r.terms) == 3
    r = bs1_check(bouquet(2), 3)
    assert r.lhs == r.rhs == -4


def test_flat_poset_b4():
    fp = flat_poset(bouquet(4))
    assert fp.top == 0b1111
    assert fp.mobius_sanity()
    # empty key plus every cyclic subset of size >= 2
    assert len(fp.keys) == 1 + 6 + 4 + 1
    assert fp.characteristic_polynomial() == Poly([-3, 6, -4, 1])


def test_s_n():
    assert s_n_poly(1) == Poly([1])
    assert s_n_poly(2) == 2 * t - 1
    assert s_n_poly(3) == 3 * t * t - 3 * t + 1
    assert s_n_poly(4) == (2 * t - 1) * (8 * t * t - 8 * t + 3) * Fraction(1, 3)
    assert s_n_closed_form(4, 2) == 19
    for n in range(0, 6):
        for q in range(1, 6):
            assert s_n_closed_form(n, q) == s_n_brute(n, q) == s_n_poly(n)(q)


def test_interpolation_overdetermination_catches_non_polynomial():
    with pytest.raises(InvariantViolation):
        interpolate_counts(lambda q: 2 ** q, 0, 2)


def test_method_mismatch_is_invariant_violation():
    assert issubclass(MethodMismatch, InvariantViolation)

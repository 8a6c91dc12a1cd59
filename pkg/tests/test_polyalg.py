from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from flowpoly.errors import DomainError
from flowpoly.polyalg import (BiPoly, Poly, binomial, binomial_poly, lagrange_interpolate,
                              multichoose, reciprocity_transform)

coeffs = st.lists(st.builds(Fraction, st.integers(-30, 30), st.integers(1, 6)), max_size=6)
quick = settings(max_examples=60, deadline=None)


def test_trailing_zeros_trimmed():
    assert Poly([1, 2, 0, 0]).coeffs == (Fraction(1), Fraction(2))
    assert Poly([0, 0]).is_zero()
    assert Poly().degree == -1


def test_arithmetic_and_eval():
    t = Poly.t()
    p = (t - 1) * (t ** 2 - 3 * t + 3)
    assert p == Poly([-3, 6, -4, 1])
    assert p(2) == 1
    assert p(Fraction(1, 2)) == Fraction(-7, 8)
    assert (p - p).is_zero()


def test_json_roundtrip_b4():
    p = Poly([-3, 6, -4, 1])
    j = p.to_json()
    assert j == {"var": "t", "coeffs": ["-3/1", "6/1", "-4/1", "1/1"]}
    assert Poly.from_json(j) == p


def test_interpolation_integral_b4():
    # sample values of the integral flow polynomial of four parallel edges
    pts = [(1, 0), (2, 6), (3, 36), (4, 122)]
    p = lagrange_interpolate(pts, 3)
    assert p == Poly([-14, Fraction(86, 3), -20, Fraction(16, 3)])
    assert p(5) == 296


def test_interpolation_errors():
    with pytest.raises(DomainError):
        lagrange_interpolate([(1, 1), (1, 2)], 1)
    with pytest.raises(DomainError):
        lagrange_interpolate([(1, 1)], 1)


def test_reciprocity_transform_b4():
    p = Poly([-3, 6, -4, 1])
    assert reciprocity_transform(p, 3) == Poly([3, 6, 4, 1])


@quick
@given(coeffs, st.integers(0, 6))
def test_reciprocity_is_involution(cs, n):
    p = Poly(cs)
    assert reciprocity_transform(reciprocity_transform(p, n), n) == p
    assert reciprocity_transform(p, n) == p.compose_affine(-1, 0) * (-1) ** n


@quick
@given(coeffs, coeffs, st.integers(-5, 5))
def test_ring_laws(a, b, x):
    p, q = Poly(a), Poly(b)
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)
    assert p.compose(q)(x) == p(q(x))


@quick
@given(coeffs, st.integers(0, 5))
def test_interpolation_recovers(cs, extra):
    p = Poly(cs)
    d = max(p.degree, 0) + extra
    pts = [(x, p(x)) for x in range(-1, d)]
    assert lagrange_interpolate(pts, d) == p


def test_bipoly_tutte_triangle_substitution():
    x, y = BiPoly.x(), BiPoly.y()
    T = x * x + x + y
    assert T(0, 1) == 1 and T(0, 2) == 2
    # (-1)^1 T(0, 1 - t) = t - 1
    assert T.substitute(Poly(), Poly([1, -1])) * -1 == Poly([-1, 1])
    assert BiPoly.from_json(T.to_json()) == T


def test_binomials():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    assert binomial(-1, 3) == -1
    assert multichoose(3, 2) == 6
    t = Poly.t()
    for q in range(0, 6):
        assert binomial_poly(t * 2 - 1, 1)(q) == 2 * q - 1
        assert binomial_poly(t, 3)(q) == binomial(q, 3)

"""Exact polynomial arithmetic and root-counting tests.

Root-count fixtures are built from known roots, so every expected count is
independent of the Sturm machinery being tested.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from refined_inertia.ratpoly import (
    RationalPoly,
    cauchy_index_line,
    count_real_roots,
    even_odd_split,
    imaginary_axis_parts,
    negative_root_count_with_multiplicity,
    poly_gcd,
    squarefree_decomposition,
    strip_zero_roots,
)

x = RationalPoly.variable()


def poly(*coeffs):
    return RationalPoly(coeffs)


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)
small_polys = st.lists(rationals, min_size=0, max_size=7).map(RationalPoly)


def test_construction_normalizes_trailing_zeros():
    assert poly(1, 2, 0, 0).coeffs == (Fraction(1), Fraction(2))
    assert poly().is_zero
    assert poly(0, 0).is_zero
    assert poly(3).degree == 0
    assert poly(0, 1).degree == 1


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        RationalPoly((0.5, 1))


def test_product_of_linear_factors():
    assert RationalPoly.from_roots([1, -1]) == poly(-1, 0, 1)
    assert RationalPoly.from_roots([2, 3]) == poly(6, -5, 1)


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_divmod_roundtrip(f, g):
    if g.is_zero:
        with pytest.raises(ZeroDivisionError):
            divmod(f, g)
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.is_zero or r.degree < g.degree


@settings(max_examples=40, deadline=None)
@given(small_polys, rationals, rationals)
def test_taylor_shift_matches_pointwise(f, c, t):
    assert f.taylor_shift(c).evaluate(t) == f.evaluate(t + c)


def test_derivative_and_evaluate():
    p = poly(1, -3, 0, 2)  # 2x^3 - 3x + 1
    assert p.derivative() == poly(-3, 0, 6)
    assert p.evaluate(Fraction(1, 2)) == Fraction(-1, 4)


def test_gcd_of_constructed_common_factor():
    common = RationalPoly.from_roots([Fraction(1, 2), -3])
    f = common * RationalPoly.from_roots([5])
    g = common * RationalPoly.from_roots([7, 7])
    assert poly_gcd(f, g) == common


def test_gcd_zero_conventions():
    p = poly(2, 4)
    assert poly_gcd(p, RationalPoly.zero()) == p.monic()
    assert poly_gcd(RationalPoly.zero(), RationalPoly.zero()).is_zero


def test_squarefree_decomposition_recovers_multiplicities():
    p = (x - poly(1)) ** 3 * (x + poly(2)) ** 2 * (x - poly(5))
    parts = squarefree_decomposition(p)
    by_mult = {m: f for f, m in parts}
    assert by_mult[3] == RationalPoly.from_roots([1])
    assert by_mult[2] == RationalPoly.from_roots([-2])
    assert by_mult[1] == RationalPoly.from_roots([5])
    rebuilt = RationalPoly.one()
    for f, m in parts:
        rebuilt = rebuilt * f**m
    assert rebuilt == p.monic()


def test_strip_zero_roots():
    p = poly(0, 0, 3, 1)
    k, rest = strip_zero_roots(p)
    assert k == 2
    assert rest == poly(3, 1)


def test_even_odd_split_identity():
    p = poly(1, 2, 3, 4, 5)
    e, o = even_odd_split(p)
    assert e == poly(1, 3, 5)
    assert o == poly(2, 4)


def test_imaginary_axis_parts():
    # p(x) = x^4 + x^3 + x^2 + x + 1 at x = i*w
    p = poly(1, 1, 1, 1, 1)
    re, im = imaginary_axis_parts(p)
    assert re == poly(1, 0, -1, 0, 1)
    assert im == poly(0, 1, 0, -1)


class TestSturmCounting:
    def test_distinct_rational_roots(self):
        p = RationalPoly.from_roots([-5, -1, Fraction(1, 3), 2])
        assert count_real_roots(p) == 4
        assert count_real_roots(p, None, 0) == 2
        assert count_real_roots(p, 0, None) == 2
        assert count_real_roots(p, -2, 1) == 2  # roots -1 and 1/3

    def test_no_real_roots(self):
        assert count_real_roots(poly(1, 0, 1)) == 0

    def test_irrational_roots(self):
        # x^2 - 2: one root on each side of zero
        p = poly(-2, 0, 1)
        assert count_real_roots(p) == 2
        assert count_real_roots(p, None, 0) == 1

    def test_endpoint_root_rejected(self):
        with pytest.raises(ValueError):
            count_real_roots(RationalPoly.from_roots([1]), 0, 1)

    def test_distinct_count_for_repeated_roots(self):
        p = RationalPoly.from_roots([2, 2, 2, -1])
        assert count_real_roots(p) == 2


class TestNegativeRootCount:
    @pytest.mark.parametrize(
        "factors, expected",
        [
            # ((roots with multiplicity), extra factor), expected negative count
            (([-2, -2, -2, 1], poly(1, 0, 1)), 3),
            (([-1, -1, 0, 5], RationalPoly.one()), 2),
            (([Fraction(-1, 7), -3], RationalPoly.one()), 2),
            (([4, 9], RationalPoly.one()), 0),
        ],
    )
    def test_constructed_fixtures(self, factors, expected):
        roots, extra = factors
        p = RationalPoly.from_roots(roots) * extra
        assert negative_root_count_with_multiplicity(p) == expected

    def test_irrational_negative_roots(self):
        # (t^2 - 2) has one negative root; (t + 1)^2 contributes two more
        p = poly(-2, 0, 1) * RationalPoly.from_roots([-1, -1])
        assert negative_root_count_with_multiplicity(p) == 3

    def test_degree_bound_fixture(self):
        # degree 8 with mixed multiplicities
        p = RationalPoly.from_roots([-1, -1, -1, -4, 2, 2]) * poly(3, 0, 1)
        assert negative_root_count_with_multiplicity(p) == 4


class TestCauchyIndex:
    def test_simple_pole(self):
        # 1/w jumps -inf -> +inf at 0
        assert cauchy_index_line(poly(0, 1), poly(1)) == 1
        assert cauchy_index_line(poly(0, 1), poly(-1)) == -1

    def test_no_real_poles(self):
        assert cauchy_index_line(poly(1, 0, 1), poly(0, 1)) == 0

    def test_zero_numerator(self):
        assert cauchy_index_line(poly(1, 2, 3), RationalPoly.zero()) == 0

    def test_gcd_laden_chain(self):
        # (w^2 - 1) cancels; reduced fraction is -1/w
        f0 = poly(0, 1, 0, -1)  # w - w^3 = -w(w^2 - 1)
        f1 = poly(-1, 0, 1)  # w^2 - 1
        assert cauchy_index_line(f0, f1) == -1


def test_json_roundtrip():
    p = poly(Fraction(1, 3), -2, Fraction(7, 5))
    assert RationalPoly.from_json(p.to_json()) == p

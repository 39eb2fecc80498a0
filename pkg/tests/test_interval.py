import math

import pytest

from ghopt.interval import (
    ONE,
    ZERO,
    DivisorContainsZero,
    Dominance,
    Interval,
    IntervalOverflow,
    IntervalVector,
    InvalidInterval,
    LengthMismatch,
    add,
    compare,
    div,
    dominates,
    exp_interval,
    gh_difference,
    inner_product,
    interval_norm,
    mul,
    scalar_mul,
    strictly_dominates,
    sub,
    vector_norm,
)

A = Interval(-3.5, 7.25)


class TestConstruction:
    def test_degenerate_is_valid(self):
        p = Interval.point(2.5)
        assert p.lo == p.hi == 2.5 and p.is_degenerate

    @pytest.mark.parametrize("lo,hi", [(2, 1), (math.nan, 0), (0, math.inf), (-math.inf, 0)])
    def test_rejects_bad_endpoints(self, lo, hi):
        with pytest.raises(InvalidInterval):
            Interval(lo, hi)

    def test_endpoints_are_floats(self):
        a = Interval(1, 2)
        assert type(a.lo) is float and type(a.hi) is float

    def test_width_mid_contains(self):
        a = Interval(1, 5)
        assert a.width == 4 and a.mid == 3 and 2 in a and 6 not in a

    def test_format(self):
        assert str(Interval(0.25, 1)) == "[0.25, 1]"
        assert Interval(1 / 3, 1).format(3) == "[0.333, 1]"


class TestAdd:
    def test_basic(self):
        assert add(Interval(1, 2), Interval(3, 4)) == Interval(4, 6)

    def test_identity(self):
        assert add(ZERO, A) == A

    def test_mixed_signs(self):
        assert add(Interval(-6, 12), Interval(-32, -24)) == Interval(-38, -12)

    def test_operator_coerces_numbers(self):
        assert Interval(1, 2) + 1 == Interval(2, 3)
        assert 1 + Interval(1, 2) == Interval(2, 3)


class TestMul:
    def test_four_products(self):
        assert mul(Interval(1, 2), Interval(-1, 3)) == Interval(-2, 6)

    def test_identity(self):
        assert mul(ONE, A) == A

    def test_self_product_is_not_square(self):
        assert mul(Interval(-1, 2), Interval(-1, 2)) == Interval(-2, 4)


class TestScalarMul:
    def test_negation_swaps(self):
        assert scalar_mul(-1, Interval(2, 5)) == Interval(-5, -2)

    def test_negative_factor(self):
        assert scalar_mul(-2, Interval(12, 16)) == Interval(-32, -24)

    def test_zero_annihilates(self):
        assert scalar_mul(0, A) == ZERO

    def test_rejects_nonfinite(self):
        with pytest.raises(InvalidInterval):
            scalar_mul(math.inf, A)

    def test_operator(self):
        assert 2 * Interval(1, 2) == Interval(2, 4)
        assert -Interval(1, 2) == Interval(-2, -1)


class TestDiv:
    def test_reciprocal_then_multiply(self):
        assert div(Interval(1, 2), Interval(2, 4)) == Interval(0.25, 1)

    def test_identity_divisor(self):
        assert div(A, ONE) == A

    @pytest.mark.parametrize("b", [Interval(-1, 1), Interval(0, 1), Interval(-2, 0), ZERO])
    def test_divisor_containing_zero(self, b):
        with pytest.raises(DivisorContainsZero):
            div(ONE, b)

    def test_divisor_error_is_a_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            ONE / Interval(-1, 1)


class TestDifferences:
    def test_gh_self_difference_is_zero(self):
        assert gh_difference(A, A) == ZERO

    def test_gh_from_zero_negates(self):
        assert gh_difference(ZERO, Interval(2, 5)) == Interval(-5, -2)

    def test_gh_mixed(self):
        assert gh_difference(Interval(4, 6), Interval(2, 10)) == Interval(-4, 2)

    def test_moore_difference_of_self_is_not_zero(self):
        assert sub(A, A) == Interval(A.lo - A.hi, A.hi - A.lo)
        assert A - A != ZERO

    def test_gh_sub_method(self):
        assert Interval(4, 6).gh_sub(Interval(2, 10)) == Interval(-4, 2)


class TestCompare:
    def test_strict(self):
        assert compare(Interval(4, 6), Interval(5, 7)) is Dominance.STRICTLY_DOMINATES

    def test_incomparable(self):
        assert compare(Interval(4, 6), Interval(2, 10)) is Dominance.INCOMPARABLE

    def test_equal(self):
        assert compare(Interval(3, 3), Interval(3, 3)) is Dominance.EQUAL

    def test_one_endpoint_tied_is_still_strict(self):
        assert compare(Interval(1, 2), Interval(1, 3)) is Dominance.STRICTLY_DOMINATES

    def test_mirror(self):
        a, b = Interval(4, 6), Interval(5, 7)
        assert compare(b, a) is compare(a, b).mirror() is Dominance.STRICTLY_DOMINATED_BY
        for d in Dominance:
            assert d.mirror().mirror() is d

    def test_predicates(self):
        assert dominates(Interval(1, 2), Interval(1, 2))
        assert not strictly_dominates(Interval(1, 2), Interval(1, 2))
        assert strictly_dominates(Interval(1, 2), Interval(1.5, 2))
        assert Dominance.EQUAL.is_dominating and Dominance.EQUAL.is_dominated
        assert not Dominance.INCOMPARABLE.is_dominating


class TestNorms:
    @pytest.mark.parametrize(
        "a,expected", [(Interval(-3, 2), 3), (ZERO, 0), (Interval(2, 5), 5)]
    )
    def test_interval_norm(self, a, expected):
        assert interval_norm(a) == expected == a.norm()

    def test_vector_norm(self):
        assert vector_norm(IntervalVector([(-3, 1), (2, 5)])) == 8
        assert IntervalVector.zeros(2).norm() == 0

    def test_invalid_component_rejected(self):
        with pytest.raises(InvalidInterval):
            IntervalVector([(1, -3)])


class TestInnerProduct:
    G = IntervalVector([(-6, 12), (12, 16)])

    def test_direction(self):
        assert inner_product((1, -2), self.G) == Interval(-38, -12)

    def test_zero_direction(self):
        assert inner_product((0, 0), self.G) == ZERO

    def test_basis_selects(self):
        assert inner_product((1, 0), self.G) == self.G[0]

    def test_moore_sum_for_second_direction(self):
        assert inner_product((5, -2), self.G) == Interval(-62, 36)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            inner_product((1, 2, 3), self.G)


class TestExp:
    def test_values(self):
        assert exp_interval(ZERO) == ONE
        e = exp_interval(Interval(0, 1))
        assert e.lo == 1 and e.hi == pytest.approx(math.e, abs=1e-12)
        e = exp_interval(Interval(-1, 0))
        assert e.lo == pytest.approx(1 / math.e) and e.hi == 1

    def test_overflow(self):
        with pytest.raises(IntervalOverflow):
            exp_interval(Interval(0, 1000))


class TestIntervalVector:
    def test_needs_a_component(self):
        with pytest.raises(InvalidInterval):
            IntervalVector([])

    def test_componentwise_ops_keep_length(self):
        u = IntervalVector([(0, 1), (2, 3)])
        v = IntervalVector([(1, 1), (-1, 0)])
        assert u + v == IntervalVector([(1, 2), (1, 3)])
        assert u.gh_sub(u) == IntervalVector.zeros(2)
        assert u.scale(-1) == IntervalVector([(-1, 0), (-3, -2)])
        with pytest.raises(LengthMismatch):
            u + IntervalVector([(0, 0)])

    def test_value_semantics(self):
        u = IntervalVector.from_points([1.0, 2.0])
        assert u == IntervalVector([(1, 1), (2, 2)]) and hash(u) == hash(IntervalVector(u))
        assert u.lo == (1.0, 2.0) and u.hi == (1.0, 2.0)

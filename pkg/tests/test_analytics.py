import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from maskquery import (
    ceil_log2,
    classical_lower_bound_m1,
    entropy_budget_m1,
    t_cb,
    t_cs,
    t_q,
    t_q_approx,
    t_q_series,
)


class TestCeilLog2:
    def test_values(self):
        assert ceil_log2(1) == 0
        assert ceil_log2(2) == 1
        assert ceil_log2(8) == 3
        assert ceil_log2(9) == 4
        assert ceil_log2(2**40) == 40
        assert ceil_log2(2**40 + 1) == 41

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            ceil_log2(0)


class TestTq:
    def test_exact_small_values(self):
        assert t_q(0) == 0
        assert t_q(1) == Fraction(2)
        assert t_q(2) == Fraction(8, 3)
        assert t_q(3) == Fraction(22, 7)

    def test_recurrence_holds(self):
        # 2^m T(m) = sum_h C(m,h) (1 + T(h)) with the h=m term included
        for m in range(1, 12):
            rhs = sum(math.comb(m, h) * (1 + t_q(h)) for h in range(m + 1))
            assert 2**m * t_q(m) == rhs

    def test_strictly_increasing(self):
        values = [t_q(m) for m in range(1, 501)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_series_matches_exact(self):
        assert t_q_series(1) == pytest.approx(2.0, abs=1e-12)
        assert t_q_series(2) == pytest.approx(float(Fraction(8, 3)), abs=1e-12)
        for m in (5, 17, 130):
            assert abs(t_q_series(m) - float(t_q(m))) < 1e-9

    def test_approx(self):
        assert t_q_approx(1) == 2.0
        assert t_q_approx(4) == 4.0
        for m in range(2, 64):
            assert abs(float(t_q(m)) - t_q_approx(m)) <= 1.0
        assert t_q(1) == t_q_approx(1)

    def test_approx_upper_gap(self):
        for m in range(1, 501):
            assert t_q(m) < t_q_approx(m) + 1


class TestTcb:
    def test_m1_reduces_to_lower_bound(self):
        for n in (2, 3, 8, 100, 200):
            assert t_cb(n, 1) == 1 + ceil_log2(n) == classical_lower_bound_m1(n)

    def test_instances(self):
        assert t_cb(8, 2) == 7
        assert t_cb(8, 7) == 1 + 3 + 3 + 3 + 3 + 2 + 2 + 1

    def test_range_checks(self):
        with pytest.raises(ValueError):
            t_cb(8, 0)
        with pytest.raises(ValueError):
            t_cb(8, 8)


class TestTcs:
    def test_last_weight_closed_form(self):
        for n in range(2, 40):
            assert t_cs(n, n - 1) == Fraction(-1, n) + Fraction(3, 2) + Fraction(n, 2)

    def test_symmetry(self):
        for n in range(2, 31):
            for m in range(1, n):
                assert t_cs(n, m) == t_cs(n, n - m)

    def test_bounded_by_n(self):
        for n in range(2, 31):
            for m in range(1, n):
                assert t_cs(n, m) <= n

    def test_instance(self):
        assert t_cs(6, 2) == Fraction(79, 15)


class TestEntropy:
    def test_budget(self):
        total, global_part, local_part = entropy_budget_m1(8)
        assert (total, global_part, local_part) == (4.0, 3.0, 1.0)
        assert entropy_budget_m1(2) == (2.0, 1.0, 1.0)
        for n in (2, 5, 33):
            budget = entropy_budget_m1(n)
            assert budget.total == budget.global_part + budget.local_part

    def test_lower_bound(self):
        assert classical_lower_bound_m1(8) == 4
        assert classical_lower_bound_m1(5) == 4


@given(st.tuples(st.integers(-10**18, 10**18), st.integers(1, 10**18),
                 st.integers(-10**18, 10**18), st.integers(1, 10**18)))
def test_rational_arithmetic_cross_multiplication(data):
    a, b, c, d = data
    left = Fraction(a, b) + Fraction(c, d)
    # cross-multiplied big-integer reference, reduced independently
    num, den = a * d + c * b, b * d
    g = math.gcd(num, den)
    assert (left.numerator, left.denominator) == (num // g, den // g)
    assert math.gcd(left.numerator, left.denominator) == 1
    assert left.denominator > 0

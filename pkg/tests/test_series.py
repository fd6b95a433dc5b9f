import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from vicwalk.enumeration import GroundStateQuery, z_ground
from vicwalk.lattice import Configuration, ground_state
from vicwalk.series import (
    RationalSeries,
    bessel_series,
    determinantal_report,
    gd_from_counts,
    gessel_report,
    hook_product,
    series_det,
    theorem2_report,
    toeplitz_bessel_det,
    toeplitz_offsets,
)

F = Fraction


def test_bessel_coefficients():
    assert bessel_series(0, 6)[0] == 1
    assert bessel_series(2, 6)[2] == F(1, 2)
    assert bessel_series(-1, 9) == bessel_series(1, 9)
    # I_0(2x) = sum x^(2n) / (n!)^2
    assert [bessel_series(0, 6)[k] for k in range(7)] == [1, 0, 1, 0, F(1, 4), 0, F(1, 36)]


def test_bessel_numeric_against_scipy():
    from scipy.special import iv

    for k in range(4):
        assert bessel_series(k, 40).evaluate(0.7) == pytest.approx(iv(k, 1.4), rel=1e-14)


def test_det_examples():
    assert toeplitz_bessel_det([[0]], 8) == bessel_series(0, 8)
    assert toeplitz_bessel_det([[0, 1], [-1, 0]], 6)[2] == 1
    assert toeplitz_bessel_det([[1, 2], [0, 1]], 6)[2] == F(1, 2)


def test_det_of_two_by_two_matches_direct_products():
    a, b = bessel_series(0, 10), bessel_series(1, 10)
    assert toeplitz_bessel_det([[0, 1], [1, 0]], 10) == a * a - b * b


@pytest.mark.parametrize("d, q, expected", [(3, 0, 1), (1, 3, 6), (2, 2, 12), (3, 2, 144)])
def test_hook_product(d, q, expected):
    assert hook_product(d, q) == expected


def test_hook_product_is_rectangle_hook_lengths():
    for d in range(1, 5):
        for q in range(5):
            hooks = math.prod((q - j - 1) + (d - i - 1) + 1 for i in range(d) for j in range(q))
            assert hook_product(d, q) == hooks


def test_gd_from_counts_examples():
    s = gd_from_counts(1, 0, 8)
    assert [s[k] for k in range(9)] == [F(1, math.factorial(k // 2) ** 2) if k % 2 == 0 else 0 for k in range(9)]
    assert gd_from_counts(2, 1, 4)[2] == F(1, 2)
    for d, q in [(1, 2), (2, 2), (3, 1)]:
        s = gd_from_counts(d, q, d * q + 2)
        assert all(s[k] == 0 for k in range(d * q))


@pytest.mark.parametrize("d, q, order", [(1, 2, 8), (2, 0, 10), (3, 1, 9)])
def test_toeplitz_report_examples(d, q, order):
    assert theorem2_report(d, q, order).holds


def test_one_walker_series_is_single_bessel():
    assert gd_from_counts(1, 2, 8) == bessel_series(2, 8)


def test_determinantal_one_walker():
    rep = determinantal_report(1, Configuration((1,)), Configuration((3,)), 10)
    assert rep.holds
    assert toeplitz_bessel_det([[2]], 10) == bessel_series(2, 10)


def test_determinantal_ground_state_is_gessel():
    rep = determinantal_report(2, ground_state(2), ground_state(2), 10)
    assert rep.holds
    det_rows = [r for r in rep.rows if "family" in r and r["family"] == "L^n R^(n+gap)"]
    gessel_rows = gessel_report(2, 10).rows
    assert [r["rhs"] for r in det_rows] == [r["rhs"] for r in gessel_rows]


def test_determinantal_parity():
    rep = determinantal_report(2, Configuration((2, 1)), Configuration((4, 1)), 9)
    odd = [r for r in rep.rows if "k" in r and r["k"] % 2 == 1]
    assert odd and all(r["lhs"] == "0" for r in odd)


def test_determinantal_rejects_descending_rank():
    with pytest.raises(ValueError):
        determinantal_report(2, Configuration((4, 1)), Configuration((2, 1)), 6)


def test_gessel_examples():
    for d, order in [(2, 12), (1, 8), (4, 8)]:
        assert gessel_report(d, order).holds


def test_gd_coefficients_nonnegative_and_integral_after_factorial():
    for d in (1, 2, 3):
        for q in (0, 1, 2):
            s = gd_from_counts(d, q, 12)
            for k in range(13):
                assert s[k] >= 0
                assert (s[k] * math.factorial(k)).denominator == 1


def test_transpose_invariance():
    for d in range(1, 5):
        a = toeplitz_bessel_det([[i - j for j in range(d)] for i in range(d)], 10)
        b = toeplitz_bessel_det([[j - i for j in range(d)] for i in range(d)], 10)
        assert a == b


def test_series_json_roundtrip():
    s = toeplitz_bessel_det(toeplitz_offsets(2, 1), 6)
    text = json.dumps(s.to_json())
    assert RationalSeries.from_json(json.loads(text)) == s
    assert json.loads(text)["coefficients"][2] == {"num": "1", "den": "2"}


def test_truncation_order_is_min():
    a = RationalSeries([1, 2, 3], 2)
    b = RationalSeries([1, 1, 1, 1, 1], 4)
    assert (a + b).order == 2 and (a * b).order == 2
    with pytest.raises(IndexError):
        (a * b)[3]


def test_series_det_rejects_non_square():
    with pytest.raises(ValueError):
        series_det([[bessel_series(0, 3), bessel_series(1, 3)]])


fractions = st.fractions(min_value=-100, max_value=100, max_denominator=50)
series_st = st.integers(0, 6).flatmap(
    lambda n: st.lists(fractions, min_size=n + 1, max_size=n + 1).map(lambda cs: RationalSeries(cs, n))
)


@settings(max_examples=60)
@given(series_st, series_st, series_st)
def test_series_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b).order == min(a.order, b.order)


@given(series_st)
def test_coefficients_in_lowest_terms(a):
    for c in (a * a).coefficients:
        assert math.gcd(c.numerator, c.denominator) == 1 and c.denominator > 0


def test_ground_count_equals_det_coefficient_times_factorial():
    det = toeplitz_bessel_det(toeplitz_offsets(3, 2), 12)
    for n in range(13):
        assert det[n] * math.factorial(n) == z_ground(GroundStateQuery(3, n, 2))

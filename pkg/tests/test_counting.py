"""Counting formulas checked against exhaustive enumeration."""

import itertools
import math

import pytest

from qpg.counting import (
    EXPONENT_CONSTANT,
    EnumerationBudgetError,
    bound_report,
    count_increasing,
    count_partial_increasing,
    enumerate_space,
    increasing_to_subset,
    iter_statistics,
    subset_to_increasing,
)


class TestCountIncreasing:
    def test_small_case_by_listing(self):
        # (1,1), (1,2), (2,2)
        assert count_increasing(2, 2) == 3

    def test_empty_function(self):
        for y in range(1, 6):
            assert count_increasing(0, y) == 1

    def test_single_value(self):
        for x in range(0, 6):
            assert count_increasing(x, 1) == 1

    def test_matches_brute_force(self):
        for x in range(0, 5):
            for y in range(1, 5):
                brute = sum(
                    1
                    for values in itertools.product(range(1, y + 1), repeat=x)
                    if all(a <= b for a, b in zip(values, values[1:]))
                )
                assert count_increasing(x, y) == brute


class TestCountPartialIncreasing:
    def test_known_values(self):
        assert count_partial_increasing(1, 2) == 8
        assert count_partial_increasing(0, 1) == 2

    def test_equals_enumeration(self):
        for x in range(0, 7):
            for y in range(1, 7):
                assert enumerate_space(x, y) == count_partial_increasing(x, y)

    def test_enumeration_budget(self):
        with pytest.raises(EnumerationBudgetError):
            enumerate_space(1, 2, cap=7)

    def test_enumerated_statistics_are_increasing_and_distinct(self):
        seen = set(iter_statistics(2, 3))
        assert len(seen) == count_partial_increasing(2, 3)
        for f in seen:
            values = [v for v in f if v is not None]
            assert all(a <= b for a, b in zip(values, values[1:]))


class TestSubsetBijection:
    def test_round_trip_both_ways(self):
        for x in range(0, 6):
            for y in range(1, 6):
                functions = [
                    values
                    for values in itertools.product(range(1, y + 1), repeat=x)
                    if all(a <= b for a, b in zip(values, values[1:]))
                ]
                subsets = set()
                for values in functions:
                    subset = increasing_to_subset(values)
                    assert len(subset) == x
                    assert all(1 <= j <= x + y - 1 for j in subset)
                    assert subset_to_increasing(subset) == values
                    subsets.add(subset)
                assert len(subsets) == len(functions) == count_increasing(x, y)
                for subset in itertools.combinations(range(1, x + y), x):
                    assert increasing_to_subset(subset_to_increasing(subset)) == subset


class TestBoundReport:
    def test_g_values_exact(self):
        report = bound_report(4, 3)
        assert report.g == tuple(
            math.comb(4, i) * math.comb(i + 2, i) for i in range(5)
        )
        assert report.total == count_partial_increasing(3, 3)

    def test_ratio_identities(self):
        for k in range(1, 33):
            for m in range(1, 33):
                assert bound_report(k, m).ratio_identities_ok

    def test_i_star_when_m_is_k_plus_1(self):
        # the exact recurrence gives g(i) <= g(i-1) iff 2i^2 - i >= k^2 + k,
        # i.e. i_star is about k/sqrt(2) (up to +1.36 due to rounding and the
        # first-factor offset)
        for k in range(4, 65):
            report = bound_report(k, k + 1)
            assert report.i_star is not None
            expected = next(i for i in range(1, k + 1) if 2 * i * i - i >= k * k + k)
            assert report.i_star == expected
            assert report.i_star >= report.i_star_lower_bound
            assert abs(report.i_star - k / math.sqrt(2)) < 2

    def test_exponent_constant(self):
        assert round(EXPONENT_CONSTANT, 4) == 2.5431

    def test_total_matches_partial_count(self):
        for k in range(1, 9):
            for m in range(1, 9):
                assert bound_report(k, m).total == count_partial_increasing(k - 1, m)

    def test_exact_total_below_naive_bound(self):
        for k in range(1, 9):
            for m in range(1, 9):
                assert bound_report(k, m).total <= (m + 1) ** k

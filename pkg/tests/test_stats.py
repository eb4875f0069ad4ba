"""Unit and property tests for statistic updates, traces and factorizations."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpg.stats import (
    UpdateKind,
    bin_value,
    check_even_factorization,
    empty,
    extract_even_factorization,
    insert,
    is_increasing,
    rule1_index,
    rule2_index,
    run_trace,
    trace_violations,
    update,
)


def stat(k, entries):
    f = [None] * (k + 1)
    for i, v in entries.items():
        f[i] = v
    return tuple(f)


class TestEmpty:
    def test_domain_empty(self):
        assert empty(3) == (None, None, None, None)

    def test_bin_zero(self):
        assert bin_value(empty(3)) == 0

    def test_negative_k_rejected(self):
        with pytest.raises(ValueError):
            empty(-1)


class TestInsert:
    def test_removes_lower_indices(self):
        assert insert(stat(2, {0: 2, 2: 4}), 1, 2) == stat(2, {1: 2, 2: 4})

    def test_into_empty(self):
        assert insert(empty(2), 0, 2) == stat(2, {0: 2})

    def test_non_increasing_intermediate_allowed(self):
        assert insert(stat(1, {1: 3}), 0, 4) == stat(1, {0: 4, 1: 3})

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            insert(empty(2), 3, 2)


class TestRuleIndices:
    def test_rule1_empty(self):
        assert rule1_index(empty(2), 2) == 0

    def test_rule1_even_prefix(self):
        assert rule1_index(stat(2, {0: 2}), 2) == 1

    def test_rule1_odd_priority(self):
        assert rule1_index(stat(2, {0: 2}), 3) is None

    def test_rule1_caps_at_k(self):
        assert rule1_index(stat(1, {0: 2}), 2) == 1

    def test_rule2_smaller_value(self):
        assert rule2_index(stat(1, {1: 2}), 3) == 1

    def test_rule2_no_smaller_value(self):
        assert rule2_index(stat(1, {1: 2}), 2) is None

    def test_rule2_empty(self):
        assert rule2_index(empty(2), 5) is None


class TestUpdate:
    def test_noop_on_odd_with_empty(self):
        assert update(empty(2), 3) == (empty(2), UpdateKind.NOOP, None)

    def test_type1_chains_even(self):
        f, kind, idx = update(stat(2, {0: 2}), 2)
        assert (f, kind, idx) == (stat(2, {1: 2}), UpdateKind.TYPE_I, 1)
        assert bin_value(stat(2, {0: 2})) == 1 and bin_value(f) == 2

    def test_type2_overrides_type1(self):
        f, kind, idx = update(stat(1, {1: 3}), 4, check=True)
        assert (f, kind, idx) == (stat(1, {1: 4}), UpdateKind.TYPE_II, 1)
        # the intermediate after the first rule is the non-increasing {0:4, 1:3}
        assert insert(stat(1, {1: 3}), rule1_index(stat(1, {1: 3}), 4), 4) == stat(
            1, {0: 4, 1: 3}
        )

    def test_type2_on_odd(self):
        f, kind, idx = update(stat(1, {1: 2}), 3, check=True)
        assert (f, kind, idx) == (stat(1, {1: 3}), UpdateKind.TYPE_II, 1)
        assert bin_value(stat(1, {1: 2})) == 2 and bin_value(f) == 0


class TestBin:
    def test_single_even_entry(self):
        assert bin_value(stat(1, {1: 2})) == 2

    def test_mixed_parities(self):
        assert bin_value(stat(1, {0: 2, 1: 3})) == 1


class TestRunTrace:
    def test_chained_type1(self):
        trace = run_trace([2, 2, 2], k=2)
        assert trace.bins == (0, 1, 2, 3)
        assert trace.kinds == (UpdateKind.TYPE_I,) * 3

    def test_noop_trace(self):
        trace = run_trace([3], k=2)
        assert trace.bins == (0, 0)
        assert trace.kinds == (UpdateKind.NOOP,)

    def test_truncates_at_terminal_statistic(self):
        trace = run_trace([2, 2, 2, 2], k=1)
        # the second even priority fills index 1 = k; the rest is dropped
        assert len(trace.priorities) == 2
        assert trace.truncated
        assert trace.stats[-1][1] is not None

    def test_against_naive_reimplementation(self):
        # second, independently written interpreter of the two rules,
        # working on dicts and direct set comprehensions
        def naive_insert(f, j, c):
            return {i: v for i, v in f.items() if i > j} | {j: c}

        def naive_update(f, c, k):
            g = dict(f)
            if c % 2 == 0:
                j = max(
                    j
                    for j in range(k + 1)
                    if all(i in g and g[i] % 2 == 0 for i in range(j))
                )
                g = naive_insert(g, j, c)
            smaller = [i for i, v in g.items() if v < c]
            if smaller:
                g = naive_insert(g, max(smaller), c)
            return g

        k = 2
        priorities = [2, 3, 2, 2]
        f = {}
        for c in priorities:
            f = naive_update(f, c, k)
        trace = run_trace(priorities, k)
        assert trace.stats[-1] == stat(k, f)
        assert trace.bins[-1] == sum(1 << i for i, v in f.items() if v % 2 == 0)


class TestFactorization:
    def test_two_even_steps(self):
        trace = run_trace([2, 2], k=2)
        fact = extract_even_factorization(trace)
        assert fact.dates == (0, 1)
        assert fact.is_valid()

    def test_empty_when_bin_zero(self):
        trace = run_trace([3], k=2)
        assert extract_even_factorization(trace).dates == ()

    def test_checker_rejects_odd_block(self):
        assert check_even_factorization([2, 3, 2], [0, 2]) is False

    def test_checker_accepts_even_block(self):
        assert check_even_factorization([4, 3, 2], [0, 2]) is True

    def test_checker_vacuous(self):
        assert check_even_factorization([3, 3], []) is True
        assert check_even_factorization([3, 3], [1]) is True

    def test_checker_malformed(self):
        with pytest.raises(ValueError):
            check_even_factorization([2, 2], [1, 1])
        with pytest.raises(ValueError):
            check_even_factorization([2, 2], [0, 5])


priority_sequences = st.lists(st.integers(min_value=1, max_value=8), max_size=60)


@given(priorities=priority_sequences, k=st.integers(min_value=1, max_value=5))
@settings(max_examples=300)
def test_update_chain_stays_increasing(priorities, k):
    f = empty(k)
    for c in priorities:
        f, _, _ = update(f, c, check=True)
        assert is_increasing(f)
        if f[k] is not None:
            break


@given(priorities=priority_sequences, k=st.integers(min_value=1, max_value=5))
@settings(max_examples=300)
def test_trace_laws_hold(priorities, k):
    assert trace_violations(run_trace(priorities, k)) == []


@given(priorities=priority_sequences, k=st.integers(min_value=1, max_value=5))
@settings(max_examples=300)
def test_factorization_length_and_validity(priorities, k):
    trace = run_trace(priorities, k)
    fact = extract_even_factorization(trace)
    assert fact.is_valid()
    assert len(fact) >= trace.bins[-1]


@given(priorities=priority_sequences, k=st.integers(min_value=1, max_value=5))
@settings(max_examples=200)
def test_bin_bounded(priorities, k):
    trace = run_trace(priorities, k)
    assert all(b < 1 << (k + 1) for b in trace.bins)

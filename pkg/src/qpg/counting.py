"""Exact counting of the statistics space and the growth-bound report.

Everything here is exact integer arithmetic; floats only appear in the
closed-form comparators of :func:`bound_report`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

from .stats import Stat

#: log2((sqrt(2)+1)/(sqrt(2)-1)), the exponent governing the growth of the
#: statistics space when the number of priorities tracks the index bound.
EXPONENT_CONSTANT = math.log2((math.sqrt(2) + 1) / (math.sqrt(2) - 1))


class EnumerationBudgetError(RuntimeError):
    """Exhaustive enumeration would exceed the configured cap."""


def count_increasing(x: int, y: int) -> int:
    """Number of increasing total functions {1..x} -> {1..y}: C(x+y-1, x)."""
    if x < 0 or y < 1:
        raise ValueError("need x >= 0 and y >= 1")
    return math.comb(x + y - 1, x)


def count_partial_increasing(x: int, y: int) -> int:
    """Number of increasing partial functions {0..x} -> {1..y}.

    Sums over domain sizes: C(x+1, i) domains of size i, each carrying
    C(i+y-1, i) increasing assignments.
    """
    if x < 0 or y < 1:
        raise ValueError("need x >= 0 and y >= 1")
    return sum(math.comb(x + 1, i) * math.comb(i + y - 1, i) for i in range(x + 2))


def iter_statistics(max_index: int, max_value: int) -> Iterator[Stat]:
    """Yield every increasing partial function {0..max_index} -> {1..max_value}.

    Generated by exhaustive recursion over slots, independent of the
    closed-form counts (this is the enumeration oracle).
    """
    prefix: list[Optional[int]] = []

    def rec(idx: int, low: int) -> Iterator[Stat]:
        if idx > max_index:
            yield tuple(prefix)
            return
        prefix.append(None)
        yield from rec(idx + 1, low)
        prefix.pop()
        for v in range(low, max_value + 1):
            prefix.append(v)
            yield from rec(idx + 1, v)
            prefix.pop()

    yield from rec(0, 1)


def enumerate_space(max_index: int, max_value: int, cap: int = 10**7) -> int:
    """Count the statistics space by exhaustive enumeration.

    Raises :class:`EnumerationBudgetError` once more than ``cap``
    statistics have been produced.
    """
    count = 0
    for _ in iter_statistics(max_index, max_value):
        count += 1
        if count > cap:
            raise EnumerationBudgetError(
                f"more than {cap} statistics for max_index={max_index}, "
                f"max_value={max_value}"
            )
    return count


def increasing_to_subset(values: Sequence[int]) -> Tuple[int, ...]:
    """Encode an increasing function (f(1), .., f(x)) as an x-subset of
    {1..x+y-1} via i-th element f(i)+i-1."""
    subset = tuple(v + i for i, v in enumerate(values))
    if len(set(subset)) != len(subset):
        raise ValueError("input values are not increasing")
    return subset

def subset_to_increasing(subset: Sequence[int]) -> Tuple[int, ...]:
    """Decode a sorted subset back into an increasing function."""
    ordered = sorted(subset)
    return tuple(j - i for i, j in enumerate(ordered))


@dataclass(frozen=True)
class BoundReport:
    """Exact per-term sizes g(i) of the statistics space and the turning
    point of their growth.

    ``g[i] = C(k,i) * C(i+M-1,i)``; ``i_star`` is the smallest i >= 1
    with g(i) <= g(i-1) (None if g keeps growing through k);
    ``i_star_lower_bound`` the closed-form comparator; ``total`` is
    |S_{k-1,M}| = sum g(i); ``ratio_identities_ok`` records the exact
    integer recurrence g(i)*i^2 = g(i-1)*(k-i+1)*(i-1+M) for 0 < i <= k
    (at i = k this is g(k)*k^2 = g(k-1)*(k-1+M)).
    """

    k: int
    M: int
    g: Tuple[int, ...]
    i_star: Optional[int]
    i_star_lower_bound: float
    total: int
    ratio_identities_ok: bool
    exponent_constant: float = EXPONENT_CONSTANT


def bound_report(k: int, M: int) -> BoundReport:
    if k < 1 or M < 1:
        raise ValueError("need k >= 1 and M >= 1")
    g = tuple(math.comb(k, i) * math.comb(i + M - 1, i) for i in range(k + 1))
    i_star = next((i for i in range(1, k + 1) if g[i] <= g[i - 1]), None)
    identities = all(
        g[i] * i * i == g[i - 1] * (k - i + 1) * (i - 1 + M) for i in range(1, k + 1)
    )
    lower = (k - (M - 1) + math.sqrt((M - k - 1) ** 2 + 8 * k * (M - 1))) / 4
    return BoundReport(
        k=k,
        M=M,
        g=g,
        i_star=i_star,
        i_star_lower_bound=lower,
        total=sum(g),
        ratio_identities_ok=identities,
    )

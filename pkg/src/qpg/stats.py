"""Play statistics: partial increasing maps from indices 0..k to priorities.

A statistic is represented as a tuple of k+1 slots, ``None`` marking an
undefined index.  Updating a statistic with a visited priority applies
two insertion rules in succession: the first chains even values along
the longest even-defined prefix, the second overwrites the highest
strictly smaller entry.  The counter value ``bin_value`` reads the
even-valued slots as bits; it increments by exactly one on every
first-rule (type I) update.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

Stat = Tuple[Optional[int], ...]


class UpdateKind(Enum):
    TYPE_I = "I"
    TYPE_II = "II"
    NOOP = "noop"


class TraceInvariantError(AssertionError):
    """An internal invariant of the update rules failed (a defect)."""


def empty(k: int) -> Stat:
    """The empty statistic with maximum index k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return (None,) * (k + 1)


def is_increasing(f: Stat) -> bool:
    values = [v for v in f if v is not None]
    return all(a <= b for a, b in zip(values, values[1:]))


def insert(f: Stat, index: int, c: int) -> Stat:
    """Insert priority c at ``index``: clears every slot below, keeps those above.

    The result may be non-increasing; that is legal only as an
    intermediate step inside :func:`update`.
    """
    if not 0 <= index < len(f):
        raise IndexError(f"index {index} out of range 0..{len(f) - 1}")
    return (None,) * index + (c,) + f[index + 1 :]


def rule1_index(f: Stat, c: int) -> Optional[int]:
    """Insertion index of the first rule: present iff c is even.

    Returns the highest index j such that every slot below j is defined
    and even (j = 0 qualifies vacuously), capped at the maximum index.
    """
    if c % 2:
        return None
    k = len(f) - 1
    j = 0
    while j < k and f[j] is not None and f[j] % 2 == 0:
        j += 1
    return j

def rule2_index(f: Stat, c: int) -> Optional[int]:
    """Highest defined index whose value is strictly below c, if any."""
    for j in range(len(f) - 1, -1, -1):
        v = f[j]
        if v is not None and v < c:
            return j
    return None


def update(f: Stat, c: int, check: bool = False) -> Tuple[Stat, UpdateKind, Optional[int]]:
    """Update statistic f with priority c.

    Applies the two insertion rules in succession and classifies the
    step: TYPE_II if the second rule inserted, TYPE_I if only the first
    did, NOOP otherwise.  With ``check=True`` the structural invariants
    (result increasing; a type II result equals applying the second rule
    directly to f) are asserted.
    """
    j1 = rule1_index(f, c)
    g = insert(f, j1, c) if j1 is not None else f
    j2 = rule2_index(g, c)
    if j2 is not None:
        result = insert(g, j2, c)
        if check:
            direct = rule2_index(f, c)
            if direct is None or insert(f, direct, c) != result:
                raise TraceInvariantError(
                    "type II result differs from applying the second rule directly"
                )
            if not is_increasing(result):
                raise TraceInvariantError("type II update produced a non-increasing statistic")
        return result, UpdateKind.TYPE_II, j2
    if j1 is not None:
        if check and not is_increasing(g):
            raise TraceInvariantError("type I update produced a non-increasing statistic")
        return g, UpdateKind.TYPE_I, j1
    return f, UpdateKind.NOOP, None


def bin_value(f: Stat) -> int:
    """Counter value: sum of 2^j over defined indices j with even value."""
    total = 0
    for j, v in enumerate(f):
        if v is not None and v % 2 == 0:
            total += 1 << j
    return total


def format_stat(f: Stat) -> str:
    return "[" + ",".join("-" if v is None else str(v) for v in f) + "]"


@dataclass(frozen=True)
class StatisticTrace:
    """A priority sequence with the induced statistic sequence.

    ``stats[t]`` is the statistic before reading ``priorities[t]``;
    ``stats[t+1]`` the one after.  ``kinds[t]`` / ``indices[t]`` record
    the per-step classification and inserted index (None for no-ops).
    """

    k: int
    priorities: Tuple[int, ...]
    stats: Tuple[Stat, ...]
    kinds: Tuple[UpdateKind, ...]
    indices: Tuple[Optional[int], ...]
    truncated: bool = False

    @property
    def bins(self) -> Tuple[int, ...]:
        return tuple(bin_value(f) for f in self.stats)

    def dump_lines(self) -> list[str]:
        """Render the trace in the one-line-per-step dump format."""
        lines = []
        for t, c in enumerate(self.priorities):
            kind = self.kinds[t].value
            idx = "-" if self.indices[t] is None else str(self.indices[t])
            f = self.stats[t + 1]
            lines.append(
                f"{t}: c={c} kind={kind} idx={idx} f={format_stat(f)} bin={bin_value(f)}"
            )
        return lines


def run_trace(priorities: Sequence[int], k: int, check: bool = False) -> StatisticTrace:
    """Run the update rules over a priority sequence, starting empty.

    A statistic whose domain contains k is terminal (in the statistics
    game it ends the play), so the trace stops there: any remaining
    priorities are dropped and ``truncated`` is set.  The per-step laws
    checked by :func:`trace_violations` hold only up to that point.
    """
    f = empty(k)
    stats = [f]
    kinds = []
    indices = []
    consumed = []
    truncated = False
    for pos, c in enumerate(priorities):
        if c < 1:
            raise ValueError(f"priority {c} must be >= 1")
        f, kind, idx = update(f, c, check=check)
        stats.append(f)
        kinds.append(kind)
        indices.append(idx)
        consumed.append(c)
        if f[k] is not None:
            truncated = pos + 1 < len(priorities)
            break
    return StatisticTrace(
        k=k,
        priorities=tuple(consumed),
        stats=tuple(stats),
        kinds=tuple(kinds),
        indices=tuple(indices),
        truncated=truncated,
    )


@dataclass(frozen=True)
class EvenFactorization:
    """A strictly increasing date sequence whose consecutive blocks of
    the reference priority sequence all have an even maximum."""

    dates: Tuple[int, ...]
    priorities: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.dates)

    def is_valid(self) -> bool:
        return check_even_factorization(self.priorities, self.dates)


def check_even_factorization(priorities: Sequence[int], dates: Sequence[int]) -> bool:
    """True iff every block between consecutive dates has an even maximum.

    Zero or one date is vacuously valid.  Malformed date sequences (not
    strictly increasing, or out of range) raise ValueError.
    """
    for a, b in zip(dates, dates[1:]):
        if a >= b:
            raise ValueError("dates must be strictly increasing")
    if dates and not (0 <= dates[0] and dates[-1] < len(priorities)):
        raise ValueError("dates out of range")
    for a, b in zip(dates, dates[1:]):
        if max(priorities[a:b]) % 2:
            return False
    return True


def extract_even_factorization(trace: StatisticTrace) -> EvenFactorization:
    """Extract an even factorization of length bin(f_N) from a trace.

    Constructed backward: with a sentinel one past the final date, the
    j-th date is the last type I step below the (j+1)-th whose counter
    value lands exactly on j.  Failure to find such a date would
    contradict the counter-value laws and is reported as a defect.
    """
    bins = trace.bins
    x = bins[-1]
    dates: list[int] = []
    upper = len(trace.priorities)  # sentinel date, excluded from the output
    for j in range(x, 0, -1):
        found = None
        for t in range(upper - 1, -1, -1):
            if trace.kinds[t] is UpdateKind.TYPE_I and bins[t + 1] == j:
                found = t
                break
        if found is None:
            raise TraceInvariantError(
                f"no type I date with counter value {j} below date {upper}"
            )
        dates.append(found)
        upper = found
    return EvenFactorization(dates=tuple(reversed(dates)), priorities=trace.priorities)


def trace_violations(trace: StatisticTrace) -> list[str]:
    """Machine-check the per-step laws of a trace; returns violations.

    Checked: every statistic is increasing; type I steps increment the
    counter value by exactly one; the first date reaching any counter
    value i does so exactly and by a type I step; the five testable
    clauses about type II steps (a matching earlier type I step at the
    same index exists, the two results agree off that index, the earlier
    value there is even and strictly smaller, the counter values compare
    as the parity dictates, and no higher index was inserted in
    between); no-ops happen exactly on odd priorities with no smaller
    entry present; and the extracted even factorization is valid with
    length at least the final counter value.
    """
    violations = []
    bins = trace.bins
    n_steps = len(trace.priorities)

    for t, f in enumerate(trace.stats):
        if not is_increasing(f):
            violations.append(f"statistic at date {t} is not increasing")

    # last type I insertion date per index, maintained while scanning
    last_type1: dict[int, int] = {}
    reached: set[int] = set()
    for t in range(n_steps):
        kind = trace.kinds[t]
        idx = trace.indices[t]
        c = trace.priorities[t]
        before, after = trace.stats[t], trace.stats[t + 1]

        if kind is UpdateKind.TYPE_I and bins[t + 1] != bins[t] + 1:
            violations.append(
                f"type I step at date {t} moved bin {bins[t]} -> {bins[t + 1]}"
            )

        if kind is UpdateKind.NOOP:
            if after != before:
                violations.append(f"no-op at date {t} changed the statistic")
            if c % 2 == 0 or rule2_index(before, c) is not None:
                violations.append(f"step at date {t} should not be a no-op")
        elif c % 2 == 1 and rule2_index(before, c) is None:
            violations.append(f"step at date {t} should be a no-op")

        if kind is UpdateKind.TYPE_II:
            assert idx is not None
            t1 = last_type1.get(idx)
            if t1 is None:
                violations.append(
                    f"type II at date {t} index {idx} has no earlier type I there"
                )
            else:
                then = trace.stats[t1 + 1]
                if any(
                    then[i] != after[i] for i in range(len(after)) if i != idx
                ):
                    violations.append(
                        f"type II at date {t}: statistics differ off index {idx}"
                    )
                tv, nv = then[idx], after[idx]
                if tv is None or tv % 2 == 1 or nv is None or not tv < nv:
                    violations.append(
                        f"type II at date {t}: earlier value {tv} not even and < {nv}"
                    )
                if c % 2 == 0:
                    if bins[t1 + 1] != bins[t + 1]:
                        violations.append(
                            f"type II (even) at date {t}: bins differ"
                        )
                elif not bins[t1 + 1] > bins[t + 1]:
                    violations.append(
                        f"type II (odd) at date {t}: earlier bin not larger"
                    )
                for between in range(t1 + 1, t):
                    b_idx = trace.indices[between]
                    if b_idx is not None and b_idx > idx:
                        violations.append(
                            f"type II at date {t}: insertion above {idx} at date {between}"
                        )

        # first date reaching counter value i: type I, landing exactly on i
        if bins[t + 1] > bins[t]:
            for i in range(bins[t] + 1, bins[t + 1] + 1):
                if i not in reached:
                    reached.add(i)
                    if kind is not UpdateKind.TYPE_I or bins[t + 1] != i:
                        violations.append(
                            f"counter value {i} first reached at date {t} "
                            f"by {kind.value} with bin {bins[t + 1]}"
                        )

        if kind is UpdateKind.TYPE_I:
            assert idx is not None
            last_type1[idx] = t

    try:
        fact = extract_even_factorization(trace)
        if not fact.is_valid():
            violations.append("extracted even factorization fails the checker")
        if len(fact) < bins[-1]:
            violations.append(
                f"factorization length {len(fact)} < final counter value {bins[-1]}"
            )
    except TraceInvariantError as exc:
        violations.append(f"factorization extraction failed: {exc}")

    return violations

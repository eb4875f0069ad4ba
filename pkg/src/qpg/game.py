"""Parity game data model, validation and random generation.

A parity game is a directed graph where every vertex carries a priority
(an integer >= 1) and an owner.  The even player wins an infinite play
iff the limsup of the visited priorities is even.  Every vertex must
have at least one outgoing edge, so plays never get stuck.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Optional, Tuple


class Player(Enum):
    """The two players: ANKE wins even-limsup plays, BORIS odd ones."""

    ANKE = 0
    BORIS = 1

    def opponent(self) -> "Player":
        return Player(1 - self.value)


@dataclass(frozen=True)
class ParityGame:
    """Immutable parity game.

    Vertices are 0..n-1.  ``priorities[v]`` is the priority of vertex v
    (always >= 1), ``owners[v]`` the player who moves from v, and
    ``edges`` the sorted tuple of (source, target) pairs.

    ``priority_shift`` records a uniform shift applied on ingest (e.g.
    when a PGSolver file uses priority 0) and ``original_vertices`` the
    number of original vertices when relay vertices were added by
    :func:`to_alternating`.  Both are metadata: they do not affect the
    winners.
    """

    priorities: Tuple[int, ...]
    owners: Tuple[Player, ...]
    edges: Tuple[Tuple[int, int], ...]
    names: Optional[Tuple[Optional[str], ...]] = None
    priority_shift: int = 0
    original_vertices: Optional[int] = None

    @property
    def n(self) -> int:
        return len(self.priorities)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def max_priority(self) -> int:
        return max(self.priorities)

    @cached_property
    def successors(self) -> Tuple[Tuple[int, ...], ...]:
        """Successor lists, ascending per vertex."""
        succ: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            succ[u].append(v)
        return tuple(tuple(sorted(s)) for s in succ)

    @cached_property
    def predecessors(self) -> Tuple[Tuple[int, ...], ...]:
        pred: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            pred[v].append(u)
        return tuple(tuple(sorted(p)) for p in pred)

    def strip_metadata(self) -> "ParityGame":
        """The same game without ingest/construction metadata."""
        return replace(self, priority_shift=0, original_vertices=None)


def validate(game: ParityGame) -> list[str]:
    """Return a list of invariant violations (empty iff the game is valid)."""
    violations = []
    n = game.n
    if n <= 0:
        violations.append("game has no vertices")
        return violations
    if len(game.owners) != n:
        violations.append("owners and priorities have different lengths")
    if game.names is not None and len(game.names) != n:
        violations.append("names and priorities have different lengths")
    out_degree = [0] * n
    for u, v in game.edges:
        if not (0 <= u < n and 0 <= v < n):
            violations.append(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            continue
        out_degree[u] += 1
    for v in range(n):
        if out_degree[v] == 0:
            violations.append(f"sink vertex {v}: no valid move available")
    for v, p in enumerate(game.priorities):
        if p < 1:
            violations.append(f"vertex {v} has priority {p} < 1")
    return violations


@dataclass(frozen=True)
class GeneratorParams:
    """Parameters for reproducible random game generation."""

    n: int
    max_priority: int
    out_degree_min: int = 1
    out_degree_max: int = 3
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.max_priority < 1:
            raise ValueError("max_priority must be positive")
        if not (1 <= self.out_degree_min <= self.out_degree_max <= self.n):
            raise ValueError("need 1 <= out_degree_min <= out_degree_max <= n")


def generate_random(params: GeneratorParams) -> ParityGame:
    """Generate a valid random game, fully determined by ``params.seed``.

    Each vertex gets an out-degree drawn uniformly from the configured
    range, distinct uniform successors, a uniform priority in
    1..max_priority and a uniform owner.
    """
    rng = random.Random(params.seed)
    n = params.n
    edges = []
    priorities = []
    owners = []
    for v in range(n):
        degree = rng.randint(params.out_degree_min, params.out_degree_max)
        for u in sorted(rng.sample(range(n), degree)):
            edges.append((v, u))
        priorities.append(rng.randint(1, params.max_priority))
        owners.append(Player(rng.randint(0, 1)))
    return ParityGame(
        priorities=tuple(priorities),
        owners=tuple(owners),
        edges=tuple(edges),
    )


def to_alternating(game: ParityGame) -> ParityGame:
    """Map an ownership game to a strictly alternating (bipartite) game.

    All priorities are shifted by +2 and a relay vertex with priority 1
    (strictly below every shifted priority, so the limsup of any play is
    unchanged) is inserted on every edge whose endpoints have the same
    owner.  The relay belongs to the opponent and has a single move, so
    it offers no choice.  Original vertices keep their ids; relays are
    appended.
    """
    n = game.n
    priorities = [p + 2 for p in game.priorities]
    owners = list(game.owners)
    names = list(game.names) if game.names is not None else None
    edges: list[Tuple[int, int]] = []
    for u, v in sorted(game.edges):
        if game.owners[u] is game.owners[v]:
            relay = len(priorities)
            priorities.append(1)
            owners.append(game.owners[u].opponent())
            if names is not None:
                names.append(None)
            edges.append((u, relay))
            edges.append((relay, v))
        else:
            edges.append((u, v))
    return ParityGame(
        priorities=tuple(priorities),
        owners=tuple(owners),
        edges=tuple(sorted(edges)),
        names=tuple(names) if names is not None else None,
        priority_shift=game.priority_shift + 2,
        original_vertices=n,
    )

"""Batch cross-checking: the statistics solver against the oracles.

Games are generated deterministically from a base seed; for each game
the statistics solver, Zielonka and (when in budget) exhaustive
enumeration are compared vertex by vertex.  Product-size bounds are
checked on every run, and the odd player's extracted strategy can be
simulated against random opposition to confirm that every resulting
lasso has an odd cycle maximum.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

from .game import GeneratorParams, ParityGame, Player, generate_random, validate
from .oracles import EnumerationCapError, enumerate_solve, zielonka_solve
from .pgsolver import serialize_pgsolver
from .solver import extract_strategy, random_positional, simulate, solve


def _winner_string(winners: Tuple[Player, ...]) -> str:
    return "".join("E" if w is Player.ANKE else "O" for w in winners)


@dataclass
class GameRecord:
    index: int
    seed: int
    n: int
    max_priority: int
    winners_qp: str
    winners_zielonka: str
    winners_enumerate: Optional[str]
    agree: bool
    bounds_ok: bool
    odd_strategy_ok: Optional[bool]
    product_nodes: int
    product_edges: int
    millis: float


@dataclass
class CrossCheckReport:
    games_attempted: int
    games_agreed: int
    bounds_violations: int
    odd_strategy_failures: int
    records: List[GameRecord]
    first_counterexample: Optional[Dict[str, object]] = None

    @property
    def all_agree(self) -> bool:
        return self.games_agreed == self.games_attempted

    def to_json(self, include_timings: bool = True) -> str:
        data = asdict(self)
        data["all_agree"] = self.all_agree
        if not include_timings:
            for record in data["records"]:
                record.pop("millis", None)
        return json.dumps(data, indent=2)


def check_odd_strategy(game: ParityGame, result, trials: int = 10, seed: int = 0) -> bool:
    """Simulate the odd player's extracted strategy on his winning vertices
    against ``trials`` random positional opponents.

    True iff every lasso has an odd cycle maximum and index k never
    enters a statistic's domain.
    """
    boris_vertices = [v for v, w in enumerate(result.winners) if w is Player.BORIS]
    if not boris_vertices:
        return True
    strategy = extract_strategy(result, Player.BORIS)

    def boris_choice(v, f):
        return strategy.choose(v, f)

    rng = random.Random(seed)
    for _ in range(trials):
        anke_map = random_positional(game, rng.getrandbits(64))

        def anke_choice(v, f, m=anke_map):
            return m[v]

        for start in boris_vertices:
            sim = simulate(game, result.k, start, anke_choice, boris_choice)
            if sim.cycle_max_priority % 2 == 0 or sim.max_statistic_index_seen:
                return False
    return True


def _game_params(game_seed: int, n_range, m_range, degree_range) -> GeneratorParams:
    rng = random.Random(game_seed)
    n = rng.randint(*n_range)
    max_priority = rng.randint(*m_range)
    d_min = min(degree_range[0], n)
    d_max = min(degree_range[1], n)
    return GeneratorParams(
        n=n,
        max_priority=max_priority,
        out_degree_min=d_min,
        out_degree_max=d_max,
        seed=rng.getrandbits(64),
    )


def minimize_counterexample(game: ParityGame) -> ParityGame:
    """Best-effort shrinking of a disagreement witness.

    Greedily removes vertices (dropping their edges) and then single
    edges, keeping the game valid and the solvers disagreeing.
    """

    def disagrees(g: ParityGame) -> bool:
        if validate(g):
            return False
        return solve(g).winners != zielonka_solve(g).winners

    changed = True
    while changed:
        changed = False
        for v in range(game.n):
            keep = [u for u in range(game.n) if u != v]
            remap = {u: i for i, u in enumerate(keep)}
            candidate = ParityGame(
                priorities=tuple(game.priorities[u] for u in keep),
                owners=tuple(game.owners[u] for u in keep),
                edges=tuple(
                    sorted(
                        (remap[a], remap[b])
                        for a, b in game.edges
                        if a != v and b != v
                    )
                ),
            )
            if candidate.n and disagrees(candidate):
                game = candidate
                changed = True
                break
        else:
            for edge in game.edges:
                candidate = ParityGame(
                    priorities=game.priorities,
                    owners=game.owners,
                    edges=tuple(e for e in game.edges if e != edge),
                )
                if disagrees(candidate):
                    game = candidate
                    changed = True
                    break
    return game


def cross_check(
    count: int,
    n_range: Tuple[int, int] = (1, 8),
    m_range: Tuple[int, int] = (1, 6),
    degree_range: Tuple[int, int] = (1, 3),
    seed: int = 0,
    enumerate_cap: int = 10**6,
    run_enumerate: bool = True,
    check_odd_strategies: bool = False,
    odd_strategy_trials: int = 10,
    keep_records: bool = True,
) -> CrossCheckReport:
    """Generate ``count`` games from ``seed`` and cross-check all solvers."""
    if n_range[0] < 1 or n_range[0] > n_range[1] or m_range[0] < 1 or m_range[0] > m_range[1]:
        raise ValueError("invalid n or priority range")
    base = random.Random(seed)
    game_seeds = [base.getrandbits(64) for _ in range(count)]
    records: List[GameRecord] = []
    agreed = 0
    bounds_violations = 0
    odd_failures = 0
    first_counterexample = None
    for i, game_seed in enumerate(game_seeds):
        params = _game_params(game_seed, n_range, m_range, degree_range)
        game = generate_random(params)
        start = time.perf_counter()
        qp = solve(game)
        zi = zielonka_solve(game)
        enum_winners: Optional[Tuple[Player, ...]] = None
        if run_enumerate:
            try:
                enum_winners = enumerate_solve(game, cap=enumerate_cap)
            except EnumerationCapError:
                enum_winners = None
        millis = (time.perf_counter() - start) * 1000.0
        agree = qp.winners == zi.winners and (
            enum_winners is None or enum_winners == qp.winners
        )
        bounds_ok = (
            qp.product.node_count <= qp.product.bound_nodes
            and qp.product.edge_count <= qp.product.bound_edges
        )
        odd_ok: Optional[bool] = None
        if check_odd_strategies:
            odd_ok = check_odd_strategy(
                game, qp, trials=odd_strategy_trials, seed=game_seed
            )
            if not odd_ok:
                odd_failures += 1
        if agree:
            agreed += 1
        elif first_counterexample is None:
            shrunk = minimize_counterexample(game)
            first_counterexample = {
                "seed": game_seed,
                "game": serialize_pgsolver(game),
                "minimized": serialize_pgsolver(shrunk),
            }
        if not bounds_ok:
            bounds_violations += 1
        if keep_records:
            records.append(
                GameRecord(
                    index=i,
                    seed=game_seed,
                    n=game.n,
                    max_priority=game.max_priority,
                    winners_qp=_winner_string(qp.winners),
                    winners_zielonka=_winner_string(zi.winners),
                    winners_enumerate=(
                        _winner_string(enum_winners) if enum_winners is not None else None
                    ),
                    agree=agree,
                    bounds_ok=bounds_ok,
                    odd_strategy_ok=odd_ok,
                    product_nodes=qp.product.node_count,
                    product_edges=qp.product.edge_count,
                    millis=millis,
                )
            )
    return CrossCheckReport(
        games_attempted=count,
        games_agreed=agreed,
        bounds_violations=bounds_violations,
        odd_strategy_failures=odd_failures,
        records=records,
        first_counterexample=first_counterexample,
    )

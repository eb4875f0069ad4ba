"""Independent oracles: Zielonka's recursive solver, exhaustive
positional-strategy enumeration, and a cycle-parity strategy verifier.

These share no code with the statistics-based solver and are used to
cross-check it (and each other, on tiny games).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .game import ParityGame, Player


@dataclass(frozen=True)
class PositionalStrategy:
    """A memoryless strategy: one successor choice per owned vertex."""

    owner: Player
    choice: Dict[int, int]


@dataclass
class ZielonkaResult:
    winners: Tuple[Player, ...]
    strategy_anke: PositionalStrategy
    strategy_boris: PositionalStrategy


class EnumerationCapError(RuntimeError):
    """Too many positional strategies to enumerate."""


def _attractor(
    region: Set[int],
    targets: Set[int],
    player: Player,
    game: ParityGame,
    strategy: Dict[int, int],
) -> Set[int]:
    """Attractor of ``targets`` for ``player`` within ``region``.

    Records, for player-owned vertices pulled in, the successor used.
    """
    attr = set(targets)
    queue = deque(targets)
    pending: Dict[int, int] = {}
    while queue:
        y = queue.popleft()
        for p in game.predecessors[y]:
            if p not in region or p in attr:
                continue
            if game.owners[p] is player:
                attr.add(p)
                strategy[p] = y
                queue.append(p)
            else:
                if p not in pending:
                    pending[p] = sum(1 for u in game.successors[p] if u in region)
                pending[p] -= 1
                if pending[p] == 0:
                    attr.add(p)
                    queue.append(p)
    return attr


def zielonka_solve(game: ParityGame) -> ZielonkaResult:
    """Recursive attractor decomposition with strategy extraction.

    Outside a player's winning region their returned strategy falls back
    to the least-id successor, so both choice maps are total.
    """
    strat: Dict[Player, Dict[int, int]] = {Player.ANKE: {}, Player.BORIS: {}}

    def rec(region: Set[int]) -> Tuple[Set[int], Set[int]]:
        if not region:
            return set(), set()
        p = max(game.priorities[v] for v in region)
        sigma = Player.ANKE if p % 2 == 0 else Player.BORIS
        targets = {v for v in region if game.priorities[v] == p}
        attr_strat: Dict[int, int] = {}
        area = _attractor(region, targets, sigma, game, attr_strat)
        sub = rec(region - area)
        w_sigma_sub, w_opp_sub = (sub[0], sub[1]) if sigma is Player.ANKE else (sub[1], sub[0])
        if not w_opp_sub:
            # sigma sweeps the whole region: subgame strategy + attractor
            # strategy + any in-region move from the top-priority vertices
            strat[sigma].update(attr_strat)
            for v in targets:
                if game.owners[v] is sigma:
                    strat[sigma][v] = min(u for u in game.successors[v] if u in region)
            return (set(region), set()) if sigma is Player.ANKE else (set(), set(region))
        opp = sigma.opponent()
        escape_strat: Dict[int, int] = {}
        trap = _attractor(region, w_opp_sub, opp, game, escape_strat)
        strat[opp].update(escape_strat)
        sub2 = rec(region - trap)
        w_sigma2, w_opp2 = (sub2[0], sub2[1]) if sigma is Player.ANKE else (sub2[1], sub2[0])
        w_opp = w_opp2 | trap
        return (w_sigma2, w_opp) if sigma is Player.ANKE else (w_opp, w_sigma2)

    w_anke, w_boris = rec(set(range(game.n)))
    winners = tuple(Player.ANKE if v in w_anke else Player.BORIS for v in range(game.n))
    for player in (Player.ANKE, Player.BORIS):
        for v in range(game.n):
            if game.owners[v] is player and v not in strat[player]:
                strat[player][v] = game.successors[v][0]
    return ZielonkaResult(
        winners=winners,
        strategy_anke=PositionalStrategy(Player.ANKE, strat[Player.ANKE]),
        strategy_boris=PositionalStrategy(Player.BORIS, strat[Player.BORIS]),
    )


def _cycle_max_per_vertex(next_vertex: List[int], priorities: Tuple[int, ...]) -> List[int]:
    """In the functional graph ``next_vertex``, the maximum priority on the
    cycle each vertex eventually loops on."""
    n = len(next_vertex)
    result = [0] * n
    color = [0] * n  # 0 unvisited, 1 on current path, 2 done
    for v in range(n):
        if color[v]:
            continue
        path = []
        u = v
        while color[u] == 0:
            color[u] = 1
            path.append(u)
            u = next_vertex[u]
        if color[u] == 1:
            cut = path.index(u)
            cmax = max(priorities[w] for w in path[cut:])
            for w in path[cut:]:
                result[w] = cmax
                color[w] = 2
            tail = path[:cut]
        else:
            cmax = result[u]
            tail = path
        for w in tail:
            result[w] = cmax
            color[w] = 2
    return result


def enumerate_solve(game: ParityGame, cap: int = 10**6) -> Tuple[Player, ...]:
    """Brute force over positional strategy pairs.

    A vertex is won by the even player iff some positional strategy of
    hers yields, against every positional strategy of the opponent, a
    lasso with even cycle maximum.  Grounded in positional determinacy.
    """
    anke_vs = [v for v in range(game.n) if game.owners[v] is Player.ANKE]
    boris_vs = [v for v in range(game.n) if game.owners[v] is Player.BORIS]
    prod_a = prod_b = 1
    for v in anke_vs:
        prod_a *= len(game.successors[v])
    for v in boris_vs:
        prod_b *= len(game.successors[v])
    if prod_a > cap or prod_b > cap:
        raise EnumerationCapError(
            f"strategy spaces {prod_a} x {prod_b} exceed the cap {cap}"
        )
    n = game.n
    priorities = game.priorities
    anke_win = [False] * n
    next_vertex = [0] * n
    for s_a in itertools.product(*(game.successors[v] for v in anke_vs)):
        for v, u in zip(anke_vs, s_a):
            next_vertex[v] = u
        good = [True] * n
        alive = n
        for s_b in itertools.product(*(game.successors[v] for v in boris_vs)):
            for v, u in zip(boris_vs, s_b):
                next_vertex[v] = u
            cyc = _cycle_max_per_vertex(next_vertex, priorities)
            for v in range(n):
                if good[v] and cyc[v] % 2:
                    good[v] = False
                    alive -= 1
            if alive == 0:
                break
        for v in range(n):
            if good[v]:
                anke_win[v] = True
    return tuple(Player.ANKE if w else Player.BORIS for w in anke_win)


def _strongly_connected_components(
    vertices: Iterable[int], succ: List[List[int]], member: List[bool]
) -> List[List[int]]:
    """Iterative Tarjan over the subgraph induced by ``member``."""
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    on_stack: Set[int] = set()
    stack: List[int] = []
    sccs: List[List[int]] = []
    counter = itertools.count()
    for root in vertices:
        if root in index:
            continue
        work: List[Tuple[int, int]] = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = next(counter)
                stack.append(v)
                on_stack.add(v)
            recurse = False
            children = succ[v]
            while i < len(children):
                w = children[i]
                i += 1
                if not member[w]:
                    continue
                if w not in index:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                scc = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    scc.append(w)
                    if w == v:
                        break
                sccs.append(scc)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return sccs


def verify_positional_strategy(
    game: ParityGame, strategy: PositionalStrategy
) -> List[bool]:
    """Per-vertex soundness of a positional strategy via cycle analysis.

    The game is restricted to the strategy's choices.  A vertex is sound
    for the even player's strategy iff no cycle with odd maximum is
    reachable from it in the restriction (checked per odd priority p:
    cycles through a p-vertex inside the subgraph of priorities <= p);
    dually for the odd player.
    """
    n = game.n
    for v in range(n):
        if game.owners[v] is strategy.owner:
            if v not in strategy.choice:
                raise ValueError(f"strategy not total: no choice at vertex {v}")
            if strategy.choice[v] not in game.successors[v]:
                raise ValueError(
                    f"strategy uses missing edge ({v},{strategy.choice[v]})"
                )
    succ_r: List[List[int]] = [
        [strategy.choice[v]] if game.owners[v] is strategy.owner else list(game.successors[v])
        for v in range(n)
    ]
    bad_parity = 1 if strategy.owner is Player.ANKE else 0
    bad_targets: Set[int] = set()
    for p in sorted({q for q in game.priorities if q % 2 == bad_parity}):
        member = [game.priorities[v] <= p for v in range(n)]
        vertices = [v for v in range(n) if member[v]]
        for scc in _strongly_connected_components(vertices, succ_r, member):
            cyclic = len(scc) > 1 or scc[0] in succ_r[scc[0]]
            if cyclic and any(game.priorities[v] == p for v in scc):
                bad_targets.update(v for v in scc if game.priorities[v] == p)
    # vertices that can reach a bad cycle in the restriction are unsound
    pred_r: List[List[int]] = [[] for _ in range(n)]
    for v in range(n):
        for u in succ_r[v]:
            pred_r[u].append(v)
    unsound = set(bad_targets)
    queue = deque(bad_targets)
    while queue:
        y = queue.popleft()
        for p in pred_r[y]:
            if p not in unsound:
                unsound.add(p)
                queue.append(p)
    return [v not in unsound for v in range(n)]

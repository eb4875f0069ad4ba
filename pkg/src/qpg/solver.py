"""The statistics-based solver: product-game exploration, backward
induction, winner mapping, strategy extraction and play simulation.

The parity game is reduced to a reachability game on (vertex, statistic)
pairs plus a single absorbing target.  Moving along a parity edge (v,u)
updates the statistic with the priority of u; an update that fills the
maximum index k routes to the target.  The even player wins a parity
vertex v iff she can force the target from (v, empty statistic).
"""

from __future__ import annotations

import os
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .counting import count_partial_increasing
from .game import ParityGame, Player
from .stats import Stat, UpdateKind, empty, update

DEFAULT_NODE_BUDGET = 10**7


def node_budget() -> int:
    """Product-node cap, overridable via the QPG_BUDGET environment variable."""
    raw = os.environ.get("QPG_BUDGET")
    return int(raw) if raw else DEFAULT_NODE_BUDGET


class BudgetExceededError(RuntimeError):
    def __init__(self, budget: int, bound_nodes: int):
        super().__init__(
            f"product exploration exceeded the node budget {budget} "
            f"(worst-case bound {bound_nodes} nodes)"
        )
        self.budget = budget
        self.bound_nodes = bound_nodes


def default_k(game: ParityGame, mode: str = "ownership") -> int:
    """Statistic index bound sufficient for correctness.

    In the strictly alternating model a repeated (vertex, player-to-move)
    pair is needed, requiring 2^k > 2n; with vertex ownership the player
    to move is a function of the vertex, so 2^k > n suffices.
    """
    n = game.n
    if mode == "alternating":
        k = 1
        while (1 << k) <= 2 * n:
            k += 1
        return k
    if mode == "ownership":
        k = 1
        while (1 << k) <= n:
            k += 1
        return k
    raise ValueError(f"unknown mode {mode!r}")


@dataclass
class ProductGame:
    """Explicit reachability game on explored (vertex, statistic) pairs.

    Node ids are discovery order; ``top`` is the id of the absorbing
    target.  ``succs[i]`` lists successor node ids, one entry per parity
    edge out of the node's vertex (parallel edges to ``top`` are kept so
    edge counts match the parity game).
    """

    game: ParityGame
    k: int
    nodes: List[Tuple[int, Stat]]
    node_index: Dict[Tuple[int, Stat], int]
    succs: List[List[int]]

    @property
    def top(self) -> int:
        return len(self.nodes)

    @property
    def node_count(self) -> int:
        return len(self.nodes) + 1

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.succs)

    @property
    def bound_nodes(self) -> int:
        return self.game.n * count_partial_increasing(self.k - 1, self.game.max_priority) + 1

    @property
    def bound_edges(self) -> int:
        return self.game.edge_count * count_partial_increasing(
            self.k - 1, self.game.max_priority
        )


def explore(game: ParityGame, k: int, budget: Optional[int] = None) -> ProductGame:
    """Forward closure of the product construction from all (v, empty) seeds.

    Breadth-first and deterministic: seeds in vertex order, successors in
    ascending vertex order, node ids in discovery order.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if budget is None:
        budget = node_budget()
    initial = empty(k)
    priorities = game.priorities
    successors = game.successors
    nodes: List[Tuple[int, Stat]] = []
    node_index: Dict[Tuple[int, Stat], int] = {}
    succs: List[List[int]] = []
    TOP = -1
    queue: deque[int] = deque()
    # updates only depend on (statistic, priority); memoize per game
    update_cache: Dict[Tuple[Stat, int], Tuple[Stat, bool]] = {}

    def intern(node: Tuple[int, Stat]) -> int:
        i = node_index.get(node)
        if i is None:
            i = len(nodes)
            if i >= budget:
                raise BudgetExceededError(
                    budget,
                    game.n * count_partial_increasing(k - 1, game.max_priority) + 1,
                )
            node_index[node] = i
            nodes.append(node)
            succs.append([])
            queue.append(i)
        return i

    for v in range(game.n):
        intern((v, initial))
    while queue:
        i = queue.popleft()
        v, f = nodes[i]
        out = succs[i]
        for u in successors[v]:
            key = (f, priorities[u])
            cached = update_cache.get(key)
            if cached is None:
                f2, _, _ = update(f, priorities[u])
                cached = (f2, f2[k] is not None)
                update_cache[key] = cached
            f2, to_top = cached
            out.append(TOP if to_top else intern((u, f2)))

    top = len(nodes)
    for out in succs:
        for j, t in enumerate(out):
            if t == TOP:
                out[j] = top
    return ProductGame(game=game, k=k, nodes=nodes, node_index=node_index, succs=succs)


def solve_reachability(pg: ProductGame) -> Tuple[List[bool], List[int]]:
    """Backward induction with successor counters.

    Returns (win, rank): ``win[i]`` is True iff the even player can force
    the target from node i (``win[top]`` is True), and ``rank[i]`` is the
    round at which i joined the attractor (0 for the target, -1 outside).
    Each edge is processed at most once.
    """
    game = pg.game
    total = pg.node_count
    top = pg.top
    preds: List[List[int]] = [[] for _ in range(total)]
    for i, out in enumerate(pg.succs):
        for t in out:
            preds[t].append(i)
    counter = [len(out) for out in pg.succs]
    win = [False] * total
    rank = [-1] * total
    win[top] = True
    rank[top] = 0
    owners = game.owners
    queue: deque[int] = deque([top])
    while queue:
        y = queue.popleft()
        ry = rank[y]
        for p in preds[y]:
            if win[p]:
                continue
            if owners[pg.nodes[p][0]] is Player.ANKE:
                win[p] = True
                rank[p] = ry + 1
                queue.append(p)
            else:
                counter[p] -= 1
                if counter[p] == 0:
                    win[p] = True
                    rank[p] = ry + 1
                    queue.append(p)
    return win, rank


def solve_reachability_naive(pg: ProductGame) -> List[bool]:
    """Fixed-point recomputation of the winning set (independent oracle)."""
    total = pg.node_count
    top = pg.top
    owners = pg.game.owners
    win = [False] * total
    win[top] = True
    changed = True
    while changed:
        changed = False
        for i, out in enumerate(pg.succs):
            if win[i]:
                continue
            if owners[pg.nodes[i][0]] is Player.ANKE:
                joined = any(win[t] for t in out)
            else:
                joined = all(win[t] for t in out)
            if joined:
                win[i] = True
                changed = True
    return win


@dataclass
class SolveResult:
    """Per-vertex winners plus the explored product and attractor data."""

    game: ParityGame
    k: int
    winners: Tuple[Player, ...]
    product: ProductGame
    win: List[bool]
    rank: List[int]

    @property
    def stats(self) -> Dict[str, int]:
        return {
            "k": self.k,
            "product_nodes": self.product.node_count,
            "product_edges": self.product.edge_count,
            "bound_nodes": self.product.bound_nodes,
            "bound_edges": self.product.bound_edges,
        }


def solve(
    game: ParityGame,
    k: Optional[int] = None,
    mode: str = "ownership",
    budget: Optional[int] = None,
) -> SolveResult:
    """Solve a parity game through the statistics reduction.

    The even player wins vertex v iff the product node (v, empty) lies in
    the attractor of the target.
    """
    if k is None:
        k = default_k(game, mode)
    product = explore(game, k, budget=budget)
    win, rank = solve_reachability(product)
    initial = empty(k)
    winners = tuple(
        Player.ANKE if win[product.node_index[(v, initial)]] else Player.BORIS
        for v in range(game.n)
    )
    return SolveResult(
        game=game, k=k, winners=winners, product=product, win=win, rank=rank
    )


@dataclass
class MemoryStrategy:
    """A strategy over product nodes: decisions keyed by (vertex, statistic).

    The even player's strategy resets the statistic component to empty
    whenever her move fills index k (the play continues in the parity
    game after the target would be hit).
    """

    owner: Player
    k: int
    decision: Dict[Tuple[int, Stat], int]
    undefined: List[Tuple[int, Stat]] = field(default_factory=list)

    def choose(self, vertex: int, stat: Stat) -> int:
        try:
            return self.decision[(vertex, stat)]
        except KeyError:
            raise KeyError(
                f"strategy for {self.owner.name} undefined at ({vertex}, {stat})"
            ) from None


def extract_strategy(result: SolveResult, player: Player) -> MemoryStrategy:
    """Extract the winning strategy of ``player`` from the solved product.

    The odd player's strategy is defined on his nodes outside the
    attractor and picks the least successor vertex staying outside.

    The even player's strategy works inside the subgame induced by her
    winning vertices (a trap for the opponent, so play never leaves it):
    the subgame product is re-solved and at each of her nodes the least
    successor vertex of strictly smaller attractor rank is chosen, so the
    target is reached in finitely many moves; a target-filling move
    resets the statistic and lands on a vertex she wins again.  Nodes
    where the player does not win are reported in ``undefined``.
    """
    game = result.game
    k = result.k
    priorities = game.priorities
    decision: Dict[Tuple[int, Stat], int] = {}
    undefined: List[Tuple[int, Stat]] = []
    if player is Player.BORIS:
        product = result.product
        win = result.win
        for i, (v, f) in enumerate(product.nodes):
            if game.owners[v] is not player:
                continue
            if win[i]:
                undefined.append((v, f))
                continue
            for u in game.successors[v]:
                f2, _, _ = update(f, priorities[u])
                if f2[k] is not None:
                    continue
                if not win[product.node_index[(u, f2)]]:
                    decision[(v, f)] = u
                    break
            else:  # cannot happen: a losing odd node keeps an escape
                undefined.append((v, f))
        return MemoryStrategy(owner=player, k=k, decision=decision, undefined=undefined)

    region = [v for v, w in enumerate(result.winners) if w is Player.ANKE]
    for i, (v, f) in enumerate(result.product.nodes):
        if game.owners[v] is player and result.winners[v] is Player.BORIS:
            undefined.append((v, f))
    if not region:
        return MemoryStrategy(owner=player, k=k, decision=decision, undefined=undefined)
    to_sub = {v: i for i, v in enumerate(region)}
    subgame = ParityGame(
        priorities=tuple(priorities[v] for v in region),
        owners=tuple(game.owners[v] for v in region),
        edges=tuple(
            sorted(
                (to_sub[a], to_sub[b])
                for a, b in game.edges
                if a in to_sub and b in to_sub
            )
        ),
    )
    sub = solve(subgame, k=k)
    rank = sub.rank
    for i, (sv, f) in enumerate(sub.product.nodes):
        v = region[sv]
        if game.owners[v] is not player:
            continue
        for su in subgame.successors[sv]:
            f2, _, _ = update(f, subgame.priorities[su])
            if f2[k] is not None:
                target_rank = 0
            else:
                target_rank = rank[sub.product.node_index[(su, f2)]]
            if 0 <= target_rank < rank[i]:
                decision[(v, f)] = region[su]
                break
        else:  # cannot happen: every subgame node lies in the attractor
            undefined.append((v, f))
    return MemoryStrategy(owner=player, k=k, decision=decision, undefined=undefined)


def random_positional(game: ParityGame, seed: int) -> Dict[int, int]:
    """A positional choice for every vertex, drawn deterministically."""
    rng = random.Random(seed)
    return {v: rng.choice(game.successors[v]) for v in range(game.n)}


@dataclass
class SimulationResult:
    """A lasso over (vertex, statistic) states."""

    prefix: List[Tuple[int, Stat]]
    cycle: List[Tuple[int, Stat]]
    top_hits: int
    cycle_top_hits: int
    cycle_max_priority: int
    max_statistic_index_seen: bool  # True iff index k ever entered a domain


def simulate(
    game: ParityGame,
    k: int,
    start: int,
    choose_anke: Callable[[int, Stat], int],
    choose_boris: Callable[[int, Stat], int],
    cap: Optional[int] = None,
) -> SimulationResult:
    """Play both strategies against each other until a state repeats.

    The statistic tracks the priorities of the vertices moved to; an
    update filling index k counts as a target hit and resets the
    statistic to empty.  With ``cap`` at least the product size a repeat
    is guaranteed.
    """
    if cap is None:
        cap = game.n * count_partial_increasing(k - 1, game.max_priority) + 2
    priorities = game.priorities
    owners = game.owners
    state = (start, empty(k))
    seen: Dict[Tuple[int, Stat], int] = {}
    seq: List[Tuple[int, Stat]] = []
    hits: List[int] = []  # step numbers at which the target was hit
    filled = False
    while len(seq) <= cap:
        if state in seen:
            split = seen[state]
            cycle = seq[split:]
            return SimulationResult(
                prefix=seq[:split],
                cycle=cycle,
                top_hits=len(hits),
                cycle_top_hits=sum(1 for h in hits if h >= split),
                cycle_max_priority=max(priorities[v] for v, _ in cycle),
                max_statistic_index_seen=filled,
            )
        seen[state] = len(seq)
        seq.append(state)
        v, f = state
        chooser = choose_anke if owners[v] is Player.ANKE else choose_boris
        u = chooser(v, f)
        f2, _, _ = update(f, priorities[u])
        if f2[k] is not None:
            filled = True
            hits.append(len(seq) - 1)
            f2 = empty(k)
        state = (u, f2)
    raise RuntimeError(f"no repeated state within cap {cap}: state space mis-sized")

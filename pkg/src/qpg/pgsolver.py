"""PGSolver text format: parsing and deterministic serialization.

Format: an optional header ``parity <maxId>;`` followed by one line per
vertex::

    <id> <priority> <owner> <succ>(,<succ>)* ("name")? ;

with owner 0 = even player (Anke) and 1 = odd player (Boris).  Lines
starting with ``%`` are comments.  Priority 0 is accepted on input and
handled by shifting every priority by +2 (parity- and order-preserving);
the shift is recorded in the game's ``priority_shift`` metadata.
"""

from __future__ import annotations

import re

from .game import ParityGame, Player

_HEADER_RE = re.compile(r"^parity\s+(\d+)\s*;?\s*$")
_LINE_RE = re.compile(
    r"^(\d+)\s+(\d+)\s+(\d+)\s+([0-9,\s]*[0-9])\s*(?:\"([^\"]*)\")?\s*;?\s*$"
)


class PgSolverError(ValueError):
    """Raised on malformed PGSolver input; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_pgsolver(text: str) -> ParityGame:
    """Parse a PGSolver-format game description."""
    records: dict[int, tuple[int, int, list[int], str | None, int]] = {}
    header_seen = False
    first_entry = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if first_entry:
            first_entry = False
            m = _HEADER_RE.match(line)
            if m is not None:
                header_seen = True
                continue
        m = _LINE_RE.match(line)
        if m is None:
            raise PgSolverError(f"cannot parse vertex line {line!r}", lineno)
        ident = int(m.group(1))
        priority = int(m.group(2))
        owner = int(m.group(3))
        if owner not in (0, 1):
            raise PgSolverError(f"owner {owner} out of range (must be 0 or 1)", lineno)
        succs = [int(s) for s in m.group(4).replace(",", " ").split()]
        if not succs:
            raise PgSolverError("vertex has no successors", lineno)
        if ident in records:
            raise PgSolverError(f"duplicate vertex id {ident}", lineno)
        records[ident] = (priority, owner, succs, m.group(5), lineno)
    if not records:
        raise PgSolverError("no vertex lines found", 1)

    del header_seen  # header is informational only; ids define the game
    ids = sorted(records)
    index = {ident: i for i, ident in enumerate(ids)}
    priorities = []
    owners = []
    edges = []
    names: list[str | None] = []
    for ident in ids:
        priority, owner, succs, name, lineno = records[ident]
        for s in succs:
            if s not in index:
                raise PgSolverError(f"dangling successor id {s}", lineno)
            edges.append((index[ident], index[s]))
        priorities.append(priority)
        owners.append(Player(owner))
        names.append(name)

    shift = 2 if min(priorities) == 0 else 0
    return ParityGame(
        priorities=tuple(p + shift for p in priorities),
        owners=tuple(owners),
        edges=tuple(sorted(edges)),
        names=tuple(names) if any(n is not None for n in names) else None,
        priority_shift=shift,
    )


def serialize_pgsolver(game: ParityGame) -> str:
    """Serialize a game deterministically (ascending ids and successors)."""
    lines = [f"parity {game.n - 1};"]
    for v in range(game.n):
        succs = ",".join(str(u) for u in game.successors[v])
        name = ""
        if game.names is not None and game.names[v] is not None:
            name = f' "{game.names[v]}"'
        lines.append(
            f"{v} {game.priorities[v]} {game.owners[v].value} {succs}{name};"
        )
    return "\n".join(lines) + "\n"

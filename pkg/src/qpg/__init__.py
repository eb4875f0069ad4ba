"""Parity game solving through play statistics, with independent oracles."""

from .counting import (
    BoundReport,
    EXPONENT_CONSTANT,
    bound_report,
    count_increasing,
    count_partial_increasing,
    enumerate_space,
    iter_statistics,
)
from .crosscheck import CrossCheckReport, cross_check
from .game import (
    GeneratorParams,
    ParityGame,
    Player,
    generate_random,
    to_alternating,
    validate,
)
from .oracles import (
    PositionalStrategy,
    enumerate_solve,
    verify_positional_strategy,
    zielonka_solve,
)
from .pgsolver import PgSolverError, parse_pgsolver, serialize_pgsolver
from .solver import (
    MemoryStrategy,
    ProductGame,
    SolveResult,
    default_k,
    explore,
    extract_strategy,
    simulate,
    solve,
    solve_reachability,
)
from .stats import (
    EvenFactorization,
    StatisticTrace,
    UpdateKind,
    bin_value,
    check_even_factorization,
    empty,
    extract_even_factorization,
    insert,
    rule1_index,
    rule2_index,
    run_trace,
    trace_violations,
    update,
)

__all__ = [name for name in dir() if not name.startswith("_")]

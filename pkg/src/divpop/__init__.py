"""divpop: popularity solver and verification toolkit for roommate diversity games."""

from .errors import (
    BudgetExceeded,
    CapExceeded,
    DivpopError,
    DomainError,
    SchemaError,
    SolverError,
    ValidationError,
)
from .model import (
    Agent,
    AgentClass,
    Game,
    Outcome,
    PreferenceOrder,
    agent_classes,
    canonicalize,
    compare,
    count_outcomes,
    enumerate_outcomes,
    enumerate_signatures,
    numerators,
    orbit_key,
    orbit_size,
    signature,
    theta,
    validate_game,
    validate_outcome,
)
from .popularity import (
    MarginReport,
    PopularityVerdict,
    best_challenger,
    find_popular,
    is_popular,
    is_strictly_popular,
    popularity_margin,
)
from .roomsize2 import S2Class, classify_s2, happy_count, pair_weight, solve_s2
from .mixed import GameMatrix, MixedOutcome, build_game_matrix, mixed_margin, solve_mixed, verify_mixed
from .x3c import X3CInstance, is_exact_cover, x3c_solve
from .reductions import (
    ReductionBundle,
    all_approve_outcomes,
    build_mixed_reduction,
    build_popularity_reduction,
    build_reduction,
    build_strict_reduction,
    counterexample_game,
    monolithic_outcome,
    reduced_outcome,
    reduced_rotation_challenger,
    rotation_challenger,
    top_type_outcomes,
)

__version__ = "0.1.0"

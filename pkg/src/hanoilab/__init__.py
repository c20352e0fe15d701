"""Multi-peg Tower of Hanoi workbench.

Three layers: a peg-level move/sequence model with a disk-relative
serialization (`core`), counting and explicit solution generation for
the split-recursion strategy (`frame_stewart`), and exhaustive search
over the packed state graph for exact optima and complete enumeration
of optimal sequences (`search`). On top of those, `analysis` and `ledger`
mechanically check structural claims about optimal tear-down phases and
evaluate the associated lower-bound formulas.
"""

from .cache import CACHE_ENV_VAR, CacheRecord, OptimaCache, load_cache, load_or_new, save_cache
from .core import (
    FLOOR,
    Move,
    MoveSequence,
    ParsedTriples,
    PhaseSplit,
    State,
    TripleMove,
    ValidationReport,
    apply,
    cost_profile,
    decode_triples,
    encode_triples,
    final_state,
    first_freed_index,
    format_triple_text,
    initial_state,
    is_full_transfer,
    is_legal,
    mirror,
    parse_triple_text,
    replay,
    split_phases,
    top_disk,
    transfer_target,
    validate_sequence,
)
from .errors import (
    BudgetExceededError,
    CorruptCacheError,
    HanoiError,
    IllegalMoveError,
    LedgerTooShallowError,
    NotAViolationError,
    SequenceParseError,
    SymmetryUnavailableError,
    UnrealizableError,
)
from .frame_stewart import (
    SplitChoice,
    f4_exponent,
    frame_stewart_count,
    generate_solution,
    generate_symmetric_solution,
    optimal_split,
    stewart_count,
)
from .ledger import (
    CostLedger,
    EqualityRow,
    LedgerDiscrepancy,
    analytic_ledger,
    bound_formula_1,
    bound_formula_2,
    compare_ledgers,
    empirical_ledger,
    equality_report,
)
from .analysis import (
    AvoidanceReport,
    BottomCostCheck,
    EndStateClass,
    OtherArrangement,
    ThreeStacks,
    TwoStacks,
    ViolationWitness,
    bottom_cost_table,
    case1_bound,
    check_avoidance,
    check_bottom_costs,
    classify_end_state,
    build_violating_phase,
    shorten_violating,
    violating_phase_family,
)
from .search import (
    Budget,
    DistanceTable,
    Enumeration,
    SearchResult,
    bits_per_disk,
    canonicalize,
    code_space,
    distance_table,
    enumerate_minimal_demolishing,
    enumerate_minimal_solutions,
    exact_min_moves,
    pack_state,
    unpack_state,
    uniform_code,
)

__version__ = "0.1.0"

"""Maximum-weight b-matching on complete bipartite graphs.

Instances put a capacity on every vertex; a solution is an edge multiset
with every degree in [1, capacity].  The solver expands each vertex into
capacity-many copies, runs a two-phase Hungarian search (cover the left
originals, then the right), and collapses the expanded matching back to
owner pairs.  An exhaustive oracle, text/JSON serialization, and fuzzing /
scaling harnesses round out the package.
"""

from ._version import __version__
from .core import (
    BadRange,
    BMatchInstance,
    BMatching,
    BMatchingError,
    ExpandedGraph,
    InconsistentMatching,
    InvalidInstance,
    SolverConfig,
    ValidationReport,
    VerifyReport,
    collapse,
    expand,
    generate_instance,
    validate_instance,
    verify_b_matching,
)
from .hungarian import (
    BrokenTree,
    ExhaustedFrontier,
    Labeling,
    MatchingState,
    SearchState,
    initial_labeling,
    solve_assignment,
)
from .bmatch import (
    Frontier,
    ObservationReport,
    SolveReport,
    build_frontier,
    check_observations,
    modified_hungarian,
    solve_b_matching,
)
from .oracle import (
    InfeasibleInstance,
    OracleLimits,
    TooLarge,
    brute_force_assignment,
    brute_force_b_matching,
)
from .io import (
    ParseError,
    parse_instance,
    parse_result,
    render_instance,
    render_result,
)

__all__ = [
    "__version__",
    "BadRange",
    "BMatchInstance",
    "BMatching",
    "BMatchingError",
    "BrokenTree",
    "ExhaustedFrontier",
    "ExpandedGraph",
    "Frontier",
    "InconsistentMatching",
    "InfeasibleInstance",
    "InvalidInstance",
    "Labeling",
    "MatchingState",
    "ObservationReport",
    "OracleLimits",
    "ParseError",
    "SearchState",
    "SolveReport",
    "SolverConfig",
    "TooLarge",
    "ValidationReport",
    "VerifyReport",
    "brute_force_assignment",
    "brute_force_b_matching",
    "build_frontier",
    "check_observations",
    "collapse",
    "expand",
    "generate_instance",
    "initial_labeling",
    "modified_hungarian",
    "parse_instance",
    "parse_result",
    "render_instance",
    "render_result",
    "solve_assignment",
    "solve_b_matching",
    "validate_instance",
    "verify_b_matching",
]

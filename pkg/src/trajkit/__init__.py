"""trajkit: exact algebra of finite trajectory sets.

Behaviours (finite trajectory sets over named variables), their relational
algebra, interconnection through network behaviours, reconstruction from local
projections, distributed controller synthesis with existence diagnostics,
exhaustive verification oracles, and exact-rational Hankel tests for
trajectory data.
"""

from .algebra import (
    difference,
    intersect,
    is_free,
    is_observable,
    is_subset,
    product,
    product_all,
    project,
    union,
)
from .core import (
    DEFAULT_ENUMERATION_CAP,
    Behaviour,
    SignalSpace,
    SignalVariable,
    empty_behaviour,
    equality_behaviour,
    full_space,
    iter_full_rows,
    make_behaviour,
    restrict,
    signal_space,
)
from .errors import (
    DimensionMismatch,
    EnumerationCapExceeded,
    HorizonError,
    HorizonMismatch,
    InternalInconsistency,
    LengthError,
    NotSynthesizable,
    OverlapError,
    ParseError,
    SchemaMismatch,
    SchemaViolation,
    SearchSpaceTooLarge,
    TrajkitError,
    UnknownBlock,
    UnknownVariable,
    ValidationError,
    VariableClash,
)
from .hankel import (
    RationalMatrix,
    RealTrajectory,
    determinant,
    free_rows_check,
    hankel,
    in_span,
    parse_trajectory,
    rank,
)
from .interconnect import (
    InterconnectedSystem,
    compose,
    filtered_join,
    local_projection,
    reconstruct_from_projections,
    reconstruct_hybrid,
)
from .problemdoc import (
    ProblemDocument,
    parse_controllers,
    parse_problem,
    parse_problem_dict,
    parse_problem_text,
    serialize_problem,
)
from .synthesis import (
    AuxiliarySets,
    ExistenceReport,
    SynthesisProblem,
    SynthesisResult,
    auxiliary_sets,
    check_existence,
    controlled_behaviour,
    controller_behaviours,
    desired_behaviour,
    lift_spec,
    multiplicity_set,
    observability_carrier,
    pad_controllers,
    synthesize,
)
from .verify import (
    GeneratorConfig,
    OracleCaps,
    OracleSolution,
    RequirementsReport,
    SuiteReport,
    check_requirements,
    exhaustive_necessity_oracle,
    implement,
    random_behaviour,
    random_interconnection,
    random_synthesis_problem,
    random_tiny_problem,
    run_property_suite,
)

__version__ = "0.1.0"

"""pcmkit: pairwise comparison matrices, priorities, inconsistency, completion."""

from .core import (
    DEFAULT_CONSISTENCY_TOL,
    Disconnected,
    IncompletePcm,
    IncompleteUpperTriangle,
    NonPositiveEntry,
    OrderTooSmall,
    ParseError,
    Pcm,
    PcmError,
    Triad,
    UnknownName,
    builtin_matrix,
    format_matrix_text,
    from_array,
    inconsistent_triad_ratio,
    is_consistent,
    make_pcm,
    parse_matrix_text,
    phi,
    triads,
)
from .priority import (
    EigenResult,
    NoConvergence,
    PriorityVector,
    eigen_priority,
    geometric_mean_priority,
    lambda_max,
    ratio_matrix,
)
from .indices import (
    INDEX_FUNCTIONS,
    AxiomCheckReport,
    IndexReport,
    OrderOutOfTable,
    RandomIndexTable,
    ScanGrid,
    SvdFailure,
    check_axioms,
    ci,
    cr,
    gci,
    im_index,
    k_index,
    re_index,
)
from .completion import (
    CompletionOptions,
    CompletionResult,
    TooManyMissing,
    complete,
    grid_oracle,
)
from .ensemble import (
    GeneratorSpec,
    ScatterRow,
    asymptotic_study,
    counterexample_suite,
    generate,
    quasiconvexity_scan,
    scatter_study,
)

__version__ = "0.1.0"

"""Exact solvers for three data-transfer optimization problems.

Connected K-center / K-median server placement on path networks, best and
worst packet-sequence decoding cost under laminar swap pairs, and minimum
makespan packet scheduling over disjoint paths.  Every solver is exact
over the integers and ships with an independent brute-force oracle.
"""

from .model import (
    INT64_MAX,
    BadK,
    BadMode,
    BadN,
    BadQ,
    BadTypeValue,
    CrossingPairs,
    DocumentError,
    DtsoError,
    EmptySequence,
    MagnitudeOverflow,
    MalformedDocument,
    NegativePathTime,
    NegativeWeight,
    OutOfRange,
    PathNode,
    PlacementInstance,
    PositionReused,
    SchedulingInstance,
    SchemaViolation,
    SequencingInstance,
    SolveReport,
    SwapPair,
    TransferPath,
    UnsortedCoordinates,
    ValidationError,
    instance_to_doc,
    parse_instance,
    parse_placement,
    parse_report,
    parse_scheduling,
    parse_sequencing,
    serialize_instance,
    serialize_report,
    validate_pairs,
    validate_placement,
    validate_scheduling,
    validate_sequencing,
)
from .placement import (
    CursorMisuse,
    Envelope,
    EnvelopeCursor,
    EnvelopeSegment,
    PlacementResult,
    build_envelopes,
    envelope_csv,
    envelope_eval,
    solve_k_center,
    solve_k_median,
)
from .sequencing import (
    Decomposition,
    DecompositionViolation,
    EndpointCostTable,
    SequencingResult,
    combine_concat,
    combine_spanning,
    decompose,
    decomposition_trace,
    single_table,
    solve_sequencing,
)
from .scheduling import (
    FeasibilityProbe,
    RestrictedQ,
    ScheduleResult,
    binary_search_makespan,
    feasible,
    greedy_schedule,
    np_count,
)
from .oracle import (
    InstanceTooLarge,
    TooManyPairs,
    VerificationOutcome,
    brute_placement,
    brute_schedule,
    brute_sequencing,
    compare,
)

__version__ = "0.1.0"

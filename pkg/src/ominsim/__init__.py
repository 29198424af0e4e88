"""Deterministic simulator and analysis toolkit for optical multistage
interconnection networks: shuffle-exchange routing, crosstalk and link
conflict detection, time-division pass scheduling under a crosstalk budget,
and analytic plus Monte Carlo bandwidth estimates.
"""
from .analysis import (
    BandwidthCurve,
    DropPolicy,
    ModeStats,
    SimReport,
    TrafficModel,
    analytic_bandwidth,
    mode_label,
    monte_carlo,
    passability,
    resolve_single_pass,
)
from .conflict import ConflictEdge, ConflictGraph, ConflictKind, build_conflict_graph, conflict_stages, edges_csv
from .errors import (
    CoverageError,
    DuplicateDestinationError,
    DuplicateSourceError,
    IndexOutOfRangeError,
    NotPowerOfTwoError,
    OutOfRangeError,
    ParseError,
    SameSourceError,
    SimulatorError,
    TooLargeError,
    UnknownTopologyError,
    UnsupportedTopologyError,
    ZeroTrialsError,
)
from .routing import (
    Hop,
    Message,
    Path,
    PermutationMap,
    format_permutation,
    full_permutation,
    make_permutation,
    parse_permutation,
    stage_switches,
    switch_at_stage,
    trace_path,
)
from .scheduler import (
    Algorithm,
    OrderPolicy,
    Schedule,
    ScheduleConfig,
    ValidationReport,
    Violation,
    schedule_exact,
    schedule_greedy,
    schedule_json,
    validate_schedule,
)
from .streams import Stream, splitmix64, substream
from .topology import NetworkSpec, Topology, build_network, interconnect, parse_topology

__all__ = [
    "Algorithm",
    "BandwidthCurve",
    "ConflictEdge",
    "ConflictGraph",
    "ConflictKind",
    "CoverageError",
    "DropPolicy",
    "DuplicateDestinationError",
    "DuplicateSourceError",
    "Hop",
    "IndexOutOfRangeError",
    "Message",
    "ModeStats",
    "NetworkSpec",
    "NotPowerOfTwoError",
    "OrderPolicy",
    "OutOfRangeError",
    "ParseError",
    "Path",
    "PermutationMap",
    "SameSourceError",
    "Schedule",
    "ScheduleConfig",
    "SimReport",
    "SimulatorError",
    "Stream",
    "TooLargeError",
    "Topology",
    "TrafficModel",
    "UnknownTopologyError",
    "UnsupportedTopologyError",
    "ValidationReport",
    "Violation",
    "ZeroTrialsError",
    "analytic_bandwidth",
    "build_conflict_graph",
    "build_network",
    "conflict_stages",
    "edges_csv",
    "format_permutation",
    "full_permutation",
    "interconnect",
    "make_permutation",
    "mode_label",
    "monte_carlo",
    "parse_permutation",
    "parse_topology",
    "passability",
    "resolve_single_pass",
    "schedule_exact",
    "schedule_greedy",
    "schedule_json",
    "splitmix64",
    "stage_switches",
    "substream",
    "switch_at_stage",
    "trace_path",
    "validate_schedule",
]

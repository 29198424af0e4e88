"""Pairwise conflict detection and the conflict graph scheduling colors.

Two messages conflict at a stage when their paths occupy the same switching
element there.  Sharing only the switch degrades both signals (crosstalk);
also sharing the output port means both need the same inter-stage line,
which no amount of tolerated crosstalk can fix.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

from .errors import SameSourceError
from .routing import Message, PermutationMap, routing_bit, stage_switches
from .topology import NetworkSpec


class ConflictKind(Enum):
    SWITCH_CROSSTALK = "crosstalk"
    LINK_CONFLICT = "link"


@dataclass(frozen=True)
class ConflictEdge:
    a: int
    b: int
    stages: tuple[int, ...]
    kinds: tuple[ConflictKind, ...]

    @property
    def has_link_conflict(self) -> bool:
        return ConflictKind.LINK_CONFLICT in self.kinds


@dataclass
class ConflictGraph:
    vertex_count: int
    edges: list[ConflictEdge]
    _by_pair: dict[tuple[int, int], ConflictEdge] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._by_pair:
            self._by_pair = {(e.a, e.b): e for e in self.edges}

    def edge(self, a: int, b: int) -> ConflictEdge | None:
        return self._by_pair.get((min(a, b), max(a, b)))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in (e.a, e.b))

    def max_degree(self) -> int:
        if not self.edges:
            return 0
        degree = [0] * self.vertex_count
        for e in self.edges:
            degree[e.a] += 1
            degree[e.b] += 1
        return max(degree)


def _compare_rows(
    net: NetworkSpec,
    row_a: tuple[int, ...],
    row_b: tuple[int, ...],
    dest_a: int,
    dest_b: int,
) -> list[tuple[int, ConflictKind]]:
    found: list[tuple[int, ConflictKind]] = []
    for stage in range(1, net.stages + 1):
        if row_a[stage - 1] != row_b[stage - 1]:
            continue
        if routing_bit(net, dest_a, stage) == routing_bit(net, dest_b, stage):
            found.append((stage, ConflictKind.LINK_CONFLICT))
            break
        found.append((stage, ConflictKind.SWITCH_CROSSTALK))
    return found


def conflict_stages(net: NetworkSpec, a: Message, b: Message) -> list[tuple[int, ConflictKind]]:
    """Stages where the two paths share a switch, with the conflict kind.

    A link conflict merges the two paths onto one line, so comparison stops
    there: whatever the traces do afterwards is an artifact of a collision
    that already ended one of the messages.
    """
    if a.source == b.source:
        raise SameSourceError(f"both messages start at source {a.source}")
    return _compare_rows(
        net, stage_switches(net, a), stage_switches(net, b), a.destination, b.destination
    )


def build_conflict_graph(net: NetworkSpec, perm: PermutationMap) -> ConflictGraph:
    """Edges over all message-index pairs, in lexicographic pair order."""
    rows = [stage_switches(net, msg) for msg in perm.pairs]
    edges = []
    for i, j in combinations(range(len(perm.pairs)), 2):
        shared = _compare_rows(
            net, rows[i], rows[j], perm.pairs[i].destination, perm.pairs[j].destination
        )
        if shared:
            edges.append(
                ConflictEdge(
                    a=i,
                    b=j,
                    stages=tuple(stage for stage, _ in shared),
                    kinds=tuple(kind for _, kind in shared),
                )
            )
    return ConflictGraph(vertex_count=len(perm.pairs), edges=edges)


def edges_csv(graph: ConflictGraph) -> str:
    """Edge list as CSV: indexA,indexB,stages,kinds with ';'-joined fields."""
    lines = ["indexA,indexB,stages,kinds"]
    for e in graph.edges:
        stages = ";".join(str(s) for s in e.stages)
        kinds = ";".join(k.value for k in e.kinds)
        lines.append(f"{e.a},{e.b},{stages},{kinds}")
    return "\n".join(lines) + "\n"

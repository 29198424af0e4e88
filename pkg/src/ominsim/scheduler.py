"""Time-division scheduling: partition messages into passes under a
crosstalk budget.

The budget k caps, per message and per pass, the number of stages at which
its switch is shared with any other member of the pass.  k = 0 demands
switch-disjoint passes (semi-permutations); budget None ("unlimited") only
rules out link conflicts, which are forbidden at every budget because two
signals cannot occupy one line.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .conflict import ConflictGraph, build_conflict_graph
from .errors import CoverageError, IndexOutOfRangeError, TooLargeError
from .routing import PermutationMap, trace_path
from .topology import NetworkSpec


class Algorithm(Enum):
    GREEDY_ORDER = "greedy"
    WELSH_POWELL = "welsh-powell"
    EXACT = "exact"


class OrderPolicy(Enum):
    SOURCE_ASCENDING = "source-ascending"
    DEGREE_DESCENDING = "degree-descending"


@dataclass(frozen=True)
class ScheduleConfig:
    budget: int | None = 0  # None means unlimited crosstalk
    algorithm: Algorithm = Algorithm.GREEDY_ORDER
    order_policy: OrderPolicy = OrderPolicy.SOURCE_ASCENDING
    exact_cap: int = 20


@dataclass
class Schedule:
    passes: list[list[int]]
    config: ScheduleConfig
    shared_counts: list[dict[int, int]]  # per pass: message -> shared-stage count

    @property
    def pass_count(self) -> int:
        return len(self.passes)


@dataclass(frozen=True)
class Violation:
    kind: str  # "link" or "budget"
    pass_index: int
    messages: tuple[int, ...]
    stages: tuple[int, ...]


@dataclass
class ValidationReport:
    violations: list[Violation]
    semi_permutation_passes: list[bool]

    @property
    def ok(self) -> bool:
        return not self.violations


def _pair_table(graph: ConflictGraph) -> dict[tuple[int, int], tuple[tuple[int, ...], bool]]:
    return {
        (e.a, e.b): (e.stages, e.has_link_conflict)
        for e in graph.edges
    }


def _message_order(perm: PermutationMap, graph: ConflictGraph, config: ScheduleConfig) -> list[int]:
    indices = list(range(len(perm.pairs)))
    by_source = sorted(indices, key=lambda i: perm.pairs[i].source)
    degree_desc = config.algorithm is Algorithm.WELSH_POWELL or (
        config.order_policy is OrderPolicy.DEGREE_DESCENDING
    )
    if not degree_desc:
        return by_source
    degree = [0] * len(indices)
    for e in graph.edges:
        degree[e.a] += 1
        degree[e.b] += 1
    return sorted(by_source, key=lambda i: -degree[i])


def _admission(
    candidate: int,
    members: list[int],
    stage_sets: dict[int, set[int]],
    pairs: dict[tuple[int, int], tuple[tuple[int, ...], bool]],
    budget: int | None,
) -> dict[int, tuple[int, ...]] | None:
    """Stages the candidate would share with each member, or None if adding it
    breaks the pass.  Re-checks every member: one more message can push an
    existing one over budget."""
    added: dict[int, tuple[int, ...]] = {}
    for m in members:
        info = pairs.get((min(candidate, m), max(candidate, m)))
        if info is None:
            continue
        stages, link = info
        if link:
            return None
        added[m] = stages
    if budget is not None:
        mine: set[int] = set()
        for stages in added.values():
            mine.update(stages)
        if len(mine) > budget:
            return None
        for m, stages in added.items():
            if len(stage_sets[m] | set(stages)) > budget:
                return None
    return added


def schedule_greedy(net: NetworkSpec, perm: PermutationMap, config: ScheduleConfig) -> Schedule:
    """First-fit pass assignment in the configured message order.

    Welsh-Powell is the same first-fit rule over a degree-descending order
    (ties broken by ascending source).  A singleton pass is always feasible,
    so this never fails.
    """
    if config.algorithm not in (Algorithm.GREEDY_ORDER, Algorithm.WELSH_POWELL):
        raise ValueError(f"greedy scheduler got algorithm {config.algorithm}")
    graph = build_conflict_graph(net, perm)
    pairs = _pair_table(graph)
    passes: list[list[int]] = []
    stage_sets: list[dict[int, set[int]]] = []
    for m in _message_order(perm, graph, config):
        for p, members in enumerate(passes):
            added = _admission(m, members, stage_sets[p], pairs, config.budget)
            if added is None:
                continue
            members.append(m)
            stage_sets[p][m] = set()
            for other, stages in added.items():
                stage_sets[p][other].update(stages)
                stage_sets[p][m].update(stages)
            break
        else:
            passes.append([m])
            stage_sets.append({m: set()})
    return Schedule(
        passes=[sorted(p) for p in passes],
        config=config,
        shared_counts=[{m: len(s[m]) for m in sorted(s)} for s in stage_sets],
    )


def schedule_exact(net: NetworkSpec, perm: PermutationMap, config: ScheduleConfig) -> Schedule:
    """Minimal pass count by iterative deepening over the pass budget.

    For each candidate count m the search assigns messages in index order,
    trying pass 0, 1, ... and opening at most one new pass per step; the
    first complete assignment found this way is the lexicographically
    smallest feasible assignment vector, which makes the output byte-stable.
    """
    count = len(perm.pairs)
    if count > config.exact_cap:
        raise TooLargeError(f"{count} messages exceed the exact-solver cap of {config.exact_cap}")
    graph = build_conflict_graph(net, perm)
    pairs = _pair_table(graph)
    budget = config.budget

    members: list[list[int]] = []
    stage_sets: list[dict[int, set[int]]] = []

    def assign(i: int, limit: int) -> bool:
        if i == count:
            return True
        opened = len(members)
        for c in range(min(opened + 1, limit)):
            if c == opened:
                members.append([i])
                stage_sets.append({i: set()})
                if assign(i + 1, limit):
                    return True
                members.pop()
                stage_sets.pop()
                continue
            added = _admission(i, members[c], stage_sets[c], pairs, budget)
            if added is None:
                continue
            members[c].append(i)
            stage_sets[c][i] = set()
            undo = {}
            for other, stages in added.items():
                undo[other] = stage_sets[c][other] & set(stages)
                stage_sets[c][other].update(stages)
                stage_sets[c][i].update(stages)
            if assign(i + 1, limit):
                return True
            members[c].pop()
            del stage_sets[c][i]
            for other, stages in added.items():
                stage_sets[c][other].difference_update(set(stages) - undo[other])
        return False

    for limit in range(1, count + 1):
        members.clear()
        stage_sets.clear()
        if assign(0, limit):
            return Schedule(
                passes=[sorted(p) for p in members],
                config=config,
                shared_counts=[{m: len(s[m]) for m in sorted(s)} for s in stage_sets],
            )
    raise AssertionError("unreachable: singleton passes are always feasible")


def validate_schedule(
    net: NetworkSpec,
    perm: PermutationMap,
    schedule: Schedule,
    config: ScheduleConfig | None = None,
) -> ValidationReport:
    """Recompute every conflict from traced paths and check the schedule.

    Deliberately avoids the window formula so it cross-checks the same
    machinery the schedulers used.  Coverage errors (an index missing,
    duplicated, or out of range) raise; semantic problems are returned as
    violations.
    """
    config = config or schedule.config
    count = len(perm.pairs)
    seen: set[int] = set()
    for members in schedule.passes:
        for m in members:
            if not 0 <= m < count:
                raise IndexOutOfRangeError(f"message index {m} outside [0, {count})")
            if m in seen:
                raise CoverageError(f"message index {m} scheduled twice")
            seen.add(m)
    if len(seen) != count:
        missing = sorted(set(range(count)) - seen)
        raise CoverageError(f"messages {missing} missing from the schedule")

    paths = [trace_path(net, msg) for msg in perm.pairs]
    violations: list[Violation] = []
    semi: list[bool] = []
    for pi, members in enumerate(schedule.passes):
        shared: dict[int, set[int]] = {m: set() for m in members}
        switch_shared = False
        for a, b in combinations(sorted(members), 2):
            for stage in range(1, net.stages + 1):
                ha, hb = paths[a].hops[stage - 1], paths[b].hops[stage - 1]
                if ha.switch != hb.switch:
                    continue
                switch_shared = True
                shared[a].add(stage)
                shared[b].add(stage)
                if ha.out_port == hb.out_port:
                    violations.append(Violation("link", pi, (a, b), (stage,)))
                    break  # merged onto one line; later stages not comparable
        if config.budget is not None:
            for m in sorted(members):
                if len(shared[m]) > config.budget:
                    violations.append(Violation("budget", pi, (m,), tuple(sorted(shared[m]))))
        semi.append(not switch_shared)
    return ValidationReport(violations=violations, semi_permutation_passes=semi)


def schedule_json(net: NetworkSpec, perm: PermutationMap, schedule: Schedule) -> str:
    """Stable JSON form; passes list member sources in ascending index order."""
    doc = {
        "size": net.size,
        "topology": net.topology.value,
        "budget": "unlimited" if schedule.config.budget is None else schedule.config.budget,
        "algorithm": schedule.config.algorithm.value,
        "passes": [[perm.pairs[m].source for m in p] for p in schedule.passes],
        "violations": [],
    }
    return json.dumps(doc, indent=2) + "\n"

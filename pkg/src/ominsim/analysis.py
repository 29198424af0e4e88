"""Bandwidth analysis: the analytic stage recurrence and seeded Monte Carlo
simulation with coupled crosstalk modes.

A "mode" names how much switch sharing a single pass tolerates:

* ``None``  (allow)     only line collisions drop messages;
* ``k``     (budget=k)  a surviving message may share its switch at up to k
  stages within the pass;
* ``0``     (free)      no sharing at all, i.e. a crosstalk-free pass.

Modes are resolved per trial as a chain of drop phases, each starting from
the previous (more permissive) survivor set, so survivor sets are nested by
construction and with/without-crosstalk comparisons are variance-free.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import DuplicateSourceError, OutOfRangeError, ZeroTrialsError
from .routing import Message, PermutationMap
from .streams import Stream, substream
from .topology import NetworkSpec, Topology, interconnect


class DropPolicy(Enum):
    LOWEST_SOURCE_WINS = "lowest-source"
    RANDOM_UNIFORM = "random-uniform"


Mode = int | None  # None = allow (link conflicts only), k >= 0 = crosstalk budget


def mode_label(mode: Mode) -> str:
    if mode is None:
        return "allow"
    if mode == 0:
        return "free"
    return f"budget={mode}"


@dataclass(frozen=True)
class TrafficModel:
    """Offered traffic: per-cycle request probability and destination choice.

    With ``permutation`` unset each active input draws an independent uniform
    destination; otherwise requests follow the fixed map, restricted to the
    sources that woke up this cycle.
    """

    load: float = 1.0
    permutation: PermutationMap | None = None

    def __post_init__(self):
        if not 0.0 <= self.load <= 1.0:
            raise OutOfRangeError(f"load must lie in [0, 1], got {self.load}")


@dataclass(frozen=True)
class BandwidthCurve:
    size: int
    load: float
    stage_probabilities: tuple[float, ...]

    @property
    def final_probability(self) -> float:
        return self.stage_probabilities[-1]

    @property
    def bandwidth(self) -> float:
        return self.final_probability * self.size


@dataclass(frozen=True)
class ModeStats:
    mode: Mode
    mean_matured: float
    stderr: float
    passability: float

    @property
    def label(self) -> str:
        return mode_label(self.mode)


@dataclass(frozen=True)
class SimReport:
    size: int
    topology: str
    load: float
    trials: int
    seed: int
    policy: str
    modes: tuple[ModeStats, ...]
    pass_histogram: dict[int, int] | None = None


def analytic_bandwidth(stages: int, load: float) -> BandwidthCurve:
    """Iterate the 2x2-element output activity recurrence.

    With both inputs of a switch active independently with probability p,
    each output is requested by neither with probability (1 - p/2)^2, so

        p_next = 1 - (1 - p/2)^2

    applied once per stage from p_0 = load.  Bandwidth is the final activity
    times the network size.
    """
    if stages < 1:
        raise OutOfRangeError(f"stage count must be >= 1, got {stages}")
    if not 0.0 <= load <= 1.0:
        raise OutOfRangeError(f"load must lie in [0, 1], got {load}")
    probs = []
    p = load
    for _ in range(stages):
        p = 1.0 - (1.0 - p / 2.0) ** 2
        probs.append(p)
    return BandwidthCurve(size=1 << stages, load=load, stage_probabilities=tuple(probs))


def _path_tables(net: NetworkSpec, requests: Sequence[Message]) -> tuple[list[list[int]], list[list[int]]]:
    """Per-request, per-stage switch and outgoing-line tables (plain ints)."""
    n = net.stages
    switches: list[list[int]] = []
    outlines: list[list[int]] = []
    if net.topology is Topology.OMEGA:
        half = (1 << (n - 1)) - 1
        for msg in requests:
            if not (0 <= msg.source < net.size and 0 <= msg.destination < net.size):
                raise OutOfRangeError(f"endpoints of {msg.source}->{msg.destination} outside [0, {net.size})")
            window = ((msg.source & half) << (n - 1)) | (msg.destination >> 1)
            row = [(window >> (n - k)) & half for k in range(1, n + 1)]
            switches.append(row)
            outlines.append(
                [(row[k - 1] << 1) | ((msg.destination >> (n - k)) & 1) for k in range(1, n + 1)]
            )
    else:
        for msg in requests:
            if not (0 <= msg.source < net.size and 0 <= msg.destination < net.size):
                raise OutOfRangeError(f"endpoints of {msg.source}->{msg.destination} outside [0, {net.size})")
            row = []
            out = []
            line = msg.source
            for stage in range(1, n + 1):
                line = interconnect(net, stage, line)
                switch = line >> 1
                bit = (msg.destination >> (n - stage)) & 1
                row.append(switch)
                out.append((switch << 1) | bit)
                line = out[-1]
            switches.append(row)
            outlines.append(out)
    return switches, outlines


def _keep_index(group_size: int, policy: DropPolicy, stream: Stream | None) -> int:
    if policy is DropPolicy.LOWEST_SOURCE_WINS:
        return 0
    if stream is None:
        raise ValueError("RANDOM_UNIFORM policy needs a stream")
    return stream.below(group_size)


def _allow_sweep(
    requests: Sequence[Message],
    outlines: list[list[int]],
    stages: int,
    policy: DropPolicy,
    stream: Stream | None,
) -> set[int]:
    """Drop all but one of every group contesting an output line, stage by stage."""
    alive = set(range(len(requests)))
    for stage in range(stages):
        groups: dict[int, list[int]] = {}
        for m in sorted(alive):
            groups.setdefault(outlines[m][stage], []).append(m)
        for line in sorted(groups):
            group = sorted(groups[line], key=lambda m: requests[m].source)
            if len(group) < 2:
                continue
            winner = group[_keep_index(len(group), policy, stream)]
            for m in group:
                if m != winner:
                    alive.discard(m)
    return alive


def _budget_sweep(
    requests: Sequence[Message],
    switches: list[list[int]],
    stages: int,
    start: set[int],
    budget: int,
    policy: DropPolicy,
    stream: Stream | None,
) -> set[int]:
    """Stage-by-stage enforcement of a shared-stage budget.

    At each contested switch the share is tolerated while every occupant
    stays within budget; otherwise the occupant with the largest excess is
    dropped (ties broken by policy) and its earlier shares dissolve.
    """
    alive = set(start)
    shared: dict[int, set[int]] = {m: set() for m in alive}
    partners: dict[int, dict[int, list[int]]] = {m: {} for m in alive}

    def drop(victim: int) -> None:
        alive.discard(victim)
        for stage_j, plist in partners[victim].items():
            for x in plist:
                if x in alive:
                    partners[x][stage_j].remove(victim)
                    if not partners[x][stage_j]:
                        del partners[x][stage_j]
                        shared[x].discard(stage_j)

    for stage in range(stages):
        groups: dict[int, list[int]] = {}
        for m in sorted(alive):
            groups.setdefault(switches[m][stage], []).append(m)
        for switch in sorted(groups):
            group = sorted(groups[switch], key=lambda m: requests[m].source)
            while True:
                group = [m for m in group if m in alive]
                if len(group) < 2:
                    break
                counts = {m: len(shared[m]) + 1 for m in group}
                worst = max(counts.values())
                if worst <= budget:
                    for m in group:
                        shared[m].add(stage)
                        partners[m][stage] = [x for x in group if x != m]
                    break
                candidates = [m for m in group if counts[m] == worst]
                if len(candidates) == 1:
                    drop(candidates[0])
                else:
                    keep = candidates[_keep_index(len(candidates), policy, stream)]
                    losers = [m for m in candidates if m != keep]
                    drop(losers[0] if policy is DropPolicy.RANDOM_UNIFORM else losers[-1])
    return alive


def resolve_single_pass(
    net: NetworkSpec,
    requests: Sequence[Message],
    policy: DropPolicy = DropPolicy.LOWEST_SOURCE_WINS,
    stream: Stream | None = None,
    budgets: Sequence[int] = (),
) -> dict[Mode, set[int]]:
    """Resolve one simultaneous batch and report nested survivor sets.

    The allow phase keeps one message per contested line (dropped requests
    cannot reroute, so they vanish).  Each requested budget then prunes the
    previous phase's survivors, largest budget first, which guarantees
    survivors(k) is a subset of survivors(k') whenever k < k'.  Keys of the
    result: None for the allow phase plus every entry of ``budgets``.
    """
    seen = set()
    for msg in requests:
        if msg.source in seen:
            raise DuplicateSourceError(f"source {msg.source} requested twice")
        seen.add(msg.source)
    switches, outlines = _path_tables(net, requests)
    alive = _allow_sweep(requests, outlines, net.stages, policy, stream)
    result: dict[Mode, set[int]] = {None: set(alive)}
    for budget in sorted(set(budgets), reverse=True):
        if budget < 0:
            raise OutOfRangeError(f"budget must be >= 0, got {budget}")
        alive = _budget_sweep(requests, switches, net.stages, alive, budget, policy, stream)
        result[budget] = set(alive)
    return result


def passability(
    net: NetworkSpec,
    perm: PermutationMap,
    mode: Mode = None,
    policy: DropPolicy = DropPolicy.LOWEST_SOURCE_WINS,
    stream: Stream | None = None,
) -> float:
    """Fraction of the map's requests that mature in a single pass."""
    if not perm.pairs:
        return 0.0
    budgets = [] if mode is None else [mode]
    survivors = resolve_single_pass(net, perm.pairs, policy, stream, budgets)[mode]
    return len(survivors) / len(perm.pairs)


def _sample_requests(net: NetworkSpec, traffic: TrafficModel, stream: Stream) -> list[Message]:
    """Draw one cycle of requests.

    Draw order (fixed for reproducibility): one Bernoulli per input line in
    ascending order, then one destination per active input in ascending
    order when destinations are uniform.
    """
    active = [stream.bernoulli(traffic.load) for _ in range(net.size)]
    if traffic.permutation is not None:
        return [msg for msg in traffic.permutation.pairs if active[msg.source]]
    return [Message(s, stream.below(net.size)) for s in range(net.size) if active[s]]


def monte_carlo(
    net: NetworkSpec,
    traffic: TrafficModel,
    modes: Sequence[Mode],
    trials: int,
    seed: int,
    policy: DropPolicy = DropPolicy.LOWEST_SOURCE_WINS,
) -> SimReport:
    """Seeded simulation of single-pass delivery under the given modes.

    Trial t draws everything from substream(seed, t), so results do not
    depend on execution order and rerunning with the same arguments is
    byte-identical.
    """
    if trials < 1:
        raise ZeroTrialsError(f"need at least one trial, got {trials}")
    wanted: list[Mode] = []
    for m in modes:
        if m not in wanted:
            wanted.append(m)
    budgets = [m for m in wanted if m is not None]
    matured: dict[Mode, list[int]] = {m: [] for m in wanted}
    offered = 0
    for trial in range(trials):
        stream = substream(seed, trial)
        requests = _sample_requests(net, traffic, stream)
        offered += len(requests)
        survivors = resolve_single_pass(net, requests, policy, stream, budgets)
        for m in wanted:
            matured[m].append(len(survivors[m]))
    stats = []
    for m in wanted:
        arr = np.asarray(matured[m], dtype=float)
        stderr = float(np.std(arr, ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
        stats.append(
            ModeStats(
                mode=m,
                mean_matured=float(arr.mean()),
                stderr=stderr,
                passability=(arr.sum() / offered) if offered else 0.0,
            )
        )
    return SimReport(
        size=net.size,
        topology=net.topology.value,
        load=traffic.load,
        trials=trials,
        seed=seed,
        policy=policy.value,
        modes=tuple(stats),
    )

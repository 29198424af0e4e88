"""Command-line front end: routing tables, conflict edge lists, schedules,
and bandwidth experiments with byte-stable CSV/JSON output.

Exit status: 0 on success, 2 on bad input (flags, files, ranges), 1 when an
internal invariant fails.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .analysis import (
    DropPolicy,
    Mode,
    TrafficModel,
    mode_label,
    monte_carlo,
    resolve_single_pass,
)
from .analysis import analytic_bandwidth
from .conflict import build_conflict_graph, edges_csv
from .errors import NotPowerOfTwoError, ParseError, SimulatorError
from .routing import Message, make_permutation, parse_permutation, trace_path
from .scheduler import (
    Algorithm,
    OrderPolicy,
    ScheduleConfig,
    schedule_exact,
    schedule_greedy,
    schedule_json,
    validate_schedule,
)
from .streams import Stream, substream
from .topology import build_network, parse_topology


def _fmt(x: float) -> str:
    """Floats rendered with up to six significant decimals, locale-free."""
    return f"{x:.6g}"


def _jnum(x: float) -> float:
    return float(_fmt(x))


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _parse_budget(token: str) -> int | None:
    if token.lower() == "unlimited":
        return None
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"budget must be an integer or 'unlimited', got {token!r}") from None
    if value < 0:
        raise ParseError(f"budget must be >= 0, got {value}")
    return value


def _parse_mode(token: str) -> Mode:
    token = token.strip().lower()
    if token == "allow":
        return None
    if token == "free":
        return 0
    if token.startswith("budget="):
        try:
            value = int(token[len("budget="):])
        except ValueError:
            raise ParseError(f"bad crosstalk mode {token!r}") from None
        if value < 0:
            raise ParseError(f"crosstalk budget must be >= 0, got {value}")
        return value
    raise ParseError(f"bad crosstalk mode {token!r}: expected allow, free, or budget=K")


def generate_random_permutation(size: int, stream: Stream):
    """Uniform random full permutation via a stream-driven Fisher-Yates shuffle."""
    if size < 4 or size & (size - 1):
        raise NotPowerOfTwoError(f"permutation size must be a power of two >= 4, got {size}")
    dest = list(range(size))
    for i in range(size - 1, 0, -1):
        j = stream.below(i + 1)
        dest[i], dest[j] = dest[j], dest[i]
    return make_permutation((Message(s, d) for s, d in enumerate(dest)), size)


def _cmd_route(args) -> int:
    net = build_network(args.size, parse_topology(args.topology))
    perm = parse_permutation(_read_text(args.perm), net)
    lines = ["source,destination,stage,switch,in_port,out_port"]
    for msg in perm.pairs:
        for hop in trace_path(net, msg).hops:
            lines.append(
                f"{msg.source},{msg.destination},{hop.stage},{hop.switch},{hop.in_port},{hop.out_port}"
            )
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_conflicts(args) -> int:
    net = build_network(args.size, parse_topology(args.topology))
    perm = parse_permutation(_read_text(args.perm), net)
    _emit(edges_csv(build_conflict_graph(net, perm)), args.output)
    return 0


def _cmd_schedule(args) -> int:
    net = build_network(args.size, parse_topology(args.topology))
    perm = parse_permutation(_read_text(args.perm), net)
    config = ScheduleConfig(
        budget=_parse_budget(args.budget),
        algorithm=Algorithm(args.algorithm),
        order_policy=OrderPolicy(args.order),
    )
    if config.algorithm is Algorithm.EXACT:
        schedule = schedule_exact(net, perm, config)
    else:
        schedule = schedule_greedy(net, perm, config)
    report = validate_schedule(net, perm, schedule, config)
    if not report.ok:
        print(f"internal error: emitted schedule has {len(report.violations)} violations", file=sys.stderr)
        return 1
    _emit(schedule_json(net, perm, schedule), args.output)
    print(f"passes: {schedule.pass_count}")
    return 0


def _bandwidth_rows(args) -> list[dict]:
    sizes = [int(tok) for tok in args.sizes.split(",") if tok]
    rows: list[dict] = []
    for size in sizes:
        net = build_network(size, parse_topology(args.topology))
        if args.mode == "analytic":
            curve = analytic_bandwidth(net.stages, args.load)
            rows.append(
                {
                    "size": size,
                    "topology": net.topology.value,
                    "load": args.load,
                    "mode": "analytic",
                    "trials": 0,
                    "seed": args.seed,
                    "mean_bw": _jnum(curve.bandwidth),
                    "stderr": 0,
                    "passability": _jnum(curve.final_probability / args.load) if args.load else 0.0,
                }
            )
            continue
        modes = [_parse_mode(tok) for tok in args.crosstalk.split(",") if tok]
        report = monte_carlo(net, TrafficModel(load=args.load), modes, args.trials, args.seed)
        for stat in report.modes:
            rows.append(
                {
                    "size": size,
                    "topology": net.topology.value,
                    "load": args.load,
                    "mode": stat.label,
                    "trials": args.trials,
                    "seed": args.seed,
                    "mean_bw": _jnum(stat.mean_matured),
                    "stderr": _jnum(stat.stderr),
                    "passability": _jnum(stat.passability),
                }
            )
    return rows


def _cmd_bandwidth(args) -> int:
    rows = _bandwidth_rows(args)
    if args.format == "json":
        _emit(json.dumps(rows, indent=2) + "\n", args.output)
    else:
        lines = ["size,mode,bw,stderr"]
        lines += [f"{r['size']},{r['mode']},{_fmt(r['mean_bw'])},{_fmt(r['stderr'])}" for r in rows]
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_simulate(args) -> int:
    net = build_network(args.size, parse_topology(args.topology))
    budget = _parse_budget(args.budget)
    modes: list[Mode] = [None]
    if budget not in (None, 0):
        modes.append(budget)
    modes.append(0)
    budgets = [m for m in modes if m is not None]
    config = ScheduleConfig(budget=budget, algorithm=Algorithm(args.algorithm))
    if args.random_perms < 1:
        raise ParseError(f"--random-perms must be >= 1, got {args.random_perms}")

    matured: dict[Mode, list[int]] = {m: [] for m in modes}
    pass_counts: list[int] = []
    for trial in range(args.random_perms):
        stream = substream(args.seed, trial)
        perm = generate_random_permutation(args.size, stream)
        survivors = resolve_single_pass(net, perm.pairs, DropPolicy.LOWEST_SOURCE_WINS, stream, budgets)
        for m in modes:
            matured[m].append(len(survivors[m]))
        if config.algorithm is Algorithm.EXACT:
            schedule = schedule_exact(net, perm, config)
        else:
            schedule = schedule_greedy(net, perm, config)
        pass_counts.append(schedule.pass_count)

    trials = args.random_perms
    histogram = {}
    for count in sorted(set(pass_counts)):
        histogram[str(count)] = pass_counts.count(count)
    mode_rows = []
    for m in modes:
        values = matured[m]
        mean = sum(values) / trials
        if trials > 1:
            var = sum((v - mean) ** 2 for v in values) / (trials - 1)
            stderr = (var / trials) ** 0.5
        else:
            stderr = 0.0
        mode_rows.append(
            {
                "mode": mode_label(m),
                "mean_matured": _jnum(mean),
                "stderr": _jnum(stderr),
                "passability": _jnum(mean / net.size),
            }
        )
    doc = {
        "size": net.size,
        "topology": net.topology.value,
        "load": 1.0,
        "trials": trials,
        "seed": args.seed,
        "policy": DropPolicy.LOWEST_SOURCE_WINS.value,
        "budget": "unlimited" if budget is None else budget,
        "algorithm": config.algorithm.value,
        "modes": mode_rows,
        "pass_histogram": histogram,
        "mean_passes": _jnum(sum(pass_counts) / trials),
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ominsim",
        description="Simulate and analyze optical multistage interconnection networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, perm=True):
        p.add_argument("--size", type=int, required=True, help="network size (power of two >= 4)")
        p.add_argument("--topology", default="omega", help="omega or baseline")
        if perm:
            p.add_argument("--perm", required=True, help="permutation file (SOURCE DESTINATION lines)")
        p.add_argument("--output", default=None, help="output file (default: stdout)")

    p = sub.add_parser("route", help="per-message hop table")
    common(p)
    p.set_defaults(handler=_cmd_route)

    p = sub.add_parser("conflicts", help="conflict-graph edge list CSV")
    common(p)
    p.set_defaults(handler=_cmd_conflicts)

    p = sub.add_parser("schedule", help="partition messages into passes")
    common(p)
    p.add_argument("--budget", default="0", help="crosstalk budget K or 'unlimited'")
    p.add_argument("--algorithm", default="greedy", choices=[a.value for a in Algorithm])
    p.add_argument("--order", default="source-ascending", choices=[o.value for o in OrderPolicy])
    p.set_defaults(handler=_cmd_schedule)

    p = sub.add_parser("bandwidth", help="analytic or simulated bandwidth table")
    p.add_argument("--sizes", required=True, help="comma-separated network sizes")
    p.add_argument("--topology", default="omega")
    p.add_argument("--mode", default="analytic", choices=["analytic", "simulate"])
    p.add_argument("--crosstalk", default="free", help="comma list of allow|free|budget=K")
    p.add_argument("--load", type=float, default=1.0)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", default="csv", choices=["csv", "json"])
    p.add_argument("--output", default=None)
    p.set_defaults(handler=_cmd_bandwidth)

    p = sub.add_parser("simulate", help="random-permutation study: maturation and pass counts")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--topology", default="omega")
    p.add_argument("--random-perms", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", default="0")
    p.add_argument("--algorithm", default="greedy", choices=[a.value for a in Algorithm])
    p.add_argument("--output", default=None)
    p.set_defaults(handler=_cmd_simulate)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.handler(args)
    except SimulatorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()

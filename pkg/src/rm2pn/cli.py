"""Command-line front end.

Subcommands: build (compile a machine to a net), run (simulate a net on an
input vector), metrics, export/import (incidence-table handling), compress
(flow-graph state compression), verify (co-simulation sweep against the
machine oracles).  All outputs are deterministic for identical invocations.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import codegen, compression, harness, incidence, machines, nets


def _load_machine_or_graph(name: str):
    if name == "u22":
        return machines.u22()
    if name == "u7":
        return machines.u7()
    text = Path(name).read_text()
    if "->" in text:
        return machines.parse_flowgraph(text)
    return machines.parse_register_machine(text)


def _prune_machine(m: machines.RegisterMachine) -> machines.RegisterMachine:
    keep = machines.reachable_states(m)
    keep.add(m.final)
    return machines.RegisterMachine(
        tuple(s for s in m.states if s in keep),
        m.registers,
        m.initial,
        m.final,
        {s: ins for s, ins in m.program.items() if s in keep},
    )


def _metrics_line(net: nets.Net) -> str:
    m = nets.metrics(net)
    return f"p={m.p} t={m.t} h={m.h} d={m.d}"


def _golden_dir() -> Path:
    return Path(str(resources.files("rm2pn") / "goldens"))


def cmd_build(args) -> int:
    source = _load_machine_or_graph(args.machine)
    if args.prune_unreachable and isinstance(source, machines.RegisterMachine):
        source = _prune_machine(source)
    built = codegen.build(source, args.strategy)
    delimiter = "," if args.format == "csv" else "\t"
    if args.out:
        path = Path(args.out)
        path.write_text(incidence.export_incidence(built.net, delimiter))
        incidence.write_sidecar(incidence.sidecar_path(path), built.net)
    else:
        sys.stdout.write(incidence.export_incidence(built.net, delimiter))
    print(_metrics_line(built.net))
    return 0


def cmd_run(args) -> int:
    delimiter = "," if args.format == "csv" else "\t"
    net = incidence.load_net(
        Path(args.net),
        Path(args.meta) if args.meta else None,
        delimiter,
    )
    inputs = [int(tok) for tok in args.inputs.split(",")] if args.inputs else []
    marking = dict(net.initial_marking)
    for place, value in zip(net.input_places, inputs):
        marking[place] = marking.get(place, 0) + value
    if len(inputs) != len(net.input_places):
        print(
            f"error: net expects {len(net.input_places)} inputs "
            f"({', '.join(net.input_places)})",
            file=sys.stderr,
        )
        return 2
    result = nets.run_to_deadlock(net, marking, args.limit, collect_trace=args.trace)
    output = (
        result.final_marking.get(net.output_place, 0)
        if net.output_place
        else None
    )
    print(f"status={result.status.value} steps={result.steps} output={output}")
    if args.trace:
        for t in result.trace or ():
            print(t)
    return 0 if result.status is nets.RunStatus.DEADLOCK else 1


def cmd_metrics(args) -> int:
    delimiter = "," if args.format == "csv" else "\t"
    net = incidence.load_net(Path(args.net), None, delimiter)
    print(_metrics_line(net))
    return 0


def cmd_export(args) -> int:
    in_delim = "," if args.format == "csv" else "\t"
    out_delim = "," if args.to == "csv" else "\t"
    net = incidence.load_net(Path(args.net), None, in_delim)
    text = incidence.export_incidence(net, out_delim)
    if args.out:
        path = Path(args.out)
        path.write_text(text)
        incidence.write_sidecar(incidence.sidecar_path(path), net)
    else:
        sys.stdout.write(text)
    return 0


def cmd_import(args) -> int:
    delimiter = "," if args.format == "csv" else "\t"
    try:
        net = incidence.load_net(Path(args.net), None, delimiter)
    except nets.NetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(
        f"places={len(net.places)} transitions={len(net.transitions)} "
        + _metrics_line(net)
    )
    return 0


def cmd_compress(args) -> int:
    source = _load_machine_or_graph(args.machine)
    if isinstance(source, machines.RegisterMachine):
        graph = machines.rm_to_flowgraph(source)
    else:
        graph = source
    log: list = []
    compressed = compression.compress(graph, log=log)
    print(f"states: {len(graph.states)} -> {len(compressed.states)}")
    print(f"arcs: {len(graph.arcs)} -> {len(compressed.arcs)}")
    print(f"initial: {compressed.initial}")
    if args.log:
        for pred, q, succ, reason, outcome in log:
            print(f"{pred} {q} {succ} {reason} {outcome}")
    if args.out:
        Path(args.out).write_text(machines.format_flowgraph(compressed))
    return 0


def cmd_verify(args) -> int:
    strategies = (
        list(codegen.STRATEGIES) if args.strategy == "all" else [args.strategy]
    )
    k = args.grid.lower().split("x")
    grid = [(a, b) for a in range(int(k[0])) for b in range(int(k[1]))]
    report = harness.sweep(strategies, grid, args.limit)
    print(report.to_text())
    exit_code = 0 if report.all_passed else 1

    if args.golden is not None:
        golden_dir = Path(args.golden) if args.golden else _golden_dir()
        builds = harness.paper_builds()
        for strategy, golden_name in (
            ("direct", "n1"), ("compressed", "n2"), ("binary", "n3"),
        ):
            if strategy not in strategies:
                continue
            table = golden_dir / f"{golden_name}.tsv"
            if not table.exists():
                print(f"golden {golden_name}: missing at {table}")
                continue
            golden = incidence.load_net(table)
            diff = harness.golden_diff(builds[strategy][1].net, golden)
            print(f"golden {golden_name} vs {strategy}: "
                  + ("identical" if diff.empty else "differs"))
            if not diff.empty:
                print("  " + diff.to_text().replace("\n", "\n  "))
                if strategy == "direct":
                    exit_code = 1  # the direct construction must match exactly
    if args.json:
        Path(args.json).write_text(report.to_json() + "\n")
    return exit_code


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="rm2pn",
        description="Compile register machines to Petri nets with inhibitor "
        "arcs and certify them against machine oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="compile a machine/graph to a net")
    p.add_argument("--machine", required=True, help="u22, u7, or a program file")
    p.add_argument("--strategy", required=True, choices=codegen.STRATEGIES)
    p.add_argument("--prune-unreachable", action="store_true")
    p.add_argument("--out", help="table file to write (sidecar goes next to it)")
    p.add_argument("--format", choices=("tsv", "csv"), default="tsv")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("run", help="simulate a net on an input vector")
    p.add_argument("net")
    p.add_argument("--inputs", default="", help="comma-separated token counts")
    p.add_argument("--limit", type=int, default=nets.DEFAULT_STEP_LIMIT)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--meta", help="metadata sidecar (default: <net>.meta.json)")
    p.add_argument("--format", choices=("tsv", "csv"), default="tsv")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("metrics", help="print the (p, t, h, d) vector")
    p.add_argument("net")
    p.add_argument("--format", choices=("tsv", "csv"), default="tsv")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("export", help="re-emit a table canonically")
    p.add_argument("net")
    p.add_argument("--format", choices=("tsv", "csv"), default="tsv")
    p.add_argument("--to", choices=("tsv", "csv"), default="tsv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("import", help="parse and validate a table")
    p.add_argument("net")
    p.add_argument("--format", choices=("tsv", "csv"), default="tsv")
    p.set_defaults(func=cmd_import)

    p = sub.add_parser("compress", help="compress a machine's flow graph")
    p.add_argument("--machine", required=True)
    p.add_argument("--log", action="store_true", help="print the merge log")
    p.add_argument("--out", help="write the compressed graph (text format)")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("verify", help="co-simulate strategies against oracles")
    p.add_argument("--strategy", default="all",
                   choices=codegen.STRATEGIES + ("all",))
    p.add_argument("--grid", default="6x6", help="KxK input grid (default 6x6)")
    p.add_argument("--limit", type=int, default=nets.DEFAULT_STEP_LIMIT)
    p.add_argument("--golden", nargs="?", const="", default=None,
                   help="compare against golden tables (optional directory)")
    p.add_argument("--json", help="write the machine-readable report here")
    p.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (nets.NetError, machines.MachineError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command line: ``czprep {synth,verify,oracle,cost,orbit}``.

Machine output (JSON or CSV) goes to stdout or ``--output``; the
human-readable table goes to stderr. Exit codes: 0 ok, 1 verification
failure, 2 usage or parse error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from czprep import formats
from czprep.circle import IntervalError, check_represents
from czprep.cutjoin import WitnessError
from czprep.graph import Graph, GraphError
from czprep.opseq import OperationSequence, SequenceError, compile_gates
from czprep.oracle import (
    DEFAULT_DISTANCE_CAP,
    DEFAULT_ORBIT_CAP,
    CapExceeded,
    canonical_orbit_key,
    certify_lower_bound,
    exact_cz,
    optimal_sequence,
    orbit,
)
from czprep.perturbation import DeltaError
from czprep.report import cost_figure, cost_rows, text_table, to_csv
from czprep.stabsim import TableauError, verify_graph_state
from czprep.strategies import (
    STRATEGIES,
    MissingWitness,
    StrategyResult,
    VerificationFailure,
    Witnesses,
    intervals_represent,
    pick_best,
    run_all,
    run_strategy,
    verify_both,
)
from czprep.twinwidth import ContractionError, replay_contractions

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

USAGE_ERRORS = (
    formats.FormatError,
    GraphError,
    IntervalError,
    ContractionError,
    WitnessError,
    MissingWitness,
    SequenceError,
    DeltaError,
    TableauError,
)


def _err(msg: str) -> None:
    print(f"czprep: {msg}", file=sys.stderr)


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def load_graph(path: str) -> Graph:
    return formats.parse_graph(formats.read_text(path))


def load_witnesses(args: argparse.Namespace, g: Graph) -> Witnesses:
    w = Witnesses(seed=args.seed)
    if args.intervals:
        w.intervals = formats.parse_intervals(formats.read_text(args.intervals))
    if args.base:
        w.base = load_graph(args.base)
    if w.intervals is not None and not (w.base is not None and intervals_represent(w, w.base)):
        check_represents(g, w.intervals)
    if args.contraction:
        w.contraction = formats.parse_contractions(formats.read_text(args.contraction))
        _, width = replay_contractions(g, w.contraction)
        print(f"contraction sequence: measured width {width}", file=sys.stderr)
    if args.cut:
        w.cut = formats.parse_cut(formats.read_text(args.cut), g.n)
    return w


def _emit_sequence(res_seq: OperationSequence, n: int, emit: str, output: str | None) -> None:
    if emit == "gates":
        _write(formats.dumps(formats.gates_to_json(compile_gates(res_seq), n)), output)
    else:
        _write(formats.dumps(formats.ops_to_json(res_seq)), output)


def _table(results: Sequence[StrategyResult], g: Graph) -> str:
    return text_table(cost_rows(results, certify_lower_bound(g), None))


def cmd_synth(args: argparse.Namespace) -> int:
    g = load_graph(args.input)
    w = load_witnesses(args, g)
    if args.strategy == "auto":
        results = run_all(g, w)
        best = pick_best(results)
    else:
        best = run_strategy(args.strategy, g, w)
        results = [best]
    sys.stderr.write(_table(results, g))
    for r in results:
        for key, val in sorted(r.notes.items()):
            print(f"  {r.name}.{key} = {val}", file=sys.stderr)
    print(f"emitted: {best.name} (cz_cost {best.cz_cost}, verified)", file=sys.stderr)
    _emit_sequence(best.sequence, g.n, args.emit, args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = load_graph(args.input)
    if args.ops:
        seq = formats.ops_from_json(formats.load_json(args.ops))
        if seq.n != g.n:
            _err(f"ops are for n={seq.n}, graph has n={g.n}")
            return EXIT_VERIFY
        replay, tableau = verify_both(seq, g)
        print(f"replay: {'pass' if replay else 'FAIL'}", file=sys.stderr)
        print(f"tableau: {'pass' if tableau else 'FAIL'}", file=sys.stderr)
        print(f"cz_cost: {seq.cz_cost}", file=sys.stderr)
        ok = replay and tableau
    else:
        n, gates = formats.gates_from_json(formats.load_json(args.gates))
        if n is not None and n != g.n:
            _err(f"gates are for n={n}, graph has n={g.n}")
            return EXIT_VERIFY
        ok = verify_graph_state(gates, g)
        print(f"tableau: {'pass' if ok else 'FAIL'}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_oracle(args: argparse.Namespace) -> int:
    g = load_graph(args.input)
    d = exact_cz(g, cap=args.cap)
    seq = optimal_sequence(g, cap=args.cap)
    if seq.cz_cost != d or not all(verify_both(seq, g)):
        raise VerificationFailure("oracle witness failed verification")
    print(f"exact cz: {d}  (component lower bound {certify_lower_bound(g)})", file=sys.stderr)
    out = formats.ops_to_json(seq)
    out["cz"] = d
    if args.emit == "gates":
        out = formats.gates_to_json(compile_gates(seq), g.n)
        out["cz"] = d
    _write(formats.dumps(out), args.output)
    return EXIT_OK


def cmd_cost(args: argparse.Namespace) -> int:
    g = load_graph(args.input)
    w = load_witnesses(args, g)
    exact = exact_cz(g, cap=args.cap) if g.n <= args.cap else None
    results = run_all(g, w)
    rows = cost_rows(results, certify_lower_bound(g), exact)
    sys.stderr.write(text_table(rows))
    if args.format == "csv":
        _write(to_csv(rows), args.output)
    else:
        _write(formats.dumps({"n": g.n, "edges": g.num_edges, "rows": rows}), args.output)
    if args.figure:
        cost_figure(rows, args.figure, title=f"{Path(args.input).name} (n={g.n}, |E|={g.num_edges})")
    return EXIT_OK


def cmd_orbit(args: argparse.Namespace) -> int:
    g = load_graph(args.input)
    members = orbit(g, cap=args.cap)
    key = canonical_orbit_key(g, cap=args.cap)
    graphs = sorted((list(map(list, h.edges())) for h in members))
    print(f"orbit size: {len(members)}", file=sys.stderr)
    _write(formats.dumps({"n": g.n, "size": len(members), "key": key, "graphs": graphs}), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="czprep", description="Graph-state preparation with few CZ gates.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--input", required=True, help="graph file")
        sp.add_argument("--output", help="write machine output here instead of stdout")

    def witnesses(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--intervals", help="interval file representing the graph (or the base graph)")
        sp.add_argument("--contraction", help="contraction sequence file")
        sp.add_argument("--cut", help="cut file (vertex indices of X)")
        sp.add_argument("--base", help="base graph file for the perturb strategy")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("synth", help="synthesize a verified sequence")
    common(sp)
    witnesses(sp)
    sp.add_argument("--strategy", choices=[*STRATEGIES, "auto"], default="auto")
    sp.add_argument("--emit", choices=["ops", "gates"], default="ops")
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("verify", help="check ops or gates against a graph")
    common(sp)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--ops", help="ops JSON file")
    group.add_argument("--gates", help="gates JSON file")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="exact CZ-distance and an optimal sequence")
    common(sp)
    sp.add_argument("--cap", type=int, default=DEFAULT_DISTANCE_CAP)
    sp.add_argument("--emit", choices=["ops", "gates"], default="ops")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("cost", help="cost of every applicable strategy")
    common(sp)
    witnesses(sp)
    sp.add_argument("--cap", type=int, default=DEFAULT_DISTANCE_CAP, help="largest n for the exact column")
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.add_argument("--figure", help="also save a bar chart (png, pdf, svg)")
    sp.set_defaults(func=cmd_cost)

    sp = sub.add_parser("orbit", help="local-complementation orbit")
    common(sp)
    sp.add_argument("--cap", type=int, default=DEFAULT_ORBIT_CAP)
    sp.set_defaults(func=cmd_orbit)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        _err(f"{exc} (exact search is limited to n <= 7; orbits to the --cap given)")
        return EXIT_CAP
    except VerificationFailure as exc:
        _err(f"verification failed: {exc}")
        return EXIT_VERIFY
    except USAGE_ERRORS as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

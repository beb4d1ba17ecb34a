"""``hsim`` command-line interface.

Exit codes: 0 success, 1 usage error, 2 input error, 3 capability error.
A sweep cell that fails its accuracy threshold is only a warning.
"""

from __future__ import annotations

import argparse
import json
import sys

from hsim.bench import (
    DEFAULT_NOISE_RATES,
    NoiseConfig,
    SweepConfig,
    noise_run,
    report_emit,
    sweep_files,
)
from hsim.circuit import cnot_count, emit_text, synthesize_step, trotterize
from hsim.errors import CapabilityError, InputError
from hsim.grouping import build_commutation_graph, min_clique_cover
from hsim.hamiltonian import load_hamiltonian
from hsim.ordering import STRATEGIES, order_by_name
from hsim.pauli import sequence_cnot_cost
from hsim.sequencing import sequence_cliques_detailed
from hsim.simulation import (
    circuit_unitary,
    hellinger_distance,
    hellinger_infidelity,
    ideal_distribution,
    initial_state,
    noisy_distribution,
)
from hsim.tsp import TspInstance, anchored_cost, lexicographic_order, path_cost, tsp_path

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_CAPABILITY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of numbers, got {text!r}") from None


def _names(text: str) -> list[str]:
    return [x for x in text.replace(",", " ").split() if x]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", required=True, action="append", help="Hamiltonian .ham file")
    common.add_argument("--seed", type=int, default=0, help="seed for the random strategy")
    common.add_argument("--format", default="json", choices=["json", "text", "csv"])
    common.add_argument("--out", "-o", help="write output here instead of stdout")

    p = _Parser(prog="hsim", description="Pauli-term ordering and Trotter circuit evaluation")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("order", parents=[common], help="order the terms of a Hamiltonian")
    s.add_argument("--strategy", "-s", default="mctsp", choices=STRATEGIES)

    sub.add_parser("cover", parents=[common], help="greedy clique cover of the commutation graph")

    s = sub.add_parser("tsp", parents=[common], help="CNOT-distance path through one clique")
    s.add_argument("--clique", "-k", type=int, default=0, help="clique index in cover order")

    sub.add_parser("sequence", parents=[common], help="order the cliques")

    s = sub.add_parser("compile", parents=[common], help="emit the Trotter circuit")
    s.add_argument("--strategy", "-s", default="mctsp", choices=STRATEGIES)
    s.add_argument("--t", type=float, default=1.0)
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--emit", default="qasm-like", choices=["qasm-like", "json"])
    s.add_argument("--no-cancel", action="store_true", help="skip the cancellation pass")

    s = sub.add_parser("simulate", parents=[common], help="noisy simulation of one circuit")
    s.add_argument("--strategy", "-s", default="mctsp", choices=STRATEGIES)
    s.add_argument("--t", type=float, default=1.0)
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--noise", type=float, default=0.0, help="depolarizing probability per CNOT")
    s.add_argument("--noise-model", default="pair", choices=["pair", "independent"])
    s.add_argument("--init", default="ghz-like", help="ghz-like, zero, plus or a bitstring")

    s = sub.add_parser("sweep", parents=[common], help="Trotter-number sweep to an accuracy threshold")
    s.add_argument("--t-values", type=_floats, default=[0.25, 0.5, 1.0])
    s.add_argument("--epsilon", type=float, default=0.1)
    s.add_argument("--r-max", type=int, default=64)
    s.add_argument("--strategies", type=_names, default=list(STRATEGIES))
    s.add_argument("--timestamp", help="fixed timestamp to embed (default: now)")

    s = sub.add_parser("noise", parents=[common], help="Hellinger metrics under depolarizing noise")
    s.add_argument("--strategies", type=_names, default=["lex", "mag", "mctsp"])
    s.add_argument("--p-values", type=_floats, default=list(DEFAULT_NOISE_RATES))
    s.add_argument("--init", default="ghz-like")
    s.add_argument("--t", type=float, default=1.0)
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--noise-model", default="pair", choices=["pair", "independent"])
    s.add_argument("--timestamp")
    return p


def _single_input(args):
    if len(args.input) != 1:
        raise InputError(f"'{args.command}' takes exactly one --input")
    return load_hamiltonian(args.input[0])


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_order(args):
    h = _single_input(args)
    o = order_by_name(h, args.strategy, args.seed)
    out = {
        "strategy": o.strategy,
        "permutation": list(o.permutation),
        "clique_boundaries": list(o.clique_boundaries) if o.clique_boundaries is not None else None,
        "cnot_cost": o.cnot_cost(h),
        "strings": [str(p) for p in o.strings(h)],
    }
    if args.format == "text":
        return "".join(f"{h.terms[i].coefficient:.17g} {h.terms[i].string}\n" for i in o.permutation)
    return _dump(out)


def _cmd_cover(args):
    h = _single_input(args)
    cover = min_clique_cover(build_commutation_graph(h))
    if args.format == "text":
        return "".join(" ".join(str(h.terms[i].string) for i in c) + "\n" for c in cover)
    return _dump({"cliques": cover.as_lists()})


def _cmd_tsp(args):
    h = _single_input(args)
    cover = min_clique_cover(build_commutation_graph(h))
    if not 0 <= args.clique < len(cover):
        raise InputError(f"clique index {args.clique} out of range (cover has {len(cover)} cliques)")
    clique = cover.cliques[args.clique]
    inst = TspInstance(tuple(h.terms[i].string for i in clique))
    order = tsp_path(inst)
    lex = lexicographic_order(inst)
    out = {
        "clique": args.clique,
        "order": [clique[j] for j in order],
        "strings": [str(inst.nodes[j]) for j in order],
        "path_cost": path_cost(inst, order),
        "cnot_cost": anchored_cost(inst, order),
        "lexicographic_path_cost": path_cost(inst, lex),
        "lexicographic_cnot_cost": anchored_cost(inst, lex),
    }
    if args.format == "text":
        return "\n".join(out["strings"]) + f"\npath cost {out['path_cost']}, cnot cost {out['cnot_cost']}\n"
    return _dump(out)


def _cmd_sequence(args):
    h = _single_input(args)
    g = build_commutation_graph(h)
    cover = min_clique_cover(g)
    res = sequence_cliques_detailed(h, cover, g)
    return _dump(
        {
            "candidate_count": res.candidate_count,
            "permutation": list(res.permutation),
            "score": res.score,
            "cliques": cover.as_lists(),
        }
    )


def _cmd_compile(args):
    h = _single_input(args)
    o = order_by_name(h, args.strategy, args.seed)
    c = trotterize(h, o, args.t, args.r, cancel=not args.no_cancel)
    if args.emit == "json":
        return _dump(
            {
                "width": c.width,
                "trotter_steps": c.trotter_steps,
                "time": c.time,
                "cnot_count": cnot_count(c),
                "uncancelled_cnot_count": cnot_count(synthesize_step(h, o, args.t / args.r)) * args.r,
                "step_cnot_cost": sequence_cnot_cost(o.strings(h)),
                "gates": [[g.kind, g.qubit, g.axis, g.angle] for g in c.gates],
            }
        )
    return emit_text(c)


def _cmd_simulate(args):
    h = _single_input(args)
    o = order_by_name(h, args.strategy, args.seed)
    c = trotterize(h, o, args.t, args.r)
    psi = initial_state(args.init, h.width)
    ref = ideal_distribution(circuit_unitary(c), psi)
    probs = noisy_distribution(c, psi, args.noise, args.noise_model)
    return _dump(
        {
            "strategy": args.strategy,
            "t": args.t,
            "r": args.r,
            "p": args.noise,
            "cnot_count": cnot_count(c),
            "distribution": [float(x) for x in probs],
            "noiseless_distribution": [float(x) for x in ref],
            "hellinger_distance": hellinger_distance(probs, ref),
            "hellinger_infidelity": hellinger_infidelity(probs, ref),
            "hellinger_infidelity_literal": hellinger_infidelity(probs, ref, convention="literal"),
        }
    )


def _cmd_sweep(args):
    hams = [(path, load_hamiltonian(path)) for path in args.input]
    cfg = SweepConfig(tuple(args.t_values), args.epsilon, args.r_max, tuple(args.strategies), args.seed)
    report = sweep_files(cfg, hams)
    for c in report.unmet:
        print(f"warning: {c.source} {c.strategy} t={c.t}: epsilon not reached by r={c.r}", file=sys.stderr)
    fmt = "csv" if args.format == "csv" else "json"
    return report_emit(report, fmt, args.timestamp).decode(), report.has_errors


def _cmd_noise(args):
    cfg = NoiseConfig(tuple(args.p_values), tuple(args.strategies), args.init, args.t, args.r, args.noise_model, args.seed)
    report = None
    for path in args.input:
        part = noise_run(load_hamiltonian(path), cfg, path)
        if report is None:
            report = part
        else:
            report.extend(part)
    report.config["inputs"] = list(args.input)
    fmt = "csv" if args.format == "csv" else "json"
    return report_emit(report, fmt, args.timestamp).decode(), report.has_errors


COMMANDS = {
    "order": _cmd_order,
    "cover": _cmd_cover,
    "tsp": _cmd_tsp,
    "sequence": _cmd_sequence,
    "compile": _cmd_compile,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "noise": _cmd_noise,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
    except CapabilityError as e:
        print(f"hsim: {e}", file=sys.stderr)
        return EXIT_CAPABILITY
    except (InputError, OSError) as e:
        print(f"hsim: {e}", file=sys.stderr)
        return EXIT_INPUT
    hard_error = False
    if isinstance(result, tuple):
        result, hard_error = result
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(result)
    else:
        sys.stdout.write(result)
    return EXIT_CAPABILITY if hard_error else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

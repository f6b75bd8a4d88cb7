"""Command-line driver.

Subcommands: check, construct, parametrize, cover, simulate, verify.
Reports are emitted as canonical JSON on stdout.  Exit codes: 0 when every
requested condition holds, 1 when a condition fails (the report names it),
2 on malformed input.  Seeds are always explicit; there is no environment
fallback.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fileformats as ff
from .checker import run_checks
from .constructor import construct_measure, verify_reversibility
from .core import GwrevError, PAIR, SpecError
from .covers import label_vertices, lift_measure, load_graph, pair_digraph
from .norelabel import PlainSpec, construct_plain_measure, run_plain_checks
from .parametrizer import InconsistentRatiosError, assemble_measure, validate_template
from .simulator import estimate_flow, mass_transport_check


def _emit(obj) -> None:
    sys.stdout.write(ff.canonical_json(obj))


def _violations_obj(violations) -> list:
    return [
        {
            "first": {"label": u.label, "c": list(u.vector)},
            "second": {"label": v.label, "c": list(v.vector)},
            "lhs": ff.format_fraction(lhs),
            "rhs": ff.format_fraction(rhs),
        }
        for (u, v, lhs, rhs) in violations
    ]


def cmd_check(args) -> int:
    spec = ff.load_spec(args.spec)
    if isinstance(spec, PlainSpec):
        from .norelabel import check_plain_cycles, plain_connected

        ok, cycle = check_plain_cycles(spec)
        connected = plain_connected(spec)
        report = {
            "mode": "plain",
            "ok": ok and connected,
            "failed": ([] if ok else ["cycles"]) + ([] if connected else ["connected"]),
            "multinomial": "pass",  # parameters were supplied directly
            "cycles": "pass" if ok else "fail",
            "connected": connected,
        }
        if cycle is not None:
            report["violating_cycle"] = list(cycle)
        _emit(report)
        return 0 if report["ok"] else 1
    if spec.mode == PAIR:
        report = run_checks(spec)
        _emit(ff.report_to_obj(report))
        return 0 if report.ok() else 1
    report, _ = run_plain_checks(spec)
    _emit(ff.plain_report_to_obj(report))
    return 0 if report.ok() else 1


def cmd_construct(args) -> int:
    spec = ff.load_spec(args.spec)
    if isinstance(spec, PlainSpec):
        from .norelabel import check_plain_cycles, plain_connected

        ok, cycle = check_plain_cycles(spec)
        if not ok or not plain_connected(spec):
            _emit({"ok": False, "failed": ["cycles"] if not ok else ["connected"],
                   **({"violating_cycle": list(cycle)} if cycle else {})})
            return 1
        measure = construct_plain_measure(spec)
    elif spec.mode == PAIR:
        report = run_checks(spec)
        if not report.ok():
            _emit(ff.report_to_obj(report))
            return 1
        measure = construct_measure(spec, report)
    else:
        report, pspec = run_plain_checks(spec)
        if not report.ok():
            _emit(ff.plain_report_to_obj(report))
            return 1
        measure = construct_plain_measure(pspec)
    violations = verify_reversibility(measure)
    if violations:  # cannot happen for a checked spec; emit and fail loudly
        _emit({"ok": False, "failed": ["verify"],
               "violations": _violations_obj(violations)})
        return 1
    ff.save_measure(args.out, measure, verified=True)
    _emit({"ok": True, "written": args.out, "verified": True})
    return 0


def cmd_parametrize(args) -> int:
    template = ff.obj_to_template(ff.load_json(args.template))
    weights = ff.obj_to_weights(ff.load_json(args.params))
    ok, reason = validate_template(template)
    if not ok:
        _emit({"ok": False, "failed": [reason]})
        return 1
    try:
        measure = assemble_measure(template, weights)
    except InconsistentRatiosError as err:
        _emit({"ok": False, "failed": ["inconsistent_ratios"],
               "labels": list(err.labels)})
        return 1
    violations = verify_reversibility(measure)
    if violations:
        _emit({"ok": False, "failed": ["verify"],
               "violations": _violations_obj(violations)})
        return 1
    ff.save_measure(args.out, measure, verified=True)
    _emit({"ok": True, "written": args.out, "verified": True})
    return 0


def cmd_cover(args) -> int:
    graph = load_graph(args.graph)
    labels = label_vertices(graph, max_vertices=args.max_vertices)
    measure = lift_measure(graph, labels)
    violations = verify_reversibility(measure)
    if violations:
        _emit({"ok": False, "failed": ["verify"],
               "violations": _violations_obj(violations)})
        return 1
    ff.save_measure(args.out, measure, verified=True)
    out = {
        "ok": True,
        "written": args.out,
        "verified": True,
        "labels": [labels[v] for v in sorted(labels)],
    }
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(pair_digraph(graph, labels).to_dot())
        out["dot"] = args.dot
    _emit(out)
    return 0


def _estimate_obj(name, est) -> dict:
    return {
        "direction": name,
        "empirical_mean": est.empirical_mean,
        "std_error": est.std_error,
        "exact": ff.format_fraction(est.exact),
        "trials": est.trials,
        "seed": est.seed,
        "generator": est.generator,
        "within_4se": est.within(4.0),
    }


def cmd_simulate(args) -> int:
    measure = ff.load_measure(args.measure)
    if args.mtp is not None:
        i, j = (int(x) for x in args.mtp.split(","))
        fwd, bwd = mass_transport_check(measure, i, j, args.trials, args.seed)
        names = (f"transport {i}->{j}", f"transport {j}->{i}")
    else:
        if args.source is None or args.target is None:
            raise SpecError("simulate needs --from and --to, or --mtp i,j")
        source = ff.parse_class_selector(args.source)
        target = ff.parse_class_selector(args.target)
        fwd, bwd = estimate_flow(measure, source, target, args.trials, args.seed)
        names = (f"flow {source}->{target}", f"flow {target}->{source}")
    records = [_estimate_obj(names[0], fwd), _estimate_obj(names[1], bwd)]
    ok = all(r["within_4se"] for r in records)
    _emit({"ok": ok, "estimates": records})
    return 0 if ok else 1


def cmd_verify(args) -> int:
    measure = ff.load_measure(args.measure)
    violations = verify_reversibility(measure)
    _emit({"ok": not violations, "violations": _violations_obj(violations)})
    return 0 if not violations else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gwrev",
        description="Reversible root measures for multi-type branching trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the admissibility checks on a spec")
    p.add_argument("spec")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", help="build the reversible measure for a spec")
    p.add_argument("spec")
    p.add_argument("out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("parametrize",
                       help="build the measure for a support template and weights")
    p.add_argument("template")
    p.add_argument("params")
    p.add_argument("out")
    p.set_defaults(func=cmd_parametrize)

    p = sub.add_parser("cover", help="lift a finite graph to a measure")
    p.add_argument("graph")
    p.add_argument("out")
    p.add_argument("--dot", default=None, help="also write the pair digraph as DOT")
    p.add_argument("--max-vertices", type=int, default=10)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("simulate", help="Monte Carlo flow / transport estimates")
    p.add_argument("measure")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--from", dest="source", default=None,
                   metavar="CLS", help='source class, e.g. "1:(1,1)"')
    p.add_argument("--to", dest="target", default=None,
                   metavar="CLS", help='target class, e.g. "2:(1,1)"')
    p.add_argument("--mtp", default=None, metavar="I,J",
                   help="check the mass-transport identity for a label pair")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="exact detailed-balance check of a measure")
    p.add_argument("measure")
    p.set_defaults(func=cmd_verify)

    for p in sub.choices.values():
        p.add_argument("--json", action="store_true",
                       help="machine output (reports are always JSON)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GwrevError, OSError, json.JSONDecodeError, KeyError, ValueError) as err:
        sys.stderr.write(f"error: {err}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

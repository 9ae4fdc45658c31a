"""Command-line front end.  All stdout output is JSON."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__, agammal, checks, survey
from .designs import analyze_block
from .families import build_family, canonical_block
from .permgrp import BudgetExceeded, blocks_containing, is_block, parse_generators, point_stabilizer

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

FAMILIES = ("psl", "agammal1", "affine_sl", "affine_sp", "psu3", "suzuki", "ree")
REE_CASES = ("i", "ii", "iii", "iv")


class UsageError(ValueError):
    pass


def _emit(obj: dict) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _instance_report(inst, P, label: str) -> dict:
    rep = inst.report(block=label, block_size=len(P))
    rep["component_sizes"] = rep.pop("components")
    rep["components"] = inst.graph.components
    d = inst.design
    rep["verdicts"] = {
        "regular_valency_k_minus_1": inst.graph.valency == d.k - 1,
        "lambda_in_1_or_r_plus_1": d.lam in (1, len(P) + 1),
        "lambda_matches_block_transitivity": inst.lam.lam == d.lam,
        "coset_prediction": inst.coset.predicted_components == inst.graph.components,
        "spread_complete_quotient": inst.spread.quotient_edges == d.point_count * (d.point_count - 1) // 2,
    }
    return rep


def _write_graph(inst, prefix: str, label: str) -> list[str]:
    base = f"{prefix}.{label}" if label else prefix
    dot, edges = Path(base + ".dot"), Path(base + ".edges")
    dot.parent.mkdir(parents=True, exist_ok=True)
    dot.write_text(inst.graph.to_dot())
    edges.write_text(inst.graph.to_edge_list())
    return [str(dot), str(edges)]


def _blocks_for(args, ag) -> list[tuple[str, list[int]]]:
    family = args.family
    if family in ("suzuki", "psu3"):
        return [("canonical", canonical_block(family, args.q))]
    if family == "psl":
        return [("line", canonical_block("psl", args.q, d=args.d or 3))]
    if family == "ree":
        cases = [args.case] if args.case else [c for c in REE_CASES if c != "iv" or args.q == 3]
        return [(f"case-{c}", canonical_block("ree", args.q, c)) for c in cases]
    stab = point_stabilizer(ag.group, ag.sigma)
    return [(f"block-{i}", list(b)) for i, b in enumerate(blocks_containing(stab, ag.tau))]


class _FileGroup:
    """A group loaded from a generator file, acting with sigma = 0, tau = 1."""

    def __init__(self, group):
        self.group = group
        self.sigma, self.tau = 0, 1


def cmd_construct(args) -> int:
    if args.generators:
        ag = _FileGroup(parse_generators(Path(args.generators).read_text()))
        head = {"source": str(args.generators), "degree": ag.group.degree}
        stab = point_stabilizer(ag.group, 0)
        targets = [(f"block-{i}", list(b)) for i, b in enumerate(blocks_containing(stab, 1))]
    else:
        if args.family is None or args.q is None:
            raise UsageError("construct needs --family and --q, or --generators")
        if args.case and args.family != "ree":
            raise UsageError("--case applies to --family ree only")
        ag = build_family(args.family, args.q, d=args.d, n=args.n, g0_spec=args.g0_spec)
        head = {"family": args.family, "q": args.q, "degree": ag.degree}
        for key in ("d", "n", "case", "g0_spec"):
            if getattr(args, key) is not None:
                head[key] = getattr(args, key)
        targets = _blocks_for(args, ag)
    stab = point_stabilizer(ag.group, ag.sigma)
    results, files = [], []
    for label, P in targets:
        if not is_block(stab, sorted(set(P) | {ag.tau})):
            raise ValueError(f"{label} is not a block of the point stabilizer")
        inst = analyze_block(ag, P, sigma=ag.sigma)
        results.append(_instance_report(inst, P, label))
        if args.out:
            files += _write_graph(inst, args.out, label if len(targets) > 1 else "")
    report = {"command": "construct", **head, "block_sizes": sorted(len(P) for _, P in targets),
              "results": results}
    if files:
        report["files"] = files
    ok = all(all(r["verdicts"].values()) for r in results)
    report["verdict"] = "PASS" if ok else "FAIL"
    return _finish(report, ok, args)


def cmd_verify_all(args) -> int:
    results = checks.run_all(args.level, fault=args.fault)
    for r in results:
        print(r.line(), file=sys.stderr)
    mandatory_ok = all(r.passed for r in results if not r.stretch)
    report = {"command": "verify-all", "level": args.level, "fault": args.fault,
              "checks": [r.to_json() for r in results],
              "verdict": "PASS" if all(r.passed for r in results) else "FAIL"}
    if not args.timing:
        for c in report["checks"]:
            c.pop("seconds")
    _emit(report)
    return EXIT_OK if mandatory_ok and (args.level == "mandatory" or report["verdict"] == "PASS") else EXIT_FAIL


def cmd_analyze_agammal(args) -> int:
    q = args.p ** args.d
    ag = build_family("agammal1", q, g0_spec=args.g0_spec)
    rep = agammal.analyze_report(ag, build_graph=not args.no_graph)
    ok = rep["census_match"] and all(
        b.get("lambda", b["lambda_pred"]) == b["lambda_pred"]
        and b.get("components", b["components_pred"]) == b["components_pred"]
        for b in rep["blocks"])
    report = {"command": "analyze-agammal", "p": args.p, "d": args.d, "g0_spec": args.g0_spec, **rep,
              "verdict": "PASS" if ok else "FAIL"}
    return _finish(report, ok, args)


def cmd_survey(args) -> int:
    if args.p not in survey.MANDATORY_PRIMES and not args.stretch:
        raise UsageError(f"p={args.p} needs --stretch (mandatory primes: 5, 7)")
    res = survey.emit_table(args.p, stretch=args.stretch)
    report = {"command": "survey", **res.to_json()}
    return _finish(report, res.passed, args)


def _finish(report: dict, ok: bool, args) -> int:
    if args.timing:
        report["wall_time_s"] = round(time.perf_counter() - args._t0, 3)
    _emit(report)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="flagspread", description="Flag graphs of 2-transitive groups.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def timing(p):
        p.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-for-byte output)")

    c = sub.add_parser("construct", help="build a group, its design and flag graph")
    c.add_argument("--family", choices=FAMILIES)
    c.add_argument("--q", type=int)
    c.add_argument("--d", type=int, help="dimension for psl")
    c.add_argument("--n", type=int, help="dimension for affine_sl / affine_sp")
    c.add_argument("--case", choices=REE_CASES, help="Ree block case")
    c.add_argument("--g0-spec", help="agammal1 subgroup: gl, gammal, or s=..,m=..,l=..")
    c.add_argument("--generators", metavar="FILE", help="permutation generator file (one image list per line)")
    c.add_argument("--out", metavar="PREFIX", help="write PREFIX.dot and PREFIX.edges")
    timing(c)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify-all", help="run the acceptance checks")
    v.add_argument("--level", choices=("mandatory", "stretch"), default="mandatory")
    v.add_argument("--fault", choices=("suzuki-sigma",), help="inject a known fault (negative control)")
    timing(v)
    v.set_defaults(func=cmd_verify_all)

    a = sub.add_parser("analyze-agammal", help="structure, blocks and flag graphs of G <= AGammaL(1,p^d)")
    a.add_argument("--p", type=int, required=True)
    a.add_argument("--d", type=int, default=1)
    a.add_argument("--g0-spec", default="gl")
    a.add_argument("--no-graph", action="store_true", help="skip building the flag graphs")
    timing(a)
    a.set_defaults(func=cmd_analyze_agammal)

    s = sub.add_parser("survey", help="representative triples for affine G with SL(2,3) or SL(2,5) normal")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--stretch", action="store_true", help="allow primes beyond 5 and 7")
    timing(s)
    s.set_defaults(func=cmd_survey)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args._t0 = time.perf_counter()
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        _emit({"command": args.command, "error": "budget exceeded", "detail": str(exc)})
        return EXIT_BUDGET
    except (UsageError, ValueError, FileNotFoundError) as exc:
        _emit({"command": args.command, "error": "usage", "detail": str(exc)})
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

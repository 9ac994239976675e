"""Command line entry point.

Exit codes: 0 when every report passes, 1 when any fails, 2 when some are
Unknown and none fail, 3 on usage errors and 4 on input/output errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from ..construction import ConstructionError, build_aux, build_G, check_role_consistency
from ..path_chromatic import CapExceeded, r_exact_paths, r_exact_subsets, r_sampled_lower
from ..report import Report, Status, merge_status
from ..solvers.budget import BudgetExhausted, SolveBudget
from ..solvers.colouring import chromatic_colouring
from .config import RunConfig
from .formats import ReportWriter, emit_dimacs_cnf, emit_dot, write_roles_json
from .graph6 import Graph6Error, emit_graph6, read_graph6_file

EXIT_USAGE = 3
EXIT_IO = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _exit_code(reports: Sequence[Report]) -> int:
    return {Status.PASS: 0, Status.FAIL: 1, Status.UNKNOWN: 2}[merge_status(list(reports))]


def _budget(seconds: Optional[float]) -> Optional[SolveBudget]:
    return SolveBudget(time_limit=seconds) if seconds else None


def _emit(reports: Sequence[Report], path: Optional[str], cfg: RunConfig) -> None:
    for rep in reports:
        print(rep)
    if path:
        with ReportWriter(path, header=cfg.header()) as w:
            w.write_all(reports)


# -- subcommands ---------------------------------------------------------------

def cmd_construct(args) -> int:
    lc = build_aux(args.r, args.k) if args.aux else build_G(args.r, args.k)
    Path(args.out).write_bytes(emit_graph6(lc.g) + b"\n")
    if args.roles:
        write_roles_json(lc, args.roles)
    if args.dot:
        Path(args.dot).write_bytes(emit_dot(lc))
    rep = check_role_consistency(lc)
    print(f"n={lc.g.n} m={lc.g.m}")
    print(rep)
    return _exit_code([rep])


def cmd_chi(args) -> int:
    graphs = read_graph6_file(args.inp)
    if args.cnf_out:
        if args.colours is None:
            raise UsageError("--cnf-out needs --colours")
        if len(graphs) != 1:
            raise UsageError("--cnf-out needs an input file holding exactly one graph")
        Path(args.cnf_out).write_bytes(emit_dimacs_cnf(graphs[0], args.colours))
    status = 0
    for g in graphs:
        col = chromatic_colouring(g, _budget(args.budget_s))
        if col is None:
            print("unknown")
            status = max(status, 2)
        else:
            print(col.num_colours)
    return status


def cmd_rvalue(args) -> int:
    graphs = read_graph6_file(args.inp)
    for g in graphs:
        try:
            if args.mode == "exact-subsets":
                res = r_exact_subsets(g)
            elif args.mode == "exact-paths":
                res = r_exact_paths(g)
            else:
                res = r_sampled_lower(g, args.samples, args.seed)
        except CapExceeded as exc:
            raise UsageError(str(exc)) from None
        prefix = ">=" if args.mode == "sample" else ""
        print(f"{prefix}{res.value}")
    return 0


def cmd_verify(args) -> int:
    from ..verification.suites import colouring_suite, path_colouring_suite, structure_suite

    cfg = RunConfig(seed=args.seed, samples=args.samples, budget_s=args.budget_s)
    suites = ["structure", "colouring", "paths"] if args.suite == "all" else [args.suite]
    reports: list[Report] = []
    for s in suites:
        if s == "structure":
            reports += structure_suite(build_G(args.r, args.k))
        elif s == "colouring":
            reports += colouring_suite(args.r, args.k)
        else:
            reports.append(
                path_colouring_suite(
                    args.r, args.k, args.samples, args.seed,
                    oracle_samples=min(args.samples, 100) if args.k <= 1 else 0,
                    budget=cfg.budget(),
                )
            )
    _emit(reports, args.report, cfg)
    return _exit_code(reports)


def cmd_corpus(args) -> int:
    from ..verification.corpus import hunt_counterexamples, is_path_perfect, passes_filter, verify_bound_corpus

    cfg = RunConfig(corpus=[Path(args.inp)], budget_s=args.budget_s)
    graphs = read_graph6_file(args.inp)
    patterns = [] if args.filter in (None, "none") else [p for p in args.filter.split(",") if p]
    check = args.check
    if check.startswith("conjecture:"):
        pool = [g for g in graphs if passes_filter(g, patterns)]
        rep = hunt_counterexamples(pool, check.split(":", 1)[1], cfg.budget())
    elif check == "path-perfect":
        rep = Report(f"path_perfect[{args.filter or 'all'}]")
        counts = {"checked": 0, "skipped": 0}
        for g in graphs:
            if not passes_filter(g, patterns):
                continue
            if g.n > 10:
                counts["skipped"] += 1
                continue
            sub = is_path_perfect(g, cfg.budget())
            counts["checked"] += 1
            if sub.status is Status.FAIL:
                rep.fail("not path-perfect", graph6=emit_graph6(g).decode(), detail=sub.witnesses[0])
            elif sub.status is Status.UNKNOWN:
                rep.unknown("budget exhausted", graph6=emit_graph6(g).decode())
        rep.stats.update(counts)
    else:
        rep = verify_bound_corpus(graphs, patterns, check, cfg.budget())
    _emit([rep], args.report, cfg)
    return _exit_code([rep])


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="pathchrom", description="Path-chromatic number toolkit.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="build G_k (or the auxiliary graph) and write graph6")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--aux", action="store_true", help="add the apexes vA and vB")
    p.add_argument("--out", required=True)
    p.add_argument("--roles", help="role sidecar JSON")
    p.add_argument("--dot", help="DOT drawing")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("chi", help="chromatic number of each graph in a graph6 file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--budget-s", type=float)
    p.add_argument("--cnf-out")
    p.add_argument("--colours", type=int)
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("rvalue", help="path-chromatic number of each graph")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--mode", choices=["exact-subsets", "exact-paths", "sample"], default="exact-subsets")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_rvalue)

    p = sub.add_parser("verify", help="run checks on one construction")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--suite", choices=["structure", "colouring", "paths", "all"], default="all")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget-s", type=float)
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", help="bound, path-perfectness or conjecture checks over a corpus")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--filter", help="comma-separated forbidden patterns, e.g. 2K2 or K1_3,P5")
    p.add_argument("--check", required=True, help="chi=r | chi<=r+1 | chi<=2r | chi<=3r | K1t:<t> | path-perfect | conjecture:<name>")
    p.add_argument("--budget-s", type=float)
    p.add_argument("--report")
    p.set_defaults(func=cmd_corpus)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "samples", 1) < 1:
            raise UsageError("--samples must be positive")
        return args.func(args)
    except (OSError, Graph6Error) as exc:
        print(f"pathchrom: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, ConstructionError, ValueError) as exc:
        print(f"pathchrom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExhausted:
        print("pathchrom: budget exhausted", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

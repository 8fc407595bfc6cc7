"""Command line entry point: ``sparseptf <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors; every error line on stderr starts with ``error:``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .calibration import calibrate, table2
from .core import Ptf, UsageError, format_bf, monomial_vars, parse_bf, spectrum, verify_ptf
from .harness import Population, SweepSpec, emit_report, sweep
from .solvers import ALGORITHMS, GaConfig, brute_force_density, solve

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ga_args(p: argparse.ArgumentParser) -> None:
    d = GaConfig()
    p.add_argument("--ga-population", type=int, default=d.population)
    p.add_argument("--ga-mutation-rate", type=float, default=d.mutation_rate)
    p.add_argument("--ga-generations", type=int, default=d.generations)
    p.add_argument("--ga-crossover-rate", type=float, default=d.crossover_rate)
    p.add_argument("--ga-tournament", type=int, default=d.tournament_size)
    p.add_argument("--ga-elitism", type=int, default=d.elitism)


def _ga_config(args) -> GaConfig:
    return GaConfig(population=args.ga_population, mutation_rate=args.ga_mutation_rate,
                    generations=args.ga_generations, crossover_rate=args.ga_crossover_rate,
                    tournament_size=args.ga_tournament, elitism=args.ga_elitism, seed=args.seed)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sparseptf", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="exact spectral coefficients")
    p.add_argument("bf")

    p = sub.add_parser("solve", help="find a sparse PTF")
    p.add_argument("--alg", choices=ALGORITHMS, default="l")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sort-key", choices=("abs", "signed"), default="abs")
    p.add_argument("--descending", action="store_true")
    p.add_argument("--json", action="store_true", help="print the PTF as JSON")
    p.add_argument("--out", type=Path, help="also write the PTF JSON here")
    _ga_args(p)
    p.add_argument("bf")

    p = sub.add_parser("density", help="exact threshold density by exhaustive search")
    p.add_argument("--budget", type=int)
    p.add_argument("bf")

    p = sub.add_parser("verify", help="check that a PTF JSON file sign-represents a function")
    p.add_argument("bf")
    p.add_argument("ptf", type=Path)

    p = sub.add_parser("sweep", help="run algorithms over a function population")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alg", default="l,b", help="comma separated subset of " + ",".join(ALGORITHMS))
    p.add_argument("--population", default="all", help="all | first-half | sample:K")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--sort-key", choices=("abs", "signed"), default="abs")
    p.add_argument("--descending", action="store_true")
    _ga_args(p)

    p = sub.add_parser("calibrate", help="find conventions under which published PTFs verify")
    p.add_argument("bf", nargs="?", help="defaults to the bundled Table 2 function")
    p.add_argument("ptfs", nargs="*", type=Path)

    p = sub.add_parser("table2", help="write the bundled published PTFs as JSON files")
    p.add_argument("--out", type=Path, required=True)
    return parser


def _print_ptf(ptf: Ptf, as_json: bool) -> None:
    if as_json:
        print(ptf.to_json())
    else:
        print(ptf.pretty())
    print(f"monomials: {ptf.monomial_count}")


def _load_ptf(path: Path) -> Ptf:
    try:
        return Ptf.from_json(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def run(args) -> int:
    if args.command == "spectrum":
        bf = parse_bf(args.bf)
        for j, c in enumerate(spectrum(bf).coeffs):
            names = "·".join(f"x{k}" for k in reversed(monomial_vars(j))) or "1"
            print(f"{j}\t{names}\t{c}")
        return EXIT_OK

    if args.command == "solve":
        bf = parse_bf(args.bf)
        res = solve(bf, args.alg, ga=_ga_config(args), key=args.sort_key, descending=args.descending)
        _print_ptf(res.ptf, args.json)
        if args.out:
            args.out.write_text(res.ptf.to_json() + "\n", encoding="utf-8")
        return EXIT_OK

    if args.command == "density":
        bf = parse_bf(args.bf)
        d = brute_force_density(bf, budget=args.budget)
        if d.complete:
            print(f"density: {d.density}")
        else:
            print(f"density: unknown (budget exhausted; between {d.lower_bound} and "
                  f"{d.result.monomial_count})")
        print(d.result.ptf.pretty())
        return EXIT_OK

    if args.command == "verify":
        bf = parse_bf(args.bf)
        ptf = _load_ptf(args.ptf)
        report = verify_ptf(ptf, bf)
        if report:
            print(f"ok ({ptf.monomial_count} monomials)")
            return EXIT_OK
        for v in report.violations:
            print(f"t={v.t} {v.kind} value={v.value}")
        print("error: PTF does not sign-represent the function", file=sys.stderr)
        return EXIT_VERIFY

    if args.command == "sweep":
        algs = tuple(a for a in args.alg.split(",") if a)
        spec = SweepSpec(args.n, algs, Population.parse(args.population, args.seed), _ga_config(args),
                         args.seed, args.sort_key, args.descending)
        report = sweep(spec, workers=args.workers)
        for path in emit_report(report, args.out, args.format):
            print(path)
        for name, s in report.algorithms.items():
            print(f"{name}: avg_monomials={float(s.average):.4f} avg_seconds={s.average_seconds:.4g}")
        return EXIT_OK

    if args.command == "calibrate":
        if args.bf is None:
            bf, polys = table2()
        else:
            bf = parse_bf(args.bf)
            polys = {str(p): _load_ptf(p) for p in args.ptfs}
            if not polys:
                raise UsageError("calibrate needs at least one PTF file when a function is given")
        hits = calibrate(list(bf.f), {k: p.terms for k, p in polys.items()})
        for conv in hits:
            print(("native  " if conv.is_native else "        ") + conv.describe())
        if not hits:
            print("error: no convention makes every PTF verify", file=sys.stderr)
            return EXIT_VERIFY
        return EXIT_OK

    if args.command == "table2":
        bf, polys = table2()
        args.out.mkdir(parents=True, exist_ok=True)
        print(format_bf(bf, "json"))
        for name, p in polys.items():
            path = args.out / f"table2_{name}.json"
            path.write_text(json.dumps(p.to_json_obj()) + "\n", encoding="utf-8")
            print(path)
        return EXIT_OK
    raise UsageError(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return run(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

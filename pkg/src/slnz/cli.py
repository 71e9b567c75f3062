"""Command-line entry point: ``slnz {gen,verify,congruence,girth,survey,count}``.

Exit codes: 0 pass, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .export import ExportFormat, SchemaError, export, export_to_path, load_json
from .presentation import (
    Flavor,
    base_relators,
    build,
    relator_count_breakdown,
    relator_count_formula,
)
from .transvections import RECURSIVE_MAX_RANK, WordScheme
from .verify import (
    DEFAULT_BUDGET,
    girth_probe,
    is_prime,
    length_survey,
    format_survey,
    survey_constants,
    verify_all,
    verify_congruence,
    verify_presentation,
    verify_shift_lemmas,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _rank(text: str) -> int:
    n = int(text)
    if n < 3:
        raise argparse.ArgumentTypeError("rank must be >= 3")
    return n


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slnz", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    schemes = [s.value for s in WordScheme]
    flavors = [f.value for f in Flavor]

    g = sub.add_parser("gen", help="build and export a presentation")
    g.add_argument("--n", type=_rank, required=True)
    g.add_argument("--scheme", choices=schemes, default="balanced")
    g.add_argument("--flavor", choices=flavors, default="base")
    g.add_argument("--format", choices=[f.value for f in ExportFormat], default="text")
    g.add_argument("--out", help="output path (default: stdout)")
    g.add_argument("--no-dedup", action="store_true", help="keep both orientations of commutativity relators")
    g.add_argument("--redundant-torsion", action="store_true", help="finite-finite flavor only: adjoin u^n / u^2n and v^6")

    v = sub.add_parser("verify", help="evaluate every relator exactly")
    src = v.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", type=_rank)
    src.add_argument("--input", help="JSON presentation to verify")
    v.add_argument("--scheme", choices=schemes, default="balanced")
    v.add_argument("--flavor", choices=flavors, default="base")
    v.add_argument("--jobs", type=_positive, default=1)

    c = sub.add_parser("congruence", help="check the reductions mod m")
    c.add_argument("--n", type=_rank, required=True)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--scheme", choices=schemes, default="balanced")

    gi = sub.add_parser("girth", help="BFS the Cayley graph of SL_n(Z/p^k)")
    gi.add_argument("--n", type=_rank, required=True)
    gi.add_argument("--p", type=int, required=True)
    gi.add_argument("--k", type=_positive, default=1)
    gi.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)

    s = sub.add_parser("survey", help="word and relator length table")
    s.add_argument("--n-max", type=_rank, required=True)
    s.add_argument("--scheme", choices=schemes, default="balanced")
    s.add_argument("--relators-up-to", type=int, default=12)
    s.add_argument("--json", action="store_true")

    ct = sub.add_parser("count", help="relator count formula and breakdown")
    ct.add_argument("--n", type=_rank, required=True)
    ct.add_argument("--enumerate", action="store_true", help="cross-check by enumerating index tuples")
    return p


def _usage(parser: argparse.ArgumentParser, msg: str) -> int:
    parser.print_usage(sys.stderr)
    print(f"{parser.prog}: error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _validate(parser, args) -> str | None:
    scheme = getattr(args, "scheme", None)
    n = getattr(args, "n", None) or getattr(args, "n_max", None)
    if scheme == "recursive" and n is not None and n > RECURSIVE_MAX_RANK:
        return f"--scheme recursive is limited to n <= {RECURSIVE_MAX_RANK}"
    if args.command == "gen" and args.redundant_torsion and args.flavor != "finite-finite":
        return "--redundant-torsion requires --flavor finite-finite"
    if args.command == "verify" and args.input and (args.scheme != "balanced" or args.flavor != "base"):
        return "--scheme/--flavor are read from the file when --input is given"
    if args.command == "congruence" and args.m < 2:
        return "--m must be >= 2"
    if args.command == "girth" and not is_prime(args.p):
        return "--p must be prime"
    return None


def cli_main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    problem = _validate(parser, args)
    if problem:
        return _usage(parser, problem)
    return COMMANDS[args.command](args)


def cmd_gen(args) -> int:
    P = build(args.n, args.scheme, args.flavor, dedup=not args.no_dedup, redundant_torsion=args.redundant_torsion)
    if args.out:
        export_to_path(P, args.format, args.out)
    else:
        sys.stdout.write(export(P, args.format).decode("utf-8"))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.input:
        try:
            P = load_json(args.input)
        except (OSError, ValueError, SchemaError) as exc:
            print(f"slnz: cannot load {args.input}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        report = verify_presentation(P, args.jobs)
        report.merge(verify_shift_lemmas(P.rank))
    else:
        report = verify_all(args.n, args.scheme, args.flavor, args.jobs)
    print(report)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_congruence(args) -> int:
    report = verify_congruence(args.n, args.m, args.scheme)
    print(report)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_girth(args) -> int:
    r = girth_probe(args.n, args.p, args.k, args.budget)
    print(f"SL_{r.n}(Z/{r.p}^{r.k}): |G| = {r.group_order}, reached {r.reached}"
          f"{' (complete)' if r.complete else ' (partial: budget exhausted)'}")
    print(f"ord(a) = {r.order_a}; BFS shortest cycle = {r.bfs_cycle}; "
          f"shortest cycle = {r.shortest_cycle}; bound 2n = {r.bound}")
    print("PASS" if r.ok else "FAIL")
    return EXIT_OK if r.ok else EXIT_FAIL


def cmd_survey(args) -> int:
    rows = length_survey(args.n_max, args.scheme, relators_up_to=args.relators_up_to)
    consts = survey_constants(rows)
    if args.json:
        print(json.dumps({"rows": rows, "constants": consts}, indent=2))
    else:
        print(format_survey(rows))
        for k, v in consts.items():
            print(f"# {k} = {v:.4f}")
    return EXIT_OK


def cmd_count(args) -> int:
    n = args.n
    parts = relator_count_breakdown(n)
    total = relator_count_formula(n)
    print(total)
    print(f"{parts['commutativity']} + {parts['steinberg']} + {parts['singletons']}")
    if args.enumerate:
        counted = sum(1 for _ in base_relators(n, "balanced"))
        print(f"enumerated: {counted}")
        return EXIT_OK if counted == total else EXIT_FAIL
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "verify": cmd_verify,
    "congruence": cmd_congruence,
    "girth": cmd_girth,
    "survey": cmd_survey,
    "count": cmd_count,
}


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()

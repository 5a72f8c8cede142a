import argparse
import sys
from pathlib import Path

# Internal Modules
from algebra.errors import AlgebraError
from extensions.cohen import cohen_factor
from fixtures.loader import CHECK_KINDS, corpus_files, load_fixture
from fixtures.lexer import FixtureSyntaxError
from ideals.quotient import local_length
from multiplicity.hilbert_kunz import hk_sequence
from multiplicity.hilbert_samuel import hilbert_samuel
from verify.reports import to_jsonable
from verify.runner import Fixture_runner

"""
main.py

Description:
    Command-line front end. Subcommands load a fixture file and either print
    one computation or run its declared checks.

Exit codes:
    0 all checks pass, 1 a check failed, 2 inconclusive checks only, 3 error.
"""

EXIT_ERROR = 3


def _ring(fixture, name):
    if name not in fixture.rings:
        raise KeyError(f"unknown ring {name!r} in {fixture.fixture_id}")
    return fixture.rings[name].quotient


def _ideal_ring(fixture, name):
    if name not in fixture.ideals:
        raise KeyError(f"unknown ideal {name!r} in {fixture.fixture_id}")
    return fixture.ideals[name]


def cmd_gb(args):
    fixture = load_fixture(args.file)
    ring_name, ideal = _ideal_ring(fixture, args.ideal)
    quotient = _ring(fixture, ring_name)
    gb = (quotient.defining + ideal).groebner()
    print(f"[INFO] reduced Gröbner basis of {args.ideal} + relations of {ring_name} (grevlex):")
    for g in gb.generators:
        print(f"  {g}")
    return 0


def cmd_length(args):
    fixture = load_fixture(args.file)
    quotient = _ring(fixture, args.ring)
    report = local_length(quotient, fixture.ideal(args.ideal, args.ring))
    print(f"global colength: {to_jsonable(report.global_colength)}")
    print(f"away from origin: {report.away_colength}")
    print(f"local length: {to_jsonable(report.local_length)}")
    return 0


def cmd_mult(args):
    fixture = load_fixture(args.file)
    quotient = _ring(fixture, args.ring)
    report = hilbert_samuel(quotient, fixture.ideal(args.ideal, args.ring))
    print(f"e = {report.e}")
    print(f"dim used: {report.dim_used}, stable at t = {report.stabilization_t}")
    for t, value in sorted(report.length_table.items()):
        print(f"  l(Q/I^{t}) = {value}")
    return 0


def cmd_hk(args):
    fixture = load_fixture(args.file)
    quotient = _ring(fixture, args.ring)
    sequence = hk_sequence(quotient, fixture.ideal(args.ideal, args.ring), args.emax)
    for e, estimate in sorted(sequence.estimates.items()):
        print(f"e = {e}: l = {sequence.lengths[e]}, estimate = {estimate}")
    if sequence.capped:
        print(f"[WARN] {sequence.cap_note}")
        return 2
    return 0


def cmd_cohen(args):
    fixture = load_fixture(args.file)
    if args.map not in fixture.maps:
        raise KeyError(f"unknown map {args.map!r} in {fixture.fixture_id}")
    fact = cohen_factor(fixture.maps[args.map].local_map, seed=args.seed)
    print(f"T = {fact.T}")
    print(f"J = {fact.J}")
    print(f"peeled: {', '.join(str(y) for y in fact.peeled) or '-'}")
    print(f"c = {fact.c}, fiber codimension = {fact.fiber_codim}")
    for note in fact.assumptions:
        print(f"[INFO] {note}")
    return 0


def _run(paths, args):
    kinds = set(args.checks.split(",")) if args.checks else None
    unknown = sorted(kinds - CHECK_KINDS) if kinds else []
    if unknown:
        raise KeyError(f"unknown check kind(s): {', '.join(unknown)}")
    runner = Fixture_runner(paths, seed=args.seed, kinds=kinds, e_max=args.emax, t_max=args.tmax,
                            show_progress=not args.quiet)
    report = runner.run()
    for line in report.summary_lines():
        print(line)
    if args.json:
        Path(args.json).write_text(report.to_json(include_timing=True) + "\n", encoding="utf-8")
        print(f"[INFO] report written to {args.json}")
    return report.exit_code()


def cmd_verify(args):
    return _run([args.file], args)


def cmd_fixtures(args):
    files = corpus_files()
    if args.action == "list":
        for path in files:
            fixture = load_fixture(str(path))
            print(f"{fixture.fixture_id}: {len(fixture.checks)} checks")
            for ident in fixture.check_ids():
                print(f"  {ident}")
        return 0
    return _run([str(p) for p in files], args)


def _add_run_options(parser):
    parser.add_argument("--checks", help="comma-separated check kinds to run")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--emax", type=int, help="default Frobenius exponent cap")
    parser.add_argument("--tmax", type=int, help="default freeness probe depth")
    parser.add_argument("--json", help="write the JSON report to this path")
    parser.add_argument("--quiet", action="store_true", help="no progress bar")


def build_parser():
    parser = argparse.ArgumentParser(prog="lech-harness", description="Multiplicities of local rings and flat local maps.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gb", help="reduced Gröbner basis of a declared ideal")
    p.add_argument("file")
    p.add_argument("ideal")
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("length", help="local length of Q/I")
    p.add_argument("file")
    p.add_argument("ring")
    p.add_argument("ideal")
    p.set_defaults(func=cmd_length)

    p = sub.add_parser("mult", help="Hilbert-Samuel multiplicity")
    p.add_argument("file")
    p.add_argument("ring")
    p.add_argument("--ideal", default="m")
    p.set_defaults(func=cmd_mult)

    p = sub.add_parser("hk", help="Hilbert-Kunz estimates")
    p.add_argument("file")
    p.add_argument("ring")
    p.add_argument("--ideal", default="m")
    p.add_argument("--emax", type=int)
    p.set_defaults(func=cmd_hk)

    p = sub.add_parser("cohen", help="Cohen factorization of a declared map")
    p.add_argument("file")
    p.add_argument("map")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_cohen)

    p = sub.add_parser("verify", help="run the checks declared in a fixture file")
    p.add_argument("file")
    _add_run_options(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fixtures", help="list or run the bundled corpus")
    p.add_argument("action", choices=("list", "run-all"))
    _add_run_options(p)
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FixtureSyntaxError, AlgebraError, KeyError, OSError) as exc:
        print(f"[ERROR] {exc}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

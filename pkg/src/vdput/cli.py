"""``vdput`` command line: check, generate, coeffs, eval.

Exit codes: 0 pass, 1 check failed (witness in report), 2 input or parameter
error, 3 internal inconsistency between two decision routes.
"""

from __future__ import annotations

import argparse
import random
import sys

from vdput import analysis, construct
from vdput.errors import NotCompatible, PadicError
from vdput.fileformat import format_function_file, parse_function_file, render_report
from vdput.padic import PadicInt
from vdput.vdp import CompatibilityWitness, FunctionTable, VdpSeries, coefficients, normalize, to_table

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class _InputError(Exception):
    pass


def _read(path: str, max_table: int | None):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_function_file(text, max_table)


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _as_table(obj) -> FunctionTable:
    return obj if isinstance(obj, FunctionTable) else to_table(obj)


def cmd_check(args) -> int:
    f = _as_table(_read(args.input, args.max_table))
    internal = None
    if args.compat:
        name, verdict = "compat", analysis.check_compatible(f)
    elif args.local is not None:
        name, verdict = "local", analysis.check_measure_preserving_local(f, args.local)
    elif args.oracle:
        name = "oracle"
        try:
            verdict = analysis.oracle_measure_preserving(f)
        except NotCompatible:
            verdict = analysis.check_compatible(f)
    elif args.p2:
        name, verdict = "p2", analysis.check_mp_p2(f)
        general = analysis.check_measure_preserving(f)
        if general.outcome != verdict.outcome:
            internal = f"p=2 criterion says {verdict.outcome}, general criterion says {general.outcome}"
    else:
        name, verdict = "mp", analysis.check_measure_preserving(f)
        if verdict.condition is not analysis.Condition.COMPAT:
            oracle = analysis.oracle_measure_preserving(f)
            if oracle.outcome != verdict.outcome:
                internal = f"criterion says {verdict.outcome}, permutation oracle says {oracle.outcome}"
    _write(render_report(name, verdict), args.out)
    if internal is not None:
        print(f"internal inconsistency: {internal}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_PASS if verdict.outcome else EXIT_FAIL


def generate(p: int, K: int, seed: int, family: str, s: int = 1) -> FunctionTable:
    """Deterministic measure-preserving table for the given family and seed."""
    rng = random.Random(seed)
    if family == "additive":
        S = construct.random_substitution_family(p, K, rng.getrandbits(64))
        h = construct.random_compatible(p, K, rng.getrandbits(64))
        return construct.build_additive_mp(S, h)
    if family == "affine":
        g = construct.random_compatible(p, K, rng.getrandbits(64))
        mod = p**K
        d = PadicInt(p, K, rng.randrange(mod))
        c = PadicInt(p, K, rng.randrange(mod // p) * p + rng.randrange(1, p))
        return construct.build_affine_mp(d, c, g)
    if family == "example41":
        return construct.example_section41(p, s, K)
    raise ValueError(f"unknown family {family!r}")


def cmd_generate(args) -> int:
    f = generate(args.p, args.K, args.seed, args.family, args.s)
    _write(format_function_file(f), args.out)
    return EXIT_PASS


def cmd_coeffs(args) -> int:
    f = _read(args.input, args.max_table)
    if not isinstance(f, FunctionTable):
        raise _InputError("coeffs expects a 'repr values' file")
    series = coefficients(f)
    text = format_function_file(series)
    b = normalize(series)
    if isinstance(b, CompatibilityWitness):
        note = (
            f"# not compatible: B_{b.m} has valuation {b.valuation} "
            f"< required {b.scale}\n"
        )
    else:
        note = "# normalized b_m: " + " ".join(str(x) for x in b) + "\n"
    if args.out is None or args.out == "-":
        _write(text + note, None)
    else:
        _write(text, args.out)
        sys.stdout.write(note)
    return EXIT_PASS


def cmd_eval(args) -> int:
    s = _read(args.input, args.max_table)
    if not isinstance(s, VdpSeries):
        raise _InputError("eval expects a 'repr coeffs' file")
    _write(format_function_file(to_table(s)), args.out)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vdput",
        description="Van der Put analysis of compatible maps of p-adic integers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def io_args(p, with_input=True):
        if with_input:
            p.add_argument("input", help="function file ('-' for stdin)")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument(
            "--max-table", type=int, default=None, help="override the p^K table-size limit"
        )

    check = sub.add_parser("check", help="decide compatibility or measure preservation")
    io_args(check)
    mode = check.add_mutually_exclusive_group()
    mode.add_argument("--mp", action="store_true", help="coefficient criterion (default)")
    mode.add_argument("--compat", action="store_true", help="1-Lipschitz check only")
    mode.add_argument("--local", type=int, metavar="N", help="locally compatible variant from level N")
    mode.add_argument("--oracle", action="store_true", help="brute-force bijectivity mod p^k, k <= K")
    mode.add_argument("--p2", action="store_true", help="dyadic criterion, cross-checked")
    check.set_defaults(func=cmd_check)

    gen = sub.add_parser("generate", help="emit a measure-preserving function table")
    gen.add_argument("--p", type=int, required=True)
    gen.add_argument("--K", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--family", choices=["additive", "affine", "example41"], default="additive")
    gen.add_argument("--s", type=int, default=1, help="exponent for example41")
    io_args(gen, with_input=False)
    gen.set_defaults(func=cmd_generate)

    co = sub.add_parser("coeffs", help="values file -> van der Put coefficient file")
    io_args(co)
    co.set_defaults(func=cmd_coeffs)

    ev = sub.add_parser("eval", help="coefficient file -> values file")
    io_args(ev)
    ev.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    try:
        return args.func(args)
    except (PadicError, _InputError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

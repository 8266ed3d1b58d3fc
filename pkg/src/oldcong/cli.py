"""Command-line entry point: ``oldcong <subcommand> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import congruence as cong
from .arith import sturm_bound
from .curves import coefficient_vector
from .documents import dumps_report, load_curve
from .errors import InputError, MathematicalRejection, MissingDataError, UsageError
from .modsym import integral_basis
from .oldspace import oldspace_matrix


def _fmt_row(row) -> str:
    return " ".join(str(x) for x in row)


def _print_report(report, out):
    print(f"level {report.level}  Sturm bound {report.sturm_bound}  method {report.method}", file=out)
    if not report.oldspace_saturated:
        print("warning: old-space rows are not saturated; using their saturation", file=out)
    print("candidates:", file=out)
    if not report.candidates:
        print("  (none)", file=out)
    for c in report.candidates:
        mark = "yes" if c.p in report.congruence_primes else "no"
        print(f"  p={c.p:<6} {mark:<4} {', '.join(c.provenance)}", file=out)
    primes = ", ".join(map(str, report.congruence_primes)) or "(none)"
    print(f"congruence primes: {primes}", file=out)
    if report.congruence_exponent is not None:
        print(f"congruence exponent: {report.congruence_exponent}", file=out)
    rows = report.membership_matrix.rows if report.membership_matrix is not None else ()
    for p, w in sorted(report.witnesses.items()):
        terms = " + ".join(f"{c}*r{i}" for i, c in enumerate(w) if c) or "0"
        print(f"witness mod {p}: v(f) = {terms}", file=out)
    if rows and report.witnesses:
        for i, r in enumerate(rows):
            print(f"  r{i} = {_fmt_row(r)}", file=out)


def cmd_sturm_bound(args, out):
    print(sturm_bound(args.N), file=out)


def cmd_basis(args, out):
    prec = args.prec if args.prec is not None else sturm_bound(args.N)
    for row in integral_basis(args.N, prec).rows:
        print(_fmt_row(row), file=out)


def cmd_oldspace_matrix(args, out):
    M = oldspace_matrix(args.N)
    for row, (src, d) in zip(M.matrix.rows, M.provenance):
        print(f"{_fmt_row(row)}    # level {src}, d={d}", file=out)
    if not M.is_saturated:
        print("# rows are not saturated in Z^B", file=out)


def cmd_check_prime(args, out):
    curve = load_curve(args.curve)
    B = sturm_bound(curve.level)
    if B == 0:
        raise MathematicalRejection(f"level {curve.level} has Sturm bound 0")
    M = oldspace_matrix(curve.level, B)
    vf = coefficient_vector(curve, B)
    A = M.matrix if M.is_saturated else cong.saturate(M.matrix)
    ok, w = cong.is_congruence_prime(vf, A, args.p)
    print("yes" if ok else "no", file=out)
    if ok:
        print("witness: " + _fmt_row(w), file=out)


def cmd_congruence_primes(args, out):
    curve = load_curve(args.curve)
    report = cong.congruence_primes(curve, args.method)
    if curve.tamagawa is not None and curve.torsion_order is not None:
        cong.check_conjecture1(report, curve)
    if args.json:
        text = dumps_report(report)
        if args.json == "-":
            out.write(text)
            return
        Path(args.json).write_text(text)
    _print_report(report, out)


def cmd_congruence_number(args, out):
    curve = load_curve(args.curve)
    report = cong.congruence_primes(curve, "smith")
    print(report.congruence_exponent, file=out)


def cmd_check_conjecture1(args, out):
    curve = load_curve(args.curve)
    report = cong.congruence_primes(curve, args.method)
    verdicts = cong.check_conjecture1(report, curve)
    if not verdicts:
        print("no odd prime divides the Tamagawa product: consistent", file=out)
    for v in verdicts:
        print(f"ell={v.ell}: {v.verdict} ({v.reason})", file=out)
    return 1 if any(v.verdict != "consistent" for v in verdicts) else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oldcong",
        description="Congruence primes between an elliptic-curve newform and the old space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sturm-bound", help="print the Sturm bound of Gamma0(N)")
    p.add_argument("N", type=int)
    p.set_defaults(func=cmd_sturm_bound)

    p = sub.add_parser("basis", help="integral basis of S2(Gamma0(N)) as coefficient rows")
    p.add_argument("N", type=int)
    p.add_argument("--prec", type=int)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("oldspace-matrix", help="old-space spanning rows with provenance")
    p.add_argument("N", type=int)
    p.set_defaults(func=cmd_oldspace_matrix)

    p = sub.add_parser("check-prime", help="is p a congruence prime for the curve?")
    p.add_argument("--curve", required=True)
    p.add_argument("-p", type=int, required=True)
    p.set_defaults(func=cmd_check_prime)

    p = sub.add_parser("congruence-primes", help="all congruence primes with the old space")
    p.add_argument("--curve", required=True)
    p.add_argument("--method", choices=cong.METHODS, default="smith")
    p.add_argument("--json", metavar="OUT", help="write the JSON report here ('-' for stdout)")
    p.set_defaults(func=cmd_congruence_primes)

    p = sub.add_parser("congruence-number", help="saturation index of Z v(f) + old lattice")
    p.add_argument("--curve", required=True)
    p.set_defaults(func=cmd_congruence_number)

    p = sub.add_parser("check-conjecture1", help="odd Tamagawa primes vs torsion and congruences")
    p.add_argument("--curve", required=True)
    p.add_argument("--method", choices=cong.METHODS, default="smith")
    p.set_defaults(func=cmd_check_conjecture1)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "N", 1) < 1:
        print("error: level must be a positive integer", file=sys.stderr)
        return 2
    try:
        return args.func(args, out) or 0
    except (InputError, MissingDataError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MathematicalRejection as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return 1


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()

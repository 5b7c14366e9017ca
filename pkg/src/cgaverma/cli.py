"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 bad flags or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence, TextIO

from . import acceptance
from .combinatorics import Partition
from .polyring import MultiPoly, format_scalar, parse_scalar
from .solver import (
    basis_to_json,
    brute_force_kernel,
    closed_kernel_basis,
    s_poly,
    t0_poly,
    t_lambda,
    t_poly,
    xu_kernel_basis,
)
from .symfunc import e_in_p, reduce_p, reduce_p_mod_p1
from .verma import char_F, char_M, singular_vectors, verify_singular
from .weyl import check_homomorphism

__all__ = ["run", "main", "build_parser"]


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational 'a' or 'a/b', got {text!r}")


def partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        return Partition()
    try:
        return Partition(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}: {exc}")


def positive(text: str) -> int:
    n = nonneg(text)
    if n < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cgaverma",
        description="Singular vectors of Verma modules over conformal Galilei algebras.",
    )
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("singvecs", parents=[fmt], help="singular vectors of M_ell(delta, p)")
    p.add_argument("--ell", type=positive, required=True)
    p.add_argument("--delta", type=rational, required=True)
    p.add_argument("--p", type=rational, required=True)
    p.add_argument("--max-grade", type=positive, required=True)
    p.add_argument("--include-lowest", action="store_true")

    p = sub.add_parser("kernel", parents=[fmt], help="basis of ker T_1^c at one grade")
    p.add_argument("--ell", type=positive, required=True)
    p.add_argument("--c", type=rational, required=True)
    p.add_argument("--grade", type=nonneg, required=True)
    p.add_argument("--method", choices=("closed", "brute", "xu"), default="brute")

    p = sub.add_parser("verify", parents=[fmt], help="check a JSON polynomial is singular")
    p.add_argument("--ell", type=positive, required=True)
    p.add_argument("--delta", type=rational, required=True)
    p.add_argument("--p", type=rational, required=True)
    p.add_argument("--poly", required=True, help="JSON polynomial file, '-' for stdin")

    p = sub.add_parser("basis", parents=[fmt], help="one closed-form polynomial")
    p.add_argument("kind", choices=("t", "t0", "s"))
    p.add_argument("--k", type=positive)
    p.add_argument("--c", type=rational, default=Fraction(0))
    p.add_argument("--r", type=nonneg)
    p.add_argument("--partition", type=partition)

    p = sub.add_parser("check-homomorphism", parents=[fmt], help="bracket preservation")
    p.add_argument("--ell", type=positive, required=True)
    p.add_argument("--delta", type=rational, required=True)
    p.add_argument("--p", type=rational, required=True)
    p.add_argument("--rep", choices=("pi", "pi_hat"), default="pi")

    p = sub.add_parser("character", parents=[fmt], help="compare char F and char M")
    p.add_argument("--c", type=rational, required=True)
    p.add_argument("--order", type=nonneg, required=True)

    p = sub.add_parser("newton", parents=[fmt], help="power-sum expressions")
    p.add_argument("kind", choices=("e2p", "p-reduce", "p-reduce-mod-p1"))
    p.add_argument("--n", type=positive, help="index for e2p")
    p.add_argument("--k", type=positive)
    p.add_argument("--r", type=positive)

    p = sub.add_parser("selftest", parents=[fmt], help="run the acceptance suite")
    p.add_argument("--max-grade", type=positive, default=8)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _dump(obj, out: TextIO):
    out.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _cmd_singvecs(args, out) -> int:
    vecs = singular_vectors(
        args.ell, args.delta, args.p, args.max_grade, include_lowest=args.include_lowest
    )
    failed = 0
    records = []
    for v in vecs:
        r = verify_singular(args.ell, args.delta, args.p, v.z_form)
        good = r.ok and (r.epsilon, r.q) == v.character
        failed += not good
        records.append((v, good))
    if args.format == "json":
        _dump([dict(v.to_json(), verified=good) for v, good in records], out)
    else:
        for v, good in records:
            eps, q = v.character
            out.write(
                f"grade {v.grade} label {v.label} epsilon={format_scalar(eps)} q={format_scalar(q)}"
                f" {'verified' if good else 'FAILED'}\n"
                f"  z: {v.z_form}\n  P: {v.enveloping_form}\n"
            )
        out.write(f"{len(vecs)} singular vectors\n")
    return 1 if failed else 0


def _cmd_kernel(args, out) -> int:
    if args.method == "brute":
        polys = brute_force_kernel(args.ell, args.c, args.grade)
        labels = [None] * len(polys)
    elif args.method == "closed":
        pairs = closed_kernel_basis(args.ell, args.c, args.grade)
        labels = [lab for lab, _ in pairs]
        polys = [f for _, f in pairs]
    else:
        if not args.c:
            raise UsageError("--method xu needs c != 0")
        pairs = xu_kernel_basis(args.ell, args.c, args.grade)
        labels = [lab for lab, _ in pairs]
        polys = [f for _, f in pairs]
    if args.format == "json":
        _dump(basis_to_json(polys, args.c, args.grade, args.method, args.ell), out)
    else:
        for lab, f in zip(labels, polys):
            out.write((f"{_label_text(lab)}: " if lab is not None else "") + f"{f}\n")
        out.write(f"dimension {len(polys)}\n")
    return 0


def _label_text(lab) -> str:
    if len(lab) == 1 and isinstance(lab[0], Partition):
        return f"t{list(lab[0])}"
    if len(lab) == 2 and isinstance(lab[1], Partition):
        return f"s^{lab[0]}{list(lab[1])}"
    return f"seed {MultiPoly('z', {lab: 1})}"


def _cmd_verify(args, out) -> int:
    try:
        text = sys.stdin.read() if args.poly == "-" else open(args.poly).read()
        f = MultiPoly.from_json(json.loads(text), family="z")
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read polynomial: {exc}")
    r = verify_singular(args.ell, args.delta, args.p, f)
    if args.format == "json":
        _dump(r.to_json(), out)
    elif r.ok:
        out.write(f"singular: epsilon={format_scalar(r.epsilon)} q={format_scalar(r.q)}\n")
    else:
        out.write(f"not singular: fails at {r.failed}\n")
        if r.residual is not None:
            out.write(f"  residual: {r.residual}\n")
    return 0 if r.ok else 1


def _cmd_basis(args, out) -> int:
    if args.kind == "t":
        if args.partition is not None:
            f = t_lambda(args.partition, args.c)
        elif args.k is not None:
            f = t_poly(args.k, args.c)
        else:
            raise UsageError("basis t needs --k or --partition")
    elif args.kind == "t0":
        if args.k is None:
            raise UsageError("basis t0 needs --k")
        f = t0_poly(args.k)
    else:
        if args.r is None or args.partition is None:
            raise UsageError("basis s needs --r and --partition")
        f = s_poly(args.r, args.partition)
    if args.format == "json":
        _dump(f.to_json(), out)
    else:
        out.write(f"{f}\n")
    return 0


def _cmd_check(args, out) -> int:
    r = check_homomorphism(args.ell, args.delta, args.p, args.rep)
    if args.format == "json":
        _dump(r.to_json(), out)
    else:
        out.write(r.summary() + "\n")
    return 0 if r.ok else 1


def _cmd_character(args, out) -> int:
    f, m = char_F(args.c, args.order), char_M(args.c, args.order)
    equal = f == m
    if args.format == "json":
        _dump({"c": format_scalar(args.c), "order": args.order, "char_F": f.coeffs,
               "char_M": m.coeffs, "equal": equal}, out)
    else:
        out.write(f"char F: {f}\nchar M: {m}\n{'EQUAL' if equal else 'UNEQUAL'}\n")
    return 0 if equal else 1


def _cmd_newton(args, out) -> int:
    if args.kind == "e2p":
        if args.n is None:
            raise UsageError("newton e2p needs --n")
        expr = e_in_p(args.n)
    else:
        if args.k is None or args.r is None:
            raise UsageError(f"newton {args.kind} needs --k and --r")
        fn = reduce_p if args.kind == "p-reduce" else reduce_p_mod_p1
        expr = fn(args.k, args.r)
    if args.format == "json":
        _dump(expr.to_json(), out)
    else:
        out.write(f"{expr}\n")
    return 0


def _cmd_selftest(args, out) -> int:
    results = acceptance.run_all(max_grade=args.max_grade, seed=args.seed)
    if args.format == "json":
        _dump([{"criterion": r.number, "name": r.name, "ok": r.ok, "detail": r.detail}
               for r in results], out)
    else:
        for r in results:
            out.write(r.line() + "\n")
        out.write(f"{sum(r.ok for r in results)}/{len(results)} criteria passed\n")
    return 0 if all(r.ok for r in results) else 1


COMMANDS = {
    "singvecs": _cmd_singvecs,
    "kernel": _cmd_kernel,
    "verify": _cmd_verify,
    "basis": _cmd_basis,
    "check-homomorphism": _cmd_check,
    "character": _cmd_character,
    "newton": _cmd_newton,
    "selftest": _cmd_selftest,
}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ValueError) as exc:
        err.write(f"cgaverma {args.command}: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())

"""Command-line front end for verifying the dihedral torus actions.

Exit codes: 0 verification succeeded, 1 verification failed, 2 usage or
parse error, 3 oracle enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Sequence

from .analysis import (
    OracleBudgetExceeded,
    analyze_group,
    exists_fixed_point,
    is_translation,
    order,
    torsion_fixed_points_bruteforce,
)
from .certificate import (
    corollary_document,
    range_document,
    theorem_document,
    write_json,
)
from .dihedral import (
    ambient_lattice,
    realified_action,
    verify_corollary,
    verify_theorem,
)
from .torus import AffineAuto
from .words import WordParseError, evaluate_word, parse_word

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dihedral-torus",
        description=(
            "Construct dihedral group actions on quotients of products of "
            "elliptic curves, in exact rational arithmetic, and verify that "
            "they are free and contain no translations."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser(
        "verify",
        help="verify the order-8n action for one n (or --range for n = 1..N)",
    )
    verify.add_argument("--n", type=int, help="family parameter n >= 1")
    verify.add_argument("--json", metavar="PATH", help="write a JSON certificate")
    verify.add_argument(
        "--range",
        type=int,
        dest="range_max",
        metavar="N",
        help="verify every n from 1 to N and aggregate the results",
    )
    verify.add_argument(
        "--closure-cap",
        type=int,
        dest="closure_cap",
        metavar="C",
        help="abort if the group closure exceeds C elements (default 32n)",
    )
    verify.add_argument(
        "--oracle",
        type=int,
        metavar="D",
        help="cross-check every fixed-point decision by brute force over "
        "points with coordinates in (1/D)Z",
    )

    corollary = sub.add_parser(
        "corollary",
        help="verify the embedded free D_k action of order 2k",
    )
    corollary.add_argument("--k", type=int, required=True, help="dihedral index k >= 1")
    corollary.add_argument("--json", metavar="PATH", help="write a JSON certificate")

    element = sub.add_parser(
        "element",
        help="inspect one group word on both the ambient product and the quotient",
    )
    element.add_argument("--n", type=int, required=True, help="family parameter n >= 1")
    element.add_argument(
        "--word",
        required=True,
        help='word in r and s, e.g. "r^2 s" (rightmost factor applied first)',
    )
    element.add_argument(
        "--oracle",
        type=int,
        metavar="D",
        help="also enumerate torsion fixed points at denominator D",
    )
    return parser


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _print_certificate(cert) -> None:
    print(
        f"n={cert.n}: group order {cert.group_order_actual} "
        f"(expected {cert.group_order_expected}) on an abelian variety "
        f"of dimension {cert.dimension}"
    )
    for i, step in enumerate(cert.steps, 1):
        status = "PASS" if step.passed else "FAIL"
        print(f"  step{i} {step.name}: {status}")
        if not step.passed:
            for check, ok in step.checks:
                if not ok:
                    print(f"    failed: {check}")
    free = "yes" if cert.is_free else "NO"
    transl = "none" if cert.has_no_translations else "PRESENT"
    print(f"  free action: {free}    translations: {transl}")
    if cert.failure_reason:
        print(f"  aborted: {cert.failure_reason}")
    verdict = "verified" if cert.theorem_verified else "FAILED"
    print(f"  certificate: {verdict}")


def _oracle_sweep(n: int, denominator: int, closure_cap: int | None) -> list[str]:
    """Words whose brute-force fixed-point answer disagrees (expected: none)."""
    rotation, reflection = realified_action(n)
    kwargs = {}
    if closure_cap is not None:
        kwargs["closure_cap"] = closure_cap
    analysis = analyze_group([rotation, reflection], **kwargs)
    mismatches = []
    for elem, rep in zip(analysis.elements, analysis.reports):
        points = torsion_fixed_points_bruteforce(elem.auto, denominator)
        if bool(points) != rep.has_fixed_point:
            mismatches.append(rep.word)
    return mismatches


def cmd_verify(args) -> int:
    if args.n is None and args.range_max is None:
        return _usage_error("one of --n or --range is required")
    if args.n is not None and args.range_max is not None:
        return _usage_error("--n and --range are mutually exclusive")
    if args.n is not None and args.n < 1:
        return _usage_error("--n must be a positive integer")
    if args.range_max is not None and args.range_max < 1:
        return _usage_error("--range must be a positive integer")
    if args.oracle is not None and args.oracle < 1:
        return _usage_error("--oracle denominator must be a positive integer")

    params = {
        "n": args.n,
        "range": args.range_max,
        "closure_cap": args.closure_cap,
        "oracle": args.oracle,
    }
    start = time.perf_counter()
    ns = [args.n] if args.n is not None else list(range(1, args.range_max + 1))
    certs = [verify_theorem(n, closure_cap=args.closure_cap) for n in ns]
    ok = all(c.theorem_verified for c in certs)

    for cert in certs:
        _print_certificate(cert)

    if args.oracle is not None:
        for cert in certs:
            mismatches = _oracle_sweep(cert.n, args.oracle, args.closure_cap)
            if mismatches:
                ok = False
                print(
                    f"  oracle (D={args.oracle}): DISAGREES on "
                    + ", ".join(repr(w) for w in mismatches)
                )
            else:
                print(
                    f"  oracle (D={args.oracle}): fixed-point decisions "
                    f"confirmed for all {cert.group_order_actual} elements "
                    f"of n={cert.n}"
                )

    elapsed_ms = (time.perf_counter() - start) * 1000.0
    print(f"elapsed: {elapsed_ms:.1f} ms")

    if args.json:
        if args.range_max is not None:
            doc = range_document(certs, params)
        else:
            doc = theorem_document(certs[0], params)
        write_json(args.json, doc)
        print(f"certificate written to {args.json}")
    return EXIT_OK if ok else EXIT_VERIFICATION_FAILED


def cmd_corollary(args) -> int:
    if args.k < 1:
        return _usage_error("--k must be a positive integer")
    start = time.perf_counter()
    cert = verify_corollary(args.k)
    print(
        f"k={cert.k}: D_{cert.k} of order {cert.group_order_actual} "
        f"(expected {cert.group_order_expected}) embedded at n={cert.n}, "
        f"ambient dimension {cert.ambient_dimension}"
    )
    checks = [
        ("rotation generator has order k", cert.rotation_order_ok),
        ("reflection has order 2", cert.reflection_order_ok),
        ("closure is dihedral of order 2k", cert.closure_ok),
        ("no translations", cert.has_no_translations),
        ("free action", cert.is_free),
    ]
    for name, passed in checks:
        print(f"  {name}: {'PASS' if passed else 'FAIL'}")
    if cert.failure_reason:
        print(f"  aborted: {cert.failure_reason}")
    verdict = "verified" if cert.verified else "FAILED"
    print(f"  certificate: {verdict}")
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    print(f"elapsed: {elapsed_ms:.1f} ms")
    if args.json:
        write_json(args.json, corollary_document(cert, {"k": args.k}))
        print(f"certificate written to {args.json}")
    return EXIT_OK if cert.verified else EXIT_VERIFICATION_FAILED


def _print_view(name: str, auto: AffineAuto, denominator: int | None) -> bool:
    print(f"{name}:")
    coords = ", ".join(str(c) for c in auto.translation)
    print(f"  translation (canonical): ({coords})")
    print(f"  order: {order(auto)}")
    print(f"  is translation element: {'yes' if is_translation(auto) else 'no'}")
    has_fp = exists_fixed_point(auto)
    print(f"  has fixed point: {'yes' if has_fp else 'no'}")
    if denominator is None:
        return True
    points = torsion_fixed_points_bruteforce(auto, denominator)
    agree = bool(points) == has_fp
    print(
        f"  oracle (D={denominator}): {len(points)} torsion fixed point(s) "
        f"-> {'agrees' if agree else 'DISAGREES'}"
    )
    return agree


def cmd_element(args) -> int:
    if args.n < 1:
        return _usage_error("--n must be a positive integer")
    if args.oracle is not None and args.oracle < 1:
        return _usage_error("--oracle denominator must be a positive integer")
    try:
        word = parse_word(args.word)
    except WordParseError as exc:
        return _usage_error(str(exc))

    n = args.n
    ambient = ambient_lattice(n)
    rot_ambient, refl_ambient = realified_action(n, ambient)
    rot_quot, refl_quot = realified_action(n)
    g_ambient = evaluate_word(word, rot_ambient, refl_ambient)
    g_quot = evaluate_word(word, rot_quot, refl_quot)

    rendered = str(word) if len(word) else "(identity)"
    print(f"word: {rendered}   n={n}, ambient dimension {2 * n + 1}")
    print(f"linear part ({ambient.m}x{ambient.m}):")
    entries = [[str(e) for e in row] for row in g_ambient.linear.rows]
    width = max(len(e) for row in entries for e in row)
    for row in entries:
        print("  " + " ".join(e.rjust(width) for e in row))
    ok = _print_view("ambient product (mod Z^m)", g_ambient, args.oracle)
    ok &= _print_view("quotient by w", g_quot, args.oracle)
    return EXIT_OK if ok else EXIT_VERIFICATION_FAILED


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "corollary":
            return cmd_corollary(args)
        return cmd_element(args)
    except OracleBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: attack, table, log, exp, enumerate, wp-coeffs, hec-demo.
Inputs are small JSON files (curves as {"a": "-1", "b": "1/4"}, points as
{"x": "2", "y": "5/2"} or "infinity"); every number in an output artifact
is a decimal string, and identical invocations produce byte-identical
artifacts.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import curve as curvemod
from . import ecdlp, hec, logmap, wpseries
from .arith import format_rational, parse_rational
from .errors import (
    AttackError,
    CutoffError,
    HypothesisError,
    NonIntegralError,
    NotAFieldError,
    PrecisionError,
    ScaleError,
)
from .poly import QQ, Poly

EXIT_CODES = """\
exit codes:
  0  success
  2  usage error (bad flags)
  3  input error (unparseable file, invalid curve or point)
  4  hypothesis violation (bad reduction, t <= 2, point not in image, ...)
  5  non-integral value at p
  6  precision exhausted or series cutoff not certified
  7  operation needs a field, got Z/p^k
  8  enumeration ceiling exceeded (see PADICLIFT_ENUM_CEILING / PADICLIFT_FP_CEILING)
  9  attack failed (k_max exhausted or inconsistent inputs)
"""

_ERROR_EXITS = [
    (CutoffError, 6),
    (NonIntegralError, 5),
    (PrecisionError, 6),
    (NotAFieldError, 7),
    (ScaleError, 8),
    (AttackError, 9),
    (HypothesisError, 4),
]

# the worked example: y^2 = x^3 - x + 1/4 with P = (2, 5/2), Q = 31*P, p = 3
EXAMPLE_CURVE = {"a": "-1", "b": "1/4"}
EXAMPLE_P = {"x": "2", "y": "5/2"}
EXAMPLE_H = 31
EXAMPLE_PRIME = 3

EXAMPLE_HEC_F = "x^5 + 2*x^4 - 13*x^3 - 14*x^2 + 24*x"
EXAMPLE_HEC_D = {"u": "x - 4", "v": "24"}
EXAMPLE_HEC_PRIME = 11


def _enum_ceiling() -> int:
    return int(os.environ.get("PADICLIFT_ENUM_CEILING", curvemod.ENUM_CEILING))


def _fp_ceiling() -> int:
    return int(os.environ.get("PADICLIFT_FP_CEILING", curvemod.FP_ENUM_CEILING))


def _write_artifact(path: str | None, text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SystemExit(_fail(f"cannot read {path}: {exc}", 3))


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _example_instance():
    curve = curvemod.curve_from_dict(EXAMPLE_CURVE)
    P = curvemod.point_from_obj(EXAMPLE_P)
    Q = curvemod.ec_scalar_mul(EXAMPLE_H, P, curve)
    return curve, P, Q


def _attack_params(args) -> ecdlp.AttackParams:
    if getattr(args, "example", None):
        curve, P, Q = _example_instance()
        return ecdlp.AttackParams(curve=curve, P=P, Q=Q, p=EXAMPLE_PRIME, k_max=args.kmax)
    if not (args.curve and args.P and args.Q):
        raise SystemExit(_fail("need --curve, --P and --Q (or --example paper)", 2))
    curve = curvemod.curve_from_dict(_load_json(args.curve))
    P = curvemod.point_from_obj(_load_json(args.P))
    Q = curvemod.point_from_obj(_load_json(args.Q))
    return ecdlp.AttackParams(curve=curve, P=P, Q=Q, p=args.p, k_max=args.kmax)


def _cmd_attack(args) -> int:
    params = _attack_params(args)
    h, transcript = ecdlp.run_attack(params)
    if args.format == "tsv":
        text = ecdlp.transcript_to_tsv(transcript)
    else:
        text = json.dumps(ecdlp.transcript_to_dict(transcript, params), indent=2, sort_keys=True) + "\n"
    _write_artifact(args.out, text)
    if args.out:
        print(f"h = {h} (t = {transcript.t}, h_bar = {transcript.h_bar}); transcript in {args.out}")
    return 0


def _cmd_table(args) -> int:
    params = _attack_params(args)
    _, transcript = ecdlp.run_attack(params)
    _write_artifact(args.out, ecdlp.transcript_to_tsv(transcript))
    return 0


def _cmd_log(args) -> int:
    curve = curvemod.curve_from_dict(_load_json(args.curve))
    P_raw = _load_json(args.point)
    point = curvemod.qmod_k(curvemod.point_from_obj(P_raw), args.p, args.k)
    result = logmap.log_map(point, curve)
    print(f"z = {result.z}")
    print(f"certified_precision = {result.certified_precision} (modulo {args.p}^{result.certified_precision})")
    print(f"verified = {str(result.verified).lower()}")
    return 0


def _cmd_exp(args) -> int:
    if args.example:
        curve, _, _ = _example_instance()
    elif args.curve:
        curve = curvemod.curve_from_dict(_load_json(args.curve))
    else:
        raise SystemExit(_fail("need --curve or --example", 2))
    point = wpseries.exp_map(args.z, curve, args.p, args.k)
    obj = {"Z": str(point.Z), "X": str(point.X), "Y": str(point.Y), "modulus": f"{args.p}^{args.k}"}
    _write_artifact(args.out, json.dumps(obj, indent=2, sort_keys=True) + "\n")
    return 0


def _cmd_enumerate(args) -> int:
    curve = curvemod.curve_from_dict(_load_json(args.curve))
    points = curvemod.enumerate_points_mod_pk(curve, args.p, args.k, ceiling=_enum_ceiling())
    lines = [f"count: {len(points)}"]
    lines += [f"[{pt.Z}:{pt.X}:{pt.Y}]" for pt in points]
    _write_artifact(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_wp_coeffs(args) -> int:
    a = parse_rational(args.a)
    b = parse_rational(args.b)
    coeffs = wpseries.wp_coeffs(a, b, args.count + 1)
    lines = [format_rational(coeffs.coeff(l)) for l in range(2, args.count + 2)]
    _write_artifact(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_hec_demo(args) -> int:
    builtin = not args.curve and not args.D and args.p == EXAMPLE_HEC_PRIME
    if args.curve:
        data = _load_json(args.curve)
        f = Poly.parse(str(data["f"]), QQ)
        h = Poly.parse(str(data.get("h", "0")), QQ)
        curve = hec.HyperellipticCurve(f, h)
    else:
        curve = hec.HyperellipticCurve(Poly.parse(EXAMPLE_HEC_F, QQ), Poly.zero(QQ))
    if args.D:
        data = _load_json(args.D)
        D = hec.MumfordDivisor(Poly.parse(str(data["u"]), QQ), Poly.parse(str(data["v"]), QQ))
    else:
        D = hec.MumfordDivisor(
            Poly.parse(EXAMPLE_HEC_D["u"], QQ), Poly.parse(EXAMPLE_HEC_D["v"], QQ)
        )
    p = args.p

    lines = []
    failures = 0

    def check(label: str, ok: bool, detail: str) -> None:
        nonlocal failures
        lines.append(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        if not ok:
            failures += 1

    check("good reduction", hec.hec_good_reduction(hec.complete_square(curve), p), f"p = {p}")
    curve_p = hec.reduce_curve(curve, p, 1)
    D_p = hec.divisor_reduce_mod(D, p, 1)
    order = 1
    acc = D_p
    while not acc.is_neutral and order <= 10_000:
        acc = hec.cantor_add(acc, D_p, curve_p)
        order += 1
    check(
        "reduced divisor has finite small order",
        acc.is_neutral,
        f"ord(D mod {p}) = {order}",
    )
    h_star, evidence = hec.noncommutativity_witness(curve, D, p, args.hmax)
    if h_star is None:
        check("mismatch search", not builtin, f"no mismatch up to h = {args.hmax}")
    else:
        check("mismatch found", True, str(evidence))
        lhs_validity = hec.mumford_valid(evidence.reduced_after, curve_p)
        check(
            "reduced side flagged by validity check",
            not lhs_validity.is_valid,
            f"reduce({h_star}*D): {lhs_validity}",
        )
    if builtin:
        check("order matches the worked example", order == 16, f"expected 16, got {order}")
        check("mismatch index matches the worked example", h_star == 8, f"expected 8, got {h_star}")
        full = hec.divisor_reduce_mod(hec.cantor_scalar_mul(order, D, curve), p, 1)
        gcd_report = hec.mumford_valid(full, curve_p)
        check(
            "reduce(ord*D) fails the gcd condition",
            not gcd_report.gcd_ok,
            f"reduce({order}*D) = {full}: {gcd_report}",
        )
    text = "\n".join(lines) + "\n"
    _write_artifact(args.out, text)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padiclift",
        description=__doc__,
        epilog=EXIT_CODES,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common_attack(sp):
        sp.add_argument("--curve", help="curve JSON file")
        sp.add_argument("--P", help="base point JSON file")
        sp.add_argument("--Q", help="target point JSON file")
        sp.add_argument("-p", type=int, default=3, help="odd prime of good reduction")
        sp.add_argument("--kmax", type=int, default=ecdlp.DEFAULT_K_MAX)
        sp.add_argument("--example", choices=["paper"], help="run the built-in worked example")
        sp.add_argument("--out", help="output file (default stdout)")

    sp = sub.add_parser("attack", help="recover h with Q = h*P over Q")
    add_common_attack(sp)
    sp.add_argument("--format", choices=["json", "tsv"], default="json")
    sp.set_defaults(func=_cmd_attack)

    sp = sub.add_parser("table", help="emit the seven-column refinement table as TSV")
    add_common_attack(sp)
    sp.set_defaults(func=_cmd_table)

    sp = sub.add_parser("log", help="logarithm of a kernel-of-reduction point mod p^k")
    sp.add_argument("--curve", required=True)
    sp.add_argument("--point", required=True)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-k", type=int, required=True)
    sp.set_defaults(func=_cmd_log)

    sp = sub.add_parser("exp", help="exponential map: z to a point mod p^k")
    sp.add_argument("--curve")
    sp.add_argument("--example", action="store_true", help="use the built-in example curve")
    sp.add_argument("--z", type=int, required=True)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_exp)

    sp = sub.add_parser("enumerate", help="all points of the curve mod p^k (brute force)")
    sp.add_argument("--curve", required=True)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_enumerate)

    sp = sub.add_parser("wp-coeffs", help="series coefficients c_2, c_3, ... for a curve")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--count", type=int, default=10, help="how many coefficients to print")
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_wp_coeffs)

    sp = sub.add_parser("hec-demo", help="reproduce the hyperelliptic mismatch demonstration")
    sp.add_argument("--curve", help="hyperelliptic curve JSON file {f, h}")
    sp.add_argument("--D", help="divisor JSON file {u, v}")
    sp.add_argument("-p", type=int, default=EXAMPLE_HEC_PRIME)
    sp.add_argument("--hmax", type=int, default=hec.WITNESS_DEFAULT_HMAX)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_hec_demo)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (KeyError, ValueError) as exc:
        for cls, code in _ERROR_EXITS:
            if isinstance(exc, cls):
                return _fail(str(exc), code)
        return _fail(str(exc), 3)


if __name__ == "__main__":
    sys.exit(main())

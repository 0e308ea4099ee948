"""Command line entry point: ``ifsproduct <command> ...``.

Exit codes: 0 covered / success, 1 refuted or a failed check, 2 usage or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import blue, replay
from .decompose import DecompositionCertificate, decompose, verify_certificate
from .errors import HypothesisFailure, IfsProductError, InvalidParams, NotInPurpleRegion
from .ifs import validate_params
from .numerics import IntegerPolynomial, Interval, as_rational, format_rational, isolate_smallest_root
from .regions import classify, route_window, verify_theorem, window_text
from .scan import ScanConfig, load_config, render

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ENCLOSURE_WIDTH = Fraction(1, 10**9)


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _range(text: str) -> Interval:
    try:
        lo, hi = (as_rational(x.strip()) for x in text.split(","))
        return Interval(lo, hi)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected lo,hi: {text!r}") from exc


def _fmt(v) -> str:
    return "-" if v is None else format_rational(v)


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args, out=None) -> int:
    out = out or sys.stdout
    try:
        p = validate_params(args.lam, args.c)
    except InvalidParams as exc:
        print(f"verdict: INVALID ({exc.reason})", file=out)
        return EXIT_USAGE
    if not p.valid:
        print(f"verdict: INVALID ({p.reason} fails)", file=out)
        return EXIT_USAGE
    label = classify(p)
    try:
        v = verify_theorem(p, n_check=args.depth)
    except HypothesisFailure as exc:
        print(f"verdict: FAILED ({exc})", file=out)
        return EXIT_FAIL
    print(f"verdict: {'COVERED' if v.covered else 'NOT-COVERED'}", file=out)
    print(f"route: {v.route}", file=out)
    print(f"window: {window_text(route_window(p, label)) if label.colored else '-'}", file=out)
    print(f"m: {_fmt(v.m)}", file=out)
    gap = "-" if v.gap is None else f"({_fmt(v.gap[0])}, {_fmt(v.gap[1])})"
    print(f"gap: {gap}", file=out)
    inv = v.audit.get("depth_invariance")
    print(f"depth-invariance: {'-' if inv is None else f'levels {inv[0]}..{inv[1]} ' + ('ok' if inv[2] else 'FAILED')}", file=out)
    print(f"certificate: {v.certificate}", file=out)
    return EXIT_OK if v.covered else EXIT_FAIL


# ---------------------------------------------------------------------------
# scan


def cmd_scan(args, out=None) -> int:
    out = out or sys.stdout
    cfg = load_config(args.config) if args.config else ScanConfig()
    overrides = {
        "grid_step": args.step,
        "lambda_range": args.lambda_range,
        "c_range": args.c_range,
        "depth_audit": args.depth_audit,
        "output_format": args.format,
    }
    kwargs = {k: getattr(cfg, k) for k in overrides}
    kwargs.update({k: v for k, v in overrides.items() if v is not None})
    try:
        cfg = ScanConfig(**kwargs)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(cfg, workers=args.workers)
    if args.out is None:
        out.write(text)
        return EXIT_OK
    try:
        Path(args.out).write_text(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(f"wrote {args.out}", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# decompose


def cmd_decompose(args, out=None) -> int:
    out = out or sys.stdout
    try:
        p = validate_params(args.lam, args.c)
        p.ensure_valid()
    except InvalidParams as exc:
        print(f"error: invalid parameters ({exc.reason})", file=sys.stderr)
        return EXIT_USAGE
    try:
        cert = decompose(p, args.u, args.depth)
    except NotInPurpleRegion as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = cert.to_json(p, args.u)
    if args.out:
        try:
            Path(args.out).write_text(text + "\n")
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_FAIL
    ok = verify_certificate(p, args.u, cert)
    print(f"x: {_fmt(cert.x)}", file=out)
    print(f"y: {_fmt(cert.y)}", file=out)
    print(f"word_x: {''.join(map(str, cert.word_x))}", file=out)
    print(f"word_y: {''.join(map(str, cert.word_y))}", file=out)
    print(f"|xy-u|: {_fmt(abs(cert.x * cert.y - args.u))} (~{float(abs(cert.x * cert.y - args.u)):.3e})", file=out)
    print(f"bound: {_fmt(cert.error_bound)} (~{float(cert.error_bound):.3e})", file=out)
    print(f"replay: {'ok' if ok else 'FAILED'}", file=out)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# examples


class CheckFailed(Exception):
    pass


def _check(ok: bool, name: str, log: list[str]) -> None:
    log.append(f"{'pass' if ok else 'FAIL'}  {name}")
    if not ok:
        raise CheckFailed(name)


def example_one(log: list[str]) -> None:
    lam = Fraction(1, 3)
    for c, want in [
        (Fraction(4, 9), True),
        (Fraction(1, 2), True),
        (Fraction(3, 5), True),
        (Fraction(1, 3), False),
        (Fraction(2, 5), False),
        (Fraction(43, 100), False),
    ]:
        v = verify_theorem(validate_params(lam, c))
        _check(v.covered == want, f"lambda=1/3 c={c}: {'COVERED' if v.covered else 'NOT-COVERED'}", log)


def alpha_poly(n: int) -> IntegerPolynomial:
    """``x**n + x**2 - 4x + 1``."""
    coeffs = [0] * (n + 1)
    coeffs[0], coeffs[1] = 1, -4
    coeffs[2] += 1
    coeffs[n] += 1
    return IntegerPolynomial(tuple(coeffs))


def beta_poly(n: int) -> IntegerPolynomial:
    """``x**n - 3x + 1``."""
    coeffs = [0] * (n + 1)
    coeffs[0], coeffs[1] = 1, -3
    coeffs[n] += 1
    return IntegerPolynomial(tuple(coeffs))


def alpha_beta(n: int, width: Fraction = ENCLOSURE_WIDTH) -> tuple[Interval, Interval]:
    unit = Interval(Fraction(0), Fraction(1))
    return (
        isolate_smallest_root(alpha_poly(n), unit, width),
        isolate_smallest_root(beta_poly(n), unit, width),
    )


def proposition(log: list[str], n_max: int = 20) -> None:
    for n in range(2, n_max + 1):
        a, b = alpha_beta(n)
        _check(a.hi < b.lo, f"n={n}: alpha in [{float(a.lo):.10f}, {float(a.hi):.10f}] < beta in [{float(b.lo):.10f}, {float(b.hi):.10f}]", log)
    _, b = alpha_beta(2)
    # (3 - sqrt 5)/2 is the root of x^2 - 3x + 1 where it turns negative
    lo_sign = b.lo * b.lo - 3 * b.lo + 1
    hi_sign = b.hi * b.hi - 3 * b.hi + 1
    _check(lo_sign >= 0 >= hi_sign, "n=2: beta enclosure contains (3-sqrt5)/2", log)


def example_two(log: list[str], n_max: int = 10, samples: int = 4) -> None:
    for n in range(2, n_max + 1):
        a, b = alpha_beta(n)
        _check(a.hi < b.lo, f"n={n}: alpha < beta", log)
        inside = [a.hi + (b.lo - a.hi) * Fraction(k, samples + 1) for k in range(1, samples + 1)]
        below = [a.lo * Fraction(k, samples + 1) for k in range(1, samples + 1)]
        above = [b.hi + (1 - b.hi) * Fraction(k, samples + 1) for k in range(1, samples + 1)]
        if n == 2:
            inside.append(Fraction(35, 100))
        for lam, want in [(x, True) for x in inside] + [(x, False) for x in below + above]:
            c = 2 * lam - lam**n
            v = verify_theorem(validate_params(lam, c))
            _check(v.covered == want, f"n={n} lambda~{float(lam):.6f} c=2lam-lam^n: {v.route}", log)


def example_blue(log: list[str]) -> None:
    cert = blue.certify_blue_lemma()
    stats = cert.stats()
    log.append(f"info  {json.dumps(stats, sort_keys=True)}")
    ok, problems = replay.replay_certificate(cert.to_json())
    _check(cert.complete, f"blue lemma: {stats['undecided']} undecided boxes", log)
    _check(ok, "blue lemma: replay " + ("ok" if ok else "; ".join(problems[:3])), log)


EXAMPLES = {
    "ex1": example_one,
    "ex2": example_two,
    "prop": proposition,
    "blue-lemma": example_blue,
}


def cmd_examples(args, out=None) -> int:
    out = out or sys.stdout
    log: list[str] = []
    try:
        EXAMPLES[args.which](log)
        status = EXIT_OK
    except (CheckFailed, IfsProductError) as exc:
        log.append(f"failed check: {exc}")
        status = EXIT_FAIL
    for line in log:
        print(line, file=out)
    passed = sum(line.startswith("pass") for line in log)
    total = sum(line.startswith(("pass", "FAIL")) for line in log)
    print(f"{args.which}: {passed}/{total} checks pass", file=out)
    return status


# ---------------------------------------------------------------------------
# certificates


def cmd_certify_blue(args, out=None) -> int:
    out = out or sys.stdout
    try:
        cert = blue.certify_blue_lemma(args.depth, raise_on_undecided=False, combined_rule=not args.interval_only)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        Path(args.out).write_text(cert.to_json() + "\n")
    print(json.dumps(cert.stats(), sort_keys=True), file=out)
    return EXIT_OK if cert.complete else EXIT_FAIL


def cmd_replay(args, out=None) -> int:
    out = out or sys.stdout
    try:
        text = Path(args.path).read_text()
        kind = json.loads(text).get("kind")
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if kind == "blue-lemma":
        ok, problems = replay.replay_certificate(text)
        for line in problems:
            print(line, file=out)
    elif kind == "decomposition":
        lam, c, u, cert = DecompositionCertificate.from_json(text)
        ok = verify_certificate(validate_params(lam, c), u, cert)
    else:
        print(f"error: unknown certificate kind {kind!r}", file=sys.stderr)
        return EXIT_USAGE
    print("replay: ok" if ok else "replay: FAILED", file=out)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ifsproduct", description="Products of three-map self-similar sets.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="decide K*K == [0,1] for one parameter pair")
    v.add_argument("--lambda", dest="lam", type=_rational, required=True)
    v.add_argument("--c", type=_rational, required=True)
    v.add_argument("--depth", type=int, default=None, help="absolute level for the depth-invariance audit")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("scan", help="label a grid of the parameter square")
    s.add_argument("--config", help="key=value file")
    s.add_argument("--step", type=_rational)
    s.add_argument("--lambda-range", type=_range)
    s.add_argument("--c-range", type=_range)
    s.add_argument("--depth-audit", type=int)
    s.add_argument("--format", choices=("csv", "svg"))
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_scan)

    d = sub.add_parser("decompose", help="write u as x*y with x, y in K")
    d.add_argument("--lambda", dest="lam", type=_rational, required=True)
    d.add_argument("--c", type=_rational, required=True)
    d.add_argument("--u", type=_rational, required=True)
    d.add_argument("--depth", type=int, default=12)
    d.add_argument("--out")
    d.set_defaults(func=cmd_decompose)

    e = sub.add_parser("examples", help="rerun the worked examples")
    e.add_argument("which", choices=sorted(EXAMPLES))
    e.set_defaults(func=cmd_examples)

    b = sub.add_parser("certify-blue", help="box-subdivision proof of c >= 1/2 on the blue set")
    b.add_argument("--depth", type=int, default=24)
    b.add_argument("--interval-only", action="store_true", help="disable the combined-identity leaf rule")
    b.add_argument("--out")
    b.set_defaults(func=cmd_certify_blue)

    r = sub.add_parser("replay", help="check a certificate file")
    r.add_argument("path")
    r.set_defaults(func=cmd_replay)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command line: ``ellperiods prove|verify|demo|count-sd|selftest``.

Exit codes: 0 proven (prime or prime power) / check passed, 1 composite or
failed check, 2 inconclusive, 64 usage error, 65 unreadable certificate,
66 missing input file.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cm
from .criteria import COMPOSITE, CONGRUENCE_FAILED, PRIME, PRIME_POWER

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE = 0, 1, 2
EXIT_USAGE, EXIT_DATAERR, EXIT_NOINPUT = 64, 65, 66


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--hilbert-table", default=None,
                        help=f"class polynomial table (default: bundled; env {cm.TABLE_ENV})")
    p = _Parser(prog="ellperiods", description="Elliptic periods and AKS-style primality proofs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    pr = add("prove", help="prove n prime or find a factor")
    pr.add_argument("n")
    pr.add_argument("--criterion", choices=(cm.BASIC, cm.STRONG), default=cm.BASIC)
    pr.add_argument("--seed", type=_seed, default=cm.DEFAULT_SEED)
    pr.add_argument("--disc-cap", type=_positive, default=cm.DEFAULT_DISC_CAP)
    pr.add_argument("--dmax-mult", type=_positive, default=cm.DEFAULT_DMAX_MULT)
    pr.add_argument("--force-small-d", action="store_true",
                    help="run the strong congruence on small rings (never proves anything)")
    pr.add_argument("--certificate", metavar="PATH", help="write the certificate here")

    ve = add("verify", help="check a certificate")
    ve.add_argument("path")
    ve.add_argument("--replay", action="store_true", help="also re-run the search from the seed")

    de = add("demo", help="recompute a worked example")
    de.add_argument("name")

    cs = add("count-sd", help="count S_d and check the 1.74498 d bound")
    cs.add_argument("d", type=int)

    add("selftest", help="quick acceptance checks")
    return p


def _emit(args, data: dict, lines: list[str]) -> None:
    if args.format == "structured":
        sys.stdout.write(json.dumps(data, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _parse_n(text: str) -> int:
    text = text.strip()
    if not text.isdigit():
        raise UsageError(f"n must be a decimal integer, got {text!r}")
    n = int(text)
    if n < 2:
        raise UsageError("n must be at least 2")
    return n


def cmd_prove(args) -> int:
    n = _parse_n(args.n)
    if args.force_small_d and args.criterion != cm.STRONG:
        raise UsageError("--force-small-d only applies to --criterion strong")
    config = cm.ProveConfig(criterion=args.criterion, seed=args.seed, disc_cap=args.disc_cap,
                            dmax_mult=args.dmax_mult, table_path=args.hilbert_table,
                            force_small_d=args.force_small_d, literal=True)
    result = cm.prove_prime(n, config)
    v = result.verdict
    cert = result.certificate
    if cert is not None and args.certificate:
        with open(args.certificate, "w") as fh:
            fh.write(cert.to_json())
    data = {"n": str(n), "verdict": v.kind, "reason": v.reason,
            "factor": None if v.factor is None else str(v.factor),
            "certificate": cert.to_dict() if cert else None}
    lines = [str(v)]
    if args.force_small_d:
        lines.append("note: --force-small-d run; this is a mechanics check, not a proof")
    if cert is not None:
        lines.append(cert.to_json().rstrip())
    _emit(args, data, lines)
    if v.kind in (PRIME, PRIME_POWER):
        return EXIT_OK
    if v.kind in (COMPOSITE, CONGRUENCE_FAILED):
        return EXIT_FAIL
    return EXIT_INCONCLUSIVE


def cmd_verify(args) -> int:
    try:
        with open(args.path) as fh:
            text = fh.read()
    except FileNotFoundError:
        sys.stderr.write(f"no such file: {args.path}\n")
        return EXIT_NOINPUT
    try:
        cert = cm.Certificate.from_json(text)
    except (ValueError, TypeError, KeyError, AttributeError) as exc:
        sys.stderr.write(f"cannot parse certificate: {exc}\n")
        return EXIT_DATAERR
    ok = cm.verify_certificate(cert, args.hilbert_table, replay=args.replay)
    _emit(args, {"n": str(cert.n), "valid": ok},
          [f"certificate for {cert.n}: {'valid' if ok else 'INVALID'}"])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_demo(args) -> int:
    from .fixtures import DEMOS

    if args.name not in DEMOS:
        raise UsageError(f"unknown demo {args.name!r}; choose from {', '.join(DEMOS)}")
    rows = DEMOS[args.name]()
    lines = []
    for r in rows:
        mark = "ok  " if r.ok else "FAIL"
        lines.append(f"{mark} {r.name}")
        if not r.ok:
            lines.append(f"     expected {r.expected}, got {r.got}")
        if r.note:
            lines.append(f"     note: {r.note}")
    failed = [r.name for r in rows if not r.ok]
    if failed:
        lines.append(f"first mismatch: {failed[0]}")
    data = {"demo": args.name, "rows": [{"name": r.name, "ok": r.ok, "note": r.note} for r in rows],
            "first_mismatch": failed[0] if failed else None}
    _emit(args, data, lines)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_count_sd(args) -> int:
    from fractions import Fraction

    from .lattice import count_Sd, log_count_lower

    d = args.d
    if d < 3 or d % 2 == 0:
        raise UsageError("d must be odd and at least 3")
    count = count_Sd(d)
    holds = log_count_lower(count) >= Fraction(174498, 100000) * d
    lines = [f"#S_{d} = {count}", f"ln #S_d >= 1.74498 d: {'yes' if holds else 'no'}"]
    _emit(args, {"d": d, "count": str(count), "bound_174498": holds}, lines)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_all

    results = run_all()
    lines = [f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in results]
    _emit(args, {"results": [{"name": k, "ok": ok} for k, ok in results]}, lines)
    return EXIT_OK if all(ok for _, ok in results) else EXIT_FAIL


COMMANDS = {"prove": cmd_prove, "verify": cmd_verify, "demo": cmd_demo,
            "count-sd": cmd_count_sd, "selftest": cmd_selftest}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except cm.TableError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_NOINPUT


if __name__ == "__main__":
    sys.exit(main())

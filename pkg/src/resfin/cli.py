"""Command-line front end: tables in JSON or CSV, certificates, re-checks.

Every subcommand delegates to one module operation and serializes its
result; nothing is computed here.  Output is locale-independent: decimal
dots, three-decimal logs in CSV, lowercase booleans, and the string
"unknown" for values a cap left open.  Exit codes: 0 done, 1 bad input
(or a certificate that fails its check), 2 inconclusive within the given
caps, 3 broken internal invariant.
"""

import argparse
import csv
import io
import json
import os
import sys

from .covers import obstruction_scan, pnt_window, theorem4_experiment
from .errors import InputError, InternalError, ResourceError
from .lcmlib import (
    cert_from_json,
    cert_to_json,
    lcm_witness,
    power_set_witness,
    verify_certificate,
)
from .nilpotent import girth_upper_bound_nilpotent
from .separability import (
    check_basic_inequality,
    check_girth_inequality,
    max_divisibility,
    residual_girth,
)
from .words import parse_word, word_growth


def _degree_clamp() -> int | None:
    raw = os.environ.get("RESFIN_MAX_DEGREE")
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"RESFIN_MAX_DEGREE must be an integer, got {raw!r}")
    if value < 1:
        raise InputError(f"RESFIN_MAX_DEGREE must be positive, got {value}")
    return value


def _clamped(cap: int) -> int:
    limit = _degree_clamp()
    return cap if limit is None else min(cap, limit)


def _cell(value) -> str:
    if value is None:
        return "unknown"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.3f}"
    if isinstance(value, (list, tuple)):
        return ";".join(_cell(v) for v in value)
    return str(value)


def _row_json(row: dict) -> dict:
    return {k: ("unknown" if v is None else v) for k, v in row.items()}


def _render(payload: dict, fmt: str) -> str:
    if fmt == "csv":
        rows = payload["rows"]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if rows:
            writer.writerow(rows[0].keys())
            for row in rows:
                writer.writerow(_cell(v) for v in row.values())
        return buf.getvalue()
    payload = dict(payload)
    payload["rows"] = [_row_json(r) for r in payload["rows"]]
    return json.dumps(payload, indent=2) + "\n"


def _parse_word_set(text: str):
    pieces = [p.strip() for p in text.split(",")]
    if not any(pieces):
        raise InputError("the target set is empty")
    words = [parse_word(p) for p in pieces]
    rank = max(w.rank for w in words)
    return [parse_word(p, rank) for p in pieces]


def _cmd_growth(args):
    rows = [
        {"n": n, "ball_size": word_growth(args.rank, n)} for n in range(args.max + 1)
    ]
    return {"rows": rows}, False


def _cmd_dmax(args):
    row = max_divisibility(
        args.rank, args.radius, _clamped(args.cap), normal=args.normal, threads=args.threads
    )
    return {"rows": [row]}, not row["resolved"]


def _cmd_girth(args):
    res = residual_girth(args.rank, args.radius, _clamped(args.cap))
    row = {"rank": args.rank, "n": args.radius, "cap": res.cap, "value": res.value}
    payload = {"rows": [row], "result": res.to_json()}
    return payload, res.unknown


def _cmd_lcm_witness(args):
    cert = lcm_witness(_parse_word_set(args.set))
    check = verify_certificate(cert, flat_cap=args.verify_cap)
    if not check:
        raise InternalError(
            "freshly built certificate failed its check: " + "; ".join(check.failures)
        )
    row = {
        "targets": len(cert.targets),
        "declared_bound": cert.declared_bound,
        "nontrivial_verified": cert.nontrivial_verified,
        "verified": bool(check),
    }
    return {"rows": [row], "certificate": cert_to_json(cert)}, False


def _cmd_power_witness(args):
    report = power_set_witness(2, args.n, scan_cap=_clamped(8))
    cert = report.pop("certificate")
    return {"rows": [report], "certificate": cert_to_json(cert)}, False


def _cmd_covers_scan(args):
    report = obstruction_scan(args.m, _clamped(args.max_degree))
    rows = report.pop("rows")
    return {"rows": rows, "summary": report}, False


def _cmd_theorem4(args):
    rows = theorem4_experiment(args.n, order_cap=_clamped(args.cap))
    return {"rows": rows}, not all(r["resolved"] for r in rows)


def _cmd_nilpotent_girth(args):
    modulus, bound, injective = girth_upper_bound_nilpotent(args.n)
    row = {"n": args.n, "modulus": modulus, "bound": bound, "injective": injective}
    return {"rows": [row]}, False


def _cmd_ineq(args):
    if args.which == "1":
        report = check_basic_inequality(args.rank, args.n, _clamped(args.cap))
        row = {
            "which": 1,
            "rank": args.rank,
            "n": args.n,
            "status": report["status"],
            "passed": report["pass"],
            "girth_link": report["girth_link"]["status"],
        }
    else:
        report = check_girth_inequality(
            args.rank,
            args.n,
            order_cap=_clamped(args.order_cap),
            girth_cap=_clamped(args.girth_cap),
        )
        row = {
            "which": 2,
            "rank": args.rank,
            "n": args.n,
            "status": report["status"],
            "chain_holds": report["chain_holds"],
            "girth": report["girth"]["value"],
            "dnormal_lower": report["dnormal"]["lower_bound"],
        }
    return {"rows": [row], "report": report}, report["status"] == "inconclusive"


def _cmd_pnt(args):
    report = pnt_window(args.max)
    rows = report.pop("rows")
    rows = [
        {"n": r["n"], "lcm": r["lcm"], "log_lcm": r["log_lcm"], "ratio": r["ratio"],
         "in_window": r["in_window"]}
        for r in rows
    ]
    return {"rows": rows, "window": report}, False


def _cmd_verify(args):
    try:
        with open(args.certificate, "r", encoding="ascii") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read certificate file: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"certificate file is not valid JSON: {exc}")
    if isinstance(data, dict) and "certificate" in data:
        data = data["certificate"]
    cert = cert_from_json(data)
    check = verify_certificate(cert)
    row = {
        "targets": len(cert.targets),
        "declared_bound": cert.declared_bound,
        "ok": bool(check),
        "failures": "; ".join(check.failures),
    }
    return {"rows": [row]}, False, not bool(check)


def _global_flags(parser: argparse.ArgumentParser, *, suppress: bool) -> None:
    # the same flags are legal before and after the subcommand; the
    # after-position copies must not clobber already-parsed values
    d = argparse.SUPPRESS
    parser.add_argument(
        "--format", choices=("json", "csv"), default=d if suppress else "json"
    )
    parser.add_argument(
        "--out",
        default=d if suppress else None,
        help="write output to this file instead of stdout",
    )
    parser.add_argument("--threads", type=int, default=d if suppress else 1)
    parser.add_argument(
        "--seed",
        type=int,
        default=d if suppress else None,
        help="reserved for sampling subcommands; never changes search results",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resfin",
        description="Divisibility, residual girth, and common-multiple witnesses "
        "over finite quotients of free groups.",
    )
    _global_flags(parser, suppress=False)
    trailing = argparse.ArgumentParser(add_help=False)
    _global_flags(trailing, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("growth", help="ball sizes of the free group", parents=[trailing])
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(fn=_cmd_growth)

    p = sub.add_parser("dmax", help="max divisibility over a ball", parents=[trailing])
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--cap", type=int, required=True)
    p.add_argument("--normal", action="store_true")
    p.set_defaults(fn=_cmd_dmax)

    p = sub.add_parser("girth", help="least quotient order injective on a ball", parents=[trailing])
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--cap", type=int, required=True)
    p.set_defaults(fn=_cmd_girth)

    p = sub.add_parser("lcm-witness", help="build and check a witness certificate", parents=[trailing])
    p.add_argument("--set", required=True, help='comma-separated words, e.g. "ab,aa,B"')
    p.add_argument("--verify-cap", type=int, default=None, dest="verify_cap")
    p.set_defaults(fn=_cmd_lcm_witness)

    p = sub.add_parser("power-witness", help="witness for the powers x..x^n", parents=[trailing])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=_cmd_power_witness)

    p = sub.add_parser("covers-scan", help="exhaustive lift-closure check", parents=[trailing])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True, dest="max_degree")
    p.set_defaults(fn=_cmd_covers_scan)

    p = sub.add_parser("theorem4", help="power-set witnesses against quotient scans", parents=[trailing])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, required=True)
    p.set_defaults(fn=_cmd_theorem4)

    p = sub.add_parser("nilpotent-girth", help="Heisenberg modular girth bound", parents=[trailing])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=_cmd_nilpotent_girth)

    p = sub.add_parser("ineq", help="check one of the two inequalities", parents=[trailing])
    p.add_argument("--which", choices=("1", "2"), required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, default=12)
    p.add_argument("--order-cap", type=int, default=8, dest="order_cap")
    p.add_argument("--girth-cap", type=int, default=12, dest="girth_cap")
    p.set_defaults(fn=_cmd_ineq)

    p = sub.add_parser("pnt", help="lcm growth window", parents=[trailing])
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(fn=_cmd_pnt)

    p = sub.add_parser("verify", help="re-check a serialized certificate", parents=[trailing])
    p.add_argument("--certificate", required=True)
    p.set_defaults(fn=_cmd_verify)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="ascii", newline="") as fh:
            fh.write(text)


def run(argv) -> int:
    parser = build_parser()
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return 0 if exc.code == 0 else 1
        _degree_clamp()  # reject a malformed limit before any work
        result = args.fn(args)
        payload, inconclusive = result[0], result[1]
        failed = result[2] if len(result) > 2 else False
        _emit(_render(payload, args.format), args.out)
        if failed:
            return 1
        return 2 if inconclusive else 0
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))

"""Command-line interface with deterministic CSV/JSON output.

Subcommands: profile, seq, scan, sets, radset, verify. Exit codes: 0 on
success, 1 when verification finds a counterexample, 2 on usage errors.
Values that may exceed 2**53 are emitted as decimal strings in JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import denom, scanner, verify
from .arith import SieveSizeError, is_prime
from .scanner import CheckpointError

SEQ_NAMES = (
    "dd",
    "dn",
    "db",
    "ds",
    "dd_plus",
    "dd_minus",
    "dd_coprime",
    "dd_shared",
    "dd_complement",
    "omega_plus",
    "db_k",
)
_SEQ_MIN_INDEX = {"db": 0, "ds": 0}  # every other sequence starts at n = 1

PROFILE_FIELDS = (
    "n",
    "dd",
    "dd_minus",
    "dd_plus",
    "dd_shared",
    "dd_coprime",
    "dd_complement",
    "dn",
    "db",
    "ds",
    "omega_plus",
    "rad_n",
    "rad_n1",
    "in_rad_set",
)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _emit_csv(header, rows) -> None:
    out = sys.stdout
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(_csv_cell(v) for v in row) + "\n")


def _emit_json(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def _cmd_profile(args) -> int:
    prof = denom.profile(args.n)
    in_rad_set = prof.dd.value == prof.rad_n1.value
    if args.format == "json":
        _emit_json(
            {
                "n": prof.n,
                "dd": str(prof.dd.value),
                "dd_minus": str(prof.dd_minus.value),
                "dd_plus": str(prof.dd_plus.value),
                "dd_shared": str(prof.dd_shared.value),
                "dd_coprime": str(prof.dd_coprime.value),
                "dd_complement": str(prof.dd_complement.value),
                "dn": str(prof.dn.value),
                "db": str(prof.db.value),
                "ds": str(prof.ds),
                "omega_plus": prof.omega_plus,
                "rad_n": str(prof.rad_n.value),
                "rad_n1": str(prof.rad_n1.value),
                "in_rad_set": in_rad_set,
            }
        )
    else:
        row = (
            prof.n,
            prof.dd.value,
            prof.dd_minus.value,
            prof.dd_plus.value,
            prof.dd_shared.value,
            prof.dd_coprime.value,
            prof.dd_complement.value,
            prof.dn.value,
            prof.db.value,
            prof.ds,
            prof.omega_plus,
            prof.rad_n.value,
            prof.rad_n1.value,
            in_rad_set,
        )
        _emit_csv(PROFILE_FIELDS, [row])
    return 0


def _seq_value(name: str, n: int, k: int | None) -> int:
    if name == "dd":
        return denom.dd(n).value
    if name == "dn":
        return denom.dn(n).value
    if name == "db":
        return denom.db(n).value
    if name == "ds":
        return denom.ds(n)
    if name == "dd_plus":
        return denom.dd_split_sqrt(n)[1].value
    if name == "dd_minus":
        return denom.dd_split_sqrt(n)[0].value
    if name == "dd_shared":
        return denom.dd_split_divisibility(n)[0].value
    if name == "dd_coprime":
        return denom.dd_split_divisibility(n)[1].value
    if name == "dd_complement":
        return denom.dd_split_divisibility(n)[2].value
    if name == "omega_plus":
        return denom.omega_dd_plus(n)
    return denom.db_k(n, k).value


def _cmd_seq(args, parser: argparse.ArgumentParser) -> int:
    if args.name == "db_k" and args.k is None:
        parser.error("seq db_k requires --k")
    if args.name != "db_k" and args.k is not None:
        parser.error(f"--k applies only to db_k, not {args.name}")
    min_index = _SEQ_MIN_INDEX.get(args.name, 1)
    if args.lo < min_index:
        parser.error(f"{args.name} is defined from n = {min_index}, got lo = {args.lo}")
    if args.lo > args.hi:
        parser.error(f"need lo <= hi, got {args.lo} > {args.hi}")
    rows = [(n, _seq_value(args.name, n, args.k)) for n in range(args.lo, args.hi + 1)]
    if args.format == "json":
        _emit_json(
            {
                "name": args.name,
                "k": args.k,
                "lo": args.lo,
                "hi": args.hi,
                "rows": [{"n": n, "value": str(v)} for n, v in rows],
            }
        )
    else:
        _emit_csv(("n", "value"), rows)
    return 0


def _default_threads() -> int:
    raw = os.environ.get("BERNDENOM_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise SieveSizeError(f"BERNDENOM_THREADS must be an integer, got {raw!r}") from None
    return max(value, 1)


def _cmd_scan(args) -> int:
    threads = args.threads if args.threads is not None else _default_threads()
    result = scanner.run_scan(
        args.limit,
        threads=threads,
        chunk_size=args.chunk,
        checkpoint_path=args.checkpoint,
    )
    top = max(result.exceptional) if result.exceptional else None
    if args.format == "json":
        _emit_json(
            {
                "limit": result.limit,
                "chunk_size": result.chunk_size,
                "exceptional": list(result.exceptional),
                "exceptional_count": len(result.exceptional),
                "max_exceptional": top,
                "digest": result.digest,
            }
        )
    else:
        _emit_csv(("n",), [(n,) for n in result.exceptional])
    print(
        f"scanned 1..{result.limit}: {len(result.exceptional)} indices with no prime "
        f"above sqrt(n); max {top}; digest {result.digest[:16]}",
        file=sys.stderr,
    )
    return 0


def _cmd_sets(args) -> int:
    report = scanner.find_sets(args.k, args.limit)
    flags = [is_prime(n + 1) for n in report.members] if args.k == 1 else None
    if args.format == "json":
        payload = {"k": report.k, "limit": report.limit, "members": list(report.members)}
        if flags is not None:
            payload["next_is_prime"] = flags
        _emit_json(payload)
    elif flags is not None:
        _emit_csv(("n", "next_prime"), list(zip(report.members, flags)))
    else:
        _emit_csv(("n",), [(n,) for n in report.members])
    return 0


def _cmd_radset(args) -> int:
    report = scanner.find_rad_set(args.limit)
    if args.format == "json":
        _emit_json({"limit": report.limit, "members": list(report.members)})
    else:
        _emit_csv(("n",), [(n,) for n in report.members])
    return 0


def _cmd_verify(args, parser: argparse.ArgumentParser) -> int:
    if args.oracle_limit > 1000:
        parser.error("--oracle-limit is capped at 1000")
    fault = None
    if args.inject_fault:
        name, _, index = args.inject_fault.partition(":")
        if name not in verify.FAMILIES:
            parser.error(f"unknown verification family {name!r}")
        try:
            fault = (name, int(index) if index else 1)
        except ValueError:
            parser.error(f"bad fault index in {args.inject_fault!r}")
    results = verify.run_verification(
        limit=args.limit, oracle_limit=args.oracle_limit, fault=fault
    )
    passed = all(r.passed for r in results)
    if args.format == "json":
        _emit_json(
            {
                "limit": args.limit,
                "oracle_limit": args.oracle_limit,
                "passed": passed,
                "families": [
                    {
                        "family": r.family,
                        "passed": r.passed,
                        "checked": r.checked,
                        "witness": r.witness,
                    }
                    for r in results
                ],
            }
        )
    else:
        rows = [
            (r.family, "pass" if r.passed else "fail", r.checked, "" if r.witness is None else r.witness)
            for r in results
        ]
        _emit_csv(("family", "status", "checked", "witness"), rows)
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="berndenom",
        description="Denominators of Bernoulli polynomials and their derivatives, "
        "computed from prime digit-sum products.",
    )
    parser.add_argument(
        "--format",
        choices=("csv", "json"),
        default="csv",
        help="output encoding (default: csv)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_profile = sub.add_parser("profile", help="every denominator quantity at one index")
    p_profile.add_argument("n", type=_positive_int)

    p_seq = sub.add_parser("seq", help="emit one sequence over an index range")
    p_seq.add_argument("name", choices=SEQ_NAMES)
    p_seq.add_argument("lo", type=int)
    p_seq.add_argument("hi", type=int)
    p_seq.add_argument("--k", type=_positive_int, default=None, help="derivative order for db_k")

    p_scan = sub.add_parser("scan", help="find every n <= limit with no heavy prime above sqrt(n)")
    p_scan.add_argument("--limit", type=_positive_int, required=True)
    p_scan.add_argument("--threads", type=_positive_int, default=None,
                        help="worker processes (default: BERNDENOM_THREADS or 1)")
    p_scan.add_argument("--chunk", type=_positive_int, default=scanner.DEFAULT_CHUNK_SIZE)
    p_scan.add_argument("--checkpoint", default=None, help="resumable checkpoint path")

    p_sets = sub.add_parser("sets", help="indices whose k-th derivative is integral")
    p_sets.add_argument("--k", type=_positive_int, required=True)
    p_sets.add_argument("--limit", type=_positive_int, default=10000)

    p_radset = sub.add_parser("radset", help="indices where dd(n) equals the kernel of n+1")
    p_radset.add_argument("--limit", type=_positive_int, default=10000)

    p_verify = sub.add_parser("verify", help="run the invariant suites")
    p_verify.add_argument("--limit", type=_positive_int, default=1000)
    p_verify.add_argument("--oracle-limit", type=_positive_int, default=100)
    p_verify.add_argument("--inject-fault", default=None, help=argparse.SUPPRESS)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "profile":
            return _cmd_profile(args)
        if args.command == "seq":
            return _cmd_seq(args, parser)
        if args.command == "scan":
            return _cmd_scan(args)
        if args.command == "sets":
            return _cmd_sets(args)
        if args.command == "radset":
            return _cmd_radset(args)
        return _cmd_verify(args, parser)
    except (SieveSizeError, CheckpointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    densorbit generate --m 3 --depth 2 --policy zero --out run.json
    densorbit verify --in run.json [--deep]
    densorbit count --m 3 --schedule test:1 --t-max 16 [--brute-force]
    densorbit dimension --m 4 --depth 3 [--t0 T0 --t1 T1] [--csv quotients.csv]
    densorbit stats --in digits.txt --base 2 --block 000 [--checkpoints 10,20]

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 internal invariant breach.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from fractions import Fraction

from .analysis import block_counts, count_bruteforce, count_table, dimension_lower_bound
from .construction import FreeDigitPolicy, generate_point, orders, parse_schedule
from .errors import CapExceeded, NotContainable, WitnessFailed
from .exact_arith import Word
from .record import RunRecord, verify_record

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def write_atomic(path, text):
    """Write ``text`` to ``path`` via a temp file in the same directory."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".densorbit-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(text, path=None):
    if path:
        write_atomic(path, text)
    else:
        sys.stdout.write(text)


def read_text(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def check_m(m):
    if m < 2:
        raise UsageError("m must be ≥ 2")


def schedule_for(m, descriptor):
    try:
        return parse_schedule(m, descriptor)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_generate(args):
    check_m(args.m)
    if args.depth < 1:
        raise UsageError("depth must be ≥ 1")
    if args.seed < 0 or args.seed >= 2**64:
        raise UsageError("seed must be an unsigned 64-bit integer")
    policy = FreeDigitPolicy(args.policy, args.seed if args.policy == "random" else 0)
    schedule = schedule_for(args.m, args.schedule)
    state = generate_point(args.m, args.depth, policy, schedule)
    emit(RunRecord.from_state(state).to_json(), args.out)
    return EXIT_OK


def cmd_verify(args):
    try:
        rec = RunRecord.from_json(read_text(args.input))
        parse_schedule(rec.m, rec.schedule)
        FreeDigitPolicy.parse(rec.policy)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"cannot parse record: {exc}") from None
    report = verify_record(rec, deep=args.deep)
    emit(json.dumps(report, indent=2) + "\n", args.out)
    failed = [d for d in report["details"] if not d["ok"]]
    if failed:
        print(f"verification failed: {failed[0]['check']}: {failed[0]['what']}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _profile_covering(schedule, t_max, depth):
    if depth is not None:
        if depth < 1:
            raise UsageError("depth must be ≥ 1")
        profile = orders(schedule, depth)
        if t_max > profile.t[-1]:
            raise UsageError(f"t-max {t_max} exceeds t_K = {profile.t[-1]} at depth {depth}")
        return profile
    k = 1
    while True:
        profile = orders(schedule, k)
        if profile.t[-1] >= t_max:
            return profile
        k += 1


def cmd_count(args):
    check_m(args.m)
    if args.t_max < 1:
        raise UsageError("t-max must be ≥ 1")
    schedule = schedule_for(args.m, args.schedule)
    profile = _profile_covering(schedule, args.t_max, args.depth)
    table = count_table(profile, args.t_max)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["t", "b_t", "quotient_num", "quotient_den"]
    if args.brute_force:
        header.append("b_t_bruteforce")
    writer.writerow(header)
    mismatches = 0
    for t, b, num, den in table.rows():
        row = [t, b, num, den]
        if args.brute_force:
            try:
                brute = count_bruteforce(profile, t, args.cap)
            except CapExceeded as exc:
                raise UsageError(f"brute force at t={t} needs a cap of at least {exc.required}") from None
            mismatches += brute != b
            row.append(brute)
        writer.writerow(row)
    emit(buf.getvalue(), args.out)
    if mismatches:
        print(f"{mismatches} rows disagree with the brute-force count", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_dimension(args):
    check_m(args.m)
    if args.depth < 1:
        raise UsageError("depth must be ≥ 1")
    schedule = schedule_for(args.m, args.schedule)
    profile = orders(schedule, args.depth)
    t_k = profile.t[-1]
    t0 = args.t0 if args.t0 is not None else (t_k + 1) // 2
    t1 = args.t1 if args.t1 is not None else t_k
    if not 1 <= t0 <= t1 <= t_k:
        raise UsageError(f"need 1 <= t0 <= t1 <= t_K = {t_k}")
    table = count_table(profile, t1)
    theta = dimension_lower_bound(table, t0, t1)
    target = 1 - Fraction(2, args.m)
    report = {
        "m": args.m,
        "depth": args.depth,
        "schedule": schedule.label,
        "t_K": t_k,
        "t0": t0,
        "t1": t1,
        "certificate": str(theta),
        "certificate_num": theta.numerator,
        "certificate_den": theta.denominator,
        "target": str(target),
        "certificate_decimal": f"{float(theta):.6f}",
    }
    emit(json.dumps(report, indent=2) + "\n", args.out)
    if args.csv:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t", "quotient_num", "quotient_den"])
        for t in range(t0, t1 + 1):
            writer.writerow([t, table.exponent(t), t])
        write_atomic(args.csv, buf.getvalue())
    return EXIT_OK


def parse_digit_file(text, base):
    digits = []
    for ch in text:
        if ch.isspace():
            continue
        if ch not in "0123456789" or int(ch) >= base:
            raise UsageError(f"character {ch!r} is not a base-{base} digit")
        digits.append(ch)
    return Word(base, "".join(digits))


def cmd_stats(args):
    digits = parse_digit_file(read_text(args.input), args.base)
    try:
        block = Word(args.base, args.block)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not len(block):
        raise UsageError("block must be nonempty")
    if args.checkpoints:
        try:
            checkpoints = [int(x) for x in args.checkpoints.split(",")]
        except ValueError:
            raise UsageError("checkpoints must be comma-separated integers") from None
    else:
        checkpoints = [len(digits)]
    try:
        counts = block_counts(digits, block, checkpoints)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    emit(json.dumps([c.as_dict() for c in counts], indent=2) + "\n", args.out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="densorbit", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="construct one point to a given depth")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--policy", choices=("zero", "one", "random"), default="zero")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--schedule", default="default", help="default | test:<ell>[,<ell>...]")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="re-check a run record")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--deep", action="store_true", help="also regenerate the run and compare")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="table of cylinder counts b_t")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--schedule", default="default")
    p.add_argument("--t-max", type=int, required=True)
    p.add_argument("--depth", type=int)
    p.add_argument("--brute-force", action="store_true")
    p.add_argument("--cap", type=int, default=1 << 22)
    p.add_argument("--out")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("dimension", help="exact lower-bound certificate for log2(b_t)/t")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--schedule", default="default")
    p.add_argument("--t0", type=int)
    p.add_argument("--t1", type=int)
    p.add_argument("--csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("stats", help="block frequencies in a digit file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--base", type=int, choices=(2, 3), required=True)
    p.add_argument("--block", required=True)
    p.add_argument("--checkpoints")
    p.add_argument("--out")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"densorbit {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotContainable, WitnessFailed, AssertionError) as exc:
        print(f"densorbit {args.command}: internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

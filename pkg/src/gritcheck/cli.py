"""Command-line interface.

Exit codes: 0 verified / success, 1 proof rejected or conversion failed,
2 usage, I/O or parse error.  Verdicts go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .checker import Reason, WorkingSet, refute
from .convert import ConversionError, ConversionStats, TrimOnInvalid, backward_trim, convert
from .dimacs import parse_dimacs, write_dimacs
from .grit import GritReader, DrupReader, write_grit
from .lexer import ParseError

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_ERROR = 2


def _diag(message: str) -> None:
    if os.environ.get("GRIT_COLOR") and sys.stderr.isatty():
        message = f"\033[31m{message}\033[0m"
    print(message, file=sys.stderr)


def _load_formula(path: str):
    with open(path, "rb") as f:
        return parse_dimacs(f)


def check_files(cnf_path: str, grit_path: str):
    """Check one pair of files; returns (verdict, working set, reader, seconds)."""
    start = time.perf_counter()
    formula = _load_formula(cnf_path)
    w = WorkingSet()
    with open(grit_path, "rb") as f:
        reader = GritReader(f)
        verdict = refute(formula, reader, w)
    return verdict, w, reader, time.perf_counter() - start


def _verdict_code(verdict) -> int:
    if verdict.verified:
        return EXIT_OK
    return EXIT_ERROR if verdict.reason is Reason.PARSE_FAILURE else EXIT_REJECTED


def cmd_check(args) -> int:
    try:
        verdict, w, reader, elapsed = check_files(args.cnf, args.grit)
    except OSError as err:
        _diag(f"error: {err}")
        return EXIT_ERROR
    except ParseError as err:
        _diag(f"error: {args.cnf}: {err}")
        return EXIT_ERROR
    if args.quiet:
        print("VERIFIED" if verdict.verified else "REJECTED")
    else:
        print(verdict)
        if args.stats:
            _diag(f"peak live clauses: {w.peak}")
            _diag(f"lines processed: {reader.lineno}")
            _diag(f"bytes read: {reader.bytes_read}")
            _diag(f"wall time: {elapsed:.3f} s")
    return _verdict_code(verdict)


def _write_atomic(path: str, actions) -> int:
    tmp = f"{path}.part"
    try:
        with open(tmp, "wb") as out:
            n = write_grit(actions, out)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return n


def cmd_convert(args) -> int:
    try:
        formula = _load_formula(args.cnf)
        stats = ConversionStats()
        with open(args.drup, "rb") as f:
            _write_atomic(args.out, convert(formula, DrupReader(f), trim=args.trim, stats=stats))
    except OSError as err:
        _diag(f"error: {err}")
        return EXIT_ERROR
    except ParseError as err:
        _diag(f"error: {err}")
        return EXIT_ERROR
    except ConversionError as err:
        _diag(f"conversion failed: {type(err).__name__}: {err}")
        return EXIT_REJECTED
    if not args.quiet:
        kept = stats.kept if args.trim else stats.lemmas
        dropped = stats.dropped if args.trim else 0
        _diag(f"lemmas kept: {kept}, dropped: {dropped}, deletions emitted: {stats.deletions}")
    return EXIT_OK


def cmd_trim(args) -> int:
    try:
        formula = _load_formula(args.cnf)
        with open(args.grit, "rb") as f:
            trimmed = backward_trim(formula, GritReader(f))
        n = _write_atomic(args.out, trimmed)
    except OSError as err:
        _diag(f"error: {err}")
        return EXIT_ERROR
    except ParseError as err:
        _diag(f"error: {err}")
        return EXIT_ERROR
    except TrimOnInvalid as err:
        _diag(str(err))
        return _verdict_code(err.verdict)
    if not args.quiet:
        _diag(f"wrote {n} lines")
    return EXIT_OK


def cmd_gen(args) -> int:
    from .testkit import MAX_TREE_DEPTH, gen_complete_tree

    if not 1 <= args.n <= MAX_TREE_DEPTH:
        _diag(f"error: n must be in 1..{MAX_TREE_DEPTH}")
        return EXIT_ERROR
    formula, proof = gen_complete_tree(args.n, deletions=not args.no_deletions)
    try:
        with open(args.out_cnf, "wb") as f:
            write_dimacs(formula, f)
        _write_atomic(args.out_grit, proof)
    except OSError as err:
        _diag(f"error: {err}")
        return EXIT_ERROR
    return EXIT_OK


def _check_pair(pair):
    cnf, grit = pair
    try:
        verdict = check_files(cnf, grit)[0]
    except (OSError, ParseError) as err:
        return f"error: {err}", EXIT_ERROR
    return str(verdict), _verdict_code(verdict)


def cmd_batch(args) -> int:
    if len(args.files) % 2:
        _diag("error: batch expects CNF GRIT pairs")
        return EXIT_ERROR
    pairs = list(zip(args.files[::2], args.files[1::2]))
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_check_pair, pairs))
    else:
        results = [_check_pair(p) for p in pairs]
    for (cnf, grit), (text, _) in zip(pairs, results):
        print(f"{grit}: {text}")
    return max((code for _, code in results), default=EXIT_OK)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gritcheck", description="GRIT proof checking and DRUP conversion")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify a GRIT proof against a CNF")
    p.add_argument("cnf")
    p.add_argument("grit")
    p.add_argument("--stats", action="store_true", help="report memory and throughput on stderr")
    p.add_argument("--quiet", action="store_true", help="print only VERIFIED or REJECTED")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("convert", help="convert a DRUP trace to GRIT")
    p.add_argument("cnf")
    p.add_argument("drup")
    p.add_argument("out")
    p.add_argument("--trim", action="store_true", help="keep only used lines, delete after last use")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("trim", help="backward-trim a GRIT proof")
    p.add_argument("cnf")
    p.add_argument("grit")
    p.add_argument("out")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_trim)

    p = sub.add_parser("gen", help="generate a benchmark formula and proof")
    p.add_argument("family", choices=["complete-tree"])
    p.add_argument("n", type=int)
    p.add_argument("out_cnf")
    p.add_argument("out_grit")
    p.add_argument("--no-deletions", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("batch", help="check several CNF GRIT pairs")
    p.add_argument("files", nargs="+", metavar="CNF GRIT")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="warning: %(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

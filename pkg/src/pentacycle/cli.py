"""Command line entry point: one subcommand per pipeline stage, plus ``all``."""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import certificate as cert_mod

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

SUBCOMMANDS = ("genus", "model", "multiples", "frobenius", "descent", "rational-points",
               "endomorphisms", "tau6-scan", "all")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser():
    p = _Parser(prog="pentacycle", description="Verify the arithmetic of C0(5) and related curves.")
    p.add_argument("--json", action="store_true", help="print the certificate as JSON")
    p.add_argument("--envelope", action="store_true", help="also print run metadata to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        if name == "genus":
            sp.add_argument("--max", type=int, default=10)
        if name == "multiples":
            sp.add_argument("--limit", type=int, default=11)
        if name == "frobenius":
            sp.add_argument("--p", type=int, action="append", help="prime (repeatable)")
        if name in ("tau6-scan", "all"):
            sp.add_argument("--bound", type=int, default=100)
            sp.add_argument("--jobs", type=int, default=1)
        if name == "tau6-scan":
            sp.add_argument("--checkpoint", default=None)
        if name == "all":
            sp.add_argument("--only", choices=[s for s in SUBCOMMANDS if s != "all"])
    return p


def _run(args):
    c = args.command
    if c == "all":
        return cert_mod.run_all(bound=args.bound, jobs=args.jobs, only=args.only)
    if c == "genus":
        if args.max < 1 or args.max > 10:
            raise ValueError("--max must be between 1 and 10")
        root = cert_mod.stage_genus(args.max)
    elif c == "multiples":
        if args.limit < 0:
            raise ValueError("--limit must be non-negative")
        root = cert_mod.stage_multiples(args.limit)
    elif c == "frobenius":
        root = cert_mod.stage_frobenius(tuple(args.p) if args.p else (3, 5, 7))
    elif c == "tau6-scan":
        if args.bound < 1 or args.jobs < 1:
            raise ValueError("--bound and --jobs must be positive")
        root = cert_mod.stage_tau6(args.bound, args.jobs, args.checkpoint)
    else:
        root = cert_mod.STAGES[c]()
    return root, (EXIT_OK if root.status == "verified" else EXIT_FAILED)


def _summary(cert, depth=0, out=None):
    out = out if out is not None else []
    out.append(f"{'  ' * depth}[{cert.status}] {cert.name}")
    for ch in cert.children:
        _summary(ch, depth + 1, out)
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.time()
    try:
        root, code = _run(args)
    except (ValueError, FileNotFoundError, KeyError) as e:
        sys.stderr.write(f"pentacycle: {e}\n")
        return EXIT_USAGE
    if getattr(args, "json", False):
        sys.stdout.write(cert_mod.to_json(root) + "\n")
    else:
        sys.stdout.write("\n".join(_summary(root)) + "\n")
    if args.envelope:
        sys.stderr.write(json.dumps(cert_mod.envelope(root, started, argv), sort_keys=True) + "\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())

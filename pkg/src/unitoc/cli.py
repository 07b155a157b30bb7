"""Command-line front end: ``unitoc <command> [options]``.

Exit codes depend on the verdict only: 0 unit OC, 1 certified non-member,
2 not an interval order (a 2+2 was found).  Problems with the invocation
or the input use the ``sysexits`` range: 64 usage, 65 bad input data,
66 unreadable file, 70 internal error.

Set ``UNITOC_TRACE=1`` to get trace events without ``--trace``;
``UNITOC_TRACE=2`` also turns on debug logging.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
from typing import Sequence

import numpy as np

from .builder import build_tables
from .catalog import Certificate, ForbiddenKind, export_catalog, find_forbidden
from .errors import InternalError, OracleBoundError, ParseError, PosetError, TwinError
from .poset import Poset, is_twin_free, reduce_twins
from .recognizer import RecognizerOutcome, Trace, initial_representation, recognize_twin_free
from .render import DEFAULT_WIDTH, render
from .testkit import check_poset, differential_suite, fuzz_poset, oracle_is_unit_oc
from .textio import ResultDocument, format_poset, load_poset
from .unitizer import recognize_general, strict_to_unit

EXIT_UNIT_OC = 0
EXIT_NOT_UNIT_OC = 1
EXIT_NOT_INTERVAL_ORDER = 2
EXIT_USAGE = 64
EXIT_DATAERR = 65
EXIT_NOINPUT = 66
EXIT_SOFTWARE = 70

EXIT_FOR_VERDICT = {
    "unit-oc": EXIT_UNIT_OC,
    "not-unit-oc": EXIT_NOT_UNIT_OC,
    "not-interval-order": EXIT_NOT_INTERVAL_ORDER,
}

TRACE_ENV = "UNITOC_TRACE"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc.strerror}") from exc


def _load(path: str) -> Poset:
    return load_poset(_read_input(path))


def _trace_level(args) -> int:
    env = os.environ.get(TRACE_ENV, "")
    level = int(env) if env.isdigit() else 0
    return max(level, 1 if args.trace else 0)


def _verdict(outcome: RecognizerOutcome) -> str:
    if outcome.accepted:
        return "unit-oc"
    if outcome.certificate.kind is ForbiddenKind.TwoPlusTwo:
        return "not-interval-order"
    return "not-unit-oc"


def _solve(P: Poset, args, trace: Trace | None) -> ResultDocument:
    if args.mode == "general":
        outcome = recognize_general(P, trace)
    else:
        if not is_twin_free(P):
            raise TwinError("twin-free mode was given a poset with twins; use --mode general")
        outcome = recognize_twin_free(P, trace)
        if outcome.accepted and not getattr(args, "strict", False):
            outcome = RecognizerOutcome(representation=strict_to_unit(P, outcome.representation))
    doc = ResultDocument(_verdict(outcome), args.mode, outcome.representation, outcome.certificate,
                         list(trace) if trace is not None else None)
    if not doc.verifies(P):
        raise InternalError("refusing to print a result that does not re-verify")
    return doc


def _print_result(doc: ResultDocument, args, full: bool) -> None:
    if args.json:
        d = doc.to_dict()
        if not full:
            d.pop("representation", None)
        print(json.dumps(d, indent=2))
        return
    print(f"verdict: {doc.verdict}")
    if doc.certificate is not None:
        c = doc.certificate
        print(f"certificate: {c.kind.value} " + " ".join(f"{p}={x}" for p, x in c.embedding.items()))
    if full and doc.representation is not None:
        rep = doc.representation
        w = max((len(x) for x in rep), default=0)
        for x, iv in rep.items():
            print(f"  {x.ljust(w)}  {iv}")
    if doc.trace is not None and not args.json:
        for event in doc.trace:
            print(f"trace: {event}", file=sys.stderr)


def _cmd_check(args) -> int:
    P = _load(args.file)
    trace = Trace() if _trace_level(args) else None
    doc = _solve(P, args, trace)
    _print_result(doc, args, full=False)
    return EXIT_FOR_VERDICT[doc.verdict]


def _cmd_realize(args) -> int:
    P = _load(args.file)
    trace = Trace() if _trace_level(args) else None
    doc = _solve(P, args, trace)
    _print_result(doc, args, full=True)
    return EXIT_FOR_VERDICT[doc.verdict]


def _cmd_render(args) -> int:
    P = _load(args.file)
    doc = _solve(P, args, None)
    if doc.representation is None:
        _print_result(doc, args, full=False)
    else:
        print(render(doc.representation, width=args.width))
    return EXIT_FOR_VERDICT[doc.verdict]


def _cmd_oracle(args) -> int:
    P = _load(args.file)
    two_two = find_forbidden(P, "TwoTwoOnly")
    if two_two is not None:
        verdict, cert = "not-interval-order", two_two
    else:
        catalog = "T" if args.mode == "general" else "F"
        if args.mode == "twin-free" and not is_twin_free(P):
            raise TwinError("twin-free mode was given a poset with twins; use --mode general")
        cert = find_forbidden(P, catalog)
        verdict = "not-unit-oc" if cert is not None else "unit-oc"
    if args.json:
        print(json.dumps({"verdict": verdict, "mode": args.mode, "oracle": True,
                          "certificate": None if cert is None else cert.to_dict()}, indent=2))
    else:
        print(f"verdict: {verdict} (brute force)")
        if cert is not None:
            print(f"certificate: {cert.kind.value} "
                  + " ".join(f"{p}={x}" for p, x in cert.embedding.items()))
    if args.mode == "general" and (verdict == "unit-oc") != oracle_is_unit_oc(P):
        raise InternalError("oracle verdicts disagree")
    return EXIT_FOR_VERDICT[verdict]


def _cmd_dump_tables(args) -> int:
    P = _load(args.file)
    if args.mode == "general":
        P, _ = reduce_twins(P)
    elif not is_twin_free(P):
        raise TwinError("twin-free mode was given a poset with twins; use --mode general")
    init = initial_representation(P)
    if isinstance(init, Certificate):
        print(f"verdict: not-interval-order\ncertificate: {init.kind.value} "
              + " ".join(f"{p}={x}" for p, x in init.embedding.items()))
        return EXIT_NOT_INTERVAL_ORDER
    A, B = build_tables(init.refined)
    print(A.format())
    if args.verbose:
        print()
        w = max((len(x) for x in B.index_pair), default=0)
        for x in sorted(B.index_pair, key=B.left):
            print(f"{x.ljust(w)}  L={B.left(x)} R={B.right(x)}  I={init.refined[x]}")
    return EXIT_UNIT_OC


def _cmd_diff(args) -> int:
    def progress(n, total):
        print(f"n<={n}: {total} labeled posets checked", file=sys.stderr)

    report = differential_suite(args.n, progress=progress if not args.json else None)
    fuzz_failures = []
    if args.fuzz:
        rng = np.random.default_rng(args.seed)
        for _ in range(args.fuzz):
            P = fuzz_poset(rng, int(rng.integers(1, args.fuzz_max_n + 1)))
            problems = check_poset(P, oracle=False).problems
            if problems:
                fuzz_failures.append(format_poset(P, name="; ".join(problems)))
    if args.json:
        d = dataclasses.asdict(report)
        d["fuzzed"] = args.fuzz
        d["fuzz_failures"] = fuzz_failures
        print(json.dumps(d, indent=2))
    else:
        print(f"labeled posets: {report.total_labeled} (twin-free {report.twin_free})")
        print(f"agreements: {report.agreements}  disagreements: {report.disagreements}")
        for s in report.disagreement_samples:
            print(s)
        if args.fuzz:
            print(f"fuzzed posets: {args.fuzz} (seed {args.seed})  failures: {len(fuzz_failures)}")
            for s in fuzz_failures[:10]:
                print(s)
    return EXIT_UNIT_OC if not report.disagreements and not fuzz_failures else EXIT_NOT_UNIT_OC


def _cmd_export_catalog(args) -> int:
    kinds = [ForbiddenKind(k) for k in args.kind] if args.kind else None
    posets = export_catalog(kinds)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for k, P in posets.items():
            with open(os.path.join(args.out, f"{k.value}.poset"), "w", encoding="utf-8") as fh:
                fh.write(format_poset(P, name=k.value))
    else:
        print("\n".join(format_poset(P, name=k.value) for k, P in posets.items()), end="")
    return EXIT_UNIT_OC


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--mode", choices=("twin-free", "general"), default="general",
                        help="twin-free runs the bare algorithm (twins are an error); "
                             "general collapses twins first (default)")
    common.add_argument("--json", action="store_true", help="emit a JSON result document")
    common.add_argument("--trace", action="store_true", help="record algorithm events")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")

    parser = _Parser(prog="unitoc", description="Recognize and realize unit OC interval orders.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_, with_file=True):
        p = sub.add_parser(name, parents=[common], help=help_)
        if with_file:
            p.add_argument("file", help="poset file, or - for stdin")
        p.set_defaults(func=fn)
        return p

    add("check", _cmd_check, "print the verdict and certificate kind")
    p = add("realize", _cmd_realize, "print the verdict with a representation or certificate")
    p.add_argument("--strict", action="store_true",
                   help="in twin-free mode, emit the strict representation instead of a unit one")
    add("oracle", _cmd_oracle, "brute-force verdict by forbidden-subposet search")
    p = add("render", _cmd_render, "ASCII diagram of the unit representation")
    p.add_argument("--width", type=int, default=DEFAULT_WIDTH, help="columns for the bars")
    p = add("dump-tables", _cmd_dump_tables, "sorted endpoint table of the initial representation")
    p.add_argument("-v", "--verbose", action="store_true", help="also list per-element indices")
    p = add("diff", _cmd_diff, "differential test against the oracle", with_file=False)
    p.add_argument("--n", type=int, default=5, help="check all labeled posets up to this size")
    p.add_argument("--fuzz", type=int, default=0, help="also check this many random posets")
    p.add_argument("--fuzz-max-n", type=int, default=40)
    p = add("export-catalog", _cmd_export_catalog, "write the forbidden posets in text form",
            with_file=False)
    p.add_argument("--kind", action="append", choices=[k.value for k in ForbiddenKind])
    p.add_argument("--out", help="directory for one file per poset (default stdout)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if _trace_level(args) >= 2:
        logging.basicConfig(level=logging.DEBUG, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"unitoc: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except (ParseError, PosetError, TwinError, OracleBoundError) as exc:
        print(f"unitoc: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    except InternalError as exc:
        print(f"unitoc: internal error: {exc}", file=sys.stderr)
        return EXIT_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())

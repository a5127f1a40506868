"""Command-line front end.

Reports are ``key=value`` lines.  Exit codes: 0 success, 1 a negative
answer (not isomorphic, no minor, failed check), 2 usage or input error,
3 a node or time budget ran out.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time
from typing import Sequence

from . import __version__
from .bmx import BmxParseError, emit_matroid, read_matroid, write_matroid
from .catalog import CatalogError, CatalogScope, catalog
from .families import FAMILIES, FamilySpec, construct
from .gf2 import BitMatrix, DimensionError
from .iso import are_isomorphic
from .matroid import BinaryMatroid
from .minors import DEFAULT_NODE_BUDGET, DEFAULT_TIME_BUDGET, ResourceLimitExceeded, has_minor
from .splitter import HypothesisError, NoCertificateFound, splitter_step, zhou_dichotomy_classify
from .structure import connectivity_class, fans, find_violator, quads, triads, triangles
from .suites import SUITES, family_minor_instances, verify_lemma_suite

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(out, key: str, value) -> None:
    out.write(f"{key}={value}\n")


def _labels(m: BinaryMatroid, mask: int) -> str:
    return ",".join(m.labels(mask))


def _load(path: str) -> BinaryMatroid:
    try:
        return read_matroid(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except BmxParseError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _budgets(args) -> dict:
    return {"node_budget": args.node_budget, "time_budget": args.time_budget}


# -- subcommands -----------------------------------------------------------------

def cmd_family(args, out) -> int:
    try:
        m = construct(FamilySpec(args.name, args.n))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.output:
        write_matroid(m, args.output)
        _emit(out, "wrote", args.output)
        _emit(out, "elements", len(m))
        _emit(out, "rank", m.rank)
    else:
        out.write(emit_matroid(m))
    return EXIT_OK


def cmd_analyze(args, out) -> int:
    m = _load(args.file)
    cls = connectivity_class(m)
    _emit(out, "name", m.name)
    _emit(out, "elements", len(m))
    _emit(out, "rank", m.rank)
    _emit(out, "class", cls)
    _emit(out, "triangles", len(triangles(m)))
    _emit(out, "triads", len(triads(m)))
    _emit(out, "quads", len(quads(m)))
    _emit(out, "fans4", sum(f.kind == "4-fan" for f in fans(m, 4)))
    if cls.is_3_connected:
        for k in (3, 4):
            sep = find_violator(m, k)
            _emit(out, f"violator{k}", "none" if sep is None else f"{_labels(m, sep.side_x)}|{_labels(m, sep.side_y)}")
    family = zhou_dichotomy_classify(m)
    if family.kind == "family":
        _emit(out, "family", f"{family.family}({family.n})" + ("*" if family.dualized else ""))
    return EXIT_OK


def cmd_iso(args, out) -> int:
    a, b = _load(args.first), _load(args.second)
    w = are_isomorphic(a, b)
    _emit(out, "isomorphic", "yes" if w else "no")
    if w is None:
        return EXIT_NO
    _emit(out, "map", ",".join(f"{k}:{v}" for k, v in w.column_map.items()))
    _emit(out, "basis_change", "/".join(w.basis_change.to_strings()))
    _emit(out, "verified", w.verify(a, b))
    return EXIT_OK


def cmd_minor(args, out) -> int:
    m, n = _load(args.matroid), _load(args.minor)
    try:
        fix = m.mask(args.fix.split(",")) if args.fix else 0
    except (KeyError, ValueError) as exc:
        raise UsageError(f"bad --fix: {exc}") from exc
    cert = has_minor(m, n, fix, **_budgets(args))
    _emit(out, "has_minor", "yes" if cert else "no")
    if cert is None:
        return EXIT_NO
    _emit(out, "delete", _labels(m, cert.delete_set))
    _emit(out, "contract", _labels(m, cert.contract_set))
    _emit(out, "map", ",".join(f"{k}:{v}" for k, v in cert.iso_map.items()))
    _emit(out, "verified", cert.verify(m, n))
    return EXIT_OK


def cmd_split(args, out) -> int:
    m, n = _load(args.matroid), _load(args.minor)
    try:
        cert = splitter_step(m, n, strict=not args.relaxed, **_budgets(args))
    except HypothesisError as exc:
        _emit(out, "hypotheses", "fail")
        for reason in exc.report.failures():
            _emit(out, "reason", reason)
        return EXIT_NO
    except NoCertificateFound as exc:
        _emit(out, "certificate", "none")
        for line in exc.transcript:
            _emit(out, "tried", line)
        if not args.relaxed:
            sys.stderr.write("NO CERTIFICATE for a pair passing the hypotheses; see the transcript\n")
        return EXIT_NO
    _emit(out, "certificate", "found")
    for step in cert.describe():
        _emit(out, "step", step)
    _emit(out, "removed", len(m) - len(cert.result))
    _emit(out, "class", cert.connectivity)
    _emit(out, "minor_delete", _labels(cert.result, cert.minor_proof.delete_set))
    _emit(out, "minor_contract", _labels(cert.result, cert.minor_proof.contract_set))
    _emit(out, "verified", cert.verify(m, n))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    n = None
    if args.n_file:
        n = _load(args.n_file)
    elif args.n_family:
        n = construct(args.n_family, args.n_order)
    try:
        scope = CatalogScope.parse(args.catalog)
    except CatalogError as exc:
        raise UsageError(str(exc)) from exc
    extra = family_minor_instances() if args.family_minors else ()
    report = verify_lemma_suite(args.suite, scope, n=n, threads=args.threads, duals=args.duals, extra=extra)
    lines = report.lines if args.verbose else [ln for ln in report.lines if ln.status != "SKIP"]
    for ln in lines:
        out.write(ln.format(report.suite) + "\n")
    out.write(report.summary() + "\n")
    return EXIT_OK if report.passed else EXIT_NO


def cmd_enum(args, out) -> int:
    try:
        scope = CatalogScope.parse(args.catalog)
    except CatalogError as exc:
        raise UsageError(str(exc)) from exc
    ms = catalog(scope)
    if args.output_dir:
        os.makedirs(args.output_dir, exist_ok=True)
    for m in ms:
        line = f"{m.name} elements={len(m)} rank={m.rank}"
        if args.classify:
            line += f" class={connectivity_class(m)}"
        out.write(line + "\n")
        if args.output_dir:
            write_matroid(m, os.path.join(args.output_dir, m.name.replace("#", "_") + ".bmx"))
    _emit(out, "count", len(ms))
    return EXIT_OK


def bench_matroid(seed: int = 2024) -> BinaryMatroid:
    """A fixed 16-element rank-8 binary matroid, [I_8 | A] with A random."""
    rng = random.Random(seed)
    rows = [(1 << i) | (rng.getrandbits(8) << 8) for i in range(8)]
    return BinaryMatroid([f"b{i}" for i in range(16)], BitMatrix(8, 16, tuple(rows)), "bench16")


def rank_queries_per_second(queries: int = 200_000, seed: int = 2024) -> tuple[float, int]:
    m = bench_matroid(seed)
    rng = random.Random(seed + 1)
    subsets = [rng.getrandbits(16) for _ in range(queries)]
    start = time.perf_counter()
    total = 0
    for s in subsets:
        total += m.rank_of(s)
    elapsed = time.perf_counter() - start
    return queries / elapsed, total


def cmd_bench(args, out) -> int:
    rate, checksum = rank_queries_per_second(args.queries, args.seed)
    _emit(out, "instance", "bench16 elements=16 rank=8")
    _emit(out, "queries", args.queries)
    _emit(out, "queries_per_second", f"{rate:.0f}")
    _emit(out, "checksum", checksum)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_budgets(p):
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET,
                   help=f"search nodes before giving up (default {DEFAULT_NODE_BUDGET})")
    p.add_argument("--time-budget", type=float, default=DEFAULT_TIME_BUDGET,
                   help=f"seconds before giving up (default {DEFAULT_TIME_BUDGET:g})")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="binmat", description="Binary matroid connectivity, minors and splitter certificates.")
    parser.add_argument("--version", action="version", version=f"binmat {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("family", help="write a named matroid as .bmx")
    p.add_argument("--name", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, default=4, help="order of the biwheel and Moebius families")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("analyze", help="connectivity class and small structures")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("iso", help="isomorphism test with witness")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("minor", help="minor test with certificate")
    p.add_argument("matroid")
    p.add_argument("minor")
    p.add_argument("--fix", default="", help="comma-separated labels the minor must keep")
    _add_budgets(p)
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("split", help="splitter step certificate")
    p.add_argument("matroid")
    p.add_argument("minor")
    p.add_argument("--relaxed", action="store_true", help="skip the hypothesis checks")
    _add_budgets(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("verify", help="run a lemma suite over a catalog")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--catalog", default="rank<=4,size<=10,3connected")
    p.add_argument("--n-file", help="N for minorsof45fans, as a .bmx file")
    p.add_argument("--n-family", choices=FAMILIES, help="N for minorsof45fans, as a named matroid")
    p.add_argument("--n-order", type=int, default=4)
    p.add_argument("--duals", action="store_true", help="add the duals of the catalog members")
    p.add_argument("--family-minors", action="store_true",
                   help="add single-element minors of the four families (order 4)")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("-v", "--verbose", action="store_true", help="also print skipped instances")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enum", help="list catalog representatives")
    p.add_argument("--catalog", default="rank<=4,size<=10,3connected")
    p.add_argument("--classify", action="store_true")
    p.add_argument("-o", "--output-dir")
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("bench", help="rank oracle throughput")
    p.add_argument("--queries", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=2024)
    p.set_defaults(func=cmd_bench)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        if args.command is None:
            raise UsageError("a subcommand is required")
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"binmat: error: {exc}\n")
        return EXIT_USAGE
    except (DimensionError, CatalogError) as exc:
        err.write(f"binmat: error: {exc}\n")
        return EXIT_USAGE
    except ResourceLimitExceeded as exc:
        _emit(out, "status", "resource-exhausted")
        err.write(f"binmat: {exc}\n")
        return EXIT_BUDGET
    except SystemExit as exc:  # --help and --version
        return exc.code if isinstance(exc.code, int) else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

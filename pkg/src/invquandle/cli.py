"""Command line interface.

Exit codes: 0 success, 1 usage or parse error, 2 enumeration budget
exceeded, 3 a verification check failed.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import re
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd
from pathlib import Path

from . import analysis, export, families
from .model import CayleyTable, Presentation, check_axioms, full_op_table
from .parser import ParseError, parse_pd, parse_presentation, serialize_presentation
from .winker import (
    DEFAULT_MAX_ELEMENTS,
    DEFAULT_MAX_STEPS,
    BudgetExceeded,
    EnumerationBudget,
    enumerate_quandle,
)

log = logging.getLogger("invquandle")

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3

# beyond this the O(n^3) axiom check is skipped by --verify
AXIOM_CHECK_LIMIT = 600


class _Budget(Exception):
    def __init__(self, result: BudgetExceeded) -> None:
        super().__init__(f"budget exceeded after {result.elements_reached} elements, "
                         f"{result.steps_used} steps")
        self.result = result


def _budget(args: argparse.Namespace) -> EnumerationBudget:
    max_elements = args.max_elements
    if max_elements is None:
        max_elements = int(os.environ.get("QUANDLE_MAX_ELEMENTS", DEFAULT_MAX_ELEMENTS))
    return EnumerationBudget(max_elements, args.max_steps)


def _enumerate(p: Presentation, args: argparse.Namespace) -> CayleyTable:
    result = enumerate_quandle(p, _budget(args))
    if isinstance(result, BudgetExceeded):
        raise _Budget(result)
    return result.table


def _report(t: CayleyTable, args: argparse.Namespace, prefix: str = "") -> None:
    comp = analysis.components(t)
    print(f"{prefix}size={t.size} components={comp.sizes}")
    if getattr(args, "json", None):
        Path(args.json).write_text(export.table_to_json(t), encoding="utf-8")
    if getattr(args, "dot", None):
        Path(args.dot).write_text(export.table_to_dot(t), encoding="utf-8")


def _load(source: str) -> Presentation:
    """A presentation file, or ``L(k,p/q)`` for the reduced family presentation."""
    m = re.fullmatch(r"L\((-?\d+),\s*(-?\d+)/(\d+)\)(?:uC)?", source.strip())
    if m:
        fp = families.normalize_params(*(int(x) for x in m.groups()))
        return families.reduced_presentation(fp)
    return parse_presentation(Path(source).read_text(encoding="utf-8"))


def _print_checks(report) -> None:
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        extra = f" witness={c.witness}" if c.witness is not None else ""
        print(f"  [{status}] {c.name}{extra}")


# -- commands ---------------------------------------------------------------------

def cmd_enumerate(args: argparse.Namespace) -> int:
    t = _enumerate(_load(args.file), args)
    _report(t, args)
    if args.verify:
        return _verify_axioms(t)
    return EXIT_OK


def _verify_axioms(t: CayleyTable) -> int:
    if t.size > AXIOM_CHECK_LIMIT:
        print(f"  [SKIP] axioms (size {t.size} > {AXIOM_CHECK_LIMIT})")
        return EXIT_OK
    rep = check_axioms(full_op_table(t))
    _print_checks(rep)
    return EXIT_OK if rep.passed else EXIT_VERIFY


def cmd_family(args: argparse.Namespace) -> int:
    fp = families.normalize_params(args.k, args.p, args.q)
    if (fp.k, fp.p) != (args.k, args.p):
        print(f"normalized to {fp}")
    print(f"{fp}: d=kq-p={fp.d}")
    kinds = [k for k in ("raw", "reduced") if getattr(args, k)] or ["reduced"]
    tables = {}
    for kind in kinds:
        p = families.raw_presentation(fp) if kind == "raw" else families.reduced_presentation(fp)
        if args.show:
            print(serialize_presentation(p), end="")
        tables[kind] = _enumerate(p, args)
        _report(tables[kind], args, prefix=f"{kind}: ")
    status = EXIT_OK
    if len(tables) == 2:
        iso = analysis.is_isomorphic(tables["raw"], tables["reduced"])
        ok = isinstance(iso, analysis.Isomorphic)
        print("raw and reduced: " + ("isomorphic" if ok else f"NOT isomorphic ({iso.reason})"))
        if not ok:
            status = EXIT_VERIFY
    if args.verify:
        t = tables[kinds[-1]]
        rep = analysis.verify_relations(t, families.lemma_relation_suite(fp))
        comp = analysis.components(t)
        rep.add("cardinality", t.size == families.expected_cardinality(fp),
                None if t.size == families.expected_cardinality(fp)
                else (t.size, families.expected_cardinality(fp)))
        want = families.components_by_d_parity(fp)
        rep.add("components", comp.sizes == want, None if comp.sizes == want else (comp.sizes, want))
        failed = rep.failures()
        print(f"verify: {len(rep) - len(failed)}/{len(rep)} checks passed")
        if failed:
            _print_checks(type(rep)(failed))
            status = EXIT_VERIFY
        if _verify_axioms(t) != EXIT_OK:
            status = EXIT_VERIFY
    return status


@dataclass
class SweepRow:
    k: int
    p: int
    q: int
    d: int
    size: int
    components: list[int]
    formula_size: int
    formula_components: list[int]
    table_components: list[int]
    match: bool
    elapsed_ms: float

    HEADER = ("k", "p", "q", "d", "size", "components", "formula_size",
              "formula_components", "table_components", "match", "elapsed_ms")

    def as_csv(self) -> list[str]:
        bar = lambda xs: "|".join(str(x) for x in xs)  # noqa: E731
        return [str(self.k), str(self.p), str(self.q), str(self.d), str(self.size),
                bar(self.components), str(self.formula_size), bar(self.formula_components),
                bar(self.table_components), "1" if self.match else "0", f"{self.elapsed_ms:.1f}"]


def sweep_params(q_max: int, k_min: int, k_max: int) -> list[families.FamilyParams]:
    return [
        families.FamilyParams(k, p, q)
        for q in range(2, q_max + 1)
        for p in range(1, q)
        if gcd(p, q) == 1
        for k in range(k_min, k_max + 1)
    ]


def sweep_row(fp: families.FamilyParams, budget: EnumerationBudget | None = None) -> SweepRow:
    start = time.perf_counter()
    result = enumerate_quandle(families.reduced_presentation(fp), budget)
    elapsed = (time.perf_counter() - start) * 1000
    if isinstance(result, BudgetExceeded):
        size, comps = -1, []
    else:
        size, comps = result.table.size, analysis.components(result.table).sizes
    formula = families.expected_cardinality(fp)
    formula_comps = families.components_by_d_parity(fp)
    return SweepRow(fp.k, fp.p, fp.q, fp.d, size, comps, formula, formula_comps,
                    families.expected_components(fp),
                    size == formula and comps == formula_comps, elapsed)


def run_sweep(q_max: int, k_min: int, k_max: int, jobs: int = 1,
              budget: EnumerationBudget | None = None) -> list[SweepRow]:
    params = sweep_params(q_max, k_min, k_max)
    if jobs > 1 and len(params) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(sweep_row, params, [budget] * len(params)))
    return [sweep_row(fp, budget) for fp in params]


def cmd_sweep(args: argparse.Namespace) -> int:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rows = run_sweep(args.q_max, args.k_min, args.k_max, args.jobs, _budget(args))
    with open(args.csv, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SweepRow.HEADER)
        for row in rows:
            writer.writerow(row.as_csv())
    bad = [r for r in rows if not r.match]
    print(f"{len(rows)} rows, {len(rows) - len(bad)} match")
    for r in bad:
        print(f"  mismatch k={r.k} p={r.p} q={r.q}: size={r.size} components={r.components}")
    return EXIT_VERIFY if bad else EXIT_OK


def cmd_iso(args: argparse.Namespace) -> int:
    s = _enumerate(_load(args.file_a), args)
    t = _enumerate(_load(args.file_b), args)
    iso = analysis.is_isomorphic(s, t)
    if isinstance(iso, analysis.Isomorphic):
        images = ", ".join(f"{g} -> {export.rep_label(t, y)}"
                           for g, y in zip(s.generators, iso.generator_images))
        print(f"isomorphic: {images}")
    else:
        print(f"not isomorphic: {iso.reason}")
    return EXIT_OK


def cmd_pd(args: argparse.Namespace) -> int:
    p = families.wirtinger_presentation(parse_pd(args.code))
    t = _enumerate(p, args)
    _report(t, args)
    if args.verify:
        return _verify_axioms(t)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--max-elements", type=int, default=None,
                        help=f"element budget (default $QUANDLE_MAX_ELEMENTS or {DEFAULT_MAX_ELEMENTS})")
    shared.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    shared.add_argument("--dot", metavar="FILE", help="write the Cayley graph as Graphviz DOT")
    shared.add_argument("--json", metavar="FILE", help="write the Cayley table as JSON")
    shared.add_argument("--verify", action="store_true", help="run verification checks")
    shared.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="invquandle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[shared], help="enumerate a presentation file")
    p.add_argument("file")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("family", parents=[shared], help="the link L(k,p/q) u C")
    p.add_argument("k", type=int)
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--raw", action="store_true", help="use the tangle presentation")
    p.add_argument("--reduced", action="store_true", help="use the reduced presentation (default)")
    p.add_argument("--show", action="store_true", help="print the presentation")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("sweep", parents=[shared], help="batch check over a parameter range")
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--k-min", type=int, required=True)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--csv", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("iso", parents=[shared], help="test two presentations for isomorphism")
    p.add_argument("file_a", help="presentation file or L(k,p/q)")
    p.add_argument("file_b", help="presentation file or L(k,p/q)")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("pd", parents=[shared], help="enumerate the quandle of a PD code")
    p.add_argument("code")
    p.set_defaults(func=cmd_pd)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except _Budget as exc:
        print(f"BudgetExceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, families.ParameterError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

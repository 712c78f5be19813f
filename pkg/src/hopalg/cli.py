"""Command line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource bound reached.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import kernels
from .algebra import StructuredAlgebra, verify_sigma_structure
from .bigraded import BiDegree
from .charts import FORMATS, chart_render
from .formats import (
    FormatError,
    algebra_from_document,
    algebra_to_document,
    dump_json,
    load_json,
    resolution_to_document,
    skeleton_from_document,
    skeleton_to_document,
)
from .gstar import BStarSkeleton, bstar_basis, gstar_algebra, steenrod_skeleton
from .resolution import (
    ORACLE_MAX_S,
    ORACLE_MAX_T,
    ExtChart,
    compare_charts,
    ext_chart,
    oracle_chart,
    resolve,
)
from .steenrod import (
    adem_normalize,
    adem_relation_set,
    admissible_basis,
    format_monomial,
    milnor_dimension,
    parse_monomial,
)

OK, FAIL, USAGE, RESOURCE = 0, 1, 2, 3
MAX_GSTAR_N = 64


class UsageError(Exception):
    pass


def _out(text: str = "") -> None:
    sys.stdout.write(text + "\n")


def _err(text: str) -> None:
    sys.stderr.write(text + "\n")


# -- commands ------------------------------------------------------------------


def cmd_adem(args: argparse.Namespace) -> int:
    try:
        word = parse_monomial(" ".join(args.monomial))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _out(str(adem_normalize(word)))
    return OK


def cmd_basis(args: argparse.Namespace) -> int:
    if args.degree < 0:
        raise UsageError("degree must be non-negative")
    basis = admissible_basis(args.degree)
    _out(", ".join(format_monomial(m) for m in basis))
    _out(f"count {len(basis)}")
    if args.oracle:
        milnor = milnor_dimension(args.degree)
        _out(f"milnor {milnor}")
        _out("AGREE" if milnor == len(basis) else "DISAGREE")
        return OK if milnor == len(basis) else FAIL
    return OK


def cmd_relations(args: argparse.Namespace) -> int:
    if args.max_degree < 2:
        raise UsageError("max degree must be at least 2")
    for rel in adem_relation_set(args.max_degree):
        _out(f"{rel.label}  ({rel.degree},1)  {rel}")
    return OK


def _gstar_report(alg: StructuredAlgebra, n_max: int) -> int:
    report = verify_sigma_structure(alg, BiDegree(n_max, n_max))
    failures = report.failures()
    _out(f"algebra {alg.name or '?'} over {alg.ring}, window n, m <= {n_max}")
    _out(f"d[1] = 0: {'ok' if report.d_one_zero else 'FAIL'}")
    _out(f"[1] central in homology: {'ok' if report.central else 'FAIL'}")
    _out(f"Sigma -> cotr_1 homology iso: {'ok' if report.quasi_iso else 'FAIL'}")
    _out(f"{'n':>3}  {'H_n':<8} {'where':<10} check")
    for n in range(n_max + 1):
        nonzero = {
            b: h for b, h in report.homology.items() if b.dimension == n and not h.is_zero
        }
        want = BiDegree(n, n)
        good = list(nonzero) == [want] and nonzero[want].dim == 1 and nonzero[want].n_p2 == 0
        if not good:
            failures.append(f"H_{n} is not F concentrated in bidegree ({n},{n})")
        where = ",".join(f"({b.degree},{b.dimension})" for b in sorted(nonzero)) or "-"
        shown = " + ".join(str(h) for _, h in sorted(nonzero.items())) or "0"
        _out(f"{n:>3}  {shown:<8} {where:<10} {'ok' if good else 'FAIL'}")
    if failures:
        _out(f"FAIL: {failures[0]}")
        return FAIL
    _out("all checks pass")
    return OK


def cmd_gstar_verify(args: argparse.Namespace) -> int:
    if not 0 <= args.max_n <= MAX_GSTAR_N:
        raise UsageError(f"--max-n must lie in [0, {MAX_GSTAR_N}]")
    if args.presentation:
        alg = algebra_from_document(load_json(args.presentation))
    else:
        alg = gstar_algebra(args.prime, args.max_n + 2)
    return _gstar_report(alg, args.max_n)


def cmd_gstar_presentation(args: argparse.Namespace) -> int:
    _out(dump_json(algebra_to_document(gstar_algebra(args.prime, args.max_index))).rstrip())
    return OK


def _load_skeleton(path: str | None, max_degree: int) -> BStarSkeleton:
    if path is None:
        return steenrod_skeleton(max(max_degree, 1))
    return skeleton_from_document(load_json(path))


def cmd_bstar_basis(args: argparse.Namespace) -> int:
    if args.degree < 0 or args.dimension < 0:
        raise UsageError("degree and dimension must be non-negative")
    skel = _load_skeleton(args.skeleton, args.degree)
    words = bstar_basis(skel, BiDegree(args.degree, args.dimension))
    for w in words:
        _out(str(w))
    _out(f"count {len(words)}")
    return OK


def cmd_skeleton(args: argparse.Namespace) -> int:
    _out(dump_json(skeleton_to_document(steenrod_skeleton(args.max_degree))).rstrip())
    return OK


def cmd_resolve(args: argparse.Namespace) -> int:
    if args.max_s < 0 or args.max_t < 0:
        raise UsageError("--max-s and --max-t must be non-negative")
    if args.threads < 1:
        raise UsageError("--threads must be positive")
    res = resolve(None, args.max_s, args.max_t, threads=args.threads, max_basis=args.max_basis)
    chart = ext_chart(res)
    status = OK
    if not res.complete:
        # keep only stages finished through max_t
        s_done = -1
        if res.frontier is not None:
            s, t = res.frontier
            s_done = s if t == args.max_t else s - 1
            _err(f"resource bound reached; completed frontier (s, t) = ({s}, {t})")
        else:
            _err("resource bound reached before any degree was completed")
        keep = tuple(c for c in chart.classes if c[0] <= s_done)
        chart = ExtChart(2, max(s_done, 0), args.max_t, keep)
        status = RESOURCE
    if args.out:
        Path(args.out).write_text(chart_render(chart, "json"), encoding="utf-8")
    if args.dump:
        Path(args.dump).write_text(dump_json(resolution_to_document(res)), encoding="utf-8")
    if args.render:
        text = chart_render(chart, args.render)
        if args.render_out:
            Path(args.render_out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    dims = chart.dims()
    _out(f"classes {len(chart.classes)} in {len(dims)} bidegrees (s <= {chart.max_s}, t <= {chart.max_t})")
    if args.oracle and status == OK:
        ms, mt = min(args.max_s, ORACLE_MAX_S), min(args.max_t, ORACLE_MAX_T)
        diff = compare_charts(chart.restrict(ms, mt), oracle_chart(ms, mt))
        if diff:
            s, t, a, b = diff[0]
            _out(f"DISAGREE at (s,t) = ({s},{t}): resolve {a}, oracle {b}")
            return FAIL
        _out(f"AGREE on s <= {ms}, t <= {mt}")
    return status


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hopalg", description=__doc__.splitlines()[0])
    ap.add_argument(
        "--backend",
        choices=["auto", "compiled", "python"],
        default="auto",
        help="F_2 elimination kernels (default: compiled when built)",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("adem", help="admissible form of a Steenrod monomial")
    p.add_argument("monomial", nargs="+", help='e.g. "Sq2 Sq2"')
    p.set_defaults(func=cmd_adem)

    p = sub.add_parser("basis", help="admissible basis in one degree")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="compare with the Milnor count")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("relations", help="list Adem relations up to a degree")
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("gstar-verify", help="check the Sigma-structure and homology of G*")
    p.add_argument("--prime", type=int, default=2)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--presentation", help="presentation JSON to check instead of G*")
    p.set_defaults(func=cmd_gstar_verify)

    p = sub.add_parser("gstar-presentation", help="print G* as a presentation document")
    p.add_argument("--prime", type=int, default=2)
    p.add_argument("--max-index", type=int, default=8)
    p.set_defaults(func=cmd_gstar_presentation)

    p = sub.add_parser("bstar-basis", help="word basis of B* in one bidegree")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--dimension", type=int, required=True)
    p.add_argument("--skeleton", help="skeleton JSON (default: Steenrod generators, p = 2)")
    p.set_defaults(func=cmd_bstar_basis)

    p = sub.add_parser("skeleton", help="print the p = 2 Steenrod skeleton document")
    p.add_argument("--max-degree", type=int, default=6)
    p.set_defaults(func=cmd_skeleton)

    p = sub.add_parser("resolve", help="minimal resolution of F_2 and its Ext chart")
    p.add_argument("--max-s", type=int, required=True)
    p.add_argument("--max-t", type=int, required=True)
    p.add_argument("--out", help="chart JSON path")
    p.add_argument("--render", choices=FORMATS)
    p.add_argument("--render-out", help="write the rendering here instead of stdout")
    p.add_argument("--dump", help="resolution dump JSON path")
    p.add_argument("--oracle", action="store_true", help="compare with the bar complex")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--max-basis", type=int, default=500_000, help="resource bound")
    p.set_defaults(func=cmd_resolve)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.backend != "auto" and args.backend not in kernels.available():
        _err(f"backend {args.backend!r} is not available")
        return USAGE
    kernels.set_backend(args.backend)
    try:
        return args.func(args)
    except (UsageError, FormatError, OSError) as exc:
        _err(f"error: {exc}")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success with nothing violated; 1 usage or I/O error;
2 a theorem exception, an unresolved indeterminate verdict, or a failed
lemma check.
"""

from __future__ import annotations

import argparse
import sys

from .batch import l_values
from .bounds import check_theorem
from .characters import count_primitive
from .lemmas import run_all
from .sweep import default_threads, emit_figure_data, summarize, sweep


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; usage errors are 1
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(1)


def _build_parser() -> _Parser:
    p = _Parser(prog="l1sweep",
                description="Rigorous L(1,chi) sweeps and bound verification")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sweep", help="verify the bound over a conductor range")
    s.add_argument("--qmin", type=int, required=True)
    s.add_argument("--qmax", type=int, required=True)
    s.add_argument("--all-q", action="store_true",
                   help="sweep every conductor, not only multiples of 3")
    s.add_argument("--tol", type=float, default=1e-9,
                   help="absolute tolerance per L-value (default 1e-9)")
    s.add_argument("--threads", type=int, default=None,
                   help="worker processes (default: $L1SWEEP_THREADS or 1)")
    s.add_argument("--out", required=True, help="row file path")

    lv = sub.add_parser("lvalue", help="print L(1,chi) for one conductor")
    lv.add_argument("--q", type=int, required=True)
    lv.add_argument("--index", type=int, default=None,
                    help="character enumeration index (default: all primitive)")

    fd = sub.add_parser("figure-data", help="emit (q, max excess) plot data")
    fd.add_argument("--in", dest="in_path", required=True)
    fd.add_argument("--parity", choices=("even", "odd"), required=True)
    fd.add_argument("--out", required=True)

    cl = sub.add_parser("check-lemmas", help="run the lemma validation suite")
    cl.add_argument("--grid", type=int, default=100)

    ct = sub.add_parser("count", help="count primitive characters up to qmax")
    ct.add_argument("--qmax", type=int, required=True)
    ct.add_argument("--all-q", action="store_true")
    return p


def _cmd_sweep(args) -> int:
    divisor = None if args.all_q else 3
    threads = args.threads if args.threads is not None else default_threads()
    try:
        summary = sweep(args.qmin, args.qmax, divisor, args.tol, threads, args.out)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    print(summarize(summary))
    if summary.exceptions or summary.tolerance_floor:
        return 2
    return 0


def _cmd_lvalue(args) -> int:
    if args.q < 3:
        print("error: q must be at least 3", file=sys.stderr)
        return 1
    records = l_values(args.q)
    if not records:
        print(f"q={args.q}: no primitive characters")
        return 0
    if args.index is not None:
        records = [r for r in records if r.index == args.index]
        if not records:
            print(f"error: no primitive character with index {args.index} mod {args.q}",
                  file=sys.stderr)
            return 1
    code = 0
    for r in records:
        rep = check_theorem(r)
        print(f"q={r.q} index={r.index} parity={r.parity} conductor={r.q} "
              f"L(1,chi)={r.value.re.mid:.12f}{r.value.im.mid:+.12f}i "
              f"|L|={r.abs_value.mid:.12f}(+/-{r.abs_value.rad:.1e}) "
              f"excess={r.excess.mid:+.7f} margin={rep.margin.mid:+.7f} "
              f"verdict={rep.verdict}"
              + ("" if rep.theorem_applies else " [3 does not divide q]"))
        if rep.verdict != "pass":
            code = 2
    return code


def _cmd_figure_data(args) -> int:
    try:
        n = emit_figure_data(args.in_path, args.parity, args.out)
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    print(f"wrote {n} points to {args.out}")
    return 0


def _cmd_check_lemmas(args) -> int:
    results = run_all(args.grid)
    ok = True
    for res in results:
        print(res.line())
        ok = ok and res.verdict == "pass"
    return 0 if ok else 2


def _cmd_count(args) -> int:
    divisor = None if args.all_q else 3
    print(count_primitive(args.qmax, divisor))
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {
        "sweep": _cmd_sweep,
        "lvalue": _cmd_lvalue,
        "figure-data": _cmd_figure_data,
        "check-lemmas": _cmd_check_lemmas,
        "count": _cmd_count,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())

"""Conductor sweeps: theorem verification, maxima tracking, row files.

One work unit is one conductor; conductors are independent, so a process
pool maps over them while a single writer emits rows in ascending-q
order.  Row files are plain UTF-8 CSV with shortest round-trip floats,
so two sweeps of the same range are byte-identical regardless of thread
count, and an interrupted sweep resumes from its last complete row.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .ball import Ball
from .batch import batch_maxima
from .bounds import THEOREM_EVEN, THEOREM_ODD, excess_margin
from .characters import count_primitive
from .special import ToleranceError

THREADS_ENV = "L1SWEEP_THREADS"
_HEADER = "q,parity,excess_mid,excess_rad,index,constant,margin_mid,margin_rad,verdict,ambiguous"


@dataclass(frozen=True)
class SweepRow:
    """Per (conductor, parity) maximum excess and its bound comparison."""

    q: int
    parity: str
    excess_mid: float
    excess_rad: float
    index: int
    constant: float
    margin_mid: float
    margin_rad: float
    verdict: str
    ambiguous: bool

    def line(self) -> str:
        return (f"{self.q},{self.parity},{self.excess_mid!r},{self.excess_rad!r},"
                f"{self.index},{self.constant!r},{self.margin_mid!r},"
                f"{self.margin_rad!r},{self.verdict},{int(self.ambiguous)}")

    @staticmethod
    def parse(line: str) -> "SweepRow":
        f = line.rstrip("\n").split(",")
        if len(f) != 10:
            raise ValueError(f"malformed row: {line!r}")
        return SweepRow(int(f[0]), f[1], float(f[2]), float(f[3]), int(f[4]),
                        float(f[5]), float(f[6]), float(f[7]), f[8], f[9] == "1")

    def excess(self) -> Ball:
        return Ball(self.excess_mid, self.excess_rad)


@dataclass
class SweepSummary:
    qmin: int
    qmax: int
    divisor: int | None
    tol: float
    rows: list[SweepRow]
    exceptions: list[SweepRow]        # verdict fail or indeterminate
    maxima: dict[str, SweepRow]       # parity -> row achieving the global max
    n_conductors: int
    n_characters: int
    wall_seconds: float
    tolerance_floor: list[int] = field(default_factory=list)  # q where retry was impossible

    @property
    def verified(self) -> bool:
        return not self.exceptions


def _rows_for_conductor(q: int, tol: float) -> tuple[list[SweepRow], int]:
    maxima, n_prim = batch_maxima(q, tol)
    rows: list[SweepRow] = []
    floor_hit = False
    for mx in maxima:
        margin, verdict = excess_margin(mx.excess, mx.parity)
        if verdict == "indeterminate":
            # one automatic retry at a hundredth of the tolerance
            try:
                retry, _ = batch_maxima(q, tol / 100.0)
                mx = next(m for m in retry if m.parity == mx.parity)
                margin, verdict = excess_margin(mx.excess, mx.parity)
            except ToleranceError:
                floor_hit = True
        const = THEOREM_EVEN if mx.parity == "even" else THEOREM_ODD
        rows.append(SweepRow(q, mx.parity, mx.excess.mid, mx.excess.rad,
                             mx.index, const.mid, margin.mid, margin.rad,
                             verdict, mx.ambiguous))
    return rows, (n_prim if not floor_hit else -n_prim)


def _worker(args: tuple[int, float]) -> tuple[int, list[SweepRow], int]:
    q, tol = args
    rows, n = _rows_for_conductor(q, tol)
    return q, rows, n


def conductor_range(qmin: int, qmax: int, divisor: int | None) -> list[int]:
    qs = range(max(qmin, 3), qmax + 1)
    if divisor is None:
        return list(qs)
    return [q for q in qs if q % divisor == 0]


def _load_resume(path: str) -> list[SweepRow]:
    """Complete rows of an existing row file (a trailing partial line is
    dropped, so restarts continue from the last whole row)."""
    if not path or not os.path.exists(path):
        return []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        text = fh.read()
    lines = text.split("\n")
    if not lines or lines[0] != _HEADER:
        return []
    if text and not text.endswith("\n"):
        lines = lines[:-1]  # partial final row
    rows = []
    for ln in lines[1:]:
        if not ln:
            continue
        try:
            rows.append(SweepRow.parse(ln))
        except ValueError:
            break
    return rows


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def sweep(qmin: int, qmax: int, divisor: int | None = 3, tol: float = 1e-9,
          threads: int | None = None, out_path: str | None = None) -> SweepSummary:
    """Evaluate every conductor in [qmin, qmax] (restricted to divisor | q)
    against the theorem constants; write one row per (q, parity)."""
    if not 3 <= qmin <= qmax:
        raise ValueError("need 3 <= qmin <= qmax")
    threads = threads if threads is not None else default_threads()
    t0 = time.perf_counter()
    qs = conductor_range(qmin, qmax, divisor)

    resumed = [r for r in _load_resume(out_path) if qmin <= r.q <= qmax] if out_path else []
    if resumed:
        # the last conductor's row group may have been cut mid-write;
        # recompute it wholesale
        qlast = max(r.q for r in resumed)
        resumed = [r for r in resumed if r.q < qlast]
    resume_from = max((r.q for r in resumed), default=0)
    todo = [q for q in qs if q > resume_from]

    rows: list[SweepRow] = list(resumed)
    n_characters = 0
    tolerance_floor: list[int] = []
    fh = None
    if out_path:
        fh = open(out_path, "w" if not resumed else "r+", encoding="utf-8", newline="")
        if resumed:
            # keep header + resumed rows, truncate anything beyond
            fh.seek(0)
            fh.write(_HEADER + "\n")
            for r in resumed:
                fh.write(r.line() + "\n")
            fh.truncate()
        else:
            fh.write(_HEADER + "\n")
        fh.flush()

    def consume(result):
        nonlocal n_characters
        q, new_rows, n_prim = result
        if n_prim < 0:
            tolerance_floor.append(q)
            n_prim = -n_prim
        n_characters += n_prim
        rows.extend(new_rows)
        if fh is not None:
            for r in new_rows:
                fh.write(r.line() + "\n")
            fh.flush()

    try:
        if threads <= 1 or len(todo) <= 1:
            for q in todo:
                consume(_worker((q, tol)))
        else:
            chunk = max(1, len(todo) // (threads * 16))
            with ProcessPoolExecutor(max_workers=threads) as pool:
                for result in pool.map(_worker, [(q, tol) for q in todo],
                                       chunksize=chunk):
                    consume(result)
    finally:
        if fh is not None:
            fh.close()

    if resumed:
        # per-conductor counts of the resumed prefix were not re-run
        n_characters = (count_primitive(qmax, divisor)
                        - (count_primitive(qmin - 1, divisor) if qmin > 1 else 0))

    maxima: dict[str, SweepRow] = {}
    for r in rows:
        cur = maxima.get(r.parity)
        if cur is None or r.excess_mid > cur.excess_mid:
            maxima[r.parity] = r
    exceptions = [r for r in rows if r.verdict != "pass"]
    return SweepSummary(qmin, qmax, divisor, tol, rows, exceptions, maxima,
                        len(qs), n_characters, time.perf_counter() - t0,
                        tolerance_floor)


def emit_figure_data(rows_path: str, parity: str, out_path: str) -> int:
    """Two-column (q, max excess midpoint) text for one parity class.

    Returns the number of points written; an empty selection yields an
    empty file.
    """
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    if not os.path.exists(rows_path):
        raise FileNotFoundError(rows_path)
    rows = _load_resume(rows_path)
    if not rows:
        with open(rows_path, encoding="utf-8") as fh:
            first = fh.readline().rstrip("\n")
        if first != _HEADER:
            raise ValueError(f"{rows_path} is not a sweep row file")
    n = 0
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        for r in rows:
            if r.parity == parity:
                fh.write(f"{r.q} {r.excess_mid!r}\n")
                n += 1
    return n


def summarize(summary: SweepSummary) -> str:
    lines = [
        f"conductors {summary.qmin}..{summary.qmax}"
        + (f" with {summary.divisor} | q" if summary.divisor else " (all q)"),
        f"conductors processed:  {summary.n_conductors}",
        f"primitive characters:  {summary.n_characters}",
        f"wall time:             {summary.wall_seconds:.2f} s",
    ]
    for parity in ("even", "odd"):
        row = summary.maxima.get(parity)
        if row is None:
            lines.append(f"{parity} maximum: (no characters)")
        else:
            lines.append(f"{parity} maximum: q={row.q} index={row.index} "
                         f"excess={row.excess_mid:.6f} (+/- {row.excess_rad:.1e})"
                         + (" [argmax-ambiguous]" if row.ambiguous else ""))
    if summary.tolerance_floor:
        lines.append(f"tolerance floor hit at q in {summary.tolerance_floor}")
    lines.append("theorem exceptions:    "
                 + (f"{len(summary.exceptions)} (see rows)" if summary.exceptions else "none"))
    return "\n".join(lines)

"""Runtime scaling measurements for the cubic-time claim.

Times the solve alone (no generation, no serialization) on random
instances with s = t = n/2 and small capacities, then fits a log-log slope
to the per-size medians.  A slope near 3 matches the cubic bound; the
acceptance gate only demands it stays at or below 3.5.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

import numpy as np

from .bmatch import solve_b_matching
from .core import BMatchingError, generate_instance

BENCH_CAP_MAX = 3
BENCH_WEIGHT_LO = -99
BENCH_WEIGHT_HI = 99


class DegenerateFit(BMatchingError):
    """A median of zero (or a single row) makes the log-log fit meaningless."""


@dataclass(frozen=True)
class ScalingRow:
    """One benchmark size: n = s + t of the generated instances."""

    n: int
    reps: int
    median_s: float
    rep_seconds: tuple[float, ...]


def _rep_seed(seed: int, n: int, rep: int) -> int:
    return seed * 1_000_003 + n * 1_009 + rep


def run_scaling(sizes, reps: int, seed: int) -> list[ScalingRow]:
    """Time ``reps`` fresh instances per size; medians resist scheduler noise.

    Sizes must be ascending, even, and at least 16.  One warm-up solve per
    size is discarded before timing starts.
    """
    sizes = [int(n) for n in sizes]
    if not sizes:
        raise ValueError("need at least one size")
    if sorted(sizes) != sizes:
        raise ValueError(f"sizes must be ascending, got {sizes}")
    if any(n < 16 for n in sizes):
        raise ValueError(f"sizes must be >= 16, got {sizes}")
    if any(n % 2 for n in sizes):
        raise ValueError(f"sizes must be even (s = t = n/2), got {sizes}")
    if reps < 3:
        raise ValueError(f"need reps >= 3 for a stable median, got {reps}")
    rows = []
    for n in sizes:
        insts = [
            generate_instance(
                n // 2, n // 2, BENCH_CAP_MAX, BENCH_WEIGHT_LO, BENCH_WEIGHT_HI,
                integer_weights=True, seed=_rep_seed(seed, n, r),
            )
            for r in range(reps)
        ]
        solve_b_matching(insts[0])  # warm-up, discarded
        times = []
        for inst in insts:
            t0 = time.perf_counter()
            solve_b_matching(inst)
            times.append(time.perf_counter() - t0)
        rows.append(
            ScalingRow(n=n, reps=reps, median_s=statistics.median(times), rep_seconds=tuple(times))
        )
    return rows


def fit_exponent(rows: list[ScalingRow]) -> float:
    """Least-squares slope of log(median seconds) against log(n)."""
    if len(rows) < 2:
        raise ValueError(f"need at least 2 rows to fit a slope, got {len(rows)}")
    if any(row.median_s <= 0.0 for row in rows):
        raise DegenerateFit("a zero median makes the log-log fit undefined")
    xs = np.log([row.n for row in rows])
    ys = np.log([row.median_s for row in rows])
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def render_table(rows: list[ScalingRow], slope: float) -> str:
    """TSV with columns n, reps, median_s and a trailing slope line."""
    lines = ["n\treps\tmedian_s"]
    for row in rows:
        lines.append(f"{row.n}\t{row.reps}\t{row.median_s:.6f}")
    lines.append(f"slope {slope:.4f}")
    return "\n".join(lines) + "\n"

"""Timing harness for the pairwise sum.

Each record pairs a random polytope with a rotated second one of the same
size and reports lattice sizes (nodes + arcs), candidate pairs and time.
"""

import csv
import sys
import time
from dataclasses import astuple, dataclass
from typing import Iterable, Optional

from .errors import DegeneracyError
from .gen import GenSpec, generic_rotate, random_polytope
from .lattice import Polytope
from .minkd import FAST, SumStats, minkowski_sum

CSV_HEADER = ("dim", "n_size", "m_size", "out_size", "pairs_tested", "millis", "mode")


@dataclass(frozen=True)
class BenchRecord:
    dim: int
    n_size: int
    m_size: int
    out_size: int
    pairs_tested: int
    millis: float
    mode: str


def time_sum(P: Polytope, Q: Polytope, mode: str = FAST, repeat: int = 1) -> BenchRecord:
    """Best-of-``repeat`` wall time of ``minkowski_sum(P, Q)`` without validation."""
    best = None
    for _ in range(max(1, repeat)):
        stats = SumStats()
        t0 = time.perf_counter()
        out = minkowski_sum(P, Q, mode, stats, validate=False)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return BenchRecord(P.dim, P.lattice.size(), Q.lattice.size(), out.lattice.size(),
                       stats.pairs_tested, round(best * 1000, 3), mode)


def bench_pair(dim: int, n_points: int, seed: int, convex_position: bool = False) -> tuple:
    P = random_polytope(GenSpec(dim, n_points, seed, convex_position=convex_position))
    Q = random_polytope(GenSpec(dim, n_points, seed + 7919, convex_position=convex_position))
    return P, generic_rotate(Q, seed + 1)


def run_bench(dims: Iterable[int], sizes: Iterable[int], seeds: Iterable[int],
              mode: str = FAST, repeat: int = 1, convex_position: bool = False,
              log=None) -> list:
    """Records for every (dim, size, seed); degenerate draws are skipped."""
    records = []
    for dim in dims:
        for n in sizes:
            for seed in seeds:
                P, Q = bench_pair(dim, n, seed, convex_position)
                try:
                    records.append(time_sum(P, Q, mode, repeat))
                except DegeneracyError:
                    if log is not None:
                        print(f"skipped degenerate pair dim={dim} n={n} seed={seed}", file=log)
    return records


def write_csv(records: Iterable[BenchRecord], out: Optional[object] = None) -> None:
    writer = csv.writer(out or sys.stdout, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(astuple(r))

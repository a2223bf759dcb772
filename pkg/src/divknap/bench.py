"""Operation-count benchmarks for the separation routines."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from divknap.geq import separate_geq
from divknap.integer import separate_integer
from divknap.model import GeqPoint, Instance, IntPoint, OpCounter


@dataclass(frozen=True)
class BenchRow:
    n: int
    m: int
    seconds: float
    ops: int
    model: float  # m n + m log2 m, or n when m = 0
    violated: bool

    @property
    def ratio(self) -> float:
        return self.ops / self.model


def cost_model(n: int, m: int) -> float:
    if m == 0:
        return float(max(n, 1))
    return m * n + m * math.log2(max(m, 2))


def bench_instance(n: int, m: int, seed: int) -> tuple[Instance, GeqPoint]:
    """Multiplier-2 chain ``a_i = 2^i`` with capacity just under ``3 a_n``.

    The capacity keeps every prefix capacity positive and the point sits on
    the knapsack row, so every inner separation walks the whole chain.
    """
    rng = random.Random(f"bench:{seed}:{n}:{m}")
    a = tuple(1 << i for i in range(1, n + 1))
    u = tuple(rng.randint(1, 10) for _ in range(m))
    b = 3 * (1 << n) - 1
    x = [Fraction(rng.randint(0, 3), 4) for _ in range(n)]
    s = [Fraction(rng.randint(0, 4 * uj), 4) for uj in u]
    weighted = sum(ai * xi for ai, xi in zip(a, x))
    s0 = max(Fraction(0), b - weighted - sum(s))
    return Instance(a, u, b), GeqPoint(x, s0, s)


def run_geq(n: int, m: int, seed: int = 0) -> BenchRow:
    inst, pt = bench_instance(n, m, seed)
    ops = OpCounter()
    start = time.perf_counter()
    res = separate_geq(inst, pt, ops=ops)
    elapsed = time.perf_counter() - start
    return BenchRow(n, m, elapsed, ops.count, cost_model(n, m), res.is_violated)


def run_integer(n: int, seed: int = 0) -> BenchRow:
    inst, gpt = bench_instance(n, 0, seed)
    pt = IntPoint(gpt.s0, gpt.x)
    ops = OpCounter()
    start = time.perf_counter()
    res = separate_integer(inst, pt, ops=ops)
    elapsed = time.perf_counter() - start
    return BenchRow(n, 0, elapsed, ops.count, cost_model(n, 0), res.is_violated)


def parse_grid(text: str) -> list[tuple[int, int]]:
    """``"100:100,200:200"`` -> ``[(100, 100), (200, 200)]``."""
    grid = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        n, _, m = item.partition(":")
        grid.append((int(n), int(m or 0)))
    return grid


def band(rows) -> float:
    """max/min of the op-count ratios across rows."""
    ratios = [r.ratio for r in rows]
    return max(ratios) / min(ratios) if ratios else 1.0

"""Brute-force ground truth for the separation routines.

Nothing here uses the decomposition algorithm: membership is decided by
evaluating every partition inequality of the complete family at the point,
and cut validity by exact integer optimization over the knapsack set.
Intended for desk-scale instances only.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from divknap.integer import build_partition_cut
from divknap.model import (
    BudgetExceeded,
    GeqPoint,
    Instance,
    IntervalPartition,
    IntPoint,
    LeqPoint,
    Orientation,
    PartitionCut,
    Point,
    SeparationResult,
    SetKind,
    ShapeMismatch,
    violation,
)

HARD_MAX_N = 12
HARD_MAX_M = 6


@dataclass(frozen=True)
class EnumerationBudget:
    max_n: int = 6
    max_m: int = 3

    def __post_init__(self):
        if not 0 <= self.max_n <= HARD_MAX_N:
            raise BudgetExceeded(f"max_n = {self.max_n} outside 0..{HARD_MAX_N}")
        if not 0 <= self.max_m <= HARD_MAX_M:
            raise BudgetExceeded(f"max_m = {self.max_m} outside 0..{HARD_MAX_M}")

    @classmethod
    def for_set(cls, which: SetKind) -> "EnumerationBudget":
        return cls(6, 0) if SetKind(which) is SetKind.Z else cls(4, 3)

    @property
    def max_partitions(self) -> int:
        return 2**self.max_n

    @property
    def max_subsets(self) -> int:
        return 2**self.max_m

    def check(self, inst: Instance):
        if inst.n > self.max_n or inst.m > self.max_m:
            raise BudgetExceeded(
                f"instance n={inst.n}, m={inst.m} exceeds budget n<={self.max_n}, m<={self.max_m}"
            )


def enumerate_partitions(
    inst: Instance, capacity: int | None = None, budget: EnumerationBudget | None = None
) -> list[IntervalPartition]:
    """Every interval partition of ``0..n`` whose last block start fits."""
    cap = inst.b if capacity is None else capacity
    if inst.n > (budget.max_n if budget else HARD_MAX_N):
        raise BudgetExceeded(f"n = {inst.n} too large to enumerate partitions")
    out = []
    positions = range(1, inst.n + 1)
    for k in range(inst.n + 1):
        for starts in combinations(positions, k):
            part = IntervalPartition((0,) + starts, inst.n)
            if inst.weight(part.last_start) <= cap:
                out.append(part)
    return out


def _subsets(m: int) -> Iterator[tuple[int, ...]]:
    for k in range(m + 1):
        yield from combinations(range(m), k)


def _candidates(inst: Instance, which: SetKind, budget: EnumerationBudget):
    """Yield ``(cut, rank)`` for the complete family; ``rank`` orders ties."""
    budget.check(inst)
    if which is SetKind.Z:
        for part in enumerate_partitions(inst, inst.b, budget):
            yield build_partition_cut(inst, part, inst.b), (part.p, ())
        return
    for subset in _subsets(inst.m):
        kept = set(subset)
        if which is SetKind.GEQ:
            cap = inst.b - sum(u for j, u in enumerate(inst.u) if j not in kept)
            if cap <= 0:
                continue
            for part in enumerate_partitions(inst, cap, budget):
                base = build_partition_cut(inst, part, cap)
                cut = PartitionCut(Orientation.GEQ, base.x_coeffs, base.rhs, subset, 1, part, cap)
                yield cut, (part.p, subset)
        else:
            # complemented inequalities of Y(b), written directly in y-space:
            # y_j for j in subset stays, the big-M capacity is b + u(M \ subset)
            cap = inst.b + sum(u for j, u in enumerate(inst.u) if j not in kept)
            for part in enumerate_partitions(inst, cap, budget):
                base = build_partition_cut(inst, part, cap)
                coeffs = tuple(a - c for a, c in zip(inst.a, base.x_coeffs))
                cut = PartitionCut(Orientation.LEQ, coeffs, cap - base.rhs, subset, 1, part, cap)
                yield cut, (part.p, subset)


def max_violation(
    inst: Instance, pt: Point, which: SetKind, budget: EnumerationBudget | None = None
) -> tuple[Fraction, PartitionCut | None]:
    """Largest violation over the whole family and a cut attaining it.

    Ties go to the fewest blocks, then the lexicographically smallest subset.
    The returned value may be ``<= 0`` (point satisfies every member).
    """
    which = SetKind(which)
    budget = budget or EnumerationBudget(HARD_MAX_N, HARD_MAX_M)
    best, best_cut, best_rank = None, None, None
    for cut, rank in _candidates(inst, which, budget):
        eps = violation(cut, pt)
        if best is None or eps > best or (eps == best and rank < best_rank):
            best, best_cut, best_rank = eps, cut, rank
    return best, best_cut


def brute_force_separate(
    inst: Instance, pt: Point, which: SetKind, budget: EnumerationBudget | None = None
) -> SeparationResult:
    best, cut = max_violation(inst, pt, which, budget)
    if best is None or best <= 0:
        return SeparationResult.inside()
    return SeparationResult(cut, best)


# -- validity -----------------------------------------------------------------


def _greedy_fill(demand: Fraction, variables: Sequence[tuple[int, Fraction | None]]):
    """Cheapest way to cover ``demand`` with bounded continuous variables.

    ``variables`` lists ``(cost, upper)`` pairs (``upper=None`` unbounded).
    Returns ``(cost, amounts)``.
    """
    amounts = [Fraction(0)] * len(variables)
    cost = Fraction(0)
    left = Fraction(max(demand, 0))
    for k in sorted(range(len(variables)), key=lambda k: variables[k][0]):
        if left <= 0:
            break
        c, ub = variables[k]
        take = left if ub is None else min(left, ub)
        amounts[k] = take
        cost += c * take
        left -= take
    assert left == 0
    return cost, amounts


def _min_cover(weights: Sequence[int], costs: Sequence[int], demand: int, fill):
    """``min_x sum costs_i x_i + fill(max(0, demand - sum weights_i x_i))``.

    Exact DP over the residual demand; ``fill(d)`` prices the remainder.
    Returns ``(value, x)``.
    """
    best = [Fraction(0)] * (demand + 1)
    choice = [-1] * (demand + 1)
    for d in range(1, demand + 1):
        best[d] = fill(d)
        for i, (a, c) in enumerate(zip(weights, costs)):
            cand = c + best[max(0, d - a)]
            if cand < best[d]:
                best[d], choice[d] = cand, i
    x = [0] * len(weights)
    d = demand
    while d > 0 and choice[d] >= 0:
        i = choice[d]
        x[i] += 1
        d = max(0, d - weights[i])
    return best[demand], x


def _max_exact(weights: Sequence[int], gains: Sequence[int], limit: int):
    """``G[v] = max sum gains_i x_i`` over ``sum weights_i x_i = v`` for ``v < limit``."""
    G: list[int | None] = [None] * max(limit, 1)
    choice = [-1] * max(limit, 1)
    G[0] = 0
    for v in range(1, limit):
        for i, (a, g) in enumerate(zip(weights, gains)):
            if a <= v and G[v - a] is not None and (G[v] is None or G[v - a] + g > G[v]):
                G[v], choice[v] = G[v - a] + g, i
    return G, choice


def _unwind(choice, weights, v, n):
    x = [0] * n
    while v > 0:
        i = choice[v]
        x[i] += 1
        v -= weights[i]
    return x


def validity_oracle(inst: Instance, cut: PartitionCut, which: SetKind) -> Point | None:
    """Return ``None`` if ``cut`` is valid for the set, else a violating point.

    The search is exact over the integer part and greedy (hence exact, the
    inner problem being a fractional knapsack) over the continuous part.

    Box argument.  For a GEQ cut with nonnegative x-coefficients, restricting
    to ``0 <= x_i <= ceil(b'/a_i)`` (``b'`` the capacity) loses nothing: if
    some ``x_i`` exceeds its bound then ``a_i (x_i - 1) >= b'`` on its own,
    so lowering ``x_i`` by one keeps the point in the set with the
    continuous variables at zero, and the cut's left-hand side does not grow.
    For a LEQ cut with ``c_i <= a_i`` the same move keeps ``sum a x`` above
    the point where every extra unit of weight has to be paid for with
    ``y_0``, so it changes ``c.x - y_0`` by ``a_i - c_i >= 0``.  The dynamic
    programs below explore the residual demand ``0..b'`` directly, which
    covers exactly those boxed points while avoiding the product blow-up of
    listing them one by one.
    """
    which = SetKind(which)
    if len(cut.x_coeffs) != inst.n:
        raise ShapeMismatch("cut and instance have different n")
    if which is SetKind.LEQ:
        return _validity_leq(inst, cut)
    if cut.orientation is not Orientation.GEQ:
        raise ShapeMismatch("GEQ sets take GEQ cuts")
    if any(c < 0 for c in cut.x_coeffs):
        raise ValueError("validity oracle needs nonnegative x-coefficients for GEQ cuts")
    c0 = Fraction(cut.slack_coeff)
    if which is SetKind.Z:
        if cut.subset:
            raise ShapeMismatch("integer set cuts have no continuous variables")
        # x_0 has weight 1, so it prices any leftover demand exactly
        value, x = _min_cover(inst.a, cut.x_coeffs, inst.b, lambda d: c0 * d)
        if value >= cut.rhs:
            return None
        return IntPoint(max(0, inst.b - sum(a * xi for a, xi in zip(inst.a, x))), x)
    kept = set(cut.subset)
    conts = [(Fraction(1 if j in kept else 0), Fraction(u)) for j, u in enumerate(inst.u)]
    conts.append((c0, None))

    def fill(d):
        return _greedy_fill(Fraction(d), conts)[0]

    value, x = _min_cover(inst.a, cut.x_coeffs, inst.b, fill)
    if value >= cut.rhs:
        return None
    deficit = inst.b - sum(a * xi for a, xi in zip(inst.a, x))
    _, amounts = _greedy_fill(Fraction(max(deficit, 0)), conts)
    return GeqPoint(x, amounts[-1], amounts[:-1])


def _validity_leq(inst: Instance, cut: PartitionCut) -> LeqPoint | None:
    if cut.orientation is not Orientation.LEQ:
        raise ShapeMismatch("the <= set takes LEQ cuts")
    c0 = cut.slack_coeff
    kept = set(cut.subset)
    conts = [(Fraction(1 if j in kept else 0), Fraction(u)) for j, u in enumerate(inst.u)]
    conts.append((Fraction(c0), None))

    def point(x):
        excess = sum(a * xi for a, xi in zip(inst.a, x)) - inst.b
        _, amounts = _greedy_fill(Fraction(max(excess, 0)), conts)
        return LeqPoint(x, amounts[-1], amounts[:-1])

    def objective(x):
        excess = sum(a * xi for a, xi in zip(inst.a, x)) - inst.b
        pay = _greedy_fill(Fraction(max(excess, 0)), conts)[0]
        return sum(c * xi for c, xi in zip(cut.x_coeffs, x)) - pay

    # once all cheap continuous capacity is used, each unit of weight costs c0
    cheap = sum(u for j, u in enumerate(inst.u) if j not in kept)
    if c0 > 1:
        cheap += sum(u for j, u in enumerate(inst.u) if j in kept)
    pivot = inst.b + cheap
    for i, (a, c) in enumerate(zip(inst.a, cut.x_coeffs)):
        if c > c0 * a:
            # objective grows without bound along x_i
            t = 1
            x = [0] * inst.n
            while True:
                x[i] = t
                if objective(x) > cut.rhs:
                    return point(x)
                t *= 2
    # region sum a.x < pivot: exact-sum DP
    G, choice = _max_exact(inst.a, cut.x_coeffs, pivot)
    for v in range(pivot):
        if G[v] is None:
            continue
        x = _unwind(choice, inst.a, v, inst.n)
        if objective(x) > cut.rhs:
            return point(x)
    # region sum a.x >= pivot: objective = const - sum (c0 a_i - c_i) x_i
    if inst.n:
        penalties = [c0 * a - c for a, c in zip(inst.a, cut.x_coeffs)]
        _, x = _min_cover(inst.a, penalties, pivot, lambda d: math.inf)
        if sum(a * xi for a, xi in zip(inst.a, x)) >= pivot and objective(x) > cut.rhs:
            return point(x)
    return None


# -- random generators --------------------------------------------------------


def gen_instance(seed: int, budget: EnumerationBudget | None = None, which: SetKind = SetKind.GEQ) -> Instance:
    """Deterministic random divisible instance within ``budget``."""
    which = SetKind(which)
    budget = budget or EnumerationBudget.for_set(which)
    rng = random.Random(f"instance:{seed}")
    n = rng.randint(1, max(budget.max_n, 1))
    a = [rng.randint(2, 5)]
    for _ in range(n - 1):
        a.append(a[-1] * rng.randint(2, 4))
    m = 0 if which is SetKind.Z else rng.randint(0, budget.max_m)
    u = [rng.randint(1, 10) for _ in range(m)]
    b = rng.randint(1, 200)
    return Instance(tuple(a), tuple(u), b)


def _rand_frac(rng: random.Random, hi: Fraction, den: int) -> Fraction:
    return Fraction(rng.randint(0, int(hi * den)), den)


def gen_point(seed: int, inst: Instance, which: SetKind) -> Point:
    """Random point of the LP relaxation with denominators at most 12.

    Coordinates are sampled around the knapsack row, then the unbounded
    slack (``x_0``, ``s_0`` or ``y_0``) is raised just enough to restore the
    linear constraint.
    """
    which = SetKind(which)
    rng = random.Random(f"point:{seed}")
    den = rng.randint(2, 12) if rng.random() < 0.85 else 1
    cont = []
    for u in inst.u:
        r = rng.random()
        cont.append(Fraction(0) if r < 0.25 else Fraction(u) if r < 0.5 else _rand_frac(rng, Fraction(u), den))
    # aim the integer part near the row so the slack repair lands on it
    if which is SetKind.GEQ:
        rhs = inst.b - sum(cont)
    elif which is SetKind.LEQ:
        rhs = inst.b + sum(cont)
    else:
        rhs = Fraction(inst.b)
    active = [i for i in range(inst.n) if rng.random() < 0.7] or [rng.randrange(inst.n)]
    rng.shuffle(active)
    x = [Fraction(0)] * inst.n
    if rng.random() < 0.75:
        # greedy fill: the last active variable absorbs what is left, so the
        # unbounded slack stays below a_i / den
        left = max(rhs, Fraction(0))
        for pos, i in enumerate(active):
            top = left * den / inst.a[i]
            if pos < len(active) - 1:
                k = rng.randint(0, int(top))
            else:
                k = int(top) + (rng.random() < 0.5)
            x[i] = Fraction(k, den)
            left -= inst.a[i] * x[i]
    else:
        target = max(rhs, Fraction(1)) * Fraction(rng.randint(80, 130), 100)
        for i in active:
            x[i] = _rand_frac(rng, 2 * target / (inst.a[i] * len(active)), den)
    weighted = sum(a * xi for a, xi in zip(inst.a, x))
    slack = _rand_frac(rng, Fraction(inst.b, 10), den) if rng.random() < 0.2 else Fraction(0)
    if which is SetKind.Z:
        return IntPoint(max(slack, inst.b - weighted), x)
    if which is SetKind.GEQ:
        return GeqPoint(x, max(slack, inst.b - weighted - sum(cont)), cont)
    return LeqPoint(x, max(slack, weighted - inst.b - sum(cont)), cont)

"""Separation of partition inequalities over the integer knapsack set.

    Z(b) = { x in Z^{n+1}_+ : x_0 + sum_i a_i x_i >= b },  1 | a_1 | ... | a_n

:func:`separate_integer` runs the decomposition algorithm in O(n) steps.
The point is rescaled by the common denominator of its coordinates so the
main loop only touches Python ints; divisibility of the weights keeps every
decomposition step integral in the scaled space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from divknap.model import (
    Instance,
    IntervalPartition,
    IntPoint,
    OpCounter,
    Orientation,
    PartitionCapacityMismatch,
    PartitionCut,
    PreconditionViolated,
    SeparationResult,
    validate_point,
)


@dataclass(frozen=True)
class CoeffRecursion:
    """beta/kappa/mu values of a partition, indexed by block ``t = 1..p``.

    ``beta[t]`` for ``t = 0..p``; ``kappa[t]`` and ``mu[t]`` for ``t = 1..p``
    (slot 0 of those two is unused and holds 0).
    """

    beta: tuple[int, ...]
    kappa: tuple[int, ...]
    mu: tuple[int, ...]

    def kappa_product(self, upto: int | None = None) -> int:
        """``prod_{l <= upto} kappa_l`` (all blocks by default)."""
        upto = len(self.kappa) - 1 if upto is None else upto
        prod = 1
        for k in self.kappa[1 : upto + 1]:
            prod *= k
        return prod


def coefficient_recursion(inst: Instance, part: IntervalPartition, capacity: int) -> CoeffRecursion:
    p = part.p
    beta = [0] * (p + 1)
    kappa = [0] * (p + 1)
    mu = [0] * (p + 1)
    beta[p] = capacity
    for t in range(p, 0, -1):
        a_t = inst.weight(part.breaks[t - 1])
        kappa[t] = -(-beta[t] // a_t)
        mu[t] = (kappa[t] - 1) * a_t
        beta[t - 1] = beta[t] - mu[t]
    return CoeffRecursion(tuple(beta), tuple(kappa), tuple(mu))


def _partition_coefficients(weights: Sequence[int], breaks: Sequence[int], capacity: int, ops: OpCounter):
    """x-coefficients and rhs of the partition inequality, no side checks.

    ``weights`` is ``(1, a_1, ..., a_n)``.
    """
    n = len(weights) - 1
    starts = list(breaks)
    ends = [s - 1 for s in starts[1:]] + [n]
    kappas = [0] * len(starts)
    beta = capacity
    for t in range(len(starts) - 1, -1, -1):
        a_t = weights[starts[t]]
        k = -(-beta // a_t)
        kappas[t] = k
        beta -= (k - 1) * a_t
        ops.tick()
    coeffs = [0] * n
    prod = 1
    for (lo, hi, k) in zip(starts, ends, kappas):
        a_t = weights[lo]
        for i in range(max(lo, 1), hi + 1):
            coeffs[i - 1] = prod * min(weights[i] // a_t, k)
        ops.tick(hi - lo + 1)
        prod *= k
    return coeffs, prod


def build_partition_cut(
    inst: Instance,
    part: IntervalPartition,
    capacity: int | None = None,
    *,
    check: bool = True,
    ops: OpCounter | None = None,
) -> PartitionCut:
    """The partition inequality of ``part`` for ``Z(capacity)``.

    >>> build_partition_cut(Instance((2,), b=5), IntervalPartition((0, 1), 1)).x_coeffs
    (1,)

    ``check=False`` skips the ``a_{i_p} <= capacity`` side condition, which
    callers that deliberately split off redundant top blocks rely on.
    """
    cap = inst.b if capacity is None else capacity
    if part.n != inst.n:
        raise PartitionCapacityMismatch(f"partition covers 0..{part.n}, instance has n = {inst.n}")
    if check and inst.weight(part.last_start) > cap:
        raise PartitionCapacityMismatch(
            f"a_{part.last_start} = {inst.weight(part.last_start)} exceeds capacity {cap}"
        )
    weights = (1,) + inst.a
    coeffs, rhs = _partition_coefficients(weights, part.breaks, cap, ops or OpCounter())
    return PartitionCut(Orientation.GEQ, tuple(coeffs), rhs, partition=part, capacity=cap)


@dataclass(frozen=True)
class N0Params:
    r: int
    delta: Fraction
    kappa: int
    omega: int


def n0_params(inst: Instance, pt: IntPoint, capacity: int | None = None) -> N0Params:
    """``r`` with ``a_r <= capacity < a_{r+1}`` and the derived delta, kappa, omega."""
    cap = inst.b if capacity is None else capacity
    r = inst.n
    while r > 0 and inst.weight(r) > cap:
        r -= 1
    delta = sum(pt.x[r:], Fraction(0))
    kappa = cap // inst.weight(r) + 1
    return N0Params(r, delta, kappa, (kappa - 1) * inst.weight(r))


def _weighted_sum(inst: Instance, pt: IntPoint, lo: int, hi: int) -> Fraction:
    """``sum_{i=lo}^{hi} a_i x_i`` with the ``i = 0`` term being ``x_0``."""
    total = Fraction(0)
    for i in range(max(lo, 0), hi + 1):
        total += pt.x0 if i == 0 else inst.weight(i) * pt.x[i - 1]
    return total


def split_index(inst: Instance, pt: IntPoint, r: int, omega: int, delta: Fraction) -> int:
    """The index ``v <= r`` where the suffix sums of ``a_i x_i`` first reach ``omega (1 - delta)``."""
    threshold = omega * (1 - delta)
    if delta >= 1 or _weighted_sum(inst, pt, 0, r) < threshold:
        raise PreconditionViolated("split index needs delta < 1 and x_0 + sum_{i<=r} a_i x_i >= omega(1-delta)")
    found = [
        v
        for v in range(r + 1)
        if _weighted_sum(inst, pt, v + 1, r) < threshold <= _weighted_sum(inst, pt, v, r)
    ]
    # suffix sums are monotone, so the condition pins down one index
    assert len(found) == 1, found
    return found[0]


def decompose(
    inst: Instance, pt: IntPoint, r: int, v: int, omega: int, delta: Fraction
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Split ``pt`` into ``alpha`` and ``gamma`` (both indexed ``0..n``)."""
    threshold = omega * (1 - delta)
    if delta >= 1 or not (_weighted_sum(inst, pt, v + 1, r) < threshold <= _weighted_sum(inst, pt, v, r)):
        raise PreconditionViolated(f"v = {v} does not satisfy the split condition")
    full = (pt.x0,) + pt.x
    n = inst.n
    alpha = [Fraction(0)] * (n + 1)
    alpha[v] = (threshold - _weighted_sum(inst, pt, v + 1, r)) / inst.weight(v)
    for i in range(v + 1, n + 1):
        alpha[i] = full[i]
    gamma = [full[i] - alpha[i] if i <= r else full[i] for i in range(n + 1)]
    conserved = sum(inst.weight(i) * alpha[i] for i in range(v, r + 1)) + omega * sum(alpha[r + 1 :])
    if conserved != omega:
        raise AssertionError(f"decomposition does not conserve omega: {conserved} != {omega}")
    if any(c < 0 for c in alpha) or any(c < 0 for c in gamma):
        raise AssertionError("decomposition produced a negative component")
    return tuple(alpha), tuple(gamma)


@dataclass(frozen=True)
class IterState:
    """One pass of the decomposition loop, recorded when tracing.

    ``stop`` is ``None`` on pass-through iterations, otherwise one of
    ``"divisible"``, ``"delta"``, ``"omega"``, ``"v0"``.
    """

    h: int
    b_h: int
    x_h: IntPoint
    r: int
    delta: Fraction
    kappa: int
    omega: int
    v: int | None = None
    alpha: tuple[Fraction, ...] | None = None
    gamma: tuple[Fraction, ...] | None = None
    split: bool = False
    stop: str | None = None


def _decompose_loop(weights, cap, X0, x, D, ops, trace=None):
    """Core loop on scaled integers.

    ``weights`` is ``(1, a_1, .., a_n)``; ``x`` is a mutable list with
    ``x[0]`` unused and ``x[i]`` the scaled ``x_i``; ``X0`` the scaled
    ``x_0``.  Returns ``(splits, scaled_violation)`` or ``None`` when no
    partition inequality is violated.  ``splits`` holds the block starts
    in decreasing order.
    """
    n = len(weights) - 1
    r = n
    delta = 0
    while r > 0 and weights[r] > cap:
        delta += x[r]
        r -= 1
    ops.tick(n - r)
    low = 0
    for i in range(1, r + 1):
        low += weights[i] * x[i]
    ops.tick(r)
    top = r
    bh = cap
    splits = []
    h = 1
    while True:
        ops.tick()
        a_r = weights[r]
        q, rem = divmod(bh, a_r)
        kappa, omega = q + 1, q * a_r
        state = None
        if trace is not None:
            state = dict(
                h=h, b_h=bh,
                x_h=IntPoint(Fraction(X0, D), [Fraction(x[i], D) for i in range(1, n + 1)]),
                r=r, delta=Fraction(delta, D), kappa=kappa, omega=omega,
            )
        n0_gap = bh * D - (X0 + low + bh * delta)
        stop = None
        # trivial outcomes: the N0 inequality at this level decides
        if rem == 0:
            stop = "divisible"
        elif delta >= D:
            stop, n0_gap = "delta", 0
        elif X0 + low + omega * delta < omega * D:
            stop = "omega"
        if stop is None:
            threshold = omega * (D - delta)
            acc = 0
            i = min(top, r)
            while i >= 1:
                ops.tick()
                acc += weights[i] * x[i]
                if acc >= threshold:
                    break
                i -= 1
            v = i
            if v == 0:
                stop = "v0"
                if trace is not None:
                    state["v"] = 0
        if stop is not None:
            if trace is not None:
                trace.append(IterState(stop=stop, **state))
            return (splits, n0_gap) if n0_gap > 0 else None

        a_v = weights[v]
        below = acc - a_v * x[v]
        alpha_v, frac = divmod(threshold - below, a_v)
        if frac or not 0 < alpha_v <= x[v]:
            raise AssertionError("scaled decomposition left the integer lattice")
        if a_v * alpha_v + below + omega * delta != omega * D:
            raise AssertionError("decomposition does not conserve omega")
        if trace is not None:
            full = [X0] + x[1:]
            alpha = [0] * (n + 1)
            alpha[v] = alpha_v
            alpha[v + 1 :] = full[v + 1 :]
            gamma = [full[k] - alpha[k] if k <= r else full[k] for k in range(n + 1)]
            state.update(
                v=v,
                alpha=tuple(Fraction(c, D) for c in alpha),
                gamma=tuple(Fraction(c, D) for c in gamma),
            )
        for k in range(v + 1, min(top, r) + 1):
            x[k] = 0
        x[v] -= alpha_v
        low += a_v * x[v] - acc
        top = v
        nb = bh - omega
        split = a_v > nb
        if split:
            splits.append(v)
        if trace is not None:
            trace.append(IterState(split=split, **state))
        bh = nb
        start = r
        while weights[r] > bh:
            delta += x[r]
            low -= weights[r] * x[r]
            r -= 1
        ops.tick(start - r)
        h += 1


def common_denominator(values) -> int:
    return lcm(1, *(Fraction(v).denominator for v in values))


def _scaled_violation(cut: PartitionCut, X0: int, x: Sequence[int], D: int, ops: OpCounter) -> int:
    ops.tick(len(cut.x_coeffs))
    lhs = cut.slack_coeff * X0 + sum(c * xi for c, xi in zip(cut.x_coeffs, x))
    return cut.rhs * D - lhs


def separate_integer(
    inst: Instance,
    pt: IntPoint,
    capacity: int | None = None,
    *,
    ops: OpCounter | None = None,
    trace: list | None = None,
) -> SeparationResult:
    """Most violated partition inequality for ``Z(capacity)`` at ``pt``.

    Returns :meth:`SeparationResult.inside` when none is violated.  Pass a
    list as ``trace`` to collect one :class:`IterState` per iteration.
    """
    cap = inst.b if capacity is None else capacity
    ops = ops if ops is not None else OpCounter()
    validate_point(inst, pt, cap)
    D = common_denominator((pt.x0,) + pt.x)
    X0 = int(pt.x0 * D)
    scaled = [int(xi * D) for xi in pt.x]
    found = _decompose_loop((1,) + inst.a, cap, X0, [0] + scaled, D, ops, trace)
    if found is None:
        return SeparationResult.inside()
    splits, traced = found
    part = IntervalPartition((0,) + tuple(reversed(splits)), inst.n)
    cut = build_partition_cut(inst, part, cap, ops=ops)
    eps = _scaled_violation(cut, X0, scaled, D, ops)
    if eps != traced:
        raise AssertionError(f"rebuilt cut violation {Fraction(eps, D)} != traced {Fraction(traced, D)}")
    return SeparationResult(cut, Fraction(eps, D))

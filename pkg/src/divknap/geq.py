"""Separation over the continuous >=-knapsack set

    X(b) = { (x, s) : x in Z^n_+, s_0 >= 0, 0 <= s_j <= u_j,
             s_0 + sum_j s_j + sum_i a_i x_i >= b }.

For a fixed subset ``C`` of the continuous variables the (Pi, C) partition
inequalities are the partition inequalities of ``Z(b(C))`` at the point with
``x_0 = s_0 + s(C)``.  Only the ``m + 1`` prefixes of the continuous
variables sorted by ``s_j / u_j`` need to be tried.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

from divknap.integer import (
    _decompose_loop,
    build_partition_cut,
    common_denominator,
    separate_integer,
)
from divknap.model import (
    GeqPoint,
    Instance,
    IntervalPartition,
    IntPoint,
    NonPositiveResidualCapacity,
    OpCounter,
    Orientation,
    PartitionCut,
    PreconditionViolated,
    SeparationResult,
    validate_point,
)


@dataclass(frozen=True)
class PrefixTables:
    order: tuple[int, ...]
    ST: tuple[Fraction, ...]
    BT: tuple[int, ...]

    def subset(self, j: int) -> tuple[int, ...]:
        """``T_j`` in original (unsorted) indices."""
        return tuple(sorted(self.order[:j]))


def _ratio_order(S: Sequence[int], u: Sequence[int], ops: OpCounter) -> list[int]:
    def cmp(j, k):
        ops.tick()
        lhs, rhs = S[j] * u[k], S[k] * u[j]
        return (lhs > rhs) - (lhs < rhs)

    # list.sort is stable, so ties keep the original index order
    return sorted(range(len(S)), key=cmp_to_key(cmp))


def prefix_tables(inst: Instance, pt: GeqPoint) -> PrefixTables:
    order = _ratio_order(pt.s, inst.u, OpCounter())
    ST = [pt.s0]
    BT = [inst.b - sum(inst.u)]
    for j in order:
        ST.append(ST[-1] + pt.s[j])
        BT.append(BT[-1] + inst.u[j])
    return PrefixTables(tuple(order), tuple(ST), tuple(BT))


def _check_subset(inst: Instance, subset: Iterable[int]) -> tuple[int, ...]:
    subset = tuple(sorted(set(subset)))
    if any(j < 0 or j >= inst.m for j in subset):
        raise PreconditionViolated(f"subset {subset} is not a subset of 0..{inst.m - 1}")
    return subset


def reduce_to_integer(inst: Instance, pt: GeqPoint, subset: Iterable[int]) -> tuple[int, IntPoint]:
    """Capacity ``b(C)`` and the integer point with ``x_0 = s_0 + s(C)``."""
    subset = _check_subset(inst, subset)
    cap = inst.residual_capacity(subset)
    if cap <= 0:
        raise NonPositiveResidualCapacity(f"b(C) = {cap} for C = {subset}")
    return cap, IntPoint(pt.s0 + sum((pt.s[j] for j in subset), Fraction(0)), pt.x)


def build_geq_cut(
    inst: Instance, subset: Iterable[int], part: IntervalPartition, *, ops: OpCounter | None = None
) -> PartitionCut:
    """The (Pi, C) partition inequality ``s_0 + s(C) + alpha.x >= prod kappa``."""
    subset = _check_subset(inst, subset)
    cap = inst.residual_capacity(subset)
    if cap <= 0:
        raise NonPositiveResidualCapacity(f"b(C) = {cap} for C = {subset}")
    base = build_partition_cut(inst, part, cap, ops=ops)
    return PartitionCut(Orientation.GEQ, base.x_coeffs, base.rhs, subset, 1, part, cap)


def separate_for_subset(inst: Instance, pt: GeqPoint, subset: Iterable[int]) -> SeparationResult:
    """Most violated (Pi, C) inequality for one fixed ``C``."""
    subset = _check_subset(inst, subset)
    cap, xhat = reduce_to_integer(inst, pt, subset)
    res = separate_integer(inst, xhat, cap)
    if res.is_inside:
        return res
    return SeparationResult(build_geq_cut(inst, subset, res.cut.partition), res.violation)


def separate_geq(inst: Instance, pt: GeqPoint, *, ops: OpCounter | None = None) -> SeparationResult:
    """Most violated (Pi, C) partition inequality for ``X(b)`` at ``pt``.

    Ties between prefixes go to the smallest prefix.
    """
    ops = ops if ops is not None else OpCounter()
    validate_point(inst, pt)
    D = common_denominator((pt.s0,) + pt.x + pt.s)
    X = [0] + [int(v * D) for v in pt.x]
    S = [int(v * D) for v in pt.s]
    order = _ratio_order(S, inst.u, ops)
    weights = (1,) + inst.a

    st, bt = int(pt.s0 * D), inst.b - sum(inst.u)
    ops.tick(inst.m)
    best_eps, best_j, best_splits = 0, -1, None
    for j in range(inst.m + 1):
        if j:
            st += S[order[j - 1]]
            bt += inst.u[order[j - 1]]
        ops.tick()
        if bt <= 0:
            continue
        found = _decompose_loop(weights, bt, st, list(X), D, ops)
        if found is not None and found[1] > best_eps:
            best_splits, best_eps, best_j = found[0], found[1], j
    # b(T_m) = b > 0, so at least one prefix ran
    if best_j < 0:
        return SeparationResult.inside()
    subset = tuple(sorted(order[:best_j]))
    part = IntervalPartition((0,) + tuple(reversed(best_splits)), inst.n)
    cut = build_geq_cut(inst, subset, part, ops=ops)
    ops.tick(inst.n + len(subset))
    lhs = int(pt.s0 * D) + sum(S[j] for j in subset) + sum(c * x for c, x in zip(cut.x_coeffs, X[1:]))
    eps = cut.rhs * D - lhs
    if eps != best_eps:
        raise AssertionError(f"rebuilt cut violation {Fraction(eps, D)} != traced {Fraction(best_eps, D)}")
    return SeparationResult(cut, Fraction(eps, D))


@dataclass(frozen=True)
class SwapOutcome:
    branch: str  # "add" (C + j_plus) or "remove" (C - j_minus)
    result: SeparationResult
    base_violation: Fraction


def select_swap_check(
    inst: Instance, pt: GeqPoint, subset: Iterable[int], j_plus: int, j_minus: int
) -> SwapOutcome:
    """Exchange step: trade ``C`` for ``C + j_plus`` or ``C - j_minus``.

    Requires ``s_{j+}/u_{j+} <= s_{j-}/u_{j-}``, ``j- in C``, ``j+ not in C``
    and some (Pi, C) inequality violated.  Returns the better of the two
    neighbours; its violation is never below that of ``C``.
    """
    subset = set(_check_subset(inst, subset))
    if j_minus not in subset or j_plus in subset:
        raise PreconditionViolated("need j_minus in C and j_plus outside C")
    if pt.s[j_plus] * inst.u[j_minus] > pt.s[j_minus] * inst.u[j_plus]:
        raise PreconditionViolated("need s_{j+}/u_{j+} <= s_{j-}/u_{j-}")
    base = separate_for_subset(inst, pt, subset)
    if base.is_inside:
        raise PreconditionViolated("no (Pi, C) inequality is violated")
    add = separate_for_subset(inst, pt, subset | {j_plus})
    best = SwapOutcome("add", add, base.violation)
    if inst.residual_capacity(subset - {j_minus}) > 0:
        remove = separate_for_subset(inst, pt, subset - {j_minus})
        if remove.violation > add.violation:
            best = SwapOutcome("remove", remove, base.violation)
    return best

"""Separation over the continuous <=-knapsack set

    Y(b) = { (x, y) : x in Z^n_+, y_0 >= 0, 0 <= y_j <= u_j,
             sum_i a_i x_i <= b + y_0 + sum_j y_j }

by complementing ``y_j = u_j - s_j`` into ``X(b + u(M))``.  Also builds the
lambda/pi form of the <=-partition inequalities so that the two families
can be compared on the same generator ``(Pi, C)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from divknap.geq import _check_subset, separate_geq
from divknap.integer import build_partition_cut, coefficient_recursion
from divknap.model import (
    CoefficientExceedsWeight,
    GeqPoint,
    Instance,
    IntervalPartition,
    LeqPoint,
    MismatchedGenerators,
    OpCounter,
    Orientation,
    PartitionCut,
    PreconditionViolated,
    SeparationResult,
    SpecInvalid,
    validate_point,
    violation,
)


def complemented_instance(inst: Instance) -> Instance:
    return inst.with_capacity(inst.b + sum(inst.u))


def complement_point(inst: Instance, pt: LeqPoint) -> tuple[Instance, GeqPoint]:
    """Map a point of ``Y_L(b)`` to the matching point of ``X_L(b + u(M))``."""
    validate_point(inst, pt)
    weighted = sum((a * x for a, x in zip(inst.a, pt.x)), Fraction(0))
    s0 = inst.b + pt.y0 + sum(pt.y, Fraction(0)) - weighted
    s = tuple(u - y for u, y in zip(inst.u, pt.y))
    return complemented_instance(inst), GeqPoint(pt.x, s0, s)


def uncomplement_point(inst: Instance, pt: GeqPoint) -> LeqPoint:
    """Inverse of :func:`complement_point`; ``inst`` is the original Y instance."""
    y = tuple(u - s for u, s in zip(inst.u, pt.s))
    weighted = sum((a * x for a, x in zip(inst.a, pt.x)), Fraction(0))
    y0 = pt.s0 - inst.b - sum(y, Fraction(0)) + weighted
    if y0 < 0:
        raise PreconditionViolated("point does not come from Y_L(b)")
    return LeqPoint(pt.x, y0, y)


def complement_cut(inst: Instance, geq_cut: PartitionCut) -> PartitionCut:
    """Turn ``s_0 + s(M\\C) + alpha.x >= g`` over ``X(b + u(M))`` into a Y cut.

    The result is ``sum (a_i - alpha_i) x_i <= B(C) - g + y_0 + y(C)`` with
    ``B(C) = b + u(M \\ C)``.
    """
    if geq_cut.orientation is not Orientation.GEQ or geq_cut.slack_coeff != 1:
        raise PreconditionViolated("expected a GEQ cut with unit s_0 coefficient")
    if len(geq_cut.x_coeffs) != inst.n:
        raise PreconditionViolated("cut and instance have different n")
    for i, (a, alpha) in enumerate(zip(inst.a, geq_cut.x_coeffs), 1):
        if alpha > a:
            raise CoefficientExceedsWeight(f"alpha_{i} = {alpha} > a_{i} = {a}")
    dropped = set(_check_subset(inst, geq_cut.subset))
    kept = tuple(j for j in range(inst.m) if j not in dropped)
    big = inst.b + sum(inst.u[j] for j in dropped)
    coeffs = tuple(a - alpha for a, alpha in zip(inst.a, geq_cut.x_coeffs))
    return PartitionCut(Orientation.LEQ, coeffs, big - geq_cut.rhs, kept, 1, geq_cut.partition, big)


def leq_capacity(inst: Instance, subset: Iterable[int]) -> int:
    """``B(C) = b + u(M \\ C)``."""
    kept = set(subset)
    return inst.b + sum(u for j, u in enumerate(inst.u) if j not in kept)


def build_complemented_cut(
    inst: Instance, subset: Iterable[int], part: IntervalPartition, *, check: bool = True
) -> PartitionCut:
    """Complemented partition inequality of ``(Pi, C)`` for ``Y(b)``."""
    subset = _check_subset(inst, subset)
    big = leq_capacity(inst, subset)
    base = build_partition_cut(inst, part, big, check=check)
    dropped = tuple(j for j in range(inst.m) if j not in subset)
    # on X(b + u(M)) the s-subset is M \ C and its capacity is exactly B(C)
    geq = PartitionCut(Orientation.GEQ, base.x_coeffs, base.rhs, dropped, 1, part, big)
    return complement_cut(inst, geq)


def separate_leq(inst: Instance, pt: LeqPoint, *, ops: OpCounter | None = None) -> SeparationResult:
    """Most violated complemented partition inequality for ``Y(b)`` at ``pt``."""
    xinst, gpt = complement_point(inst, pt)
    res = separate_geq(xinst, gpt, ops=ops)
    if res.is_inside:
        return res
    cut = complement_cut(inst, res.cut)
    eps = violation(cut, pt)
    if eps != res.violation:
        raise AssertionError(f"complementation changed the violation: {eps} != {res.violation}")
    return SeparationResult(cut, eps)


@dataclass(frozen=True)
class LeqPartitionSpec:
    """Generator of a <=-partition inequality.

    ``lam`` and ``pi`` are indexed by block ``t = 2..p`` (``lam[0]`` is
    lambda_2); ``pi0`` is the right-hand side constant.
    """

    part: IntervalPartition
    capacity: int
    g: int
    q: int
    lam: tuple[int, ...]
    pi: tuple[int, ...]
    pi0: int


def first_nondivisor(inst: Instance, capacity: int) -> int | None:
    """Smallest ``i`` with ``a_i`` not dividing ``capacity``."""
    for i, a in enumerate(inst.a, 1):
        if capacity % a:
            return i
    return None


def leq_partition_spec(
    inst: Instance, subset: Iterable[int], part: IntervalPartition, *, strict: bool = True
) -> LeqPartitionSpec:
    """Compute lambda/pi for ``part``; ``part.breaks[1]`` plays the role of ``q``.

    ``strict=False`` drops the ``q >= g`` and ``a_{i_p} <= B(C)`` side
    conditions (the recursion itself is still well defined).
    """
    big = leq_capacity(inst, _check_subset(inst, subset))
    g = first_nondivisor(inst, big)
    if part.p < 2:
        raise SpecInvalid("the <=-partition inequality needs at least two blocks")
    q = part.breaks[1]
    if strict:
        if g is None:
            raise SpecInvalid(f"every weight divides B(C) = {big}; no admissible q")
        if q < g:
            raise SpecInvalid(f"q = {q} below g = {g}")
        if inst.weight(part.last_start) > big:
            raise SpecInvalid(f"a_{part.last_start} exceeds B(C) = {big}")
    rec = coefficient_recursion(inst, part, big)
    p = part.p
    lam = {t: inst.weight(part.breaks[t - 1]) - rec.beta[t - 1] for t in range(2, p + 1)}
    pi = {2: lam[2]}
    for t in range(3, p + 1):
        pi[t] = rec.kappa[t - 1] * pi[t - 1] + (lam[t] - lam[t - 1])
    pi0 = rec.kappa[p] * pi[p] - lam[p]
    for t in range(2, p + 1):
        closed = inst.weight(part.breaks[t - 1]) - rec.kappa_product(t - 1)
        if pi[t] != closed:
            raise AssertionError(f"pi_{t} = {pi[t]} differs from closed form {closed}")
    if pi0 != big - rec.kappa_product():
        raise AssertionError(f"pi_0 = {pi0} differs from closed form {big - rec.kappa_product()}")
    return LeqPartitionSpec(
        part, big, g if g is not None else 0, q,
        tuple(lam[t] for t in range(2, p + 1)),
        tuple(pi[t] for t in range(2, p + 1)),
        pi0,
    )


def build_leq_partition_cut(inst: Instance, subset: Iterable[int], spec: LeqPartitionSpec) -> PartitionCut:
    """``sum_{t>=2} pi_t sum_{i in block t} (a_i / a_{i_t}) x_i <= pi_0 + y_0 + y(C)``."""
    subset = _check_subset(inst, subset)
    if leq_capacity(inst, subset) != spec.capacity:
        raise SpecInvalid("spec was computed for a different subset")
    coeffs = [0] * inst.n
    for t, (lo, hi) in enumerate(spec.part.bounds(), 1):
        if t == 1:
            continue
        base = inst.weight(lo)
        for i in range(lo, hi + 1):
            coeffs[i - 1] = spec.pi[t - 2] * (inst.weight(i) // base)
    return PartitionCut(Orientation.LEQ, tuple(coeffs), spec.pi0, subset, 1, spec.part, spec.capacity)


def is_uncapped(inst: Instance, capacity: int, part: IntervalPartition) -> bool:
    """True when no ``min{a_i / a_{i_t}, kappa_t}`` is capped by ``kappa_t``."""
    rec = coefficient_recursion(inst, part, capacity)
    return all(
        inst.weight(i) // inst.weight(lo) <= rec.kappa[t]
        for t, (lo, hi) in enumerate(part.bounds(), 1)
        for i in range(lo, hi + 1)
    )


class Dominance(str, enum.Enum):
    STRICTLY_STRONGER = "strictly-stronger"
    EQUIVALENT = "equivalent"


def dominance_check(comp: PartitionCut, leq: PartitionCut) -> Dominance:
    """Compare a complemented cut with a <=-partition cut of the same generator."""
    if comp.partition is None or leq.partition is None:
        raise MismatchedGenerators("both cuts must record their partition")
    if (comp.partition.breaks, comp.subset, comp.capacity) != (leq.partition.breaks, leq.subset, leq.capacity):
        raise MismatchedGenerators("cuts come from different (Pi, C)")
    if comp.rhs != leq.rhs:
        raise AssertionError(f"right-hand sides differ: {comp.rhs} != {leq.rhs}")
    if any(c < l for c, l in zip(comp.x_coeffs, leq.x_coeffs)):
        raise AssertionError("complemented cut has a smaller coefficient")
    if comp.x_coeffs == leq.x_coeffs:
        return Dominance.EQUIVALENT
    return Dominance.STRICTLY_STRONGER


def normalize_by_splitting(inst: Instance, subset: Iterable[int], part: IntervalPartition) -> IntervalPartition:
    """Split capped blocks until every coefficient is uncapped.

    A block whose top ratio ``a_{j_t} / a_{i_t}`` exceeds ``kappa_t`` loses
    its last index to a new singleton block; the complemented inequality
    does not change.
    """
    big = leq_capacity(inst, _check_subset(inst, subset))
    while True:
        rec = coefficient_recursion(inst, part, big)
        for t, (lo, hi) in enumerate(part.bounds(), 1):
            if inst.weight(hi) // inst.weight(lo) > rec.kappa[t]:
                part = part.split(hi)
                break
        else:
            return part

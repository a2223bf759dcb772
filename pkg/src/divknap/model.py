"""Domain types shared by the separation routines.

All numbers are exact: weights, bounds and capacities are Python ints and
point coordinates are :class:`fractions.Fraction`.  Indices follow the usual
knapsack convention: position ``0`` of an interval partition is the
unbounded variable (``x_0`` or ``s_0``) and position ``i >= 1`` is the integer
variable ``x_i``, stored at ``x[i - 1]``.  Continuous variables ``s_j``/``y_j``
are 0-based (``s[j]``) everywhere, including subsets of cuts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence, Union


class DivknapError(ValueError):
    """Base class for input and precondition errors."""


class NonDivisibleChain(DivknapError):
    pass


class DuplicateWeight(DivknapError):
    pass


class WeightTooSmall(DivknapError):
    pass


class NonPositiveData(DivknapError):
    pass


class ShapeMismatch(DivknapError):
    pass


class PreconditionViolated(DivknapError):
    pass


class PointNotInRelaxation(PreconditionViolated):
    """The point violates a trivial bound or the knapsack row itself.

    ``constraint`` names the violated constraint so the caller can use it
    directly as a separating hyperplane.
    """

    def __init__(self, constraint: str, detail: str = ""):
        self.constraint = constraint
        super().__init__(f"{constraint}: {detail}" if detail else constraint)


class PartitionCapacityMismatch(DivknapError):
    pass


class NonPositiveResidualCapacity(DivknapError):
    pass


class CoefficientExceedsWeight(DivknapError):
    pass


class SpecInvalid(DivknapError):
    pass


class MismatchedGenerators(DivknapError):
    pass


class BudgetExceeded(DivknapError):
    pass


class SetKind(str, enum.Enum):
    """Which knapsack set a point or cut belongs to."""

    Z = "z"  # integer >=-knapsack
    GEQ = "geq"  # continuous >=-knapsack X(b)
    LEQ = "leq"  # continuous <=-knapsack Y(b)


class Orientation(str, enum.Enum):
    GEQ = "geq"
    LEQ = "leq"


def _frac(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted; use Fraction or 'p/q' strings")
    return Fraction(value)


def _fracs(values) -> tuple[Fraction, ...]:
    return tuple(_frac(v) for v in values)


@dataclass(frozen=True)
class Instance:
    """Weights ``a``, continuous bounds ``u`` and capacity ``b``.

    The implicit sentinels ``a_0 = 1`` and ``a_{n+1} = +inf`` are served by
    :meth:`weight`.  Construction does not validate; call
    :func:`validate_instance`.
    """

    a: tuple[int, ...]
    u: tuple[int, ...] = ()
    b: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "u", tuple(self.u))

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def m(self) -> int:
        return len(self.u)

    def weight(self, i: int) -> int | None:
        """``a_i`` for ``i`` in ``0..n+1``; ``None`` stands for ``+inf``."""
        if i == 0:
            return 1
        if i == len(self.a) + 1:
            return None
        return self.a[i - 1]

    def with_capacity(self, b: int) -> "Instance":
        return Instance(self.a, self.u, b)

    def residual_capacity(self, subset: Sequence[int]) -> int:
        """``b(C) = b - u(M \\ C)``."""
        inside = set(subset)
        return self.b - sum(u for j, u in enumerate(self.u) if j not in inside)


@dataclass(frozen=True)
class IntPoint:
    """Candidate point of the LP relaxation of the integer set ``Z(b)``."""

    x0: Fraction
    x: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "x0", _frac(self.x0))
        object.__setattr__(self, "x", _fracs(self.x))


@dataclass(frozen=True)
class GeqPoint:
    """Candidate point ``(x, s)`` of the relaxation of ``X(b)``."""

    x: tuple[Fraction, ...]
    s0: Fraction
    s: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "x", _fracs(self.x))
        object.__setattr__(self, "s0", _frac(self.s0))
        object.__setattr__(self, "s", _fracs(self.s))


@dataclass(frozen=True)
class LeqPoint:
    """Candidate point ``(x, y)`` of the relaxation of ``Y(b)``."""

    x: tuple[Fraction, ...]
    y0: Fraction
    y: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "x", _fracs(self.x))
        object.__setattr__(self, "y0", _frac(self.y0))
        object.__setattr__(self, "y", _fracs(self.y))


Point = Union[IntPoint, GeqPoint, LeqPoint]


@dataclass(frozen=True)
class IntervalPartition:
    """Ordered partition of ``{0, ..., n}`` into consecutive blocks.

    Stored as the sorted block starts ``breaks = (0, i_2, ..., i_p)``.
    """

    breaks: tuple[int, ...]
    n: int

    def __post_init__(self):
        breaks = tuple(self.breaks)
        object.__setattr__(self, "breaks", breaks)
        if not breaks or breaks[0] != 0:
            raise ValueError("partition must start with block index 0")
        if any(b2 <= b1 for b1, b2 in zip(breaks, breaks[1:])):
            raise ValueError("block starts must be strictly increasing")
        if breaks[-1] > self.n:
            raise ValueError("block start beyond n")

    @classmethod
    def single(cls, n: int) -> "IntervalPartition":
        return cls((0,), n)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]]) -> "IntervalPartition":
        flat = [i for blk in blocks for i in blk]
        if flat != list(range(len(flat))):
            raise ValueError("blocks must be consecutive and cover 0..n")
        return cls(tuple(blk[0] for blk in blocks), len(flat) - 1)

    @property
    def p(self) -> int:
        return len(self.breaks)

    @property
    def last_start(self) -> int:
        return self.breaks[-1]

    def bounds(self) -> Iterator[tuple[int, int]]:
        """Yield ``(i_t, j_t)`` for each block, bottom block first."""
        ends = [b - 1 for b in self.breaks[1:]] + [self.n]
        return zip(self.breaks, ends)

    def blocks(self) -> list[tuple[int, ...]]:
        return [tuple(range(i, j + 1)) for i, j in self.bounds()]

    def split(self, at: int) -> "IntervalPartition":
        """Start a new block at index ``at``."""
        if at in self.breaks:
            return self
        return IntervalPartition(tuple(sorted(self.breaks + (at,))), self.n)


@dataclass(frozen=True)
class PartitionCut:
    """A materialized inequality over one of the three sets.

    GEQ form::

        slack_coeff * v_0 + sum_{j in subset} s_j + sum_i x_coeffs[i-1] x_i >= rhs

    where ``v_0`` is ``x_0`` (integer set) or ``s_0``.  LEQ form::

        sum_i x_coeffs[i-1] x_i <= rhs + slack_coeff * y_0 + sum_{j in subset} y_j

    ``partition`` and ``capacity`` record the generator for auditing.
    """

    orientation: Orientation
    x_coeffs: tuple[int, ...]
    rhs: int
    subset: tuple[int, ...] = ()
    slack_coeff: int = 1
    partition: IntervalPartition | None = field(default=None, compare=False)
    capacity: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "orientation", Orientation(self.orientation))
        object.__setattr__(self, "x_coeffs", tuple(self.x_coeffs))
        object.__setattr__(self, "subset", tuple(sorted(self.subset)))

    def __str__(self) -> str:
        def term(c, name):
            return name if c == 1 else f"{c}{name}"

        terms = [term(c, f"x{i}") for i, c in enumerate(self.x_coeffs, 1) if c]
        if self.orientation is Orientation.GEQ:
            lhs = [term(self.slack_coeff, "v0")] if self.slack_coeff else []
            lhs += [f"s{j}" for j in self.subset] + terms
            return f"{' + '.join(lhs) or '0'} >= {self.rhs}"
        rhs = [str(self.rhs)] + ([term(self.slack_coeff, "y0")] if self.slack_coeff else [])
        rhs += [f"y{j}" for j in self.subset]
        return f"{' + '.join(terms) or '0'} <= {' + '.join(rhs)}"


@dataclass(frozen=True)
class SeparationResult:
    """Either a violated cut with its exact violation, or "inside"."""

    cut: PartitionCut | None = None
    violation: Fraction = Fraction(0)

    @classmethod
    def inside(cls) -> "SeparationResult":
        return cls()

    @property
    def is_inside(self) -> bool:
        return self.cut is None

    @property
    def is_violated(self) -> bool:
        return self.cut is not None


class OpCounter:
    """Counts elementary steps of the separation routines.

    One tick is charged per loop body, comparison or scalar update, which is
    the arithmetic-operation model used by the benchmarks.
    """

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0

    def tick(self, k: int = 1):
        self.count += k

    def __repr__(self):
        return f"OpCounter({self.count})"


def validate_instance(inst: Instance) -> None:
    """Raise if ``inst`` is not a divisible-capacity instance."""
    for name, values in (("a", inst.a), ("u", inst.u)):
        for v in values:
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise NonPositiveData(f"{name} must hold positive integers, got {v!r}")
    if not isinstance(inst.b, int) or isinstance(inst.b, bool) or inst.b < 1:
        raise NonPositiveData(f"b must be a positive integer, got {inst.b!r}")
    if inst.a and inst.a[0] < 2:
        raise WeightTooSmall(f"a_1 = {inst.a[0]} < 2")
    for i in range(1, inst.n):
        lo, hi = inst.a[i - 1], inst.a[i]
        if hi == lo:
            raise DuplicateWeight(f"a_{i} = a_{i + 1} = {lo}")
        if hi % lo:
            raise NonDivisibleChain(f"a_{i} = {lo} does not divide a_{i + 1} = {hi}")


def _check_shape(inst: Instance, pt: Point):
    if len(pt.x) != inst.n:
        raise ShapeMismatch(f"point has {len(pt.x)} integer coordinates, instance has {inst.n}")
    cont = pt.s if isinstance(pt, GeqPoint) else pt.y if isinstance(pt, LeqPoint) else ()
    if not isinstance(pt, IntPoint) and len(cont) != inst.m:
        raise ShapeMismatch(f"point has {len(cont)} continuous coordinates, instance has {inst.m}")


def validate_point(inst: Instance, pt: Point, capacity: int | None = None) -> None:
    """Raise :class:`PointNotInRelaxation` unless ``pt`` is in the LP relaxation.

    ``capacity`` overrides ``inst.b`` (integer points are often checked
    against a residual capacity).  The instance is validated first.
    """
    validate_instance(inst)
    _check_shape(inst, pt)
    b = inst.b if capacity is None else capacity
    for i, xi in enumerate(pt.x, 1):
        if xi < 0:
            raise PointNotInRelaxation(f"x{i} >= 0", f"x{i} = {xi}")
    weighted = sum((a * xi for a, xi in zip(inst.a, pt.x)), Fraction(0))
    if isinstance(pt, IntPoint):
        if pt.x0 < 0:
            raise PointNotInRelaxation("x0 >= 0", f"x0 = {pt.x0}")
        if pt.x0 + weighted < b:
            raise PointNotInRelaxation("knapsack", f"x0 + a.x = {pt.x0 + weighted} < {b}")
        return
    if isinstance(pt, GeqPoint):
        slack, cont, name = pt.s0, pt.s, "s"
    elif isinstance(pt, LeqPoint):
        slack, cont, name = pt.y0, pt.y, "y"
    else:
        raise ShapeMismatch(f"unknown point type {type(pt).__name__}")
    if slack < 0:
        raise PointNotInRelaxation(f"{name}0 >= 0", f"{name}0 = {slack}")
    for j, (v, u) in enumerate(zip(cont, inst.u)):
        if v < 0:
            raise PointNotInRelaxation(f"{name}{j} >= 0", f"{name}{j} = {v}")
        if v > u:
            raise PointNotInRelaxation(f"{name}{j} <= {u}", f"{name}{j} = {v}")
    total = slack + sum(cont, Fraction(0))
    if isinstance(pt, GeqPoint) and total + weighted < b:
        raise PointNotInRelaxation("knapsack", f"s0 + s(M) + a.x = {total + weighted} < {b}")
    if isinstance(pt, LeqPoint) and weighted > b + total:
        raise PointNotInRelaxation("knapsack", f"a.x = {weighted} > {b + total}")


def eval_cut(cut: PartitionCut, pt: Point) -> Fraction:
    """Slack of ``cut`` at ``pt``: negative exactly when the cut is violated."""
    if len(cut.x_coeffs) != len(pt.x):
        raise ShapeMismatch("cut and point have different numbers of integer variables")
    if isinstance(pt, IntPoint):
        if cut.orientation is not Orientation.GEQ or cut.subset:
            raise ShapeMismatch("integer points only take pure-integer GEQ cuts")
        slack, cont = pt.x0, ()
    elif isinstance(pt, GeqPoint):
        if cut.orientation is not Orientation.GEQ:
            raise ShapeMismatch("GEQ points take GEQ cuts")
        slack, cont = pt.s0, pt.s
    elif isinstance(pt, LeqPoint):
        if cut.orientation is not Orientation.LEQ:
            raise ShapeMismatch("LEQ points take LEQ cuts")
        slack, cont = pt.y0, pt.y
    else:
        raise ShapeMismatch(f"unknown point type {type(pt).__name__}")
    if any(j < 0 or j >= len(cont) for j in cut.subset):
        raise ShapeMismatch("cut subset refers to a missing continuous variable")
    linear = sum((c * xi for c, xi in zip(cut.x_coeffs, pt.x)), Fraction(0))
    cont_sum = sum((cont[j] for j in cut.subset), Fraction(0))
    if cut.orientation is Orientation.GEQ:
        return cut.slack_coeff * slack + cont_sum + linear - cut.rhs
    return cut.rhs + cut.slack_coeff * slack + cont_sum - linear


def violation(cut: PartitionCut, pt: Point) -> Fraction:
    """``rhs - lhs`` in the >= sense; positive when ``pt`` is cut off."""
    return -eval_cut(cut, pt)

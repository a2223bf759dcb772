from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import instances, points
from divknap.model import (
    DuplicateWeight,
    GeqPoint,
    Instance,
    IntervalPartition,
    IntPoint,
    LeqPoint,
    NonDivisibleChain,
    NonPositiveData,
    Orientation,
    PartitionCut,
    PointNotInRelaxation,
    SeparationResult,
    SetKind,
    ShapeMismatch,
    WeightTooSmall,
    eval_cut,
    validate_instance,
    validate_point,
    violation,
)
from divknap.oracle import gen_instance, gen_point


class TestValidateInstance:
    def test_divisible_chain_ok(self):
        validate_instance(Instance((2, 6, 12), (3,), 7))

    def test_non_divisible(self):
        with pytest.raises(NonDivisibleChain):
            validate_instance(Instance((2, 5), (), 3))

    def test_first_weight_must_exceed_one(self):
        with pytest.raises(WeightTooSmall):
            validate_instance(Instance((1, 2), (3,), 4))

    def test_duplicate(self):
        with pytest.raises(DuplicateWeight):
            validate_instance(Instance((2, 2), (), 3))

    @pytest.mark.parametrize("inst", [Instance((2,), (), 0), Instance((2,), (0,), 3), Instance((-2,), (), 3)])
    def test_nonpositive(self, inst):
        with pytest.raises(NonPositiveData):
            validate_instance(inst)

    def test_all_generated_instances_valid(self):
        for seed in range(1000):
            validate_instance(gen_instance(seed))


class TestValidatePoint:
    inst = Instance((2,), (3,), 5)

    def test_tight_geq_point(self):
        validate_point(self.inst, GeqPoint((1,), 0, (3,)))

    def test_geq_point_below_row(self):
        with pytest.raises(PointNotInRelaxation) as info:
            validate_point(self.inst, GeqPoint((0,), 0, (3,)))
        assert info.value.constraint == "knapsack"

    def test_integer_point(self):
        validate_point(Instance((2,), (), 5), IntPoint(0, (Fraction(5, 2),)))

    def test_bound_violation_names_constraint(self):
        with pytest.raises(PointNotInRelaxation) as info:
            validate_point(self.inst, GeqPoint((3,), 0, (4,)))
        assert info.value.constraint == "s0 <= 3"

    def test_leq_row(self):
        inst = Instance((2,), (3,), 2)
        validate_point(inst, LeqPoint((Fraction(5, 2),), 0, (3,)))
        with pytest.raises(PointNotInRelaxation):
            validate_point(inst, LeqPoint((3,), 0, (3,)))

    def test_shape(self):
        with pytest.raises(ShapeMismatch):
            validate_point(self.inst, GeqPoint((1, 1), 0, (3,)))

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            IntPoint(0.5, (1,))

    @pytest.mark.parametrize("which", list(SetKind))
    def test_generator_points_accepted(self, which):
        for seed in range(300):
            inst = gen_instance(seed, which=which)
            validate_point(inst, gen_point(seed, inst, which))


class TestEvalCut:
    def test_integer_example(self):
        cut = PartitionCut(Orientation.GEQ, (1,), 3)
        assert eval_cut(cut, IntPoint(0, (Fraction(5, 2),))) == Fraction(-1, 2)
        assert violation(cut, IntPoint(0, (Fraction(5, 2),))) == Fraction(1, 2)

    def test_tight_is_zero(self):
        cut = PartitionCut(Orientation.GEQ, (1,), 3)
        assert eval_cut(cut, IntPoint(1, (2,))) == 0

    def test_leq_example(self):
        cut = PartitionCut(Orientation.LEQ, (1,), 2)
        assert eval_cut(cut, LeqPoint((Fraction(5, 2),), 0, (3,))) == Fraction(-1, 2)

    def test_orientation_mismatch(self):
        with pytest.raises(ShapeMismatch):
            eval_cut(PartitionCut(Orientation.LEQ, (1,), 2), GeqPoint((1,), 0, (0,)))

    @settings(max_examples=150, deadline=None)
    @given(st.data())
    def test_linear_in_the_point(self, data):
        inst = data.draw(instances())
        which = data.draw(st.sampled_from([SetKind.GEQ, SetKind.LEQ]))
        p = data.draw(points(inst, which))
        q = data.draw(points(inst, which))
        lam = data.draw(st.builds(Fraction, st.integers(0, 7), st.just(7)))
        orient = Orientation.GEQ if which is SetKind.GEQ else Orientation.LEQ
        coeffs = tuple(data.draw(st.integers(0, 9)) for _ in range(inst.n))
        subset = tuple(j for j in range(inst.m) if data.draw(st.booleans()))
        cut = PartitionCut(orient, coeffs, data.draw(st.integers(-5, 50)), subset)
        pt_type = type(p)
        mix = pt_type(
            *[
                tuple(lam * a + (1 - lam) * b for a, b in zip(fa, fb)) if isinstance(fa, tuple) else lam * fa + (1 - lam) * fb
                for fa, fb in zip(_fields(p), _fields(q))
            ]
        )
        assert eval_cut(cut, mix) == lam * eval_cut(cut, p) + (1 - lam) * eval_cut(cut, q)


def _fields(pt):
    if isinstance(pt, GeqPoint):
        return (pt.x, pt.s0, pt.s)
    return (pt.x, pt.y0, pt.y)


@given(st.fractions(), st.fractions().filter(lambda q: q != 0))
def test_rational_arithmetic_exact(p, q):
    assert (p + q) - q == p
    assert (p * q) / q == p
    r = p * q
    assert gcd(r.numerator, r.denominator) == 1


class TestIntervalPartition:
    def test_blocks_roundtrip(self):
        part = IntervalPartition.from_blocks([(0,), (1, 2)])
        assert part.breaks == (0, 1)
        assert part.blocks() == [(0,), (1, 2)]
        assert list(part.bounds()) == [(0, 0), (1, 2)]

    def test_split(self):
        part = IntervalPartition.single(3).split(2)
        assert part.blocks() == [(0, 1), (2, 3)]
        assert part.split(2) is part

    @pytest.mark.parametrize("breaks", [(), (1,), (0, 0), (0, 4)])
    def test_bad_breaks(self, breaks):
        with pytest.raises(ValueError):
            IntervalPartition(breaks, 3)


def test_separation_result_flags():
    assert SeparationResult.inside().is_inside
    res = SeparationResult(PartitionCut(Orientation.GEQ, (1,), 3), Fraction(1, 2))
    assert res.is_violated and not res.is_inside

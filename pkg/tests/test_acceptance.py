"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
Violations are compared as exact rationals (zero tolerance).  Time limits
and the ratio band are the constants below.
"""

import functools
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import random_leq_generator, swap_configurations  # noqa: E402
from divknap import bench  # noqa: E402
from divknap.geq import select_swap_check, separate_geq  # noqa: E402
from divknap.integer import coefficient_recursion, separate_integer  # noqa: E402
from divknap.leq import (  # noqa: E402
    Dominance,
    build_complemented_cut,
    build_leq_partition_cut,
    dominance_check,
    is_uncapped,
    leq_partition_spec,
    normalize_by_splitting,
    separate_leq,
)
from divknap.model import (  # noqa: E402
    GeqPoint,
    Instance,
    IntervalPartition,
    IntPoint,
    LeqPoint,
    Orientation,
    PartitionCut,
    SetKind,
)
from divknap.oracle import EnumerationBudget, brute_force_separate, validity_oracle  # noqa: E402
from divknap.verify import run_trials  # noqa: E402

TRIALS = 1000
PROPERTY_TRIALS = 1000
SPLIT_TRIALS = 500
SWAP_TRIALS = 500
TIME_LIMIT = {SetKind.Z: 60.0, SetKind.GEQ: 120.0, SetKind.LEQ: 120.0}
BENCH_LIMIT = 300.0
RATIO_BAND = 2.0
GEQ_GRID = [(250, 250), (500, 500), (1000, 1000), (2000, 2000)]
INTEGER_SIZES = [10**3, 10**4, 10**5]
BUDGET = {SetKind.Z: EnumerationBudget(6, 0), SetKind.GEQ: EnumerationBudget(4, 3), SetKind.LEQ: EnumerationBudget(4, 3)}

HALF = Fraction(1, 2)


@pytest.fixture
def report(capsys):
    """Print one PASS/FAIL line past pytest's output capture."""

    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}", flush=True)
        return ok

    return emit


@functools.lru_cache(maxsize=None)
def trials(which):
    return run_trials(which, TRIALS, seed=0, budget=BUDGET[which])


def _equivalence(report, number, which, title):
    r = trials(which)
    ok = (
        r.trials == TRIALS
        and not r.mismatches
        and r.inside > 0
        and r.violated > 0
        and r.seconds < TIME_LIMIT[which]
    )
    detail = (
        f"{r.trials} trials, {len(r.mismatches)} mismatches, inside={r.inside} violated={r.violated}, "
        f"{r.seconds:.1f}s (limit {TIME_LIMIT[which]:.0f}s)"
    )
    assert report(number, title, ok, detail), detail


def test_criterion_1_integer_oracle_equivalence(report):
    _equivalence(report, 1, SetKind.Z, "integer separation equals brute force over all partitions")


def test_criterion_2_geq_oracle_equivalence(report):
    _equivalence(report, 2, SetKind.GEQ, "continuous >= separation equals brute force over all (partition, subset)")


def test_criterion_3_leq_oracle_equivalence(report):
    _equivalence(report, 3, SetKind.LEQ, "continuous <= separation equals brute force through complementation")


def test_criterion_4_emitted_cuts_valid(report):
    runs = [trials(w) for w in (SetKind.Z, SetKind.GEQ, SetKind.LEQ)]
    cuts = sum(r.violated for r in runs)
    bad = sum(len(r.invalid_cuts) for r in runs)
    detail = f"{cuts} emitted cuts checked, {bad} counterexamples"
    assert report(4, "every emitted cut passes the validity oracle", bad == 0 and cuts > 0, detail), detail


def _generators(salt, count):
    out, k = [], 0
    while len(out) < count:
        gen = random_leq_generator(random.Random(f"{salt}:{k}"))
        k += 1
        if gen is not None:
            out.append(gen)
    return out


def test_criterion_5_pi_closed_form(report):
    bad = 0
    for inst, C, part in _generators("pi", PROPERTY_TRIALS):
        try:
            spec = leq_partition_spec(inst, C, part)
        except AssertionError:
            bad += 1
            continue
        rec = coefficient_recursion(inst, part, spec.capacity)
        closed = tuple(inst.weight(part.breaks[t - 1]) - rec.kappa_product(t - 1) for t in range(2, part.p + 1))
        if spec.pi != closed or spec.pi0 != spec.capacity - rec.kappa_product():
            bad += 1
    detail = f"{PROPERTY_TRIALS} triples, {bad} mismatches"
    assert report(5, "recursive pi equals the closed form", bad == 0, detail), detail


def test_criterion_6_dominance(report):
    bad = strict = 0
    for inst, C, part in _generators("dominance", PROPERTY_TRIALS):
        try:
            spec = leq_partition_spec(inst, C, part)
            comp = build_complemented_cut(inst, C, part)
            leq = build_leq_partition_cut(inst, C, spec)
            verdict = dominance_check(comp, leq)
        except Exception:
            bad += 1
            continue
        ok = (
            comp.rhs == leq.rhs
            and all(c >= l for c, l in zip(comp.x_coeffs, leq.x_coeffs))
            and (verdict is Dominance.EQUIVALENT) == is_uncapped(inst, spec.capacity, part)
        )
        bad += not ok
        strict += verdict is Dominance.STRICTLY_STRONGER
    detail = f"{PROPERTY_TRIALS} pairs, {bad} exceptions, {strict} strictly stronger"
    assert report(6, "complemented cuts dominate <=-partition cuts", bad == 0 and 0 < strict < PROPERTY_TRIALS, detail), detail


def test_criterion_7_splitting_invariance(report):
    bad = changed = 0
    for inst, C, part in _generators("split", SPLIT_TRIALS):
        fixed = normalize_by_splitting(inst, C, part)
        changed += fixed != part
        before = build_complemented_cut(inst, C, part)
        after = build_complemented_cut(inst, C, fixed, check=False)
        same = (before.x_coeffs, before.rhs, before.subset) == (after.x_coeffs, after.rhs, after.subset)
        bad += not (same and is_uncapped(inst, before.capacity, fixed))
    detail = f"{SPLIT_TRIALS} generators, {changed} split at least once, {bad} failures"
    assert report(7, "splitting leaves the complemented cut unchanged", bad == 0 and changed > 0, detail), detail


def test_criterion_8_exchange(report):
    bad = 0
    branches = {"add": 0, "remove": 0}
    stream = swap_configurations()
    for _ in range(SWAP_TRIALS):
        _, inst, pt, C, jp, jm = next(stream)
        try:
            out = select_swap_check(inst, pt, C, jp, jm)
        except Exception:
            bad += 1
            continue
        branches[out.branch] += 1
        bad += not out.result.violation >= out.base_violation > 0
    detail = f"{SWAP_TRIALS} configurations, {bad} failures, branches {branches}"
    assert report(8, "swap candidate is at least as violated", bad == 0, detail), detail


def test_criterion_9_complexity(report):
    start = time.perf_counter()
    geq_rows = [bench.run_geq(n, m) for n, m in GEQ_GRID]
    int_rows = [bench.run_integer(n) for n in INTEGER_SIZES]
    elapsed = time.perf_counter() - start
    geq_band, int_band = bench.band(geq_rows), bench.band(int_rows)
    ok = geq_band < RATIO_BAND and int_band < RATIO_BAND and elapsed < BENCH_LIMIT
    detail = (
        f"geq ratios {[round(r.ratio, 3) for r in geq_rows]} band {geq_band:.3f}; "
        f"integer ratios {[round(r.ratio, 3) for r in int_rows]} band {int_band:.3f}; "
        f"{elapsed:.1f}s (limit {BENCH_LIMIT:.0f}s)"
    )
    assert report(9, "operation counts track mn + m log m and n", ok, detail), detail


def _fixtures():
    inst_z = Instance((2,), (), 5)
    inst_x = Instance((2,), (3,), 5)
    inst_y = Instance((2,), (3,), 2)
    return [
        ("integer a=(2), b=5", inst_z, IntPoint(0, (Fraction(5, 2),)), SetKind.Z, separate_integer,
         PartitionCut(Orientation.GEQ, (1,), 3)),
        ("geq a=(2), u=(3), b=5", inst_x, GeqPoint((Fraction(5, 2),), 0, (0,)), SetKind.GEQ, separate_geq,
         PartitionCut(Orientation.GEQ, (1,), 3, (0,))),
        ("leq a=(2), u=(3), b=2", inst_y, LeqPoint((Fraction(5, 2),), 0, (3,)), SetKind.LEQ, separate_leq,
         PartitionCut(Orientation.LEQ, (1,), 2, ())),
    ]


def test_criterion_10_regression_fixtures(report):
    failures = []
    for name, inst, pt, which, separate, expected in _fixtures():
        oracle = brute_force_separate(inst, pt, which)
        if oracle.violation != HALF or oracle.cut != expected:
            failures.append(f"{name}: oracle gave {oracle.cut} / {oracle.violation}")
            continue
        got = separate(inst, pt)
        if got.cut != expected or got.violation != HALF or validity_oracle(inst, got.cut, which) is not None:
            failures.append(f"{name}: got {got.cut} / {got.violation}")
    inst = Instance((2, 8), (), 5)
    part = IntervalPartition((0, 1), 2)
    comp = build_complemented_cut(inst, (), part)
    leq = build_leq_partition_cut(inst, (), leq_partition_spec(inst, (), part))
    split = normalize_by_splitting(inst, (), part)
    if (
        comp.x_coeffs != (1, 5)
        or leq.x_coeffs != (1, 4)
        or (comp.rhs, leq.rhs) != (2, 2)
        or dominance_check(comp, leq) is not Dominance.STRICTLY_STRONGER
        or split.breaks != (0, 1, 2)
    ):
        failures.append(f"dominance a=(2,8): comp {comp}, leq {leq}, split {split.breaks}")
    for cut in (comp, leq):
        if validity_oracle(inst, cut, SetKind.LEQ) is not None:
            failures.append(f"dominance a=(2,8): {cut} not valid")
    detail = "4 fixtures reproduced" if not failures else "; ".join(failures)
    assert report(10, "worked micro-examples", not failures, detail), detail


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))

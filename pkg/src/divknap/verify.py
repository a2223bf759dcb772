"""Seeded algorithm-versus-oracle trials."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from divknap.geq import separate_geq
from divknap.integer import separate_integer
from divknap.leq import separate_leq
from divknap.model import SetKind, validate_point
from divknap.oracle import EnumerationBudget, brute_force_separate, gen_instance, gen_point, validity_oracle

SEPARATORS = {
    SetKind.Z: separate_integer,
    SetKind.GEQ: separate_geq,
    SetKind.LEQ: separate_leq,
}


@dataclass
class VerifyReport:
    which: SetKind
    seed: int
    trials: int = 0
    inside: int = 0
    violated: int = 0
    mismatches: list[int] = field(default_factory=list)
    invalid_cuts: list[int] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.invalid_cuts

    def to_json(self) -> dict:
        return {
            "set": self.which.value,
            "seed": self.seed,
            "trials": self.trials,
            "inside": self.inside,
            "violated": self.violated,
            "mismatches": len(self.mismatches),
            "mismatch_seeds": self.mismatches[:20],
            "invalid_cuts": len(self.invalid_cuts),
            "invalid_seeds": self.invalid_cuts[:20],
            "seconds": round(self.seconds, 3),
        }


def run_trials(
    which: SetKind,
    count: int,
    seed: int = 0,
    budget: EnumerationBudget | None = None,
    check_validity: bool = True,
) -> VerifyReport:
    """Trial ``k`` uses generator seed ``seed + k``.

    A trial mismatches when the algorithm's violation differs from the
    brute-force maximum, or when exactly one of them reports "inside".
    """
    which = SetKind(which)
    budget = budget or EnumerationBudget.for_set(which)
    separate = SEPARATORS[which]
    report = VerifyReport(which, seed)
    start = time.perf_counter()
    for k in range(count):
        s = seed + k
        inst = gen_instance(s, budget, which)
        pt = gen_point(s, inst, which)
        validate_point(inst, pt)
        got = separate(inst, pt)
        want = brute_force_separate(inst, pt, which, budget)
        report.trials += 1
        if got.is_inside:
            report.inside += 1
        else:
            report.violated += 1
        if got.is_inside != want.is_inside or got.violation != want.violation:
            report.mismatches.append(s)
        if check_validity and got.is_violated and validity_oracle(inst, got.cut, which) is not None:
            report.invalid_cuts.append(s)
    report.seconds = time.perf_counter() - start
    return report

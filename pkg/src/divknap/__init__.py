"""Exact separation of partition inequalities for divisible knapsack sets."""

from divknap.geq import separate_geq
from divknap.integer import build_partition_cut, separate_integer
from divknap.leq import separate_leq
from divknap.model import (
    DivknapError,
    GeqPoint,
    Instance,
    IntervalPartition,
    IntPoint,
    LeqPoint,
    Orientation,
    PartitionCut,
    SeparationResult,
    SetKind,
    eval_cut,
    validate_instance,
    validate_point,
    violation,
)

__all__ = [
    "DivknapError",
    "GeqPoint",
    "Instance",
    "IntPoint",
    "IntervalPartition",
    "LeqPoint",
    "Orientation",
    "PartitionCut",
    "SeparationResult",
    "SetKind",
    "build_partition_cut",
    "eval_cut",
    "separate_geq",
    "separate_integer",
    "separate_leq",
    "validate_instance",
    "validate_point",
    "violation",
]

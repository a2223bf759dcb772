"""JSON encoding with exact numerics.

Integers are written as decimal strings (``"12"``) and rationals as
``"p/q"`` strings so nothing passes through a float.  Plain JSON integers
are accepted on input; JSON floats are rejected.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

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
    validate_instance,
)

_RATIONAL = re.compile(r"\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*")


class SchemaError(DivknapError):
    """Input JSON does not match the expected shape."""


def _num(value: Any, what: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError(f"{what}: expected a decimal or p/q string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.fullmatch(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise SchemaError(f"{what}: zero denominator in {value!r}") from None
    raise SchemaError(f"{what}: expected a decimal or p/q string, got {value!r}")


def _int(value: Any, what: str) -> int:
    q = _num(value, what)
    if q.denominator != 1:
        raise SchemaError(f"{what}: expected an integer, got {value!r}")
    return q.numerator


def _list(obj: dict, key: str, required: bool = True) -> list:
    if key not in obj:
        if required:
            raise SchemaError(f"missing key {key!r}")
        return []
    value = obj[key]
    if not isinstance(value, list):
        raise SchemaError(f"{key!r} must be a list")
    return value


def encode(q: Fraction | int) -> str:
    return str(Fraction(q))


def instance_from_json(obj: Any) -> Instance:
    if not isinstance(obj, dict):
        raise SchemaError("instance must be a JSON object")
    if "b" not in obj:
        raise SchemaError("missing key 'b'")
    a = tuple(_int(v, f"a[{i}]") for i, v in enumerate(_list(obj, "a")))
    u = tuple(_int(v, f"u[{j}]") for j, v in enumerate(_list(obj, "u", required=False)))
    inst = Instance(a, u, _int(obj["b"], "b"))
    validate_instance(inst)
    return inst


def instance_to_json(inst: Instance) -> dict:
    return {"a": [encode(v) for v in inst.a], "u": [encode(v) for v in inst.u], "b": encode(inst.b)}


def point_from_json(obj: Any) -> IntPoint | GeqPoint | LeqPoint:
    """Point kind is picked by its scalar key: ``x0``, ``s0`` or ``y0``."""
    if not isinstance(obj, dict):
        raise SchemaError("point must be a JSON object")
    keys = [k for k in ("x0", "s0", "y0") if k in obj]
    if len(keys) != 1:
        raise SchemaError("point needs exactly one of 'x0', 's0', 'y0'")
    x = tuple(_num(v, f"x[{i}]") for i, v in enumerate(_list(obj, "x")))
    key = keys[0]
    scalar = _num(obj[key], key)
    if key == "x0":
        return IntPoint(scalar, x)
    if key == "s0":
        return GeqPoint(x, scalar, tuple(_num(v, f"s[{j}]") for j, v in enumerate(_list(obj, "s", False))))
    return LeqPoint(x, scalar, tuple(_num(v, f"y[{j}]") for j, v in enumerate(_list(obj, "y", False))))


def point_to_json(pt: IntPoint | GeqPoint | LeqPoint) -> dict:
    x = [encode(v) for v in pt.x]
    if isinstance(pt, IntPoint):
        return {"x0": encode(pt.x0), "x": x}
    if isinstance(pt, GeqPoint):
        return {"x": x, "s0": encode(pt.s0), "s": [encode(v) for v in pt.s]}
    return {"x": x, "y0": encode(pt.y0), "y": [encode(v) for v in pt.y]}


def cut_to_json(cut: PartitionCut) -> dict:
    out = {
        "orientation": cut.orientation.value,
        "subset": list(cut.subset),
        "slack_coeff": encode(cut.slack_coeff),
        "x_coeffs": [encode(v) for v in cut.x_coeffs],
        "rhs": encode(cut.rhs),
    }
    if cut.partition is not None:
        out["partition_breaks"] = list(cut.partition.breaks)
    if cut.capacity is not None:
        out["capacity"] = encode(cut.capacity)
    return out


def cut_from_json(obj: Any) -> PartitionCut:
    if not isinstance(obj, dict):
        raise SchemaError("cut must be a JSON object")
    try:
        orientation = Orientation(obj.get("orientation"))
    except ValueError:
        raise SchemaError(f"unknown orientation {obj.get('orientation')!r}") from None
    if "rhs" not in obj:
        raise SchemaError("missing key 'rhs'")
    subset = []
    for j in _list(obj, "subset", required=False):
        if isinstance(j, bool) or not isinstance(j, int):
            raise SchemaError(f"subset entries must be JSON integers, got {j!r}")
        subset.append(j)
    coeffs = tuple(_int(v, f"x_coeffs[{i}]") for i, v in enumerate(_list(obj, "x_coeffs")))
    part = None
    if "partition_breaks" in obj:
        breaks = tuple(_int(v, "partition_breaks") for v in _list(obj, "partition_breaks"))
        part = IntervalPartition(breaks, len(coeffs))
    capacity = _int(obj["capacity"], "capacity") if "capacity" in obj else None
    return PartitionCut(
        orientation,
        coeffs,
        _int(obj["rhs"], "rhs"),
        tuple(subset),
        _int(obj.get("slack_coeff", 1), "slack_coeff"),
        part,
        capacity,
    )


def result_to_json(res: SeparationResult) -> dict:
    if res.is_inside:
        return {"status": "inside"}
    return {"status": "violated", "cut": cut_to_json(res.cut), "violation": encode(res.violation)}


def loads(text: str) -> Any:
    """``json.loads`` that refuses float literals, NaN and Infinity."""

    def no_float(s):
        raise SchemaError(f"float literal {s} is not allowed; use a decimal or p/q string")

    try:
        return json.loads(text, parse_float=no_float, parse_constant=no_float)
    except json.JSONDecodeError as err:
        raise SchemaError(f"malformed JSON: {err}") from None


def load_file(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as err:
        raise SchemaError(f"cannot read {path}: {err.strerror}") from None

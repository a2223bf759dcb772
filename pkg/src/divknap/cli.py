"""``divknap`` command line.

Exit codes for the separate commands: 0 inside, 1 violated, 2 input error.
``verify`` exits 0 when every trial agrees with the oracle, 1 otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys

from divknap import bench as benchmod
from divknap.io import SchemaError, instance_from_json, load_file, point_from_json, result_to_json
from divknap.model import DivknapError, GeqPoint, IntPoint, LeqPoint, SetKind
from divknap.oracle import EnumerationBudget
from divknap.verify import SEPARATORS, run_trials

EXIT_INSIDE, EXIT_VIOLATED, EXIT_INPUT = 0, 1, 2

_POINT_TYPES = {SetKind.Z: IntPoint, SetKind.GEQ: GeqPoint, SetKind.LEQ: LeqPoint}
_COMMAND_SETS = {"separate-integer": SetKind.Z, "separate-geq": SetKind.GEQ, "separate-leq": SetKind.LEQ}
_DEFAULT_GRID = {
    SetKind.GEQ: "250:250,500:500,1000:1000,2000:2000",
    SetKind.Z: "1000:0,10000:0,100000:0",
}


def _emit(obj: dict) -> None:
    print(json.dumps(obj, sort_keys=False))


def _error(err: Exception) -> int:
    _emit({"error": str(err), "type": type(err).__name__})
    return EXIT_INPUT


def cmd_separate(args) -> int:
    which = _COMMAND_SETS[args.command]
    inst = instance_from_json(load_file(args.instance))
    pt = point_from_json(load_file(args.point))
    if not isinstance(pt, _POINT_TYPES[which]):
        raise SchemaError(f"{args.command} needs a {_POINT_TYPES[which].__name__}, got {type(pt).__name__}")
    res = SEPARATORS[which](inst, pt)
    _emit(result_to_json(res))
    return EXIT_INSIDE if res.is_inside else EXIT_VIOLATED


def cmd_verify(args) -> int:
    which = SetKind(args.set)
    default = EnumerationBudget.for_set(which)
    budget = EnumerationBudget(
        args.max_n if args.max_n is not None else default.max_n,
        args.max_m if args.max_m is not None else default.max_m,
    )
    report = run_trials(which, args.count, args.seed, budget)
    if args.json:
        _emit(report.to_json())
    else:
        r = report
        print(f"set={r.which.value} seed={r.seed} trials={r.trials} inside={r.inside} violated={r.violated}")
        print(f"mismatches={len(r.mismatches)} invalid_cuts={len(r.invalid_cuts)} seconds={r.seconds:.2f}")
        for s in r.mismatches[:20]:
            print(f"  mismatch at seed {s}")
        for s in r.invalid_cuts[:20]:
            print(f"  invalid cut at seed {s}")
    return 0 if report.ok else 1


def cmd_bench(args) -> int:
    which = SetKind(args.set)
    if which is SetKind.LEQ:
        raise SchemaError("bench supports --set geq or --set z")
    grid = benchmod.parse_grid(args.grid or _DEFAULT_GRID[which])
    if not grid:
        raise SchemaError("empty --grid")
    rows = []
    for n, m in grid:
        if n < 1 or m < 0:
            raise SchemaError(f"bad grid entry {n}:{m}")
        row = benchmod.run_integer(n, args.seed) if which is SetKind.Z else benchmod.run_geq(n, m, args.seed)
        rows.append(row)
        if not args.json:
            print(f"n={row.n:<7} m={row.m:<6} ops={row.ops:<10} ratio={row.ratio:.4f} seconds={row.seconds:.3f}")
    spread = benchmod.band(rows)
    if args.json:
        _emit({
            "set": which.value,
            "seed": args.seed,
            "rows": [
                {"n": r.n, "m": r.m, "ops": r.ops, "ratio": round(r.ratio, 6), "seconds": round(r.seconds, 4)}
                for r in rows
            ],
            "ratio_band": round(spread, 6),
        })
    else:
        print(f"ratio band (max/min) = {spread:.4f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="divknap", description="Exact separation of partition inequalities.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, which in _COMMAND_SETS.items():
        p = sub.add_parser(name, help=f"separate a point over the {which.value} set")
        p.add_argument("--instance", required=True, metavar="PATH")
        p.add_argument("--point", required=True, metavar="PATH")
        p.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
        p.set_defaults(func=cmd_separate)

    p = sub.add_parser("verify", help="compare the algorithms with brute force on seeded instances")
    p.add_argument("--set", choices=[k.value for k in SetKind], default="geq")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--max-n", type=int)
    p.add_argument("--max-m", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="operation counts on multiplier-2 chains")
    p.add_argument("--set", choices=["geq", "z"], default="geq")
    p.add_argument("--grid", help='comma separated "n:m" pairs')
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    if getattr(args, "count", 0) is not None and getattr(args, "count", 0) < 0:
        return _error(SchemaError("--count must be >= 0"))
    try:
        return args.func(args)
    except DivknapError as err:
        return _error(err)
    except ValueError as err:
        # int() on a malformed --grid entry
        return _error(err)


if __name__ == "__main__":
    sys.exit(main())

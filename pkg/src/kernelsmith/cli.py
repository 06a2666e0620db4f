"""Command-line front end: generate instances, compute subdivision
numbers, and run the verification suites.

Exit codes: 0 success, 2 usage or input error, 3 budget exhaustion,
4 verification mismatch found. Identical invocations produce byte-identical
output; search budgets are node-expansion counts, never wall time.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bounds import bound_report
from .digraph import Digraph, to_dot
from .errors import BudgetExhausted, ContractError, InputError
from .families import (
    FamilyInstance,
    gen_Rn,
    gen_Sn,
    gen_cycle,
    gen_mixed,
    gen_pithaya,
    gen_theta,
    gen_tournament,
    gen_tri_grid,
    presets,
)
from .hcolored import ColoredDigraph, h_kappa
from .harness import SUITES, run_suite
from .kernels import kappa


def _compact(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def _write_json(obj: dict, path: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_generate(args) -> int:
    params = args.params
    try:
        if args.family == "cycle":
            inst = gen_cycle(_one_int(params))
        elif args.family == "rose":
            inst = gen_Rn(_one_int(params))
        elif args.family == "star":
            ints = _ints(params, minimum=1)
            inst = gen_Sn(ints[0], tuple(ints[1:]) or None)
        elif args.family == "tournament":
            inst = gen_tournament(_one_int(params), seed=args.seed or 0)
        elif args.family == "tri-grid":
            ints = _ints(params, exactly=2)
            inst = gen_tri_grid(ints[0], ints[1])
        elif args.family == "pithaya":
            inst = gen_pithaya(tuple(_ints(params, minimum=1)), table_only=args.table_only)
        elif args.family == "theta":
            ints = _ints(params, exactly=3)
            inst = gen_theta(
                ints[0], ints[1], ints[2], colors=args.colors, seed=args.seed or 0
            )
        elif args.family == "mixed":
            ints = _ints(params, minimum=2)
            inst = gen_mixed(ints[0], tuple(ints[1:]))
        elif args.family == "preset":
            if len(params) != 1 or params[0] not in presets():
                raise InputError(
                    "preset name required, one of: " + ", ".join(sorted(presets()))
                )
            inst = presets()[params[0]]
        else:
            raise InputError(f"unknown family: {args.family}")
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write_json(inst.to_dict(), args.out)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(inst.base))
    return 0


def _one_int(params) -> int:
    return _ints(params, exactly=1)[0]


def _ints(params, exactly: int | None = None, minimum: int | None = None):
    if exactly is not None and len(params) != exactly:
        raise InputError(f"expected {exactly} integer parameter(s), got {len(params)}")
    if minimum is not None and len(params) < minimum:
        raise InputError(f"expected at least {minimum} integer parameter(s)")
    try:
        return [int(p) for p in params]
    except ValueError as exc:
        raise InputError(f"parameters must be integers: {exc}") from exc


def _load_instance(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read instance: {exc}") from exc
    payload = data.get("digraph", data) if isinstance(data, dict) else None
    if not isinstance(payload, dict) or "n" not in payload or "arcs" not in payload:
        raise InputError("instance JSON must carry a digraph object")
    if "colors" in payload:
        return ColoredDigraph.from_dict(payload)
    return Digraph.from_dict(payload)


def cmd_kappa(args) -> int:
    try:
        inst = _load_instance(args.path)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    colored = isinstance(inst, ColoredDigraph)
    base = inst.base if colored else inst
    try:
        if args.h_mode:
            if not colored:
                print("error: --h-mode needs a colored instance", file=sys.stderr)
                return 2
            res = h_kappa(inst, args.budget)
            print(f"h_kappa={res.kappa}")
            print(f"witness={_compact(list(res.witness))}")
            print(f"kernel={_compact(list(res.kernel.members))}")
            print(f"mode={res.mode}")
            return 0
        if args.bounds_only:
            print(f"bounds={_compact(bound_report(base, args.budget))}")
            return 0
        res = kappa(base, args.budget)
        print(f"kappa={res.kappa}")
        print(f"witness={_compact(list(res.witness))}")
        print(f"kernel={_compact(list(res.kernel.members))}")
        print(f"mode={res.mode}")
        print(f"bounds={_compact(bound_report(base, args.budget))}")
        return 0
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except (InputError, ContractError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(
            "error: unknown suite; known: " + ", ".join(SUITES), file=sys.stderr
        )
        return 2
    mismatches = 0
    skipped = 0
    out = open(args.out, "a", encoding="utf-8") if args.out else None
    try:
        for report in run_suite(
            args.suite,
            max_n=args.max_n,
            count=args.count,
            seed=args.seed,
            budget=args.budget,
            skip_until=args.skip_until,
        ):
            line = report.to_line(include_seconds=args.timings)
            print(line)
            if out:
                out.write(line + "\n")
            if report.status == "mismatch":
                mismatches += 1
            elif report.status == "skipped-budget":
                skipped += 1
    finally:
        if out:
            out.close()
    if mismatches:
        print(f"{mismatches} mismatch(es) found", file=sys.stderr)
        return 4
    if skipped:
        print(f"{skipped} instance(s) skipped on budget", file=sys.stderr)
        return 3
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kernelsmith",
        description=(
            "Exact kernels, kernel subdivision numbers, and kernels by "
            "admissible walks for finite digraphs."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a family instance as JSON")
    gen.add_argument(
        "family",
        help="cycle | rose | star | tournament | tri-grid | pithaya | theta | mixed | preset",
    )
    gen.add_argument("params", nargs="*", help="family parameters")
    gen.add_argument("--out", help="output JSON path (default: stdout)")
    gen.add_argument("--dot", help="also write DOT to this path")
    gen.add_argument("--seed", type=int, help="seed for randomized families")
    gen.add_argument("--colors", type=int, default=2, help="palette size for theta")
    gen.add_argument(
        "--table-only",
        action="store_true",
        help="pithaya: omit the junction-to-junction arcs",
    )
    gen.set_defaults(func=cmd_generate)

    kap = sub.add_parser("kappa", help="compute the subdivision number of an instance")
    kap.add_argument("path", help="instance JSON path")
    kap.add_argument("--h-mode", action="store_true", help="use admissible-walk kernels")
    kap.add_argument("--budget", type=int, help="node-expansion budget")
    kap.add_argument("--bounds-only", action="store_true", help="print only the bound report")
    kap.set_defaults(func=cmd_kappa)

    ver = sub.add_parser("verify", help="run a verification suite, streaming JSONL")
    ver.add_argument("suite", help="suite name; one of: " + ", ".join(SUITES))
    ver.add_argument("--max-n", type=int, help="scale cap for sized suites")
    ver.add_argument("--count", type=int, help="instance count for sampled suites")
    ver.add_argument("--seed", type=int, help="base seed for sampled suites")
    ver.add_argument("--budget", type=int, help="node-expansion budget per instance")
    ver.add_argument("--skip-until", help="resume: skip reports up to and including this id")
    ver.add_argument("--out", help="append JSONL to this path as well")
    ver.add_argument(
        "--timings", action="store_true", help="include wall times (breaks byte-identity)"
    )
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    threads = os.environ.get("KERNELSMITH_THREADS")
    if threads is not None:
        try:
            if int(threads) < 1:
                raise ValueError
        except ValueError:
            print(
                f"error: KERNELSMITH_THREADS must be a positive integer, got {threads!r}",
                file=sys.stderr,
            )
            return 2
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

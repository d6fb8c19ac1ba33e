"""
Command-line front door: single theorems, grid sweeps, scenario files.

Exit codes: 0 = every check passed, 1 = a computed value mismatched an
expectation, 2 = invalid input or a hypothesis violation.  Output is
byte-deterministic for fixed arguments (every term order is sorted);
BARBELL_THREADS caps sweep parallelism.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .scenarios import (
    GEOMETRY_BUILDERS,
    THEOREM_FIELDS,
    THEOREMS,
    HypothesisError,
    Report,
    render_machine,
    render_table,
    run_scenario,
    run_theorem,
)

_FIELD_FLAGS = {"f2": "F2", "int": "Z"}

# every package error subclasses ValueError; TypeError covers bad
# parameter combinations, KeyError malformed scenario files
USER_ERRORS = (ValueError, TypeError, KeyError)


def _thread_count() -> int:
    raw = os.environ.get("BARBELL_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return min(8, os.cpu_count() or 1)


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _render(report: Report, fmt: str) -> str:
    return render_machine(report) if fmt == "machine" else render_table(report)


def _theorem_params(args) -> dict:
    params = {}
    for key in ("k", "l", "n", "m", "p", "q"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    return params


def _cmd_theorem(args) -> int:
    if args.field is not None:
        expected = THEOREM_FIELDS.get(args.name)
        if expected is not None and _FIELD_FLAGS[args.field] != expected:
            raise HypothesisError(
                f"theorem {args.name} is computed over {expected}, not {_FIELD_FLAGS[args.field]}"
            )
    report = run_theorem(args.name, **_theorem_params(args))
    _emit(_render(report, args.format), args.out)
    return 0 if report.passed else 1


def _sweep_jobs(args) -> list[tuple[str, dict]]:
    jobs: list[tuple[str, dict]] = []
    if args.name == "morsesimple":
        top = args.max or 10
        for k in range(1, top + 1):
            for l in range(1, top + 1):
                jobs.append(("morsesimple-s3", {"k": k, "l": l}))
    elif args.name == "higher-dim":
        top = args.max or 10
        for k in range(1, top + 1):
            for l in range(1, top + 1):
                jobs.append(("higher-dim-knots", {"k": k, "l": l}))
    elif args.name == "brunnian":
        n = args.n or 2
        top = args.max or 4
        pairs = [(k, l) for k in range(1, top + 1) for l in range(k, top + 1)]
        for i, (k, l) in enumerate(pairs):
            for kp, lp in pairs[i + 1 :]:
                jobs.append(("linked-6crit", {"n": n, "k": k, "l": l, "kp": kp, "lp": lp}))
    elif args.name == "montesinos":
        import math

        top = args.max or 30
        for p in range(2, top + 1):
            for q in range(p + 1, top + 1):
                if math.gcd(p, q) == 1:
                    jobs.append(("morsesimple3mfd", {"p": p, "q": q}))
    else:
        raise HypothesisError(
            f"unknown sweep {args.name!r}; choose from morsesimple, higher-dim, brunnian, montesinos"
        )
    return jobs


def _cmd_sweep(args) -> int:
    jobs = _sweep_jobs(args)
    with ThreadPoolExecutor(max_workers=_thread_count()) as pool:
        reports = list(pool.map(lambda job: run_theorem(job[0], **job[1]), jobs))
    lines = []
    failed = 0
    for report in reports:
        status = "PASS" if report.passed else "FAIL"
        failed += 0 if report.passed else 1
        if args.format == "machine":
            lines.append(render_machine(report))
        else:
            summary = ", ".join(f"{key}={report.params[key]}" for key in sorted(report.params))
            lines.append(f"{status} {report.name} {summary}")
    lines.append(f"{len(reports) - failed}/{len(reports)} passed")
    _emit("\n".join(lines), args.out)
    return 0 if failed == 0 else 1


def _cmd_scenario(args) -> int:
    path = args.file or args.scenario
    if not path:
        raise HypothesisError("scenario command needs a file path")
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    report = run_scenario(data)
    _emit(_render(report, args.format), args.out)
    return 0 if report.passed else 1


def _cmd_list(args) -> int:
    lines = ["theorems:"]
    lines += [f"  {name}" for name in sorted(THEOREMS)]
    lines.append("geometries:")
    lines += [f"  {name}" for name in sorted(GEOMETRY_BUILDERS)]
    _emit("\n".join(lines), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="barbellcalc",
        description="equivariant barbell-action computations and their module invariants",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("table", "machine"), default="table")
        p.add_argument("--out", default=None, help="write output to a file instead of stdout")

    theorem = sub.add_parser("theorem", help="run one theorem reproduction")
    theorem.add_argument("name")
    for flag in ("k", "l", "n", "m", "p", "q"):
        theorem.add_argument(f"--{flag}", type=int, default=None)
    theorem.add_argument("--field", choices=("f2", "int"), default=None, help="accepted for symmetry; geometries fix their coefficients")
    common(theorem)
    theorem.set_defaults(func=_cmd_theorem)

    sweep = sub.add_parser("sweep", help="run a parameter grid")
    sweep.add_argument("name")
    sweep.add_argument("--n", type=int, default=None)
    sweep.add_argument("--max", type=int, default=None)
    common(sweep)
    sweep.set_defaults(func=_cmd_sweep)

    scenario = sub.add_parser("scenario", help="run a JSON scenario file")
    scenario.add_argument("file", nargs="?", default=None)
    scenario.add_argument("--scenario", default=None, help="scenario file path")
    common(scenario)
    scenario.set_defaults(func=_cmd_scenario)

    listing = sub.add_parser("list", help="list theorems and geometries")
    common(listing)
    listing.set_defaults(func=_cmd_list)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (FileNotFoundError, *USER_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

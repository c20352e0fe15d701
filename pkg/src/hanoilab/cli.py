"""Command-line front end.

Subcommands: count, solve, verify, search, enumerate, analyze, ledger.
Every command takes ``--format json`` for a machine-parseable payload
with a stable schema; JSON payloads carry no timestamps or durations,
so identical invocations against identical cache state are byte
identical. Timing and provenance go to the run manifest
(``--manifest PATH``).

Exit codes: 0 success, 1 check failure, 2 usage or parse error,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from datetime import datetime, timezone

from . import __version__
from .cache import CACHE_ENV_VAR, load_or_new, save_cache
from .core import (
    MoveSequence,
    encode_triples,
    format_triple_text,
    parse_triple_text,
    split_phases,
    transfer_target,
    validate_sequence,
)
from .errors import (
    BudgetExceededError,
    CorruptCacheError,
    HanoiError,
    NotAViolationError,
    SequenceParseError,
    UnrealizableError,
)
from .frame_stewart import (
    frame_stewart_count,
    generate_solution,
    generate_symmetric_solution,
    stewart_count,
)
from .ledger import analytic_ledger, compare_ledgers, empirical_ledger, equality_report
from .analysis import (
    ThreeStacks,
    TwoStacks,
    check_avoidance,
    check_bottom_costs,
    classify_end_state,
    shorten_violating,
)
from .search import (
    Budget,
    enumerate_minimal_demolishing,
    enumerate_minimal_solutions,
    exact_min_moves,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _triple_lines(seq: MoveSequence) -> list[str]:
    def mark(v):
        return "inf" if v is None else str(v)

    return [f"{t.disk} {mark(t.was_on)} {mark(t.lands_on)}" for t in encode_triples(seq)]


def _budget_from(args) -> Budget | None:
    if args.budget_states is None and args.budget_seconds is None:
        return None
    return Budget(max_states=args.budget_states, max_seconds=args.budget_seconds)


# --- count -------------------------------------------------------------------


def cmd_count(args) -> tuple[dict, list[str], int]:
    method = args.method
    if method is None:
        method = "closed" if args.k == 4 else "recursive"
    if method == "closed":
        if args.k != 4:
            raise ValueError("the closed form covers 4 pegs; use --method recursive")
        count = stewart_count(args.n)
    else:
        count = frame_stewart_count(args.n, args.k)
    payload = {"n": args.n, "k": args.k, "method": method, "count": count}
    return payload, [str(count)], EXIT_OK


# --- solve -------------------------------------------------------------------


def cmd_solve(args) -> tuple[dict, list[str], int]:
    if args.symmetric:
        if args.k != 4:
            raise ValueError("--symmetric applies to 4 pegs")
        seq = generate_symmetric_solution(args.n, args.source, args.target)
    else:
        seq = generate_solution(args.n, args.k, args.source, args.target)
    payload = {
        "n": seq.n,
        "k": seq.k,
        "source": seq.source,
        "target": args.target,
        "symmetric": bool(args.symmetric),
        "length": len(seq),
        "moves": [[m.disk, m.source, m.target] for m in seq.moves],
        "triples": _triple_lines(seq),
    }
    text = format_triple_text(seq).splitlines()
    return payload, text, EXIT_OK


# --- verify ------------------------------------------------------------------


def cmd_verify(args) -> tuple[dict, list[str], int]:
    with open(args.file, "r", encoding="utf-8") as fh:
        parsed = parse_triple_text(fh.read())
    payload: dict = {
        "n": parsed.n,
        "k": parsed.k,
        "source": parsed.source,
        "length": len(parsed.triples),
    }
    try:
        seq = parsed.decode()
    except UnrealizableError as exc:
        payload.update({"valid": False, "error_index": exc.index, "reason": exc.reason})
        return payload, [f"invalid: index {exc.index}: {exc.reason}"], EXIT_CHECK_FAILED
    payload["valid"] = True
    target = transfer_target(seq)
    payload["transfer_target"] = target
    lines = [f"valid: {len(seq)} moves"]
    code = EXIT_OK
    if args.expect_length is not None and len(seq) != args.expect_length:
        payload["length_ok"] = False
        lines.append(f"length check failed: expected {args.expect_length}, got {len(seq)}")
        code = EXIT_CHECK_FAILED
    elif args.expect_length is not None:
        payload["length_ok"] = True
        lines.append(f"length check passed: {len(seq)}")
    if args.expect_transfer is not None:
        if args.expect_transfer == "any":
            ok = target is not None
            want = "any non-source peg"
        else:
            ok = target == int(args.expect_transfer)
            want = f"peg {args.expect_transfer}"
        payload["transfer_ok"] = ok
        if ok:
            lines.append(f"transfer check passed: all disks on peg {target}")
        else:
            lines.append(f"transfer check failed: expected {want}, final target {target}")
            code = EXIT_CHECK_FAILED
    return payload, lines, code


# --- search ------------------------------------------------------------------


def cmd_search(args) -> tuple[dict, list[str], int]:
    cache_path = args.cache or os.environ.get(CACHE_ENV_VAR)
    cache = load_or_new(cache_path)
    target = None if args.any_target else args.target
    record = cache.get(args.n, args.k)
    if record is not None:
        payload = {
            "n": args.n,
            "k": args.k,
            "source": args.source,
            "target": target,
            "optimum": record.optimum,
            "method": record.method,
            "cached": True,
            "explored": None,
            "symmetry": None,
        }
        lines = [f"optimum={record.optimum} method={record.method} cached=yes"]
        return payload, lines, EXIT_OK
    result = exact_min_moves(
        args.n,
        args.k,
        args.source,
        target,
        method=args.method,
        symmetry=False if args.no_symmetry else None,
        budget=_budget_from(args),
    )
    cache.put(args.n, args.k, result.optimum, result.method)
    if cache_path:
        save_cache(cache, cache_path)
    payload = {
        "n": result.n,
        "k": result.k,
        "source": result.source,
        "target": result.target,
        "optimum": result.optimum,
        "method": result.method,
        "cached": False,
        "explored": result.explored,
        "symmetry": result.symmetry,
    }
    lines = [
        f"optimum={result.optimum} explored={result.explored} "
        f"elapsed={result.elapsed:.3f}s method={result.method} "
        f"symmetry={'on' if result.symmetry else 'off'} cached=no"
    ]
    return payload, lines, EXIT_OK


# --- enumerate ---------------------------------------------------------------


def cmd_enumerate(args) -> tuple[dict, list[str], int]:
    kwargs = dict(cap=args.cap, max_n=args.max_n, budget=_budget_from(args))
    if args.phases:
        result = enumerate_minimal_demolishing(
            args.n, args.k, args.source, args.target, **kwargs
        )
        kind = "phases"
    else:
        result = enumerate_minimal_solutions(
            args.n, args.k, args.source, args.target, **kwargs
        )
        kind = "full"
    blocks = [_triple_lines(seq) for seq in result.sequences]
    payload = {
        "n": args.n,
        "k": args.k,
        "source": args.source,
        "target": args.target,
        "kind": kind,
        "optimum": result.optimum,
        "count": len(result.sequences),
        "truncated": result.truncated,
        "sequences": blocks,
    }
    lines = [f"{args.n} {args.k} {args.source}"]
    for block in blocks:
        lines.append("")
        lines.extend(block)
    lines.append("")
    lines.append(f"count: {len(result.sequences)}")
    if result.truncated:
        lines.append("truncated: yes")
    return payload, lines, EXIT_OK


# --- analyze -----------------------------------------------------------------


def _scenario_payload(scenario) -> dict:
    if isinstance(scenario, TwoStacks):
        return {
            "kind": "two-stacks",
            "big_peg": scenario.big_peg,
            "other_bottom": scenario.other_bottom,
            "other_peg": scenario.other_peg,
            "degenerate": scenario.degenerate,
        }
    if isinstance(scenario, ThreeStacks):
        return {
            "kind": "three-stacks",
            "big_peg": scenario.big_peg,
            "bottoms": list(scenario.bottoms),
            "smallest_bottom": scenario.j4,
            "critical_peg": scenario.j4_peg,
        }
    return {"kind": "other", "description": scenario.description}


def cmd_analyze(args) -> tuple[dict, list[str], int]:
    if args.generated is not None:
        seq = generate_solution(args.generated, args.k, args.source, args.target)
        origin = f"generated n={args.generated}"
    else:
        with open(args.file, "r", encoding="utf-8") as fh:
            seq = parse_triple_text(fh.read()).decode()
        origin = args.file
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    known = {"avoidance", "bottoms", "phase-length"}
    unknown = set(checks) - known
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(sorted(unknown))}")

    split = split_phases(seq)
    phase = split.demolishing
    payload: dict = {
        "input": origin,
        "n": seq.n,
        "k": seq.k,
        "moves": len(seq),
        "phase_complete": split.complete,
        "phase_length": len(phase),
        "checks": {},
    }
    lines = [f"input: {origin} ({len(seq)} moves, phase {len(phase)})"]
    failed = False
    if not split.complete:
        lines.append("largest disk never moves; checks not applicable")
        payload["checks"] = {c: {"pass": False, "reason": "incomplete phase"} for c in checks}
        return payload, lines, EXIT_CHECK_FAILED

    shortened: MoveSequence | None = None
    for check in checks:
        if check == "phase-length":
            expected = (frame_stewart_count(seq.n, seq.k) + 1) // 2
            ok = len(phase) == expected
            payload["checks"][check] = {
                "pass": ok, "expected": expected, "observed": len(phase),
            }
            lines.append(
                f"phase-length: {'PASS' if ok else 'FAIL'} "
                f"(expected {expected}, observed {len(phase)})"
            )
            failed |= not ok
        elif check == "avoidance":
            report = check_avoidance(phase)
            entry: dict = {
                "pass": report.holds,
                "scenario": _scenario_payload(report.scenario),
            }
            if report.witness is not None:
                entry["witness"] = {
                    "disk": report.witness.disk,
                    "peg": report.witness.peg,
                    "move_index": report.witness.move_index,
                    "departure_index": report.witness.departure_index,
                    "departure_to": report.witness.departure_to,
                }
            payload["checks"][check] = entry
            if report.holds:
                lines.append(f"avoidance: PASS ({entry['scenario']['kind']})")
            else:
                w = report.witness
                lines.append(
                    f"avoidance: FAIL (disk {w.disk} on peg {w.peg} at move "
                    f"{w.move_index}, leaves at {w.departure_index})"
                )
                failed = True
                if args.shorten:
                    shortened = shorten_violating(phase, w.disk, w.departure_to)
        elif check == "bottoms":
            report = check_bottom_costs(phase)
            payload["checks"][check] = {
                "pass": report.holds,
                "costs": {str(d): c for d, c in report.costs.items()},
            }
            detail = ", ".join(f"disk {d}: {c}" for d, c in report.costs.items())
            lines.append(f"bottoms: {'PASS' if report.holds else 'FAIL'} ({detail})")
            failed |= not report.holds
    if shortened is not None:
        payload["shortened"] = {
            "length": len(shortened),
            "triples": _triple_lines(shortened),
        }
        lines.append(f"shortened phase ({len(shortened)} moves):")
        lines.extend(format_triple_text(shortened).splitlines())
    return payload, lines, EXIT_CHECK_FAILED if failed else EXIT_OK


# --- ledger ------------------------------------------------------------------


def _parse_range(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(spec)]


def _ledger_rows(led) -> list[tuple[str, tuple]]:
    rows = [
        ("level", tuple(range(1, led.depth + 1))),
        ("cost", led.costs),
        ("peak-count", led.peak_counts),
        ("cumulative", led.cumulative_counts),
    ]
    if led.transferable4 is not None:
        rows.append(("transfer-4peg", led.transferable4))
    if led.transferable3 is not None:
        rows.append(("transfer-3peg", led.transferable3))
    if led.increments is not None:
        rows.append(("increment", led.increments))
    return rows


def cmd_ledger(args) -> tuple[dict, list[str], int]:
    led = analytic_ledger(args.depth)
    payload: dict = {
        "analytic": {
            "depth": led.depth,
            "costs": list(led.costs),
            "peak_counts": list(led.peak_counts),
            "cumulative_counts": list(led.cumulative_counts),
            "transferable4": list(led.transferable4),
            "transferable3": list(led.transferable3),
            "increments": list(led.increments),
        }
    }
    lines: list[str] = [f"cost ledger (analytic, depth {led.depth})"]
    width = max(len(str(v)) for v in led.cumulative_counts) + 1
    for label, values in _ledger_rows(led):
        lines.append(f"{label:>14}: " + " ".join(f"{v:>{width}}" for v in values))

    cache_hits = 0
    if args.empirical is not None:
        phases = {
            n: enumerate_minimal_demolishing(n, 4, 0, 1, max_n=args.empirical).sequences
            for n in range(1, args.empirical + 1)
        }
        emp = empirical_ledger(args.empirical, phases)
        gaps = compare_ledgers(led, emp)
        payload["empirical"] = {
            "n_max": args.empirical,
            "costs": list(emp.costs),
            "peak_counts": list(emp.peak_counts),
            "discrepancies": [
                {"cost": g.cost, "analytic": g.analytic_peak, "empirical": g.empirical_peak}
                for g in gaps
            ],
        }
        lines.append("")
        lines.append(f"empirical ledger (phases for n <= {args.empirical})")
        lines.append(f"{'cost':>14}: " + " ".join(str(c) for c in emp.costs))
        lines.append(f"{'peak-count':>14}: " + " ".join(str(c) for c in emp.peak_counts))
        covered = [g for g in gaps if g.empirical_peak is not None]
        lines.append(
            f"{'divergence':>14}: "
            + (
                "none on covered levels"
                if not covered
                else "; ".join(
                    f"cost {g.cost}: analytic {g.analytic_peak} vs measured {g.empirical_peak}"
                    for g in covered
                )
            )
        )

    if args.report is not None:
        ns = _parse_range(args.report)
        exact: dict[int, int] = {}
        cache_path = args.cache or os.environ.get(CACHE_ENV_VAR)
        cache = load_or_new(cache_path)
        for n in ns:
            if n <= args.bfs_bound:
                record = cache.get(n, 4)
                if record is not None:
                    exact[n] = record.optimum
                    cache_hits += 1
                else:
                    result = exact_min_moves(n, 4, budget=_budget_from(args))
                    exact[n] = result.optimum
                    cache.put(n, 4, result.optimum, result.method)
        if cache_path and len(cache):
            save_cache(cache, cache_path)
        rows = equality_report(ns, led, exact)
        payload["report"] = [
            {
                "n": r.n,
                "stewart": r.stewart,
                "bound1": r.bound1,
                "bound2": r.bound2,
                "exact": r.exact,
                "equal": r.equal,
            }
            for r in rows
        ]
        lines.append("")
        header = f"{'n':>4} {'stewart':>12} {'bound1':>12} {'bound2':>12} {'exact':>8} status"
        if args.format == "csv":
            lines = ["n,stewart,bound1,bound2,exact,status"]
            for r in rows:
                exact_cell = "" if r.exact is None else str(r.exact)
                lines.append(
                    f"{r.n},{r.stewart},{r.bound1},{r.bound2},{exact_cell},"
                    f"{'EQUAL' if r.equal else 'MISMATCH'}"
                )
        else:
            lines.append(header)
            for r in rows:
                exact_cell = "-" if r.exact is None else str(r.exact)
                lines.append(
                    f"{r.n:>4} {r.stewart:>12} {r.bound1:>12} {r.bound2:>12} "
                    f"{exact_cell:>8} {'EQUAL' if r.equal else 'MISMATCH'}"
                )
        if args.figures:
            from .figures import render_report_figures

            written = render_report_figures(rows, led, args.figures)
            payload["figures"] = written
            lines.append("")
            lines.extend(f"figure: {p}" for p in written)
    elif args.figures:
        from .figures import render_report_figures

        written = render_report_figures([], led, args.figures)
        payload["figures"] = written
        lines.extend(f"figure: {p}" for p in written)

    payload["cache_hits"] = cache_hits
    return payload, lines, EXIT_OK


# --- parser / main -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hanoilab",
        description="Multi-peg Tower of Hanoi workbench: counts, solutions, "
        "exhaustive search, and claim checking.",
    )
    parser.add_argument("--version", action="version", version=f"hanoilab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_choices=("text", "json")):
        p.add_argument("--format", choices=fmt_choices, default=fmt_choices[0])
        p.add_argument("--manifest", metavar="PATH", help="write a run manifest JSON")

    p = sub.add_parser("count", help="move count for n disks on k pegs")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, default=4)
    p.add_argument("--method", choices=("closed", "recursive"), default=None)
    common(p)
    p.set_defaults(handler=cmd_count)

    p = sub.add_parser("solve", help="emit an explicit solution")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, default=4)
    p.add_argument("--source", type=int, default=0)
    p.add_argument("--target", type=int, default=1)
    p.add_argument("--symmetric", action="store_true",
                   help="mirror-symmetric solution (4 pegs)")
    common(p, ("triples", "json"))
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("verify", help="validate a triple-format sequence file")
    p.add_argument("file")
    p.add_argument("--expect-transfer", nargs="?", const="any", default=None,
                   metavar="PEG", help="require a full transfer (to PEG if given)")
    p.add_argument("--expect-length", type=int, default=None)
    common(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("search", help="exact optimum via exhaustive search")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, default=4)
    p.add_argument("--source", type=int, default=0)
    p.add_argument("--target", type=int, default=1)
    p.add_argument("--any-target", action="store_true",
                   help="minimum over all non-source targets")
    p.add_argument("--method", choices=("bidirectional", "forward"),
                   default="bidirectional")
    p.add_argument("--no-symmetry", action="store_true",
                   help="disable the auxiliary-peg-swap reduction")
    p.add_argument("--budget-states", type=int, default=None)
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("--cache", metavar="PATH",
                   help=f"optima cache file (default ${CACHE_ENV_VAR})")
    common(p)
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("enumerate", help="all optimal sequences or tear-down phases")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, default=4)
    p.add_argument("--source", type=int, default=0)
    p.add_argument("--target", type=int, default=1)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--phases", action="store_true")
    group.add_argument("--full", action="store_true")
    p.add_argument("--cap", type=int, default=1_000_000)
    p.add_argument("--max-n", type=int, default=6,
                   help="guard on n; enumeration grows combinatorially")
    p.add_argument("--budget-states", type=int, default=None)
    p.add_argument("--budget-seconds", type=float, default=None)
    common(p)
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("analyze", help="run phase checkers on a sequence")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("file", nargs="?", help="triple-format sequence file")
    group.add_argument("--generated", type=int, metavar="N",
                       help="analyze the generated solution for N disks")
    p.add_argument("-k", type=int, default=4)
    p.add_argument("--source", type=int, default=0)
    p.add_argument("--target", type=int, default=1)
    p.add_argument("--checks", default="avoidance,bottoms,phase-length")
    p.add_argument("--shorten", action="store_true",
                   help="emit the shortened phase when avoidance fails")
    common(p)
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("ledger", help="cost ledgers, bounds, and the equality table")
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--empirical", type=int, default=None, metavar="N_MAX",
                   help="measure a ledger on enumerated phases up to N_MAX")
    p.add_argument("--report", default=None, metavar="A..B",
                   help="equality table over this range of n")
    p.add_argument("--bfs-bound", type=int, default=0,
                   help="fill the exact column for n up to this bound")
    p.add_argument("--budget-states", type=int, default=None)
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("--cache", metavar="PATH")
    p.add_argument("--figures", metavar="DIR",
                   help="render report figures (PNG) into DIR")
    common(p, ("table", "csv", "json"))
    p.set_defaults(handler=cmd_ledger)

    return parser


def _write_manifest(path: str, args, started: float, duration: float, payload: dict) -> None:
    parameters = {
        key: value
        for key, value in sorted(vars(args).items())
        if key not in ("handler", "manifest") and not callable(value)
    }
    manifest = {
        "command": args.command,
        "parameters": parameters,
        "version": __version__,
        "timestamp": datetime.fromtimestamp(started, tz=timezone.utc).isoformat(),
        "durations": {"total_seconds": duration},
        "cache_hits": payload.get("cache_hits", 1 if payload.get("cached") else 0),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.time()
    t0 = time.perf_counter()
    try:
        payload, lines, code = args.handler(args)
    except SequenceParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnrealizableError as exc:
        print(f"illegal sequence: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except NotAViolationError as exc:
        print(f"not a violation: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CorruptCacheError, HanoiError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)
    if args.manifest:
        _write_manifest(args.manifest, args, started, time.perf_counter() - t0, payload)
    return code


if __name__ == "__main__":
    sys.exit(main())

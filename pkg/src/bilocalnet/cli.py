"""Command-line interface: sweeps, closed-form verification, optimization, noise.

Every run writes deterministic CSV data (17 significant digits, no
timestamps) plus a JSON summary that embeds a manifest of the command,
its parameters, and the produced files.  Exit codes: 0 success, 1 invalid
input or infeasible request, 2 verification failure.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import dataclasses
import json
import math
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (
    ConstraintInfeasibleError,
    SweepPoint,
    active_sweep,
    active_violation_window,
    closed_form_active,
    double_violation_window,
    equal_g_search,
    mixed_pointer_search,
    noise_sweep,
    optimize_angles,
    passive_sweep,
    quadruple_violation_window,
    sweep_points_to_csv,
    verify_closed_forms,
)
from .measurement import PointerSpec
from .network import ScenarioConfig

__all__ = ["main", "run"]

_SWEEP_MODELS = ("optimal", "square")


@dataclasses.dataclass
class RunManifest:
    """Provenance block embedded in every JSON summary."""

    command: str
    parameters: dict
    version: str
    timestamp: str
    outputs: list[str]

    def to_json_dict(self) -> dict:
        return dataclasses.asdict(self)


def _manifest(command: str, parameters: dict, outputs: list[Path]) -> dict:
    return RunManifest(
        command=command,
        parameters=parameters,
        version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(),
        outputs=[str(p) for p in outputs],
    ).to_json_dict()


def parse_range(text: str) -> np.ndarray:
    """Parse ``start:stop:step`` into a grid inclusive of endpoints (half-step slack)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"range must be start:stop:step, got {text!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0.0:
        raise ValueError(f"range step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"range stop {stop} is below start {start}")
    count = int(math.floor((stop - start) / step + 0.5)) + 1
    return start + step * np.arange(count)


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _sweep_worker(task: tuple[str, str, str, float]) -> SweepPoint:
    mode, model1, model2, g = task
    if mode == "active":
        return active_sweep([g])[0]
    return passive_sweep(model1, model2, [g])[0]


def _run_sweep_points(
    mode: str, model1: str, model2: str, g_values: np.ndarray, jobs: int
) -> list[SweepPoint]:
    tasks = [(mode, model1, model2, float(g)) for g in g_values]
    if jobs <= 1:
        return [_sweep_worker(t) for t in tasks]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_sweep_worker, tasks))


def _window_summary(points: list[SweepPoint], mode: str) -> dict:
    """Window endpoints (bisected on the closed forms) and sweep maxima."""
    model1, model2 = points[0].model1, points[0].model2
    if mode == "active":
        window = active_violation_window()
        selector = lambda p: min(p.b11, p.b22)
    else:
        window = quadruple_violation_window(model1, model2)
        selector = lambda p: p.min_b
    peak_point = max(points, key=selector)
    return {
        "window": None if window is None else list(window),
        "peak_min_b": selector(peak_point),
        "peak_g": peak_point.g1,
        "peak_values": {
            "B11": peak_point.b11,
            "B12": peak_point.b12,
            "B21": peak_point.b21,
            "B22": peak_point.b22,
        },
    }


def _points_json(points: list[SweepPoint]) -> list[dict]:
    return [dataclasses.asdict(p) for p in points]


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.pointer1 not in _SWEEP_MODELS or args.pointer2 not in _SWEEP_MODELS:
        raise ValueError(f"sweep pointers must be one of {_SWEEP_MODELS}")
    g_values = parse_range(args.g)
    if g_values.min() < -1e-9 or g_values.max() > 1.0 + 1e-9:
        raise ValueError("precision grid must stay inside [0, 1]")
    g_values = np.clip(g_values, 0.0, 1.0)  # shave float dust off the endpoints
    points = _run_sweep_points(args.mode, args.pointer1, args.pointer2, g_values, args.jobs)

    out_dir = Path(args.output_dir)
    stem = f"sweep_{args.mode}_{args.pointer1}_{args.pointer2}"
    if args.format == "csv":
        data_path = out_dir / f"{stem}.csv"
        _write(data_path, sweep_points_to_csv(points))
    else:
        data_path = out_dir / f"{stem}.json"
        _write(data_path, json.dumps(_points_json(points), indent=2) + "\n")
    summary_path = out_dir / f"{stem}_summary.json"
    summary = {
        "summary": _window_summary(points, args.mode),
        "manifest": _manifest(
            "sweep",
            {
                "pointer1": args.pointer1,
                "pointer2": args.pointer2,
                "g": args.g,
                "mode": args.mode,
                "format": args.format,
                "jobs": args.jobs,
            },
            [data_path, summary_path],
        ),
    }
    _write(summary_path, json.dumps(summary, indent=2) + "\n")
    print(f"wrote {data_path} and {summary_path}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    report = verify_closed_forms(
        trials=args.trials, seed=args.seed, tolerance=args.tol
    )
    print(
        f"verify: {report.trials} trials, max deviation {report.max_deviation:.3e} "
        f"(tolerance {report.tolerance:g})"
    )
    if report.passed:
        print("PASS")
        return 0
    print("FAIL: worst config " + json.dumps(report.worst_config))
    return 2


def _optimize_point(args: argparse.Namespace) -> dict:
    if args.g is None:
        raise ValueError(f"--g is required for mode {args.mode!r}")
    if not 0.0 <= args.g <= 1.0:
        raise ValueError("precision factor must lie in [0, 1]")
    spec1 = PointerSpec(args.pointer1, args.g)
    spec2 = PointerSpec(args.pointer2, args.g)
    config = ScenarioConfig.symmetric(spec1, spec2)
    if args.mode == "passive":
        result = optimize_angles(config, objective="max", targets=((1, 1),))
        payload = {"result": result.to_json_dict()}
    else:
        result = optimize_angles(config, objective="maxmin", targets=((1, 1), (2, 2)))
        reference = closed_form_active(args.g) if args.pointer1 == args.pointer2 == "optimal" else None
        payload = {"result": result.to_json_dict()}
        if reference is not None:
            payload["closed_form_reference"] = {
                "b11": reference.b11,
                "b22": reference.b22,
                "theta_first": reference.theta_first,
                "theta_second": reference.theta_second,
            }
    return payload


def cmd_optimize(args: argparse.Namespace) -> int:
    if args.mode in ("passive", "active"):
        payload = _optimize_point(args)
        params = {
            "mode": args.mode,
            "pointer1": args.pointer1,
            "pointer2": args.pointer2,
            "g": args.g,
        }
    elif args.mode == "mixed-2d":
        search = mixed_pointer_search(args.pointer1, args.pointer2)
        eq_value, eq_g = equal_g_search(args.pointer1, args.pointer2)
        payload = {
            "result": search.to_json_dict(),
            "equal_g": {"value": eq_value, "g": eq_g},
        }
        params = {
            "mode": args.mode,
            "pointer1": args.pointer1,
            "pointer2": args.pointer2,
        }
    else:
        raise ValueError(f"unknown optimize mode {args.mode!r}")

    out_path = Path(args.output_dir) / f"optimize_{args.mode}.json"
    payload["manifest"] = _manifest("optimize", params, [out_path])
    _write(out_path, json.dumps(payload, indent=2) + "\n")
    if "result" in payload and "value" in payload["result"]:
        print(f"optimize {args.mode}: value {payload['result']['value']:.6f}")
    print(f"wrote {out_path}")
    return 0


def cmd_noise(args: argparse.Namespace) -> int:
    if args.resolution < 1e-4:
        raise ValueError("resolution below 1e-4 is not supported")
    result = noise_sweep(args.pointer, args.pointer, resolution=args.resolution)
    out_dir = Path(args.output_dir)
    data_path = out_dir / f"noise_{args.pointer}_{args.pointer}.csv"
    lines = ["G,V"] + [f"{_fmt(g)},{_fmt(v)}" for g, v in result.boundary]
    _write(data_path, "\n".join(lines) + "\n")

    summary: dict = {
        "has_double_violation": result.has_double_violation,
        "v_star": result.v_star,
        "g_star": result.g_star if result.has_double_violation else None,
        "peak_min_b": result.peak,
    }
    if args.v1 is not None or args.v2 is not None:
        v1 = 1.0 if args.v1 is None else args.v1
        v2 = 1.0 if args.v2 is None else args.v2
        if not (0.0 <= v1 <= 1.0 and 0.0 <= v2 <= 1.0):
            raise ValueError("visibilities must lie in [0, 1]")
        window = double_violation_window(
            args.pointer, args.pointer, visibility=math.sqrt(v1 * v2)
        )
        summary["window_at_v"] = {
            "v1": v1,
            "v2": v2,
            "window": None if window is None else list(window),
        }

    summary_path = out_dir / f"noise_{args.pointer}_{args.pointer}_summary.json"
    payload = {
        "summary": summary,
        "manifest": _manifest(
            "noise",
            {
                "pointer": args.pointer,
                "resolution": args.resolution,
                "v1": args.v1,
                "v2": args.v2,
            },
            [data_path, summary_path],
        ),
    }
    _write(summary_path, json.dumps(payload, indent=2) + "\n")
    if result.has_double_violation:
        print(f"critical visibility {result.v_star:.5f} at G = {result.g_star:.4f}")
    else:
        print("no double violation at any visibility for this pointer")
    print(f"wrote {data_path} and {summary_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bilocalnet",
        description="Sequential-observer network nonlocality: sweeps, optimization, noise.",
    )
    parser.add_argument("--output-dir", default=".", help="directory for emitted files")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="sweep the precision factor G")
    p_sweep.add_argument("--pointer1", default="optimal", help="optimal or square")
    p_sweep.add_argument("--pointer2", default="optimal", help="optimal or square")
    p_sweep.add_argument("--g", default="0.5:1.0:0.01", help="grid as start:stop:step")
    p_sweep.add_argument("--mode", choices=("passive", "active"), default="passive")
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="closed forms vs full pipeline on random configs")
    p_verify.add_argument("--trials", type=int, default=100)
    p_verify.add_argument("--tol", type=float, default=1e-9)
    p_verify.set_defaults(func=cmd_verify)

    p_opt = sub.add_parser("optimize", help="optimize measurement angles or pointer strengths")
    p_opt.add_argument("--mode", choices=("passive", "active", "mixed-2d"), default="passive")
    p_opt.add_argument("--pointer1", default=None)
    p_opt.add_argument("--pointer2", default=None)
    p_opt.add_argument("--g", type=float, default=None, help="precision factor for both wings")
    p_opt.set_defaults(func=cmd_optimize)

    p_noise = sub.add_parser("noise", help="critical visibility for noisy sources")
    p_noise.add_argument("--pointer", default="optimal", help="pointer model for both wings")
    p_noise.add_argument("--resolution", type=float, default=1e-4)
    p_noise.add_argument("--v1", type=float, default=None)
    p_noise.add_argument("--v2", type=float, default=None)
    p_noise.set_defaults(func=cmd_noise)

    return parser


def _default_pointers(args: argparse.Namespace) -> None:
    # mixed-2d pairs a square pointer with an optimal one unless told otherwise
    if getattr(args, "mode", None) == "mixed-2d":
        args.pointer1 = args.pointer1 or "square"
        args.pointer2 = args.pointer2 or "optimal"
    else:
        args.pointer1 = getattr(args, "pointer1", None) or "optimal"
        args.pointer2 = getattr(args, "pointer2", None) or "optimal"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    if args.command in ("sweep", "optimize"):
        _default_pointers(args)
    try:
        return args.func(args)
    except (ValueError, ConstraintInfeasibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()

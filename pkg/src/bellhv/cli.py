"""Command line front-end.

Subcommands expose the library operations as batch runs that write
machine-readable files:

  curve     transmission curves on a degree grid            -> <out>.csv
  bounds    randomized bound search for one regime          -> <out>.json
  simulate  coincidence Monte Carlo (one angle or CHSH set) -> <out>.csv + <out>.json
  fit       parameter recovery against the cos^2 law        -> <out>.json
  replay    re-run a manifest and verify byte equality

`--out` is a path stem; every run also writes `<out>.manifest.json` naming
the resolved parameters and the SHA-256 of each data file.  Data files are
deterministic functions of the parameters (angles in degrees at this
boundary, 12 significant digits, CSV with LF endings, complex numbers as
[re, im] pairs), so replaying a manifest byte-reproduces them; only the
manifest itself carries a timestamp.

Exit codes: 0 all computations converged, 1 runtime failure (including
non-convergence and replay mismatches), 2 usage errors.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import hashlib
import io
import json
import os
import sys
from pathlib import Path
from typing import Dict, Optional, Tuple

import numpy as np

from . import __version__
from .angles import degrees_grid
from .bell import Regime, search_bound
from .errors import AngleDomainError, BellhvError, DimensionError, ParameterError
from .malusfit import FIT_SEARCH, fit as run_fit
from .montecarlo import (
    CHSH_SIGNS,
    ExperimentConfig,
    all_events_correlation,
    coincidence_probability_estimate,
    expected_coincidence_probability,
    post_selected_correlation,
    run_pairs,
)
from .optimize import SearchConfig
from .rng import RngStream
from .transmission import (
    REFERENCE_PARAMS,
    CosineSquaredModel,
    StretchedExponentialModel,
    TabulatedModel,
    TransmissionModel,
    TransmissionParams,
    intensity_ratio,
    malus,
    normalized_pair_curve,
    p1,
)

SEED_ENV_VAR = "BELLHV_SEED"

# canonical CHSH settings in degrees, (a, b) per run, with the combination
# signs matching montecarlo.CHSH_SIGNS
CANONICAL_SETTINGS_DEG = ((0.0, 22.5), (0.0, 67.5), (45.0, 22.5), (45.0, 67.5))


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


def _round12(value: float) -> float:
    return float(_fmt(value))


def _json_ready(obj, round_floats: bool = True):
    """Recursively convert to JSON-safe types; complex becomes [re, im]."""
    if isinstance(obj, dict):
        return {k: _json_ready(v, round_floats) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v, round_floats) for v in obj]
    if isinstance(obj, np.ndarray):
        return _json_ready(obj.tolist(), round_floats)
    if isinstance(obj, (complex, np.complexfloating)):
        c = complex(obj)
        if round_floats:
            return [_round12(c.real), _round12(c.imag)]
        return [c.real, c.imag]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _round12(float(obj)) if round_floats else float(obj)
    return obj


def _json_bytes(document: dict, round_floats: bool = True) -> bytes:
    text = json.dumps(_json_ready(document, round_floats), indent=2, sort_keys=True)
    return (text + "\n").encode("utf-8")


def _csv_bytes(header, rows) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([cell if isinstance(cell, str) else _fmt(cell) for cell in row])
    return buffer.getvalue().encode("utf-8")


def _sha256(blob: bytes) -> str:
    return hashlib.sha256(blob).hexdigest()


# ---------------------------------------------------------------------------
# model resolution


def _load_table(path: str) -> TabulatedModel:
    source = Path(path)
    if not source.is_file():
        raise ParameterError(f"table file not found: {path}")
    angles_deg = []
    values = []
    with source.open(newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().startswith("#"):
                continue
            try:
                angle, value = float(row[0]), float(row[1])
            except (ValueError, IndexError):
                if not angles_deg:
                    continue  # header row
                raise ParameterError(f"malformed table row: {row!r}")
            angles_deg.append(angle)
            values.append(value)
    return TabulatedModel(np.deg2rad(angles_deg), values)


def _resolve_model(params: dict) -> TransmissionModel:
    """Build the transmission model named by the parameter dict.

    `model` is one of: 'reference' (the closed-form stretched-exponential
    family, with a/e/c overridable), 'belinfante' (cos^2 profile), or
    'table:<path>' (interpolated samples, angle_deg/probability CSV).
    """
    kind = params.get("model", "reference")
    overrides = {k: params.get(k) for k in ("a", "e", "c")}
    has_overrides = any(v is not None for v in overrides.values())
    if kind == "reference":
        triple = TransmissionParams(
            a=overrides["a"] if overrides["a"] is not None else REFERENCE_PARAMS.a,
            e=overrides["e"] if overrides["e"] is not None else REFERENCE_PARAMS.e,
            c=overrides["c"] if overrides["c"] is not None else REFERENCE_PARAMS.c,
        )
        return StretchedExponentialModel(triple)
    if has_overrides:
        raise ParameterError("--a/--e/--c apply only to the closed-form model")
    if kind == "belinfante":
        return CosineSquaredModel()
    if isinstance(kind, str) and kind.startswith("table:"):
        return _load_table(kind[len("table:") :])
    raise ParameterError(
        f"unknown model {kind!r} (expected reference, belinfante, table:<path>)"
    )


def _resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return int(seed)
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ParameterError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}")


# ---------------------------------------------------------------------------
# subcommand execution: parameters dict -> {basename suffix: bytes}, converged


def _execute_curve(params: dict, stem_name: str) -> Tuple[Dict[str, bytes], bool]:
    model = _resolve_model(params)
    grid = degrees_grid(params["grid_start"], params["grid_stop"], params["grid_step"])
    degrees = params["grid_start"] + params["grid_step"] * np.arange(grid.size)
    ratios = normalized_pair_curve(model, grid)
    rows = [
        (deg, p1(model, angle), ratio, malus(angle))
        for deg, angle, ratio in zip(degrees, grid, ratios)
    ]
    blob = _csv_bytes(("angle_deg", "p1", "pair_ratio", "malus"), rows)
    return {f"{stem_name}.csv": blob}, True


def _execute_bounds(params: dict, stem_name: str) -> Tuple[Dict[str, bytes], bool]:
    regime = Regime(params["regime"])
    config = SearchConfig(
        restarts=params["restarts"], rng=RngStream(params["seed"])
    )
    report = search_bound(regime, params["dim"], config)
    document = {
        "regime": report.regime.value,
        "dim": report.dim,
        "seed": params["seed"],
        "restarts": report.restarts,
        "best_restart": report.best_restart,
        "iterations": report.iterations,
        "best_expectation": report.best_expectation,
        "best_bb_dagger": report.best_bb_dagger,
        "theoretical_limit_expectation": report.theoretical_limit_expectation,
        "theoretical_limit_bb": report.theoretical_limit_bb,
        "witness": {
            "a1": report.witness.a1.matrix,
            "a2": report.witness.a2.matrix,
            "b1": report.witness.b1.matrix,
            "b2": report.witness.b2.matrix,
        },
        "witness_state": report.witness_state,
    }
    return {f"{stem_name}.json": _json_bytes(document)}, True


def _simulate_one(model, angle_a_deg, angle_b_deg, n, rng):
    config = ExperimentConfig(
        model=model,
        angle_a=float(np.deg2rad(angle_a_deg)),
        angle_b=float(np.deg2rad(angle_b_deg)),
        n_pairs=n,
        rng=rng,
    )
    counts = run_pairs(config)
    estimate, stderr = coincidence_probability_estimate(counts)
    expected = expected_coincidence_probability(model, config.angle_a, config.angle_b)
    z = 0.0 if stderr == 0.0 else (estimate - expected) / stderr
    summary = {
        "angle_a_deg": angle_a_deg,
        "angle_b_deg": angle_b_deg,
        "n11": counts.n11,
        "n10": counts.n10,
        "n01": counts.n01,
        "n00": counts.n00,
        "n_pairs": counts.n_pairs,
        "p11": estimate,
        "p11_stderr": stderr,
        "p11_expected": expected,
        "z_score": z,
    }
    return counts, summary


def _execute_simulate(params: dict, stem_name: str) -> Tuple[Dict[str, bytes], bool]:
    model = _resolve_model(params)
    n = params["n"]
    rng = RngStream(params["seed"])
    if params.get("alpha") is not None:
        settings = [(0.0, float(params["alpha"]))]
    else:
        settings = list(CANONICAL_SETTINGS_DEG)

    tallies = []
    summaries = []
    for index, (deg_a, deg_b) in enumerate(settings):
        counts, summary = _simulate_one(model, deg_a, deg_b, n, rng.substream(index))
        tallies.append(counts)
        summaries.append(summary)

    rows = [
        (
            index,
            s["angle_a_deg"],
            s["angle_b_deg"],
            str(s["n11"]),
            str(s["n10"]),
            str(s["n01"]),
            str(s["n00"]),
            str(s["n_pairs"]),
        )
        for index, s in enumerate(summaries)
    ]
    header = ("setting", "angle_a_deg", "angle_b_deg", "n11", "n10", "n01", "n00", "n_pairs")
    document = {"settings": summaries}

    if len(tallies) == 4:
        all_events = [all_events_correlation(t) for t in tallies]
        post = [post_selected_correlation(t) for t in tallies]
        s_all = sum(s * e for s, (e, _) in zip(CHSH_SIGNS, all_events))
        s_post = sum(s * e for s, (e, _) in zip(CHSH_SIGNS, post))
        document["chsh"] = {
            "all_events_S": s_all,
            "all_events_stderr": float(np.sqrt(sum(err**2 for _, err in all_events))),
            "post_selected_S": s_post,
            "post_selected_stderr": float(np.sqrt(sum(err**2 for _, err in post))),
            "retained_fraction": sum(t.n11 for t in tallies) / (4.0 * n),
            "correlations_all_events": [e for e, _ in all_events],
            "correlations_post_selected": [e for e, _ in post],
        }

    return {
        f"{stem_name}.csv": _csv_bytes(header, rows),
        f"{stem_name}.json": _json_bytes(document),
    }, True


def _execute_fit(params: dict, stem_name: str) -> Tuple[Dict[str, bytes], bool]:
    start = TransmissionParams(params["a"], params["e"], params["c"])
    grid = degrees_grid(params["grid_start"], params["grid_stop"], params["grid_step"])
    config = SearchConfig(
        restarts=params["restarts"],
        max_iterations=FIT_SEARCH.max_iterations,
        tolerance=FIT_SEARCH.tolerance,
        rng=RngStream(params["seed"]),
    )
    result = run_fit(
        start=start, grid=grid, config=config, objective=params["objective"]
    )
    document = {
        "start": {"a": start.a, "e": start.e, "c": start.c},
        "params": {"a": result.params.a, "e": result.params.e, "c": result.params.c},
        "residual": result.residual,
        "objective": result.objective,
        "grid_deg": np.rad2deg(result.grid),
        "intensity_ratio_at_fit": result.intensity_ratio_at_fit,
        "converged": result.converged,
        "best_restart": result.best_restart,
        "iterations": result.iterations,
    }
    return {f"{stem_name}.json": _json_bytes(document)}, result.converged


_EXECUTORS = {
    "curve": _execute_curve,
    "bounds": _execute_bounds,
    "simulate": _execute_simulate,
    "fit": _execute_fit,
}


def _write_run(stem: Path, subcommand: str, params: dict) -> Tuple[Path, bool]:
    """Execute and write data files plus the manifest; returns manifest path."""
    files, converged = _EXECUTORS[subcommand](params, stem.name)
    stem.parent.mkdir(parents=True, exist_ok=True)
    outputs = {}
    for name, blob in sorted(files.items()):
        (stem.parent / name).write_bytes(blob)
        outputs[name] = _sha256(blob)
    manifest = {
        "artifact": "bellhv",
        "version": __version__,
        "subcommand": subcommand,
        "stem": stem.name,
        "parameters": params,
        "outputs": outputs,
        "converged": converged,
        "created_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    manifest_path = stem.parent / f"{stem.name}.manifest.json"
    manifest_path.write_bytes(_json_bytes(manifest, round_floats=False))
    return manifest_path, converged


def _run_replay(manifest_path: str, out_dir: str) -> int:
    source = Path(manifest_path)
    if not source.is_file():
        raise ParameterError(f"manifest not found: {manifest_path}")
    manifest = json.loads(source.read_text(encoding="utf-8"))
    for key in ("subcommand", "parameters", "outputs"):
        if key not in manifest:
            raise ParameterError(f"manifest is missing the {key!r} field")
    subcommand = manifest["subcommand"]
    if subcommand not in _EXECUTORS:
        raise ParameterError(f"manifest names unknown subcommand {subcommand!r}")

    target = Path(out_dir)
    target.mkdir(parents=True, exist_ok=True)
    stem_name = manifest.get("stem") or next(iter(sorted(manifest["outputs"]))).split(".")[0]
    files, converged = _EXECUTORS[subcommand](manifest["parameters"], stem_name)

    all_match = True
    for name, recorded_hash in sorted(manifest["outputs"].items()):
        blob = files.get(name)
        if blob is None:
            print(f"{name}: missing from replay", file=sys.stderr)
            all_match = False
            continue
        (target / name).write_bytes(blob)
        fresh = _sha256(blob)
        status = "ok" if fresh == recorded_hash else "MISMATCH"
        if fresh != recorded_hash:
            all_match = False
        print(f"{name}: {status}")
    return 0 if (all_match and converged) else 1


# ---------------------------------------------------------------------------
# argument parsing


def _add_model_flags(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--model",
        default="reference",
        metavar="{reference|belinfante|table:<path>}",
        help="transmission profile: closed-form family (reference), cos^2 "
        "(belinfante), or interpolated angle_deg,probability samples "
        "(table:<path>)",
    )
    parser.add_argument("--a", type=float, default=None, help="closed-form scale a > 0")
    parser.add_argument("--e", type=float, default=None, help="closed-form exponent e > 0")
    parser.add_argument("--c", type=float, default=None, help="closed-form weight c >= 0")


def _add_grid_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--grid-start", type=float, default=0.0, help="first angle, degrees")
    parser.add_argument("--grid-stop", type=float, default=90.0, help="last angle, degrees")
    parser.add_argument("--grid-step", type=float, default=5.0, help="step, degrees")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellhv",
        description="Polarizer-pair transmission curves, coincidence Monte Carlo, "
        "and Bell-operator bound searches.",
    )
    parser.add_argument("--version", action="version", version=f"bellhv {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    curve = sub.add_parser("curve", help="p1, pair ratio, and cos^2 on a degree grid")
    _add_model_flags(curve)
    _add_grid_flags(curve)
    curve.add_argument("--out", required=True, help="output path stem")

    bounds = sub.add_parser("bounds", help="randomized Bell-operator bound search")
    bounds.add_argument(
        "--regime",
        required=True,
        choices=[r.value for r in Regime],
        help="commutation constraints on the four operators",
    )
    bounds.add_argument(
        "--dim",
        type=int,
        default=2,
        help="space dimension (per subsystem for the commuting regime)",
    )
    bounds.add_argument("--seed", type=int, default=None, help=f"default ${SEED_ENV_VAR} or 0")
    bounds.add_argument("--restarts", type=int, default=8, help="search restarts")
    bounds.add_argument("--out", required=True, help="output path stem")

    simulate = sub.add_parser("simulate", help="coincidence Monte Carlo run")
    _add_model_flags(simulate)
    simulate.add_argument(
        "--alpha",
        type=float,
        default=None,
        help="relative analyzer angle in degrees (omit to run the canonical "
        "CHSH settings 0/45/22.5/67.5)",
    )
    simulate.add_argument("--n", type=int, default=10**6, help="pairs per setting")
    simulate.add_argument("--seed", type=int, default=None, help=f"default ${SEED_ENV_VAR} or 0")
    simulate.add_argument("--out", required=True, help="output path stem")

    fit = sub.add_parser("fit", help="recover (a, e, c) against the cos^2 law")
    _add_model_flags(fit)
    _add_grid_flags(fit)
    fit.add_argument(
        "--objective",
        default="chebyshev",
        choices=("chebyshev", "least-squares"),
        help="deviation measure over the grid",
    )
    fit.add_argument("--seed", type=int, default=None, help=f"default ${SEED_ENV_VAR} or 0")
    fit.add_argument("--restarts", type=int, default=2, help="search restarts")
    fit.add_argument("--out", required=True, help="output path stem")

    replay = sub.add_parser("replay", help="re-run a manifest and verify outputs")
    replay.add_argument("manifest", help="path to a <stem>.manifest.json file")
    replay.add_argument("--out-dir", required=True, help="directory for replayed files")

    return parser


def _params_from_args(args: argparse.Namespace) -> dict:
    if args.subcommand == "curve":
        return {
            "model": args.model,
            "a": args.a,
            "e": args.e,
            "c": args.c,
            "grid_start": args.grid_start,
            "grid_stop": args.grid_stop,
            "grid_step": args.grid_step,
        }
    if args.subcommand == "bounds":
        return {
            "regime": args.regime,
            "dim": args.dim,
            "seed": _resolve_seed(args.seed),
            "restarts": args.restarts,
        }
    if args.subcommand == "simulate":
        return {
            "model": args.model,
            "a": args.a,
            "e": args.e,
            "c": args.c,
            "alpha": args.alpha,
            "n": args.n,
            "seed": _resolve_seed(args.seed),
        }
    if args.subcommand == "fit":
        if args.model != "reference":
            raise ParameterError("fit adjusts the closed-form model only")
        return {
            "a": args.a if args.a is not None else REFERENCE_PARAMS.a,
            "e": args.e if args.e is not None else REFERENCE_PARAMS.e,
            "c": args.c if args.c is not None else REFERENCE_PARAMS.c,
            "objective": args.objective,
            "grid_start": args.grid_start,
            "grid_stop": args.grid_stop,
            "grid_step": args.grid_step,
            "seed": _resolve_seed(args.seed),
            "restarts": args.restarts,
        }
    raise ParameterError(f"unknown subcommand {args.subcommand!r}")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.subcommand == "replay":
            return _run_replay(args.manifest, args.out_dir)
        params = _params_from_args(args)
        manifest_path, converged = _write_run(Path(args.out), args.subcommand, params)
        print(f"wrote {manifest_path}")
        return 0 if converged else 1
    except (ParameterError, AngleDomainError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BellhvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

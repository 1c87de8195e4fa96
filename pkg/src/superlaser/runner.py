"""Scenario execution: dispatch a RunConfig, write outputs and a manifest.

Every run writes a manifest JSON with the full config echo, solver
statistics, the package version, and the list of produced files; re-running
a manifest reproduces the outputs byte for byte (no timestamps are written
anywhere, and all randomness is seeded).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__ as _code_version
from .config import RunConfig
from .cumulant import CumulantState, simulate_cumulant
from .dressed import light_shift_profile, regime_check
from .output import (write_csv, write_json, write_observables_csv, write_peaks_json,
                     write_spectrum_csv, write_trajectory_csv)
from .params import AtomPhase
from .quantum import init_ensemble, simulate_full
from .results import ObservableTrajectory
from .spectrum import (average_g1, find_peaks, sideband_frequencies,
                       stationary_momentum, wiener_khinchin)

__all__ = ["RunResult", "run", "output_root"]

SCHEMA_VERSION = 1
ENV_OUTPUT_ROOT = "SUPERLASER_OUTPUT_ROOT"


@dataclass
class RunResult:
    manifest_path: Path
    files: dict[str, Path]
    manifest: dict


def output_root() -> Path:
    return Path(os.environ.get(ENV_OUTPUT_ROOT, "."))


def _initial_phases(config: RunConfig) -> list[AtomPhase]:
    n = config.params.n_atoms
    if config.init.x0 is not None or config.init.p0 is not None:
        if config.init.x0 is None or config.init.p0 is None:
            raise ValueError("init.x0 and init.p0 must be given together")
        return [AtomPhase(x=x, p=p) for x, p in zip(config.init.x0, config.init.p0)]
    return init_ensemble(n, config.init.p_range, config.init.seed)


def _simulate(config: RunConfig, store_states_from: float | None = None) -> ObservableTrajectory:
    phases = _initial_phases(config)
    integ = config.integration
    if config.scenario in ("single-full", "ensemble-full"):
        rho0 = None
        if config.init.excited:
            from .hilbert import build_space
            space = build_space(config.params.n_atoms, config.params.n_max)
            rho0 = space.product_state(excited=config.init.excited)
        return simulate_full(
            config.params, phases, (0.0, integ.t_end), integ.sample_dt,
            rho0=rho0, rel_tol=integ.rel_tol, abs_tol=integ.abs_tol,
            store_states_from=store_states_from,
        )
    init = CumulantState.from_phases(phases, excited=config.init.excited)
    return simulate_cumulant(
        config.params, init, (0.0, integ.t_end), integ.sample_dt,
        rel_tol=integ.rel_tol, abs_tol=integ.abs_tol,
        store_states_from=store_states_from,
    )


def run(config: RunConfig, out_root: Path | None = None) -> RunResult:
    """Execute the scenario and write its output files plus manifest."""
    root = Path(out_root) if out_root is not None else output_root()
    out_dir = root / config.output.directory
    out_dir.mkdir(parents=True, exist_ok=True)
    label = config.output.label
    files: dict[str, Path] = {}
    extra: dict = {}
    stats = None

    if config.scenario == "dressed-profile":
        prof = config.profile
        xs = np.linspace(prof.x_min, prof.x_max, prof.n_points)
        points = light_shift_profile(config.params, xs)
        path = out_dir / f"{label}_profile.csv"
        write_csv(path, ["x", "e_plus", "e_minus", "theta", "f_plus", "f_minus"],
                  ([pt.x, pt.e_plus, pt.e_minus, pt.theta, pt.f_plus, pt.f_minus]
                   for pt in points))
        files["profile"] = path
        report = regime_check(config.params)
        extra["regime"] = {
            "bad_cavity": report.bad_cavity,
            "bad_cavity_margin": report.bad_cavity_margin,
            "far_red": report.far_red,
            "far_red_margin": report.far_red_margin,
            "strong_shift": report.strong_shift,
            "strong_shift_margin": report.strong_shift_margin,
            "all_satisfied": report.all_satisfied,
        }

    elif config.scenario in ("single-full", "ensemble-full", "cumulant"):
        traj = _simulate(config)
        stats = traj.stats
        files["trajectory"] = out_dir / f"{label}_trajectory.csv"
        files["observables"] = out_dir / f"{label}_observables.csv"
        write_trajectory_csv(files["trajectory"], traj)
        write_observables_csv(files["observables"], traj)

    elif config.scenario == "spectrum":
        spec_cfg = config.spectrum
        store_from = config.integration.t_end - spec_cfg.window - config.integration.sample_dt
        traj = _simulate(config, store_states_from=store_from)
        stats = traj.stats
        files["trajectory"] = out_dir / f"{label}_trajectory.csv"
        files["observables"] = out_dir / f"{label}_observables.csv"
        write_trajectory_csv(files["trajectory"], traj)
        write_observables_csv(files["observables"], traj)

        corr = average_g1(traj, config.params, spec_cfg.n_anchors, spec_cfg.window,
                          spec_cfg.tau_max, spec_cfg.tau_dt,
                          co_evolve=spec_cfg.co_evolve,
                          rel_tol=config.integration.rel_tol,
                          abs_tol=config.integration.abs_tol)
        spec = wiener_khinchin(corr, delta_a=config.params.delta_a,
                               apodization_tw=spec_cfg.resolved_tw(),
                               pad_factor=spec_cfg.pad_factor)
        peaks = find_peaks(spec, min_prominence=spec_cfg.min_prominence * float(np.max(spec.s)))
        spec.peaks = peaks
        files["spectrum"] = out_dir / f"{label}_spectrum.csv"
        files["peaks"] = out_dir / f"{label}_peaks.json"
        write_spectrum_csv(files["spectrum"], spec)
        write_peaks_json(files["peaks"], peaks)

        p_st = stationary_momentum(traj, window=spec_cfg.window, threshold=0.5)
        w_plus, w_minus = sideband_frequencies(config.params.omega_r, p_st)
        extra["spectrum"] = {
            "p_stationary": p_st,
            "sideband_prediction": [w_minus, w_plus],
            "resolution_bin": 2.0 * math.pi / spec_cfg.tau_max,
            "metadata": spec.metadata,
        }
    else:
        raise AssertionError(config.scenario)

    manifest = {
        "schema_version": SCHEMA_VERSION,
        "code_version": _code_version,
        "config": config.raw,
        "outputs": {key: path.name for key, path in files.items()},
        "solver_stats": None if stats is None else {
            "steps": stats.steps, "rejected": stats.rejected, "rhs_evals": stats.rhs_evals,
        },
        "extra": extra,
    }
    manifest_path = out_dir / f"{label}_manifest.json"
    write_json(manifest_path, manifest)
    return RunResult(manifest_path=manifest_path, files=files, manifest=manifest)

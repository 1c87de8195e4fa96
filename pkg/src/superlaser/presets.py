"""Bundled scenario configurations reproducing the standard figures.

All presets share the unit convention gamma = 1 and put the cavity mode on
resonance with the bare atomic transition (delta_c = delta_a).  Single-atom
initial conditions are not published anywhere, so each preset pins a
concrete, verified choice:

  fig2   single atom, strong drive |delta_a| < Omega: cools into a stable
         node-to-antinode oscillation with recurrent positive inversion.
  fig3   single atom, far-detuned drive: pure Doppler cooling into a trap,
         inversion never positive.
  fig5   single atom, bichromatic drive: metastable ballistic stage with
         a quasi-stationary momentum plateau and laser-dominated emission
         (the trajectory is chaotic, so the plateau window [~5, 45] and the
         eventual trapping are properties of this exact initial condition).
  fig6   eight-atom full-quantum ensemble.  Faithful but heavy: the density
         matrix has dimension 1024, so the full run takes hours; reduce
         n_atoms or t_end for exploration.
  fig7   hundred-atom cumulant ensemble, same drive as fig5.
  fig8   forty-atom cumulant run plus the output-spectrum pipeline (the
         left panel case; override params.n_atoms=100 for the right panel).
"""

from __future__ import annotations

import copy

__all__ = ["presets", "preset_names"]

_FIG5_PARAMS = {
    "kappa": 20.0, "g": 4.0, "omega_drive": 10.0, "delta_a": -20.0,
    "delta_c": -20.0, "eta": 8.0, "delta_eta": -25.0, "omega_r": 6.0,
    "n_max": 3, "n_atoms": 1,
}

_PRESETS: dict[str, dict] = {
    "fig2": {
        "scenario": "single-full",
        "params": {"kappa": 20.0, "g": 4.0, "omega_drive": 30.0, "delta_a": -10.0,
                   "delta_c": -10.0, "eta": 0.0, "delta_eta": 0.0, "omega_r": 2.5,
                   "n_max": 3, "n_atoms": 1},
        "init": {"x0": [3.141592653589793], "p0": [2.0]},
        "integration": {"t_end": 150.0, "sample_dt": 0.1},
        "output": {"label": "fig2"},
    },
    "fig3": {
        "scenario": "single-full",
        "params": {"kappa": 20.0, "g": 4.0, "omega_drive": 10.0, "delta_a": -20.0,
                   "delta_c": -20.0, "eta": 0.0, "delta_eta": 0.0, "omega_r": 6.0,
                   "n_max": 3, "n_atoms": 1},
        "init": {"x0": [3.141592653589793], "p0": [1.0]},
        "integration": {"t_end": 120.0, "sample_dt": 0.1},
        "output": {"label": "fig3"},
    },
    "fig5": {
        "scenario": "single-full",
        "params": dict(_FIG5_PARAMS),
        "init": {"x0": [1.5], "p0": [0.9]},
        "integration": {"t_end": 60.0, "sample_dt": 0.1},
        "output": {"label": "fig5"},
    },
    "fig6": {
        "scenario": "ensemble-full",
        "params": dict(_FIG5_PARAMS, n_atoms=8),
        "init": {"seed": 1, "p_range": [2.0, 2.5]},
        "integration": {"t_end": 60.0, "sample_dt": 0.2,
                        "rel_tol": 1e-7, "abs_tol": 1e-9},
        "output": {"label": "fig6"},
    },
    "fig7": {
        "scenario": "cumulant",
        "params": dict(_FIG5_PARAMS, n_atoms=100),
        "init": {"seed": 1, "p_range": [2.0, 2.5]},
        "integration": {"t_end": 200.0, "sample_dt": 0.2},
        "output": {"label": "fig7"},
    },
    "fig8": {
        "scenario": "spectrum",
        "params": dict(_FIG5_PARAMS, n_atoms=40),
        "init": {"seed": 1, "p_range": [2.0, 2.5]},
        "integration": {"t_end": 150.0, "sample_dt": 0.1},
        "spectrum": {"n_anchors": 8, "window": 20.0, "tau_max": 50.0,
                     "tau_dt": 0.02, "pad_factor": 8, "min_prominence": 0.005},
        "output": {"label": "fig8"},
    },
}


def preset_names() -> list[str]:
    return sorted(_PRESETS)


def presets() -> dict[str, dict]:
    """Deep copies of the bundled configs, safe to mutate."""
    return copy.deepcopy(_PRESETS)

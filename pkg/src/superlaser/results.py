"""Shared trajectory-of-observables container used by both solvers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ode import SolverStats

__all__ = ["ObservableTrajectory"]


@dataclass
class ObservableTrajectory:
    """Time series of the standard observables plus per-atom phase space.

    Arrays with a leading time axis of length T; per-atom arrays are shaped
    (N, T).  n_laser = <a^dag a> - |<a>|^2 and n_scatter = |<a>|^2 follow the
    photon-number decomposition into atomic emission and coherent drive
    scatter.  `states`/`state_times` optionally keep the raw solver states
    in a late window for spectrum anchoring.
    """

    times: np.ndarray
    n_photon: np.ndarray
    a_mean: np.ndarray
    population: np.ndarray
    x: np.ndarray
    p: np.ndarray
    stats: SolverStats
    diagnostics: dict[str, np.ndarray] = field(default_factory=dict)
    state_times: np.ndarray | None = None
    states: np.ndarray | None = None

    @property
    def n_scatter(self) -> np.ndarray:
        return np.abs(self.a_mean) ** 2

    @property
    def n_laser(self) -> np.ndarray:
        return self.n_photon - self.n_scatter

    @property
    def inversion(self) -> np.ndarray:
        """Per-atom <sigma_z> = 2 <sigma^+ sigma^-> - 1, shaped (N, T)."""
        return 2.0 * self.population - 1.0

"""Model parameters and unit conventions.

Every rate and detuning is expressed in units of the spontaneous decay rate
Gamma, time in units of 1/Gamma, positions as the dimensionless phase k*x,
and momenta in units of hbar*k.  The recoil frequency omega_r = hbar k^2 /
(2 m Gamma) couples the two: dx/dt = 2 * omega_r * p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PhysParams:
    """All model rates and detunings, in units of Gamma.

    Parameters
    ----------
    kappa : cavity linewidth.
    g : atom-cavity coupling of the sine mode g(x) = g sin(x).
    omega_drive : Rabi amplitude of the first (light-shift) drive,
        Omega(x) = omega_drive * cos(x).
    delta_a : first drive detuning from the atom, omega_drive_laser - omega_atom.
    delta_c : first drive detuning from the cavity, omega_drive_laser - omega_cavity.
    eta : Rabi amplitude of the second (pump) drive, eta(x) = eta * cos(x).
    delta_eta : detuning between the two drives, omega_first - omega_second.
    omega_r : recoil frequency; 0 pins the atoms in place.
    n_max : Fock-space truncation (highest photon number kept).
    n_atoms : number of tracked atoms.
    detuning_offsets : optional per-atom drive-atom detunings Delta_am; when
        None every atom uses delta_a.
    gamma : spontaneous decay rate, fixed to 1 (it is the unit).
    """

    kappa: float
    g: float
    omega_drive: float
    delta_a: float
    delta_c: float
    eta: float = 0.0
    delta_eta: float = 0.0
    omega_r: float = 0.0
    n_max: int = 3
    n_atoms: int = 1
    detuning_offsets: tuple[float, ...] | None = None
    gamma: float = 1.0

    def __post_init__(self) -> None:
        if self.gamma != 1.0:
            raise ValueError("gamma is the unit of all rates and must be 1")
        if not self.kappa > 0:
            raise ValueError("kappa must be positive")
        if self.omega_r < 0:
            raise ValueError("omega_r must be >= 0 (0 means pinned atoms)")
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")
        if self.n_atoms < 1:
            raise ValueError("n_atoms must be >= 1")
        if self.detuning_offsets is not None:
            object.__setattr__(self, "detuning_offsets", tuple(float(d) for d in self.detuning_offsets))
            if len(self.detuning_offsets) != self.n_atoms:
                raise ValueError("detuning_offsets must have one entry per atom")
        for name in ("kappa", "g", "omega_drive", "delta_a", "delta_c", "eta", "delta_eta", "omega_r"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def delta_am(self) -> np.ndarray:
        """Per-atom drive-atom detunings as an array of length n_atoms."""
        if self.detuning_offsets is None:
            return np.full(self.n_atoms, self.delta_a, dtype=float)
        return np.asarray(self.detuning_offsets, dtype=float)

    def drive_amplitude(self, t: float) -> complex:
        """Total drive factor Omega + eta * exp(i * delta_eta * t) of Eq.-of-motion
        drive terms; its conjugate appears on the sigma^- side."""
        return self.omega_drive + self.eta * np.exp(1j * self.delta_eta * t)


@dataclass
class AtomPhase:
    """Semiclassical phase-space point of one atom.

    x is the dimensionless position phase k*x, stored unwrapped so linear
    motion stays visible; trigonometric uses reduce it implicitly.  p is in
    units of hbar*k.
    """

    x: float
    p: float

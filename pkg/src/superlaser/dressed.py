"""Dressed states of a driven two-level atom: light shifts, mixing angle,
dipole forces, and the operating-regime conditions.

The single-atom drive Hamiltonian in the frame of the drive laser is

    H = -delta_a |e><e| + omega (|e><g| + |g><e|),

with eigenvalues E_pm = -delta_a/2 +- sqrt(omega^2 + delta_a^2/4) and
eigenvectors |+> = sin(T/2)|g> + cos(T/2)|e>, |-> = cos(T/2)|g> - sin(T/2)|e>
where tan(T) = -2*omega/delta_a.  Under a standing-wave drive
omega(x) = omega_drive * cos(x) the shifts become spatial potentials whose
gradients are the dipole forces on |+> and |->, equal and opposite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import PhysParams

__all__ = [
    "DressedPoint",
    "RegimeReport",
    "dressed_eigenvalues",
    "mixing_angle",
    "dressed_states",
    "light_shift_profile",
    "regime_check",
]


@dataclass(frozen=True)
class DressedPoint:
    """Dressed-state data at one position phase x.

    Energies in Gamma, theta in radians, forces in hbar*k*Gamma (ready to be
    used directly as dp/dt of the dimensionless momentum).
    """

    x: float
    e_plus: float
    e_minus: float
    theta: float
    f_plus: float
    f_minus: float


@dataclass(frozen=True)
class RegimeReport:
    """The three operating-regime conditions with signed margins.

    A condition holds iff its margin is positive:
      bad_cavity:   kappa - gamma
      far_red:      min(-delta_a, |delta_a| - omega_drive)
      strong_shift: 2*sqrt(omega_drive^2 + delta_a^2/4) - kappa
    """

    bad_cavity: bool
    bad_cavity_margin: float
    far_red: bool
    far_red_margin: float
    strong_shift: bool
    strong_shift_margin: float

    @property
    def all_satisfied(self) -> bool:
        return self.bad_cavity and self.far_red and self.strong_shift

    @property
    def margins(self) -> tuple[float, float, float]:
        return (self.bad_cavity_margin, self.far_red_margin, self.strong_shift_margin)


def dressed_eigenvalues(omega_local, delta_a):
    """Energies (e_plus, e_minus) of the driven two-level atom.

    Vectorized over both arguments; e_plus >= e_minus always.
    """
    omega_local = np.asarray(omega_local, dtype=float)
    root = np.sqrt(omega_local**2 + 0.25 * delta_a**2)
    e_plus = -0.5 * delta_a + root
    e_minus = -0.5 * delta_a - root
    if e_plus.ndim == 0:
        return float(e_plus), float(e_minus)
    return e_plus, e_minus


def mixing_angle(omega_local: float, delta_a: float) -> float:
    """Mixing angle theta with tan(theta) = -2*omega_local/delta_a.

    Returns the branch that makes the dressed basis diagonalize the drive
    Hamiltonian: theta = atan2(2*omega_local, -delta_a), which lies in
    [0, pi] for omega_local >= 0 (theta = 0 means |+> = |e>).  A negative
    amplitude returns the mirrored negative angle so the diagonalization
    still holds exactly.

    Raises ValueError on the degenerate input (0, 0) where the eigenbasis
    is undefined.
    """
    if omega_local == 0.0 and delta_a == 0.0:
        raise ValueError("mixing angle undefined for omega_local = delta_a = 0")
    return math.atan2(2.0 * omega_local, -delta_a)


def dressed_states(theta: float) -> np.ndarray:
    """Columns |+>, |-> in the bare basis (|g>, |e>)."""
    s, c = math.sin(0.5 * theta), math.cos(0.5 * theta)
    return np.array([[s, c], [c, -s]], dtype=float)


def light_shift_profile(params: PhysParams, xs) -> list[DressedPoint]:
    """Dressed energies, mixing angle and dipole forces along the drive.

    The local amplitude is omega_drive * cos(x); forces use the closed-form
    derivative f_pm = -dE_pm/dx = +-omega_drive^2 sin(2x) / (2 sqrt(...)),
    never a finite difference.  At an exactly degenerate point (delta_a = 0
    and cos x = 0) the angle is the continuity limit pi/2 and the force is
    reported as 0 (the one-sided limits differ there).
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    omega = params.omega_drive
    delta_a = params.delta_a
    omega_local = omega * np.cos(xs)
    root = np.sqrt(omega_local**2 + 0.25 * delta_a**2)
    e_plus = -0.5 * delta_a + root
    e_minus = -0.5 * delta_a - root

    theta = np.arctan2(2.0 * omega_local, -delta_a * np.ones_like(xs))
    degenerate = (omega_local == 0.0) & (delta_a == 0.0)
    theta = np.where(degenerate, 0.0 if omega == 0.0 else 0.5 * math.pi, theta)

    with np.errstate(invalid="ignore", divide="ignore"):
        f_plus = np.where(root > 0.0, omega**2 * np.sin(2.0 * xs) / (2.0 * root), 0.0)

    return [
        DressedPoint(x=float(x), e_plus=float(ep), e_minus=float(em), theta=float(th),
                     f_plus=float(fp), f_minus=float(-fp))
        for x, ep, em, th, fp in zip(xs, e_plus, e_minus, theta, f_plus)
    ]


def regime_check(params: PhysParams) -> RegimeReport:
    """Evaluate the three conditions for narrow-band operation.

    (i) bad-cavity kappa > gamma; (ii) far red-detuned drive delta_a < 0 and
    |delta_a| > omega_drive; (iii) maximal light shift exceeding the cavity
    linewidth, 2*sqrt(omega_drive^2 + delta_a^2/4) > kappa.
    """
    m1 = params.kappa - params.gamma
    m2 = min(-params.delta_a, abs(params.delta_a) - params.omega_drive)
    splitting = 2.0 * math.sqrt(params.omega_drive**2 + 0.25 * params.delta_a**2)
    m3 = splitting - params.kappa
    return RegimeReport(
        bad_cavity=m1 > 0.0,
        bad_cavity_margin=m1,
        far_red=m2 > 0.0,
        far_red_margin=m2,
        strong_shift=m3 > 0.0,
        strong_shift_margin=m3,
    )

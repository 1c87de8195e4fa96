"""Adaptive time integration for complex-valued states.

A thin driver around scipy's Dormand-Prince 5(4) stepper: one integrator
instance per run, dense-output interpolation onto the sampling grid (so the
step sequence never depends on sample_dt), and streaming observation so no
caller is forced to hold every sampled state in memory.

Complex state vectors are handed to scipy as their interleaved real/imag
float64 view, which is exactly the memory layout of complex128; the
user-facing rhs works in complex throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import RK45

__all__ = [
    "OdeProblem",
    "Trajectory",
    "SolverStats",
    "IntegrationError",
    "StepSizeUnderflowError",
    "NonFiniteRhsError",
    "integrate",
    "integrate_observed",
]

DEFAULT_REL_TOL = 1e-8
DEFAULT_ABS_TOL = 1e-10

# RK45 evaluates six fresh stages per attempted step (stage 0 reuses FSAL),
# which lets rejected attempts be counted exactly from nfev.
_EVALS_PER_ATTEMPT = 6


class IntegrationError(RuntimeError):
    """Integration aborted; last_valid_time is the furthest consistent state."""

    def __init__(self, message: str, last_valid_time: float):
        super().__init__(message)
        self.last_valid_time = last_valid_time


class StepSizeUnderflowError(IntegrationError):
    pass


class NonFiniteRhsError(IntegrationError):
    def __init__(self, t: float, index: int):
        super().__init__(f"rhs returned a non-finite value at t={t:.6g} (component {index})", t)
        self.t = t
        self.index = index


@dataclass
class OdeProblem:
    """rhs(t, y) -> dy/dt over a flat complex vector, pure and deterministic."""

    rhs: Callable[[float, np.ndarray], np.ndarray]
    t_span: tuple[float, float]
    y0: np.ndarray
    sample_dt: float


@dataclass
class SolverStats:
    steps: int = 0
    rejected: int = 0
    rhs_evals: int = 0


@dataclass
class Trajectory:
    """Sampled solution: times strictly increasing with spacing sample_dt
    (the final interval may be shorter to land on t1)."""

    times: np.ndarray
    states: np.ndarray
    stats: SolverStats = field(default_factory=SolverStats)


def _sample_grid(t0: float, t1: float, dt: float) -> np.ndarray:
    n = int(np.floor((t1 - t0) / dt + 1e-9))
    ts = t0 + dt * np.arange(n + 1)
    if ts[-1] < t1 - 1e-9 * max(1.0, abs(t1)):
        ts = np.append(ts, t1)
    else:
        ts[-1] = t1
    return ts


def integrate_observed(
    problem: OdeProblem,
    observer: Callable[[float, np.ndarray], None],
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> SolverStats:
    """Integrate and call observer(t, y) at every sample time, including t0.

    The state handed to the observer is a fresh complex array the observer
    may keep.  Raises StepSizeUnderflowError / NonFiniteRhsError with the
    last valid time on failure.
    """
    t0, t1 = problem.t_span
    if not t1 > t0:
        raise ValueError("t_span must satisfy t1 > t0")
    if not (rel_tol > 0 and abs_tol > 0):
        raise ValueError("tolerances must be positive")
    if not problem.sample_dt > 0:
        raise ValueError("sample_dt must be positive")

    y0 = np.ascontiguousarray(problem.y0, dtype=np.complex128)
    ts = _sample_grid(t0, t1, problem.sample_dt)

    def rhs_real(t: float, y_real: np.ndarray) -> np.ndarray:
        y = np.ascontiguousarray(y_real).view(np.complex128)
        dy = np.asarray(problem.rhs(t, y), dtype=np.complex128)
        out = dy.view(np.float64)
        if not np.all(np.isfinite(out)):
            bad = int(np.argmin(np.isfinite(out))) // 2
            raise NonFiniteRhsError(t, bad)
        return out

    stepper = RK45(rhs_real, t0, y0.view(np.float64), t1, rtol=rel_tol, atol=abs_tol)
    stats = SolverStats(rhs_evals=stepper.nfev)

    observer(float(ts[0]), y0.copy())
    next_idx = 1
    eps = 1e-12

    while stepper.status == "running":
        nfev_before = stepper.nfev
        stepper.step()
        attempts = max(1, (stepper.nfev - nfev_before) // _EVALS_PER_ATTEMPT)
        stats.rhs_evals = stepper.nfev
        if stepper.status == "failed":
            raise StepSizeUnderflowError(
                f"step size underflow at t={stepper.t:.6g} (stiffness or blow-up)", stepper.t
            )
        stats.steps += 1
        stats.rejected += attempts - 1

        sol = None
        t_reach = stepper.t + eps * max(1.0, abs(stepper.t))
        while next_idx < len(ts) and ts[next_idx] <= t_reach:
            if sol is None:
                sol = stepper.dense_output()
            y_s = np.ascontiguousarray(sol(ts[next_idx])).view(np.complex128)
            observer(float(ts[next_idx]), y_s.copy())
            next_idx += 1

    if next_idx < len(ts):
        # t_bound was reached within roundoff of the last sample
        observer(float(ts[next_idx]), np.ascontiguousarray(stepper.y).view(np.complex128).copy())
    return stats


def integrate(
    problem: OdeProblem,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> Trajectory:
    """Integrate and collect every sampled state into a Trajectory."""
    times: list[float] = []
    states: list[np.ndarray] = []

    def keep(t: float, y: np.ndarray) -> None:
        times.append(t)
        states.append(y)

    stats = integrate_observed(problem, keep, rel_tol=rel_tol, abs_tol=abs_tol)
    return Trajectory(times=np.asarray(times), states=np.asarray(states), stats=stats)

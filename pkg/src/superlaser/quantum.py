"""Full-quantum master-equation solver with semiclassical atomic motion.

Evolves the density matrix of N atoms and the truncated cavity mode in the
frame of the first drive laser,

    drho/dt = -i[H(t), rho] + kappa/2 D[a] rho + sum_m gamma/2 D[sigma^-_m] rho,

with H(t) built from the bichromatic standing-wave drive and the sine cavity
mode, coupled to per-atom point-particle motion dx_m/dt = 2 omega_r p_m,
dp_m/dt = -<dH/dx_m>.  Momentum diffusion from spontaneous emission is
deliberately not modeled; this bounds validity to gamma small against the
other rates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .hilbert import HilbertSpace, build_space, expect
from .ode import OdeProblem, SolverStats, integrate_observed
from .params import AtomPhase, PhysParams
from .results import ObservableTrajectory

__all__ = [
    "Observables",
    "PositivityError",
    "hamiltonian",
    "lindblad_rhs",
    "force",
    "simulate_full",
    "init_ensemble",
]

POSITIVITY_ABORT = 1e-6


class PositivityError(RuntimeError):
    """Density-matrix eigenvalue fell below the abort threshold; the Fock
    truncation is too small for the requested drive."""


@dataclass(frozen=True)
class Observables:
    """Instantaneous field/atom observables of a full-quantum state."""

    n_photon: float
    a_mean: complex
    population: np.ndarray  # <sigma^+_m sigma^-_m> per atom

    @property
    def n_scatter(self) -> float:
        return abs(self.a_mean) ** 2

    @property
    def n_laser(self) -> float:
        return self.n_photon - self.n_scatter

    @property
    def inversion(self) -> np.ndarray:
        return 2.0 * self.population - 1.0

    @classmethod
    def from_rho(cls, space: HilbertSpace, rho: np.ndarray) -> "Observables":
        n = expect(space.n_op, rho).real
        a = expect(space.a, rho)
        pops = np.array([expect(pe, rho).real for pe in space.proj_e])
        return cls(n_photon=n, a_mean=a, population=pops)


def _assemble_hamiltonian(ops: HilbertSpace, params: PhysParams, x, t: float):
    """Hamiltonian over an operator table that may hold sparse or dense
    matrices; returns the same kind."""
    x = np.asarray(x, dtype=float)
    if x.shape != (ops.n_atoms,):
        raise ValueError("need one phase per atom")
    delta_am = params.delta_am()
    cos_e, sin_e = np.cos(params.delta_eta * t), np.sin(params.delta_eta * t)

    h = (-params.delta_c) * ops.n_op
    for m in range(ops.n_atoms):
        cx, sx_m = np.cos(x[m]), np.sin(x[m])
        h = h + (-delta_am[m]) * ops.proj_e[m]
        if params.g != 0.0:
            h = h + (params.g * sx_m) * ops.jc[m]
        h = h + (params.omega_drive * cx) * ops.sx[m]
        if params.eta != 0.0:
            # eta cos(x)(sp e^{i d t} + sm e^{-i d t}) = eta cos(x)(cos(dt) sx + sin(dt) sy)
            h = h + (params.eta * cx * cos_e) * ops.sx[m] + (params.eta * cx * sin_e) * ops.sy[m]
    return h


def hamiltonian(space: HilbertSpace, params: PhysParams, x, t: float) -> sp.csr_matrix:
    """System Hamiltonian at atom phases x and time t (frame of drive 1).

    H = sum_m [ -Delta_am sigma^+_m sigma^-_m
                + g sin(x_m) (a^dag sigma^-_m + a sigma^+_m)
                + Omega cos(x_m) (sigma^+_m + sigma^-_m)
                + eta cos(x_m) (sigma^+_m e^{i Delta_eta t} + h.c.) ]
        - Delta_c a^dag a
    """
    h = _assemble_hamiltonian(space, params, x, t)
    return h.tocsr() if sp.issparse(h) else h


def _sandwich(op: sp.csr_matrix, rho: np.ndarray) -> np.ndarray:
    """op @ rho @ op^dag for any rho: X @ op^dag = (op @ X^dag)^dag keeps
    both products sparse-on-the-left."""
    x = op @ rho
    return (op @ x.conj().T).conj().T


def lindblad_rhs(space: HilbertSpace, rho: np.ndarray, h, kappa: float,
                 gamma: float = 1.0) -> np.ndarray:
    """drho/dt of the Lindblad master equation; trace(drho/dt) = 0 to rounding.

    Linear in its matrix argument, so the regression machinery may evolve
    non-Hermitian operators through it as well; only h must be Hermitian
    (sparse or dense, matching the operator table in `space`).
    """
    h_rho = h @ rho
    rho_h = (h @ rho.conj().T).conj().T
    out = -1j * (h_rho - rho_h)

    out += 0.5 * kappa * (
        2.0 * _sandwich(space.a, rho)
        - space.n_diag[:, None] * rho
        - rho * space.n_diag[None, :]
    )
    for m in range(space.n_atoms):
        pe = space.pe_diag[m]
        out += 0.5 * gamma * (
            2.0 * _sandwich(space.sm[m], rho)
            - pe[:, None] * rho
            - rho * pe[None, :]
        )
    return out


def force(space: HilbertSpace, params: PhysParams, rho: np.ndarray, x, t: float,
          validate: bool = True) -> np.ndarray:
    """Semiclassical force F_m = -<dH/dx_m> in hbar*k*Gamma per atom.

    F_m = -2 g cos(x_m) Re<a^dag sigma^-_m> + 2 Omega sin(x_m) Re<sigma^+_m>
          + eta sin(x_m) (<sigma^+_m> e^{i Delta_eta t} + c.c.)

    With validate=True the pump term's imaginary residue is asserted below
    1e-12 (it vanishes identically for Hermitian rho).
    """
    x = np.asarray(x, dtype=float)
    out = np.empty(space.n_atoms)
    phase = np.exp(1j * params.delta_eta * t)
    for m in range(space.n_atoms):
        ad_sm = expect(space.adag_sm[m], rho)
        s_plus = expect(space.sp_[m], rho)
        eta_term = s_plus * phase + np.conj(s_plus) * np.conj(phase)
        if validate and abs(eta_term.imag) > 1e-12 * max(1.0, abs(eta_term.real)):
            raise ValueError("pump force term has a non-Hermitian residue; rho is not Hermitian")
        out[m] = (
            -2.0 * params.g * np.cos(x[m]) * ad_sm.real
            + 2.0 * params.omega_drive * np.sin(x[m]) * s_plus.real
            + params.eta * np.sin(x[m]) * eta_term.real
        )
    return out


def init_ensemble(n_atoms: int, p_range: tuple[float, float], seed: int) -> list[AtomPhase]:
    """Ensemble start: x_m = m*pi and |p_m| uniform in p_range with a
    seeded random sign; deterministic for a fixed seed."""
    lo, hi = float(p_range[0]), float(p_range[1])
    if hi < lo:
        raise ValueError("empty momentum range")
    rng = np.random.default_rng(seed)
    mags = rng.uniform(lo, hi, n_atoms)
    signs = np.where(rng.random(n_atoms) < 0.5, -1.0, 1.0)
    return [AtomPhase(x=float((m + 1) * np.pi), p=float(s * mag))
            for m, (mag, s) in enumerate(zip(mags, signs))]


def _phases_arrays(phases: list[AtomPhase]) -> tuple[np.ndarray, np.ndarray]:
    return (np.array([ph.x for ph in phases], dtype=float),
            np.array([ph.p for ph in phases], dtype=float))


def simulate_full(
    params: PhysParams,
    phases: list[AtomPhase],
    t_span: tuple[float, float],
    sample_dt: float,
    rho0: np.ndarray | None = None,
    rel_tol: float = 1e-8,
    abs_tol: float = 1e-10,
    dim_budget: int = 4096,
    check_positivity: bool | None = None,
    store_states_from: float | None = None,
    space: HilbertSpace | None = None,
    cache_hamiltonian: bool | None = None,
) -> ObservableTrajectory:
    """Integrate the coupled Lindblad + motion system and sample observables.

    The flat ODE state is [vec(rho), x_1..x_N, p_1..p_N] as one complex
    vector.  Per-sample diagnostics record the trace error, Hermiticity
    residue and (when checked) the minimum eigenvalue; an eigenvalue below
    -1e-6 aborts with PositivityError.  check_positivity defaults to True
    for dim <= 256 (the eigendecomposition is the per-sample cost driver).

    With eta = 0 (or delta_eta = 0) and pinned atoms the Hamiltonian is
    time independent and cached once.
    """
    if space is None:
        space = build_space(params.n_atoms, params.n_max, dim_budget=dim_budget)
    if len(phases) != params.n_atoms:
        raise ValueError("need one AtomPhase per atom")
    x0, p0 = _phases_arrays(phases)
    if rho0 is None:
        rho0 = space.ground_state()
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (space.dim, space.dim):
        raise ValueError("rho0 has the wrong dimension for this space")
    if check_positivity is None:
        check_positivity = space.dim <= 256

    n_atoms, dim = space.n_atoms, space.dim
    d2 = dim * dim
    if cache_hamiltonian is None:
        cache_hamiltonian = params.omega_r == 0.0 and (
            params.eta == 0.0 or params.delta_eta == 0.0
        )
    elif cache_hamiltonian and not (
        params.omega_r == 0.0 and (params.eta == 0.0 or params.delta_eta == 0.0)
    ):
        raise ValueError("cannot cache a time-dependent Hamiltonian")

    # below ~64 dimensions dense matrices beat scipy sparse by a wide margin
    work = space.dense_ops() if dim <= 64 else space
    h_cache = _assemble_hamiltonian(work, params, x0, 0.0) if cache_hamiltonian else None

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        rho = y[:d2].reshape(dim, dim)
        x = y[d2:d2 + n_atoms].real
        p = y[d2 + n_atoms:].real
        h = h_cache if h_cache is not None else _assemble_hamiltonian(work, params, x, t)
        drho = lindblad_rhs(work, rho, h, params.kappa, params.gamma)
        dy = np.empty_like(y)
        dy[:d2] = drho.ravel()
        dy[d2:d2 + n_atoms] = 2.0 * params.omega_r * p
        dy[d2 + n_atoms:] = force(work, params, rho, x, t, validate=False)
        return dy

    y0 = np.concatenate([rho0.ravel(), x0.astype(complex), p0.astype(complex)])

    times: list[float] = []
    n_ph: list[float] = []
    a_mean: list[complex] = []
    pops: list[np.ndarray] = []
    xs: list[np.ndarray] = []
    ps: list[np.ndarray] = []
    trace_err: list[float] = []
    herm_err: list[float] = []
    min_eig: list[float] = []
    kept_t: list[float] = []
    kept_y: list[np.ndarray] = []

    def observe(t: float, y: np.ndarray) -> None:
        rho = y[:d2].reshape(dim, dim)
        times.append(t)
        terr = abs(np.trace(rho).real - 1.0) + abs(np.trace(rho).imag)
        herr = float(np.max(np.abs(rho - rho.conj().T)))
        trace_err.append(terr)
        herm_err.append(herr)
        if check_positivity:
            lam = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
            min_eig.append(lam)
            if lam < -POSITIVITY_ABORT:
                raise PositivityError(
                    f"min eigenvalue {lam:.3e} < -{POSITIVITY_ABORT} at t={t:.6g}; "
                    "increase n_max"
                )
        obs = Observables.from_rho(work, rho)
        n_ph.append(obs.n_photon)
        a_mean.append(obs.a_mean)
        pops.append(obs.population)
        xs.append(y[d2:d2 + n_atoms].real.copy())
        ps.append(y[d2 + n_atoms:].real.copy())
        if store_states_from is not None and t >= store_states_from - 1e-12:
            kept_t.append(t)
            kept_y.append(y.copy())

    problem = OdeProblem(rhs=rhs, t_span=t_span, y0=y0, sample_dt=sample_dt)
    stats = integrate_observed(problem, observe, rel_tol=rel_tol, abs_tol=abs_tol)

    diagnostics = {"trace_err": np.asarray(trace_err), "herm_err": np.asarray(herm_err)}
    if check_positivity:
        diagnostics["min_eig"] = np.asarray(min_eig)
    return ObservableTrajectory(
        times=np.asarray(times),
        n_photon=np.asarray(n_ph),
        a_mean=np.asarray(a_mean),
        population=np.stack(pops, axis=1),
        x=np.stack(xs, axis=1),
        p=np.stack(ps, axis=1),
        stats=stats,
        diagnostics=diagnostics,
        state_times=np.asarray(kept_t) if kept_t else None,
        states=np.asarray(kept_y) if kept_y else None,
    )

"""Second-order cumulant solver for the coupled atom-field moment system.

Closed equations for <a>, <a^dag a>, <sigma^-_m>, <a sigma^+_m>,
<sigma^+_m sigma^-_m> and the pair coherences <sigma^+_m sigma^-_j>, with
third-order moments factorized to second order, plus per-atom semiclassical
motion.  The equation count grows as O(N^2), which keeps ensembles of a few
hundred atoms tractable where the full density matrix is hopeless.

Each tracked atom m may stand for a cluster of N_m identical physical atoms
(multiplicities); the cavity sums then carry the weights N_j, and clusters
with N_m >= 2 track one intra-cluster pair coherence so that a weighted
atom is exactly equivalent to that many identical tracked atoms.

Storage: one flat complex vector.  Real moments (photon number, populations,
positions, momenta) live in complex slots whose imaginary parts stay zero;
pair coherences are kept only for m < j, the m > j half being the complex
conjugate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ode import OdeProblem, integrate_observed
from .params import AtomPhase, PhysParams
from .results import ObservableTrajectory

__all__ = [
    "Multiplicity",
    "CumulantLayout",
    "CumulantState",
    "CumulantNanError",
    "cumulant_rhs",
    "simulate_cumulant",
    "memory_and_count",
    "reconstruct_cross",
]


class CumulantNanError(RuntimeError):
    """A moment derivative became non-finite; carries the moment label."""


@dataclass(frozen=True)
class Multiplicity:
    """Cluster sizes N_j, one per tracked atom."""

    n_per_site: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(n < 1 for n in self.n_per_site):
            raise ValueError("cluster sizes must be >= 1")


class CumulantLayout:
    """Index map of the packed moment vector for N tracked atoms."""

    def __init__(self, n_atoms: int, multiplicities: Multiplicity | Sequence[int] | None = None):
        if n_atoms < 1:
            raise ValueError("n_atoms must be >= 1")
        if multiplicities is None:
            mult = np.ones(n_atoms, dtype=int)
        elif isinstance(multiplicities, Multiplicity):
            mult = np.asarray(multiplicities.n_per_site, dtype=int)
        else:
            mult = np.asarray(list(multiplicities), dtype=int)
        if mult.shape != (n_atoms,) or np.any(mult < 1):
            raise ValueError("multiplicities must give one weight >= 1 per atom")

        n = n_atoms
        self.n_atoms = n
        self.multiplicities = mult
        self.a = 0
        self.n_photon = 1
        self.sm = slice(2, 2 + n)
        self.asp = slice(2 + n, 2 + 2 * n)
        self.pop = slice(2 + 2 * n, 2 + 3 * n)
        self.x = slice(2 + 3 * n, 2 + 4 * n)
        self.p = slice(2 + 4 * n, 2 + 5 * n)
        n_pairs = n * (n - 1) // 2
        self.cross = slice(2 + 5 * n, 2 + 5 * n + n_pairs)
        self.iu = np.triu_indices(n, k=1)
        self.intra_sites = np.flatnonzero(mult >= 2)
        self.intra = slice(self.cross.stop, self.cross.stop + len(self.intra_sites))
        self.size = self.intra.stop

    def describe(self, idx: int) -> str:
        """Human-readable name of the moment stored at a flat index."""
        n = self.n_atoms
        if idx == self.a:
            return "<a>"
        if idx == self.n_photon:
            return "<adag a>"
        for name, sl in (("<sigma^-_%d>", self.sm), ("<a sigma^+_%d>", self.asp),
                         ("pop_%d", self.pop), ("x_%d", self.x), ("p_%d", self.p)):
            if sl.start <= idx < sl.stop:
                return name % (idx - sl.start)
        if self.cross.start <= idx < self.cross.stop:
            k = idx - self.cross.start
            return f"<sigma^+_{self.iu[0][k]} sigma^-_{self.iu[1][k]}>"
        if self.intra.start <= idx < self.intra.stop:
            return f"intra-cluster pair at site {self.intra_sites[idx - self.intra.start]}"
        return f"component {idx}"


@dataclass
class CumulantState:
    """Packed moment vector with its layout and snapshot time."""

    vec: np.ndarray
    layout: CumulantLayout
    t: float = 0.0

    @classmethod
    def cold_start(
        cls,
        x0: Sequence[float],
        p0: Sequence[float],
        multiplicities: Multiplicity | Sequence[int] | None = None,
        excited: Sequence[int] = (),
    ) -> "CumulantState":
        """Uncorrelated start: ground-state atoms (or excited where listed),
        cavity vacuum, every coherence zero."""
        x0 = np.asarray(x0, dtype=float)
        p0 = np.asarray(p0, dtype=float)
        if x0.shape != p0.shape or x0.ndim != 1:
            raise ValueError("x0 and p0 must be equal-length 1d sequences")
        layout = CumulantLayout(len(x0), multiplicities)
        vec = np.zeros(layout.size, dtype=complex)
        vec[layout.x] = x0
        vec[layout.p] = p0
        for m in excited:
            vec[layout.pop.start + m] = 1.0
        return cls(vec=vec, layout=layout, t=0.0)

    @classmethod
    def from_phases(cls, phases: Sequence[AtomPhase], **kw) -> "CumulantState":
        return cls.cold_start([ph.x for ph in phases], [ph.p for ph in phases], **kw)

    @property
    def a_mean(self) -> complex:
        return complex(self.vec[self.layout.a])

    @property
    def n_photon(self) -> float:
        return float(self.vec[self.layout.n_photon].real)

    @property
    def sigma_minus(self) -> np.ndarray:
        return self.vec[self.layout.sm]

    @property
    def a_sigma_plus(self) -> np.ndarray:
        return self.vec[self.layout.asp]

    @property
    def population(self) -> np.ndarray:
        return self.vec[self.layout.pop].real

    @property
    def x(self) -> np.ndarray:
        return self.vec[self.layout.x].real

    @property
    def p(self) -> np.ndarray:
        return self.vec[self.layout.p].real

    def validate(self, tol: float = 1e-6) -> None:
        """Check the physicality bands of the second-order closure."""
        pop = self.population
        if np.any(pop < -tol) or np.any(pop > 1.0 + tol):
            raise ValueError("population outside [0, 1] beyond tolerance")
        if self.n_photon < -1e-8:
            raise ValueError("negative photon number")
        cs = np.abs(self.sigma_minus) ** 2 - pop * (1.0 - pop)
        if np.any(cs > tol):
            raise ValueError("Cauchy-Schwarz violation in |<sigma^->|^2")


def reconstruct_cross(state: CumulantState) -> np.ndarray:
    """Full N x N matrix of <sigma^+_m sigma^-_j>: stored upper triangle,
    conjugate lower triangle, populations on the diagonal.  Hermitian by
    construction."""
    lay = state.layout
    n = lay.n_atoms
    c = np.zeros((n, n), dtype=complex)
    c[lay.iu] = state.vec[lay.cross]
    c = c + c.conj().T
    c[np.diag_indices(n)] = state.population
    return c


def memory_and_count(n_atoms: int, multiplicities: Multiplicity | Sequence[int] | None = None) -> int:
    """Number of independent real ODE components: 3 + 7N + N(N-1), plus 2
    per intra-cluster coherence when clusters are weighted."""
    if n_atoms < 1:
        raise ValueError("n_atoms must be >= 1")
    count = 3 + 7 * n_atoms + n_atoms * (n_atoms - 1)
    if multiplicities is not None:
        layout = CumulantLayout(n_atoms, multiplicities)
        count += 2 * len(layout.intra_sites)
    return count


def _make_rhs(params: PhysParams, layout: CumulantLayout):
    """Closure evaluating the moment equations; pure and reentrant."""
    n = layout.n_atoms
    kappa, g = params.kappa, params.g
    gamma = params.gamma
    omega, eta, d_eta = params.omega_drive, params.eta, params.delta_eta
    d_c = params.delta_c
    omega_r = params.omega_r
    dam = params.delta_am()
    inhomogeneous = bool(np.ptp(dam) > 0.0)
    nj = layout.multiplicities.astype(float)
    iu = layout.iu
    intra_sites = layout.intra_sites

    def rhs(t: float, vec: np.ndarray) -> np.ndarray:
        a = vec[layout.a]
        nph = vec[layout.n_photon]
        sm = vec[layout.sm]
        asp = vec[layout.asp]
        pop = vec[layout.pop]
        x = vec[layout.x].real
        p = vec[layout.p].real

        sx, cx = np.sin(x), np.cos(x)
        wp = omega + eta * np.exp(1j * d_eta * t)
        wm = np.conj(wp)
        zeta = 2.0 * pop - 1.0

        out = np.empty_like(vec)
        out[layout.a] = -(0.5 * kappa - 1j * d_c) * a - 1j * g * np.sum(nj * sx * sm)
        out[layout.sm] = (
            -(0.5 * gamma - 1j * dam) * sm
            + 1j * g * sx * a * zeta
            + 1j * wp * cx * zeta
        )
        out[layout.n_photon] = -kappa * nph + 1j * g * np.sum(nj * sx * (asp - np.conj(asp)))

        if n > 1:
            c = np.zeros((n, n), dtype=complex)
            c[iu] = vec[layout.cross]
            c = c + c.conj().T
            cross_sum = c @ (nj * sx)
        else:
            cross_sum = np.zeros(1, dtype=complex)
        if len(intra_sites):
            intra = vec[layout.intra]
            cross_sum = cross_sum.copy()
            cross_sum[intra_sites] += (nj[intra_sites] - 1.0) * sx[intra_sites] * intra

        out[layout.asp] = (
            -(0.5 * kappa + 0.5 * gamma + 1j * dam - 1j * d_c) * asp
            + 1j * g * sx * (nph - 2.0 * nph * pop - pop)
            - 1j * g * cross_sum
            - 1j * wm * cx * a * zeta
        )
        out[layout.pop] = (
            -gamma * pop
            - 1j * g * sx * (asp - np.conj(asp))
            - 1j * wp * cx * np.conj(sm)
            + 1j * wm * cx * sm
        )

        if n > 1:
            sz = sx * zeta
            cz = cx * zeta
            dc = (
                -gamma * c
                - 1j * g * sz[:, None] * np.conj(asp)[None, :]
                + 1j * g * asp[:, None] * sz[None, :]
                + 1j * wp * np.conj(sm)[:, None] * cz[None, :]
                - 1j * wm * cz[:, None] * sm[None, :]
            )
            if inhomogeneous:
                dc -= 1j * (dam[:, None] - dam[None, :]) * c
            out[layout.cross] = dc[iu]
        if len(intra_sites):
            s = intra_sites
            out[layout.intra] = -gamma * intra + zeta[s] * (
                1j * g * sx[s] * (asp[s] - np.conj(asp[s]))
                + 1j * cx[s] * (wp * np.conj(sm[s]) - wm * sm[s])
            )

        out[layout.x] = 2.0 * omega_r * p
        phase = np.exp(1j * d_eta * t)
        dp = (
            -2.0 * g * cx * asp.real
            + 2.0 * omega * sx * sm.real
            + eta * sx * (np.conj(sm) * phase + sm * np.conj(phase)).real
        )
        out[layout.p] = dp

        if not np.all(np.isfinite(out.view(np.float64))):
            bad = int(np.argmin(np.isfinite(out.view(np.float64)))) // 2
            raise CumulantNanError(
                f"non-finite derivative at t={t:.6g} for {layout.describe(bad)}"
            )
        return out

    return rhs


def cumulant_rhs(state: CumulantState, params: PhysParams, t: float | None = None) -> np.ndarray:
    """Time derivative of a packed moment vector (same layout as state.vec)."""
    if params.n_atoms != state.layout.n_atoms:
        raise ValueError("params.n_atoms disagrees with the state layout")
    return _make_rhs(params, state.layout)(state.t if t is None else t, state.vec)


def simulate_cumulant(
    params: PhysParams,
    init: CumulantState,
    t_span: tuple[float, float],
    sample_dt: float,
    rel_tol: float = 1e-8,
    abs_tol: float = 1e-10,
    store_states_from: float | None = None,
) -> ObservableTrajectory:
    """Integrate the moment system and sample observables.

    store_states_from keeps the full packed vector for samples at or after
    that time; spectrum anchoring reads them back as CumulantState objects.
    """
    if params.n_atoms != init.layout.n_atoms:
        raise ValueError("params.n_atoms disagrees with the initial state")
    layout = init.layout
    rhs = _make_rhs(params, layout)

    times: list[float] = []
    n_ph: list[float] = []
    a_mean: list[complex] = []
    pops: list[np.ndarray] = []
    xs: list[np.ndarray] = []
    ps: list[np.ndarray] = []
    kept_t: list[float] = []
    kept_y: list[np.ndarray] = []

    def observe(t: float, y: np.ndarray) -> None:
        times.append(t)
        n_ph.append(float(y[layout.n_photon].real))
        a_mean.append(complex(y[layout.a]))
        pops.append(y[layout.pop].real.copy())
        xs.append(y[layout.x].real.copy())
        ps.append(y[layout.p].real.copy())
        if store_states_from is not None and t >= store_states_from - 1e-12:
            kept_t.append(t)
            kept_y.append(y.copy())

    problem = OdeProblem(rhs=rhs, t_span=t_span, y0=init.vec, sample_dt=sample_dt)
    stats = integrate_observed(problem, observe, rel_tol=rel_tol, abs_tol=abs_tol)

    return ObservableTrajectory(
        times=np.asarray(times),
        n_photon=np.asarray(n_ph),
        a_mean=np.asarray(a_mean),
        population=np.stack(pops, axis=1),
        x=np.stack(xs, axis=1),
        p=np.stack(ps, axis=1),
        stats=stats,
        state_times=np.asarray(kept_t) if kept_t else None,
        states=np.asarray(kept_y) if kept_y else None,
    )

"""Cavity output spectrum via regression-style two-time correlations.

The first-order correlation g1(tau) = <a^dag(t0+tau) a(t0)> obeys, under the
second-order closure, the same linear structure as the <a^dag> and
<sigma^+_m> moment equations, with the mean-field coefficients (2 pop_m - 1),
x_m supplied by the co-integrated single-time system and the drive
inhomogeneity multiplying the anchored <a>(t0).  Because the dynamics never
reaches a true steady state, g1 is averaged over equidistant anchors in the
late stage of a trajectory before the Wiener-Khinchin transform

    S(omega) = 2 Re integral_0^inf dtau e^{-i omega tau} g1(tau).

Frequencies come out in the frame of the first drive laser; the plot axis is
shifted by +delta_a so that zero is the bare atomic frequency.  Atoms
translating at constant momentum p imprint motional sidebands at
+-2 omega_r p around the carrier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.signal

from .cumulant import CumulantLayout, CumulantState, Multiplicity, _make_rhs
from .ode import OdeProblem, integrate
from .params import PhysParams
from .results import ObservableTrajectory

__all__ = [
    "CorrelationResult",
    "SpectrumResult",
    "Peak",
    "correlation_evolve",
    "average_g1",
    "wiener_khinchin",
    "sideband_frequencies",
    "find_peaks",
    "stationary_momentum",
]


@dataclass
class CorrelationResult:
    """g1(tau) and the atomic cross correlations <sigma^+_m(t0+tau) a(t0)>."""

    tau: np.ndarray
    g1: np.ndarray
    cross: np.ndarray  # (N, T)
    t0: float


@dataclass
class Peak:
    center: float
    height: float
    fwhm: float


@dataclass
class SpectrumResult:
    """Real spectral density on a uniform frequency grid.

    omega is the detuning from the bare atomic frequency; omega_frame is the
    raw rotating-frame axis (omega = omega_frame + delta_a).
    """

    omega: np.ndarray
    omega_frame: np.ndarray
    s: np.ndarray
    metadata: dict = field(default_factory=dict)
    peaks: list[Peak] = field(default_factory=list)

    @property
    def s_normalized(self) -> np.ndarray:
        peak = float(np.max(self.s))
        return self.s / peak if peak > 0 else self.s.copy()

    @property
    def bin_width(self) -> float:
        return float(self.omega[1] - self.omega[0])


def correlation_evolve(
    anchor: CumulantState,
    params: PhysParams,
    tau_max: float,
    sample_dt: float,
    co_evolve: bool = True,
    rel_tol: float = 1e-8,
    abs_tol: float = 1e-10,
) -> CorrelationResult:
    """Evolve {g1, cross_m} in tau from a single-time anchor state.

    Initial conditions g1(0) = <a^dag a>(t0) and cross_m(0) = <a sigma^+_m>(t0)
    (sigma^+_m and a commute, so that moment is <sigma^+_m a> as well).  The
    single-time moments co-evolve alongside by default; co_evolve=False
    freezes the background at the anchor, leaving only the explicit drive
    phases time dependent.
    """
    if anchor.layout.n_atoms != params.n_atoms:
        raise ValueError("anchor missing required moments: layout does not match params")
    lay = anchor.layout
    n = lay.n_atoms
    size = lay.size
    base_rhs = _make_rhs(params, lay)

    dam = params.delta_am()
    nj = lay.multiplicities.astype(float)
    kappa, g, gamma = params.kappa, params.g, params.gamma
    d_c = params.delta_c
    a_anchor = anchor.a_mean
    t0 = anchor.t

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        out = np.zeros_like(y)
        if co_evolve:
            out[:size] = base_rhs(t, y[:size])
            x = y[lay.x].real
            pop = y[lay.pop].real
        else:
            x = anchor.x
            pop = anchor.population
        g1 = y[size]
        cross = y[size + 1:]
        sx, cx = np.sin(x), np.cos(x)
        zeta = 2.0 * pop - 1.0
        wm = params.omega_drive + params.eta * np.exp(-1j * params.delta_eta * t)
        out[size] = -(0.5 * kappa + 1j * d_c) * g1 + 1j * g * np.sum(nj * sx * cross)
        out[size + 1:] = (
            -(0.5 * gamma + 1j * dam) * cross
            - 1j * g * sx * zeta * g1
            - 1j * wm * cx * zeta * a_anchor
        )
        return out

    y0 = np.concatenate([anchor.vec, [complex(anchor.n_photon)], anchor.a_sigma_plus])
    problem = OdeProblem(rhs=rhs, t_span=(t0, t0 + tau_max), y0=y0, sample_dt=sample_dt)
    traj = integrate(problem, rel_tol=rel_tol, abs_tol=abs_tol)

    return CorrelationResult(
        tau=traj.times - t0,
        g1=traj.states[:, size].copy(),
        cross=traj.states[:, size + 1:].T.copy(),
        t0=t0,
    )


def average_g1(
    trajectory: ObservableTrajectory,
    params: PhysParams,
    n_anchors: int,
    window: float,
    tau_max: float,
    sample_dt: float,
    multiplicities: Multiplicity | list[int] | None = None,
    co_evolve: bool = True,
    rel_tol: float = 1e-8,
    abs_tol: float = 1e-10,
) -> CorrelationResult:
    """Mean of g1 over n_anchors equidistant anchors in the final window.

    Anchors are the stored states closest to t_end - window + k * window /
    (n_anchors - 1); the trajectory must have been run with
    store_states_from covering that window.
    """
    if trajectory.states is None or trajectory.state_times is None:
        raise ValueError("trajectory carries no stored states for anchoring")
    t_end = float(trajectory.times[-1])
    t_start = float(trajectory.times[0])
    if window > t_end - t_start:
        raise ValueError("window exceeds trajectory length")
    if n_anchors < 1:
        raise ValueError("need at least one anchor")

    if n_anchors == 1:
        targets = np.array([t_end])
    else:
        targets = t_end - window + window * np.arange(n_anchors) / (n_anchors - 1)
    state_times = trajectory.state_times
    if targets[0] < state_times[0] - 1e-9:
        raise ValueError("stored states do not cover the anchor window")

    layout = CumulantLayout(params.n_atoms, multiplicities)
    g1_sum = None
    cross_sum = None
    tau = None
    for target in targets:
        idx = int(np.argmin(np.abs(state_times - target)))
        anchor = CumulantState(vec=trajectory.states[idx].copy(), layout=layout,
                               t=float(state_times[idx]))
        corr = correlation_evolve(anchor, params, tau_max, sample_dt,
                                  co_evolve=co_evolve, rel_tol=rel_tol, abs_tol=abs_tol)
        if g1_sum is None:
            tau = corr.tau
            g1_sum = corr.g1.copy()
            cross_sum = corr.cross.copy()
        else:
            g1_sum += corr.g1
            cross_sum += corr.cross
    return CorrelationResult(tau=tau, g1=g1_sum / len(targets),
                             cross=cross_sum / len(targets), t0=float(targets[0]))


def wiener_khinchin(
    g1,
    tau_dt: float | None = None,
    delta_a: float = 0.0,
    apodization_tw: float | None = None,
    pad_factor: int = 8,
) -> SpectrumResult:
    """One-sided transform S(omega) = 2 Re of the zero-padded FFT of g1.

    Trapezoidal end weights discretize the integral; an optional exponential
    window exp(-tau/apodization_tw) suppresses truncation ringing and is
    recorded in the metadata.  Accepts a CorrelationResult (its tau grid must
    be uniform) or a raw complex series plus tau_dt.
    """
    if isinstance(g1, CorrelationResult):
        tau = g1.tau
        steps = np.diff(tau)
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=1e-12):
            raise ValueError("non-uniform tau grid")
        tau_dt = float(steps[0])
        series = g1.g1
    else:
        if tau_dt is None:
            raise ValueError("tau_dt is required with a raw g1 series")
        series = np.asarray(g1, dtype=complex)
        tau = tau_dt * np.arange(len(series))

    weights = np.ones(len(series))
    weights[0] = 0.5
    weights[-1] = 0.5
    if apodization_tw is not None:
        weights = weights * np.exp(-tau / apodization_tw)

    n_fft = 1 << max(8, math.ceil(math.log2(len(series) * max(1, pad_factor))))
    transform = np.fft.fft(series * weights, n_fft) * tau_dt
    s = 2.0 * transform.real
    omega_frame = 2.0 * np.pi * np.fft.fftfreq(n_fft, d=tau_dt)

    order = np.argsort(omega_frame)
    omega_frame = omega_frame[order]
    s = s[order]
    return SpectrumResult(
        omega=omega_frame + delta_a,
        omega_frame=omega_frame,
        s=s,
        metadata={
            "tau_max": float(tau[-1]),
            "tau_dt": tau_dt,
            "apodization_tw": apodization_tw,
            "pad_factor": pad_factor,
            "delta_a_shift": delta_a,
        },
    )


def sideband_frequencies(omega_r: float, p_stationary: float) -> tuple[float, float]:
    """Motional sideband offsets (omega_plus, omega_minus) = (+-2 omega_r p)."""
    shift = 2.0 * omega_r * p_stationary
    return (shift, -shift)


def find_peaks(spectrum: SpectrumResult, min_prominence: float) -> list[Peak]:
    """Local maxima above the prominence threshold, with parabolic sub-bin
    center refinement and FWHM by linear interpolation at half prominence
    height; sorted by center frequency."""
    s = spectrum.s
    idx, _ = scipy.signal.find_peaks(s, prominence=min_prominence)
    if len(idx) == 0:
        return []
    widths, _, _, _ = scipy.signal.peak_widths(s, idx, rel_height=0.5)
    d_omega = spectrum.bin_width
    peaks = []
    for i, w in zip(idx, widths):
        if 0 < i < len(s) - 1:
            denom = s[i - 1] - 2.0 * s[i] + s[i + 1]
            shift = 0.5 * (s[i - 1] - s[i + 1]) / denom if denom != 0 else 0.0
            height = s[i] - 0.25 * (s[i - 1] - s[i + 1]) * shift
        else:
            shift, height = 0.0, s[i]
        peaks.append(Peak(center=float(spectrum.omega[i] + shift * d_omega),
                          height=float(height), fwhm=float(w * d_omega)))
    peaks.sort(key=lambda pk: pk.center)
    return peaks


def stationary_momentum(trajectory: ObservableTrajectory, window: float,
                        threshold: float = 1.0) -> float:
    """Mean late-time |p| of the translating (non-cooled) atoms.

    Averages |p_m(t)| over the final window, keeps atoms whose average
    exceeds threshold (cooled atoms oscillate well below it), and returns
    the mean over that subset; 0.0 when every atom is cooled.
    """
    t_end = trajectory.times[-1]
    mask = trajectory.times >= t_end - window
    mean_abs_p = np.mean(np.abs(trajectory.p[:, mask]), axis=1)
    moving = mean_abs_p > threshold
    if not np.any(moving):
        return 0.0
    return float(np.mean(mean_abs_p[moving]))

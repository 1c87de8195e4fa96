"""Integration engine: analytic problems, sampling, convergence, aborts."""

import math

import numpy as np
import pytest

from superlaser.ode import (IntegrationError, NonFiniteRhsError, OdeProblem,
                            integrate)


def test_exponential_decay():
    prob = OdeProblem(rhs=lambda t, y: -y, t_span=(0.0, 1.0),
                      y0=np.array([1.0 + 0j]), sample_dt=0.1)
    traj = integrate(prob)
    assert traj.states[-1, 0].real == pytest.approx(math.exp(-1.0), abs=1e-8)
    assert traj.stats.steps > 0
    assert traj.stats.rhs_evals > traj.stats.steps


def test_phase_rotation_preserves_modulus():
    prob = OdeProblem(rhs=lambda t, y: 1j * y, t_span=(0.0, 2 * math.pi),
                      y0=np.array([1.0 + 0j]), sample_dt=0.5)
    traj = integrate(prob, rel_tol=1e-10, abs_tol=1e-12)
    assert traj.states[-1, 0] == pytest.approx(1.0 + 0j, abs=1e-8)
    assert np.allclose(np.abs(traj.states[:, 0]), 1.0, atol=1e-8)


def test_harmonic_oscillator_energy_drift():
    def rhs(t, y):
        return np.array([y[1], -y[0]])

    prob = OdeProblem(rhs=rhs, t_span=(0.0, 20 * math.pi),
                      y0=np.array([1.0 + 0j, 0.0 + 0j]), sample_dt=0.5)
    traj = integrate(prob, rel_tol=1e-9, abs_tol=1e-12)
    energy = np.abs(traj.states[:, 0]) ** 2 + np.abs(traj.states[:, 1]) ** 2
    assert np.max(np.abs(energy - energy[0])) < 1e-6


def test_halving_tolerance_never_worsens_error():
    y0 = np.array([1.0 + 0j])
    cases = [
        (lambda t, y: -y, 1.0, math.exp(-1.0)),
        (lambda t, y: 1j * y, 2 * math.pi, 1.0),
    ]
    for rhs, t1, exact in cases:
        errs = []
        tol = 1e-4
        while tol > 1e-10:
            prob = OdeProblem(rhs=rhs, t_span=(0.0, t1), y0=y0, sample_dt=t1)
            traj = integrate(prob, rel_tol=tol, abs_tol=tol * 1e-2)
            errs.append(abs(traj.states[-1, 0] - exact))
            tol /= 2.0
        for a, b in zip(errs, errs[1:]):
            assert b <= a + 1e-13


def test_sampling_grid_spacing_and_short_last_interval():
    prob = OdeProblem(rhs=lambda t, y: -y, t_span=(0.0, 1.05),
                      y0=np.array([1.0 + 0j]), sample_dt=0.25)
    traj = integrate(prob)
    assert np.all(np.diff(traj.times) > 0)
    assert traj.times == pytest.approx([0.0, 0.25, 0.5, 0.75, 1.0, 1.05])


def test_samples_independent_of_sample_dt():
    def rhs(t, y):
        return np.array([1j * 3.0 * y[0] - 0.2 * y[0]])

    coarse = integrate(OdeProblem(rhs=rhs, t_span=(0.0, 4.0),
                                  y0=np.array([1.0 + 0j]), sample_dt=0.5))
    fine = integrate(OdeProblem(rhs=rhs, t_span=(0.0, 4.0),
                                y0=np.array([1.0 + 0j]), sample_dt=0.25))
    # same step sequence, same dense polynomials: common times agree far
    # below the 10 * rel_tol bound
    common = np.isin(np.round(fine.times / 0.5), np.round(coarse.times / 0.5))
    diff = np.max(np.abs(fine.states[::2, 0] - coarse.states[:, 0]))
    assert common.any()
    assert diff <= 10 * 1e-8


def test_nonfinite_rhs_aborts_with_diagnostic():
    def rhs(t, y):
        if t > 0.5:
            return np.array([np.nan + 0j])
        return -y

    prob = OdeProblem(rhs=rhs, t_span=(0.0, 2.0), y0=np.array([1.0 + 0j]), sample_dt=0.1)
    with pytest.raises(NonFiniteRhsError) as err:
        integrate(prob)
    assert err.value.index == 0
    assert 0.0 < err.value.last_valid_time <= 2.0


def test_blow_up_aborts_with_last_valid_time():
    prob = OdeProblem(rhs=lambda t, y: y * y, t_span=(0.0, 2.0),
                      y0=np.array([1.0 + 0j]), sample_dt=0.1)
    with pytest.raises(IntegrationError) as err:
        integrate(prob)
    assert err.value.last_valid_time < 2.0


def test_argument_validation():
    prob = OdeProblem(rhs=lambda t, y: -y, t_span=(1.0, 0.0),
                      y0=np.array([1.0 + 0j]), sample_dt=0.1)
    with pytest.raises(ValueError):
        integrate(prob)
    with pytest.raises(ValueError):
        integrate(OdeProblem(rhs=lambda t, y: -y, t_span=(0.0, 1.0),
                             y0=np.array([1.0 + 0j]), sample_dt=0.1), rel_tol=0.0)

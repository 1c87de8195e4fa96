"""Deterministic CSV and JSON writers for run outputs.

Floats are written with repr (shortest round-trip form), so identical inputs
give byte-identical files; no timestamps anywhere.  CSVs are RFC-4180 style
with a header row, '.' decimal separator and '\n' line endings.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .results import ObservableTrajectory
from .spectrum import Peak, SpectrumResult

__all__ = ["write_csv", "write_json", "write_trajectory_csv", "write_observables_csv",
           "write_spectrum_csv", "write_peaks_json", "WIDE_FORMAT_MAX_ATOMS"]

WIDE_FORMAT_MAX_ATOMS = 256


def _fmt(value) -> str:
    if isinstance(value, (np.floating, float)):
        return repr(float(value))
    if isinstance(value, (np.integer, int)):
        return str(int(value))
    return str(value)


def write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def write_json(path: Path, payload) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_trajectory_csv(path: Path, traj: ObservableTrajectory) -> None:
    """Per-atom phase space and inversion; wide columns up to
    WIDE_FORMAT_MAX_ATOMS atoms, long format (t, atom, x, p, inv) beyond."""
    n = traj.x.shape[0]
    inv = traj.inversion
    if n <= WIDE_FORMAT_MAX_ATOMS:
        header = (["t"] + [f"x_{m+1}" for m in range(n)]
                  + [f"p_{m+1}" for m in range(n)] + [f"inv_{m+1}" for m in range(n)])
        rows = (
            [t, *traj.x[:, i], *traj.p[:, i], *inv[:, i]]
            for i, t in enumerate(traj.times)
        )
    else:
        header = ["t", "atom", "x", "p", "inv"]
        rows = (
            [t, m + 1, traj.x[m, i], traj.p[m, i], inv[m, i]]
            for i, t in enumerate(traj.times)
            for m in range(n)
        )
    write_csv(path, header, rows)


def write_observables_csv(path: Path, traj: ObservableTrajectory) -> None:
    header = ["t", "n_photon", "n_laser", "n_scatter", "re_a", "im_a"]
    nl, ns = traj.n_laser, traj.n_scatter
    rows = (
        [t, traj.n_photon[i], nl[i], ns[i], traj.a_mean[i].real, traj.a_mean[i].imag]
        for i, t in enumerate(traj.times)
    )
    write_csv(path, header, rows)


def write_spectrum_csv(path: Path, spec: SpectrumResult) -> None:
    header = ["omega_minus_omega_a", "s_normalized", "s_raw", "omega_frame"]
    s_norm = spec.s_normalized
    rows = (
        [spec.omega[i], s_norm[i], spec.s[i], spec.omega_frame[i]]
        for i in range(len(spec.omega))
    )
    write_csv(path, header, rows)


def write_peaks_json(path: Path, peaks: list[Peak]) -> None:
    write_json(path, [{"center": pk.center, "height": pk.height, "fwhm": pk.fwhm}
                      for pk in peaks])

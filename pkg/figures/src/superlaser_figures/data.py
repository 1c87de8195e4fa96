"""Readers for the simulation run's file interfaces.

A run directory holds, per label: {label}_trajectory.csv with columns
t, x_1..x_N, p_1..p_N, inv_1..inv_N; {label}_observables.csv with
t, n_photon, n_laser, n_scatter, re_a, im_a; optionally
{label}_spectrum.csv with omega_minus_omega_a, s_normalized, s_raw,
omega_frame; {label}_peaks.json; {label}_profile.csv; and
{label}_manifest.json.  Only these files are consumed; the renderer never
imports the simulation package.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

__all__ = ["MissingColumnError", "MissingFileError", "read_table", "read_json",
           "atom_columns"]


class MissingFileError(FileNotFoundError):
    pass


class MissingColumnError(KeyError):
    def __init__(self, column: str, path: Path):
        super().__init__(column)
        self.column = column
        self.path = path

    def __str__(self) -> str:
        return f"column {self.column!r} not found in {self.path}"


def read_table(path: Path) -> dict[str, np.ndarray]:
    """CSV with a header row into {column: float array}."""
    if not path.exists():
        raise MissingFileError(f"missing data file {path}")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [row for row in reader]
    data = np.asarray(rows, dtype=float)
    if data.size == 0:
        data = data.reshape(0, len(header))
    return {name: data[:, i] for i, name in enumerate(header)}


def read_json(path: Path):
    if not path.exists():
        raise MissingFileError(f"missing data file {path}")
    return json.loads(path.read_text())


def atom_columns(table: dict[str, np.ndarray], stem: str) -> list[str]:
    """All per-atom columns stem_1, stem_2, ... present, in atom order."""
    found = []
    m = 1
    while f"{stem}_{m}" in table:
        found.append(f"{stem}_{m}")
        m += 1
    return found

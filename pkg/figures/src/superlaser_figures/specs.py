"""Declarative figure layouts mirroring the standard result figures.

A FigureSpec lists panels; each panel names its source file kind, the
x-axis quantity and one or more y-axis column patterns.  A trailing '*' in
a column pattern expands to every per-atom column (x_1, x_2, ...).  Specs
are validated against a data directory before rendering, and a missing
column is reported by name.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .data import MissingColumnError, atom_columns, read_table

__all__ = ["PanelSpec", "FigureSpec", "figure_spec", "available_figures", "validate"]


@dataclass(frozen=True)
class PanelSpec:
    title: str
    source: str              # trajectory | observables | spectrum | profile
    x: str
    y: tuple[str, ...]       # column names; 'stem_*' expands per atom
    x_scale: float = 1.0     # e.g. 1/pi for positions
    y_vs_x_scatter: bool = False
    log_y: bool = False
    inset_zoom: float | None = None       # spectrum: half-width of inset
    sideband_markers: bool = False        # spectrum: draw predicted offsets


@dataclass(frozen=True)
class FigureSpec:
    name: str
    label: str               # file prefix of the run outputs
    panels: tuple[PanelSpec, ...]
    ncols: int = 2


_PI = 3.141592653589793


def _trajectory_panels() -> tuple[PanelSpec, PanelSpec]:
    return (
        PanelSpec("position x/pi", "trajectory", "t", ("x_*",), x_scale=1.0, ),
        PanelSpec("momentum p", "trajectory", "t", ("p_*",)),
    )


def figure_spec(name: str, label: str | None = None) -> FigureSpec:
    label = label or name
    if name in ("fig2", "fig5"):
        panels = _trajectory_panels() + (
            PanelSpec("photon number", "observables", "t",
                      ("n_photon", "n_laser", "n_scatter")),
            PanelSpec("inversion", "trajectory", "t", ("inv_*",)),
            PanelSpec("photon number vs position", ("trajectory", "observables"),
                      "x_1", ("n_photon",), x_scale=1.0 / _PI, y_vs_x_scatter=True),
            PanelSpec("inversion vs position", "trajectory", "x_1", ("inv_1",),
                      x_scale=1.0 / _PI, y_vs_x_scatter=True),
        )
        return FigureSpec(name=name, label=label, panels=panels, ncols=2)
    if name == "fig3":
        panels = _trajectory_panels() + (
            PanelSpec("photon number", "observables", "t",
                      ("n_photon", "n_laser", "n_scatter")),
            PanelSpec("inversion", "trajectory", "t", ("inv_*",)),
        )
        return FigureSpec(name=name, label=label, panels=panels, ncols=2)
    if name in ("fig6", "fig7"):
        panels = _trajectory_panels() + (
            PanelSpec("photon number", "observables", "t",
                      ("n_photon", "n_laser", "n_scatter")),
            PanelSpec("late-stage inversion vs position", "trajectory",
                      "x_*", ("inv_*",), x_scale=1.0 / _PI, y_vs_x_scatter=True),
        )
        return FigureSpec(name=name, label=label, panels=panels, ncols=2)
    if name == "fig8":
        panels = (
            PanelSpec("normalized emission spectrum", "spectrum",
                      "omega_minus_omega_a", ("s_normalized",), log_y=True,
                      inset_zoom=1.5, sideband_markers=True),
        )
        return FigureSpec(name=name, label=label, panels=panels, ncols=1)
    if name == "profile":
        panels = (
            PanelSpec("dressed energies", "profile", "x",
                      ("e_plus", "e_minus"), x_scale=1.0 / _PI),
            PanelSpec("dipole forces", "profile", "x",
                      ("f_plus", "f_minus"), x_scale=1.0 / _PI),
        )
        return FigureSpec(name=name, label=label, panels=panels, ncols=1)
    raise ValueError(f"no figure layout named {name!r}")


def available_figures() -> list[str]:
    return ["fig2", "fig3", "fig5", "fig6", "fig7", "fig8", "profile"]


def _sources(panel: PanelSpec) -> tuple[str, ...]:
    return panel.source if isinstance(panel.source, tuple) else (panel.source,)


def validate(spec: FigureSpec, data_dir: Path) -> dict[str, dict]:
    """Load and check every table the spec references; raises
    MissingFileError / MissingColumnError (naming the column)."""
    tables: dict[str, dict] = {}
    for panel in spec.panels:
        for source in _sources(panel):
            if source not in tables:
                tables[source] = read_table(data_dir / f"{spec.label}_{source}.csv")
    for panel in spec.panels:
        srcs = _sources(panel)
        x_table = tables[srcs[0]]
        for pattern in (panel.x, *panel.y):
            table = None
            for source in srcs:
                t = tables[source]
                if pattern.endswith("_*"):
                    if atom_columns(t, pattern[:-2]):
                        table = t
                        break
                elif pattern in t:
                    table = t
                    break
            if table is None:
                path = data_dir / f"{spec.label}_{srcs[-1]}.csv"
                raise MissingColumnError(pattern, path)
        del x_table
    return tables

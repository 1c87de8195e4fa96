"""Deterministic rendering of figure specs from run output directories.

SVG output embeds glyphs as paths and carries no date metadata, so
re-rendering identical inputs yields identical bytes.  The photon-number
panel always overlays the total, the atomic-emission ("laser") part and
the coherent-scatter part; the spectrum figure adds a central-peak inset
and vertical markers at the predicted motional-sideband offsets taken from
the run manifest.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .data import MissingColumnError, atom_columns, read_json
from .specs import FigureSpec, validate

__all__ = ["render"]

_RC = {
    "figure.figsize": (10.0, 7.0),
    "svg.fonttype": "path",
    "svg.hashsalt": "superlaser-figures",
    "font.size": 9,
    "axes.titlesize": 9,
}


def _sources(panel) -> tuple[str, ...]:
    return panel.source if isinstance(panel.source, tuple) else (panel.source,)


def _resolve(tables, sources, pattern, path_hint):
    for source in sources:
        table = tables[source]
        if pattern.endswith("_*"):
            cols = atom_columns(table, pattern[:-2])
            if cols:
                return [table[c] for c in cols]
        elif pattern in table:
            return [table[pattern]]
    raise MissingColumnError(pattern, path_hint)


def render(spec: FigureSpec, data_dir: Path, out_path: Path | None = None,
           fmt: str = "svg") -> Path:
    """Render a validated spec; returns the written image path."""
    data_dir = Path(data_dir)
    tables = validate(spec, data_dir)
    out_path = Path(out_path) if out_path else data_dir / f"{spec.name}.{fmt}"

    manifest = {}
    manifest_path = data_dir / f"{spec.label}_manifest.json"
    if manifest_path.exists():
        manifest = read_json(manifest_path)

    nrows = (len(spec.panels) + spec.ncols - 1) // spec.ncols
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(nrows, spec.ncols, squeeze=False)
        flat = axes.ravel()
        for ax in flat[len(spec.panels):]:
            ax.set_visible(False)
        for ax, panel in zip(flat, spec.panels):
            srcs = _sources(panel)
            hint = data_dir / f"{spec.label}_{srcs[-1]}.csv"
            xs = _resolve(tables, srcs, panel.x, hint)
            ys = [y for pattern in panel.y
                  for y in _resolve(tables, srcs, pattern, hint)]
            multi_x = len(xs) > 1
            for i, y in enumerate(ys):
                x = (xs[i] if multi_x else xs[0]) * panel.x_scale
                label = panel.y[i] if len(panel.y) == len(ys) and len(ys) > 1 else None
                if panel.y_vs_x_scatter:
                    ax.plot(x, y, ".", ms=1.0, alpha=0.5, label=label)
                else:
                    ax.plot(x, y, lw=0.7, label=label)
            if len(panel.y) > 1 and len(panel.y) == len(ys):
                ax.legend(fontsize=7)
            if panel.log_y:
                ax.set_yscale("log")
                positive = np.concatenate([y[y > 0] for y in ys if np.any(y > 0)])
                if positive.size:
                    ax.set_ylim(max(positive.min(), 1e-6 * positive.max()),
                                1.5 * positive.max())
            ax.set_title(panel.title)
            ax.set_xlabel(panel.x)
            if panel.sideband_markers:
                prediction = (manifest.get("extra", {}).get("spectrum", {})
                              .get("sideband_prediction"))
                if prediction:
                    for w in prediction:
                        ax.axvline(w, color="red", ls="--", lw=0.8)
            if panel.inset_zoom is not None:
                inset = ax.inset_axes([0.62, 0.62, 0.36, 0.33])
                x = xs[0] * panel.x_scale
                zoom = np.abs(x) <= panel.inset_zoom
                for y in ys:
                    inset.plot(x[zoom], y[zoom], lw=0.7)
                inset.set_title("central peak", fontsize=7)
        fig.tight_layout()
        fig.savefig(out_path, format=fmt, metadata={"Date": None} if fmt == "svg" else None)
        plt.close(fig)
    return out_path

"""Spec-level layout assertions, rendering determinism, error reporting."""

import csv
import json
import shutil
import subprocess
from pathlib import Path

import numpy as np
import pytest

from superlaser_figures import (MissingColumnError, MissingFileError, figure_spec,
                                render, validate)
from superlaser_figures.specs import available_figures


def write_csv(path, header, columns):
    rows = np.column_stack(columns)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows.tolist())


@pytest.fixture()
def run_dir(tmp_path):
    """Synthetic run outputs following the CLI file schemas (label 'fig5'
    for trajectory figures and 'fig8' for the spectrum figure)."""
    t = np.linspace(0.0, 10.0, 101)
    for label, n_atoms in (("fig5", 1), ("fig8", 2)):
        cols = [t]
        header = ["t"]
        for stem in ("x", "p", "inv"):
            for m in range(1, n_atoms + 1):
                header.append(f"{stem}_{m}")
                cols.append(np.sin(0.3 * t + m) if stem != "x" else 2.0 * t + m)
        write_csv(tmp_path / f"{label}_trajectory.csv", header, cols)
        write_csv(tmp_path / f"{label}_observables.csv",
                  ["t", "n_photon", "n_laser", "n_scatter", "re_a", "im_a"],
                  [t, 0.5 + 0.1 * np.sin(t), 0.4 + 0.1 * np.sin(t),
                   0.1 * np.ones_like(t), np.cos(t), np.sin(t)])
    omega = np.linspace(-30.0, 30.0, 2001)
    s = 1.0 / (omega**2 + 0.04) + 0.2 / ((omega - 8.0) ** 2 + 1.0) \
        + 0.2 / ((omega + 8.0) ** 2 + 1.0)
    write_csv(tmp_path / "fig8_spectrum.csv",
              ["omega_minus_omega_a", "s_normalized", "s_raw", "omega_frame"],
              [omega, s / s.max(), s, omega + 20.0])
    (tmp_path / "fig8_peaks.json").write_text(json.dumps(
        [{"center": 0.0, "height": float(s.max()), "fwhm": 0.4}]))
    (tmp_path / "fig8_manifest.json").write_text(json.dumps(
        {"schema_version": 1, "config": {}, "outputs": {},
         "extra": {"spectrum": {"sideband_prediction": [-8.0, 8.0],
                                "p_stationary": 0.667}}}))
    return tmp_path


class TestSpecs:
    def test_fig5_layout_matches_the_six_panel_figure(self):
        spec = figure_spec("fig5")
        assert len(spec.panels) == 6
        titles = [p.title for p in spec.panels]
        assert any("position" in t for t in titles)
        assert any("momentum" in t for t in titles)
        assert any("inversion vs position" in t for t in titles)
        photon = next(p for p in spec.panels if p.title == "photon number")
        # the three-line decomposition: total, laser part, scattered part
        assert photon.y == ("n_photon", "n_laser", "n_scatter")
        assert photon.source == "observables"

    def test_fig8_layout_has_inset_and_markers(self):
        spec = figure_spec("fig8")
        assert len(spec.panels) == 1
        panel = spec.panels[0]
        assert panel.source == "spectrum"
        assert panel.x == "omega_minus_omega_a"
        assert panel.y == ("s_normalized",)
        assert panel.inset_zoom is not None
        assert panel.sideband_markers

    def test_every_layout_builds(self):
        for name in available_figures():
            assert figure_spec(name).panels

    def test_unknown_layout_rejected(self):
        with pytest.raises(ValueError, match="no figure layout"):
            figure_spec("fig99")

    def test_validation_passes_on_conforming_data(self, run_dir):
        tables = validate(figure_spec("fig5"), run_dir)
        assert "trajectory" in tables and "observables" in tables

    def test_missing_column_reported_by_name(self, run_dir):
        path = run_dir / "fig5_observables.csv"
        table = path.read_text().splitlines()
        header = table[0].replace("n_laser", "n_lazer")
        path.write_text("\n".join([header] + table[1:]) + "\n")
        with pytest.raises(MissingColumnError, match="n_laser"):
            validate(figure_spec("fig5"), run_dir)

    def test_missing_file_reported(self, tmp_path):
        with pytest.raises(MissingFileError, match="trajectory"):
            validate(figure_spec("fig5"), tmp_path)


class TestRender:
    def test_fig5_svg(self, run_dir):
        out = render(figure_spec("fig5"), run_dir)
        assert out.name == "fig5.svg"
        body = out.read_text()
        assert body.startswith("<?xml")

    def test_fig8_svg(self, run_dir):
        out = render(figure_spec("fig8"), run_dir)
        assert out.exists()

    def test_rerender_is_byte_identical(self, run_dir, tmp_path):
        spec = figure_spec("fig8")
        a = render(spec, run_dir, out_path=tmp_path / "a.svg")
        b = render(spec, run_dir, out_path=tmp_path / "b.svg")
        assert a.read_bytes() == b.read_bytes()

    def test_png_output(self, run_dir, tmp_path):
        out = render(figure_spec("fig3", label="fig5"), run_dir,
                     out_path=tmp_path / "f.png", fmt="png")
        assert out.read_bytes()[:4] == b"\x89PNG"


class TestCli:
    def test_list_and_render(self, run_dir, capsys):
        from superlaser_figures import cli
        assert cli.main(["list"]) == 0
        assert "fig8" in capsys.readouterr().out
        assert cli.main(["render", "fig8", "--data", str(run_dir)]) == 0

    def test_missing_data_exit_code(self, tmp_path, capsys):
        from superlaser_figures import cli
        assert cli.main(["render", "fig5", "--data", str(tmp_path)]) == 2
        assert "missing data file" in capsys.readouterr().err


@pytest.mark.skipif(shutil.which("superlaser") is None,
                    reason="simulation CLI not installed")
def test_end_to_end_with_real_cli(tmp_path):
    """Drive the actual simulation CLI on a tiny config, then render."""
    cfg = {
        "scenario": "spectrum",
        "params": {"kappa": 20.0, "g": 4.0, "omega_drive": 10.0, "delta_a": -20.0,
                   "delta_c": -20.0, "eta": 8.0, "delta_eta": -25.0, "omega_r": 6.0,
                   "n_max": 2, "n_atoms": 2},
        "init": {"seed": 2, "p_range": [2.0, 2.5]},
        "integration": {"t_end": 6.0, "sample_dt": 0.2},
        "spectrum": {"n_anchors": 2, "window": 2.0, "tau_max": 4.0, "tau_dt": 0.05},
        "output": {"label": "fig8"},
    }
    src = tmp_path / "cfg.json"
    src.write_text(json.dumps(cfg))
    proc = subprocess.run(["superlaser", "run", str(src), "--out", str(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    out = render(figure_spec("fig8"), tmp_path)
    assert out.exists()

"""Configuration parsing, runner outputs, CLI behavior, determinism."""

import json
import math
from pathlib import Path

import numpy as np
import pytest

from superlaser import cli
from superlaser.config import ConfigError, apply_overrides, parse_config
from superlaser.presets import preset_names, presets
from superlaser.runner import run


def tiny_config(**kw):
    raw = {
        "scenario": "cumulant",
        "params": {"kappa": 20.0, "g": 4.0, "omega_drive": 10.0, "delta_a": -20.0,
                   "delta_c": -20.0, "eta": 8.0, "delta_eta": -25.0, "omega_r": 6.0,
                   "n_max": 3, "n_atoms": 3},
        "init": {"seed": 7, "p_range": [2.0, 2.5]},
        "integration": {"t_end": 4.0, "sample_dt": 0.5},
        "output": {"label": "tiny"},
    }
    raw.update(kw)
    return raw


class TestConfig:
    def test_presets_parse_cleanly(self):
        for name, raw in presets().items():
            config = parse_config(raw)
            assert config.output.label == name

    def test_expected_preset_names(self):
        assert preset_names() == ["fig2", "fig3", "fig5", "fig6", "fig7", "fig8"]

    def test_preset_parameter_values(self):
        bundled = presets()
        fig2 = bundled["fig2"]["params"]
        assert (fig2["kappa"], fig2["g"], fig2["omega_drive"], fig2["delta_a"],
                fig2["omega_r"], fig2["eta"]) == (20.0, 4.0, 30.0, -10.0, 2.5, 0.0)
        fig3 = bundled["fig3"]["params"]
        assert (fig3["omega_drive"], fig3["delta_a"], fig3["omega_r"]) == (10.0, -20.0, 6.0)
        fig5 = bundled["fig5"]["params"]
        assert (fig5["eta"], fig5["delta_eta"]) == (8.0, -25.0)
        fig7 = bundled["fig7"]
        assert fig7["params"]["n_atoms"] == 100
        assert {k: fig7["params"][k] for k in fig5 if k != "n_atoms"} == \
               {k: fig5[k] for k in fig5 if k != "n_atoms"}
        assert fig7["init"]["p_range"] == [2.0, 2.5]

    def test_unknown_keys_rejected(self):
        with pytest.raises(ConfigError, match="unknown key"):
            parse_config(tiny_config(params={"kappa": 20.0, "bogus": 1.0}))
        with pytest.raises(ConfigError, match="unknown section"):
            parse_config({**tiny_config(), "extra_section": {}})
        with pytest.raises(ConfigError, match="unknown key init"):
            parse_config({**tiny_config(), "init": {"seeds": 3}})

    def test_type_and_finiteness_validation(self):
        bad = tiny_config()
        bad["params"] = dict(bad["params"], kappa="twenty")
        with pytest.raises(ConfigError, match="must be a number"):
            parse_config(bad)
        bad = tiny_config()
        bad["integration"] = {"t_end": -3.0}
        with pytest.raises(ConfigError, match="t_end"):
            parse_config(bad)

    def test_gamma_must_be_unity(self):
        bad = tiny_config()
        bad["params"] = dict(bad["params"], gamma=2.0)
        with pytest.raises(ConfigError, match="gamma"):
            parse_config(bad)

    def test_overrides(self):
        raw = apply_overrides(tiny_config(), ["params.n_atoms=5", "init.seed=9",
                                              "output.label=other"])
        config = parse_config(raw)
        assert config.params.n_atoms == 5
        assert config.init.seed == 9
        assert config.output.label == "other"
        with pytest.raises(ConfigError, match="KEY=VALUE"):
            apply_overrides(tiny_config(), ["no_equals_sign"])


class TestRunner:
    def test_cumulant_run_outputs(self, tmp_path):
        result = run(parse_config(tiny_config()), out_root=tmp_path)
        assert set(result.files) == {"trajectory", "observables"}
        for path in result.files.values():
            assert path.exists()
        manifest = json.loads(result.manifest_path.read_text())
        assert manifest["schema_version"] == 1
        assert manifest["solver_stats"]["steps"] > 0
        header = result.files["trajectory"].read_text().splitlines()[0]
        assert header.split(",")[:5] == ["t", "x_1", "x_2", "x_3", "p_1"]

    def test_dressed_profile_run(self, tmp_path):
        raw = tiny_config(scenario="dressed-profile")
        result = run(parse_config(raw), out_root=tmp_path)
        assert "profile" in result.files
        manifest = json.loads(result.manifest_path.read_text())
        assert manifest["extra"]["regime"]["all_satisfied"] is True
        rows = result.files["profile"].read_text().splitlines()
        assert rows[0] == "x,e_plus,e_minus,theta,f_plus,f_minus"

    def test_single_full_with_excited_override(self, tmp_path):
        raw = tiny_config(scenario="single-full")
        raw["params"] = dict(raw["params"], n_atoms=1, n_max=1, g=0.0,
                             omega_drive=0.0, eta=0.0, omega_r=0.0)
        raw["init"] = {"x0": [0.0], "p0": [0.0], "excited": [0]}
        raw["integration"] = {"t_end": 2.0, "sample_dt": 0.5}
        result = run(parse_config(raw), out_root=tmp_path)
        lines = result.files["trajectory"].read_text().splitlines()
        first = lines[1].split(",")
        assert float(first[3]) == pytest.approx(1.0)  # inv_1 of the excited atom

    def test_spectrum_run_outputs(self, tmp_path):
        raw = tiny_config(scenario="spectrum")
        raw["integration"] = {"t_end": 10.0, "sample_dt": 0.2}
        raw["spectrum"] = {"n_anchors": 2, "window": 3.0, "tau_max": 5.0,
                           "tau_dt": 0.05, "min_prominence": 0.01}
        result = run(parse_config(raw), out_root=tmp_path)
        assert set(result.files) == {"trajectory", "observables", "spectrum", "peaks"}
        manifest = json.loads(result.manifest_path.read_text())
        assert "sideband_prediction" in manifest["extra"]["spectrum"]
        header = result.files["spectrum"].read_text().splitlines()[0]
        assert header == "omega_minus_omega_a,s_normalized,s_raw,omega_frame"
        peaks = json.loads(result.files["peaks"].read_text())
        assert isinstance(peaks, list)


class TestCli:
    def test_presets_listing(self, capsys):
        assert cli.main(["presets"]) == 0
        out = capsys.readouterr().out
        for name in preset_names():
            assert name in out

    def test_malformed_config_exits_2_without_outputs(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(tiny_config(params={"kappa": "NaN?"})))
        code = cli.main(["run", str(bad), "--out", str(tmp_path / "out")])
        assert code == 2
        assert not (tmp_path / "out").exists()

    def test_invalid_json_exits_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert cli.main(["run", str(bad)]) == 2

    def test_missing_source_exits_2(self):
        assert cli.main(["run", "no-such-preset"]) == 2

    def test_dimension_budget_exits_3(self, tmp_path):
        cfg = tiny_config(scenario="ensemble-full")
        cfg["params"] = dict(cfg["params"], n_atoms=12)
        path = tmp_path / "big.json"
        path.write_text(json.dumps(cfg))
        assert cli.main(["run", str(path), "--out", str(tmp_path)]) == 3

    def test_integration_failure_exits_4(self, tmp_path, monkeypatch):
        from superlaser.ode import IntegrationError

        def boom(config, out_root=None):
            raise IntegrationError("forced", 1.0)

        monkeypatch.setattr(cli, "run", boom)
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(tiny_config()))
        assert cli.main(["run", str(path)]) == 4

    def test_run_tiny_config_and_byte_identical_rerun(self, tmp_path):
        path = tmp_path / "cfg.json"
        cfg = tiny_config(scenario="spectrum")
        cfg["integration"] = {"t_end": 8.0, "sample_dt": 0.2}
        cfg["spectrum"] = {"n_anchors": 2, "window": 3.0, "tau_max": 4.0,
                           "tau_dt": 0.05}
        path.write_text(json.dumps(cfg))
        assert cli.main(["run", str(path), "--out", str(tmp_path / "a")]) == 0
        assert cli.main(["run", str(path), "--out", str(tmp_path / "b")]) == 0
        for name in ("tiny_trajectory.csv", "tiny_observables.csv",
                     "tiny_spectrum.csv", "tiny_peaks.json", "tiny_manifest.json"):
            assert (tmp_path / "a" / name).read_bytes() == \
                   (tmp_path / "b" / name).read_bytes()

    def test_manifest_round_trip(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(tiny_config()))
        assert cli.main(["run", str(path), "--out", str(tmp_path / "a")]) == 0
        manifest = tmp_path / "a" / "tiny_manifest.json"
        assert cli.main(["run", str(manifest), "--out", str(tmp_path / "b")]) == 0
        for name in ("tiny_trajectory.csv", "tiny_observables.csv"):
            assert (tmp_path / "a" / name).read_bytes() == \
                   (tmp_path / "b" / name).read_bytes()

    def test_spectrum_command_from_cumulant_manifest(self, tmp_path):
        path = tmp_path / "cfg.json"
        cfg = tiny_config()
        cfg["integration"] = {"t_end": 8.0, "sample_dt": 0.2}
        cfg["spectrum"] = {"n_anchors": 2, "window": 3.0, "tau_max": 4.0, "tau_dt": 0.05}
        path.write_text(json.dumps(cfg))
        assert cli.main(["run", str(path), "--out", str(tmp_path / "a")]) == 0
        manifest = tmp_path / "a" / "tiny_manifest.json"
        assert cli.main(["spectrum", str(manifest), "--out", str(tmp_path / "b")]) == 0
        assert (tmp_path / "b" / "tiny_spectrum.csv").exists()
        assert (tmp_path / "b" / "tiny_peaks.json").exists()

    def test_overrides_via_cli(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(tiny_config()))
        code = cli.main(["run", str(path), "--set", "params.n_atoms=2",
                         "--set", "output.label=two", "--out", str(tmp_path)])
        assert code == 0
        assert (tmp_path / "two_trajectory.csv").exists()

    def test_env_output_root(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SUPERLASER_OUTPUT_ROOT", str(tmp_path / "envroot"))
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(tiny_config()))
        assert cli.main(["run", str(path)]) == 0
        assert (tmp_path / "envroot" / "tiny_manifest.json").exists()


class TestLongFormat:
    def test_wide_format_cap(self, tmp_path):
        from superlaser.output import write_trajectory_csv
        from superlaser.results import ObservableTrajectory
        from superlaser.ode import SolverStats
        n, t = 300, 3
        traj = ObservableTrajectory(
            times=np.arange(t, dtype=float), n_photon=np.zeros(t),
            a_mean=np.zeros(t, dtype=complex), population=np.zeros((n, t)),
            x=np.zeros((n, t)), p=np.zeros((n, t)), stats=SolverStats())
        path = tmp_path / "long.csv"
        write_trajectory_csv(path, traj)
        lines = path.read_text().splitlines()
        assert lines[0] == "t,atom,x,p,inv"
        assert len(lines) == 1 + n * t

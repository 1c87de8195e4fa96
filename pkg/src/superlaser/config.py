"""Run configuration: strict JSON parsing with dotted-key overrides.

A config is a nested dict with sections scenario/params/init/integration/
spectrum/profile/output.  Unknown sections or keys are rejected, every
physical value must be finite, and gamma may only be given as 1 (it is the
unit of all rates).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

from .params import PhysParams

__all__ = ["ConfigError", "RunConfig", "parse_config", "apply_overrides", "SCENARIOS"]

SCENARIOS = ("dressed-profile", "single-full", "ensemble-full", "cumulant", "spectrum")


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


@dataclass
class InitConfig:
    seed: int = 1
    p_range: tuple[float, float] = (2.0, 2.5)
    x0: list[float] | None = None
    p0: list[float] | None = None
    excited: list[int] = field(default_factory=list)


@dataclass
class IntegrationConfig:
    t_end: float = 0.0
    sample_dt: float = 0.1
    rel_tol: float = 1e-8
    abs_tol: float = 1e-10


@dataclass
class SpectrumConfig:
    n_anchors: int = 8
    window: float = 20.0
    tau_max: float = 50.0
    tau_dt: float = 0.02
    apodization_tw: float | None = None  # None -> tau_max / 3; <= 0 disables
    pad_factor: int = 8
    min_prominence: float = 0.01         # relative to max(s)
    co_evolve: bool = True

    def resolved_tw(self) -> float | None:
        if self.apodization_tw is None:
            return self.tau_max / 3.0
        if self.apodization_tw <= 0:
            return None
        return self.apodization_tw


@dataclass
class ProfileConfig:
    x_min: float = 0.0
    x_max: float = 2.0 * math.pi
    n_points: int = 721


@dataclass
class OutputConfig:
    directory: str = "."
    label: str = ""


@dataclass
class RunConfig:
    scenario: str
    params: PhysParams
    init: InitConfig
    integration: IntegrationConfig
    spectrum: SpectrumConfig
    profile: ProfileConfig
    output: OutputConfig
    raw: dict = field(repr=False, default_factory=dict)


_PARAM_KEYS = {
    "kappa": float, "g": float, "omega_drive": float, "delta_a": float,
    "delta_c": float, "eta": float, "delta_eta": float, "omega_r": float,
    "n_max": int, "n_atoms": int, "detuning_offsets": list, "gamma": float,
}

_SECTION_FIELDS = {
    "init": {"seed": int, "p_range": list, "x0": list, "p0": list, "excited": list},
    "integration": {"t_end": float, "sample_dt": float, "rel_tol": float, "abs_tol": float},
    "spectrum": {"n_anchors": int, "window": float, "tau_max": float, "tau_dt": float,
                 "apodization_tw": float, "pad_factor": int, "min_prominence": float,
                 "co_evolve": bool},
    "profile": {"x_min": float, "x_max": float, "n_points": int},
    "output": {"directory": str, "label": str},
}


def _check_number(name: str, value: Any, kind: type) -> Any:
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{name} must be a number, got {value!r}")
        if not math.isfinite(float(value)):
            raise ConfigError(f"{name} must be finite")
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{name} must be an integer, got {value!r}")
        return value
    if kind is bool:
        if not isinstance(value, bool):
            raise ConfigError(f"{name} must be a boolean, got {value!r}")
        return value
    if kind is str:
        if not isinstance(value, str):
            raise ConfigError(f"{name} must be a string, got {value!r}")
        return value
    if kind is list:
        if not isinstance(value, list):
            raise ConfigError(f"{name} must be a list, got {value!r}")
        return value
    raise AssertionError(kind)


def _parse_section(name: str, raw: dict, cls):
    allowed = _SECTION_FIELDS[name]
    out = cls()
    for key, value in raw.items():
        if key not in allowed:
            raise ConfigError(f"unknown key {name}.{key}")
        kind = allowed[key]
        nullable = key in ("x0", "p0", "apodization_tw")
        if value is None and nullable:
            setattr(out, key, None)
            continue
        value = _check_number(f"{name}.{key}", value, kind)
        if kind is list:
            value = [_check_number(f"{name}.{key}[{i}]", v, float if key != "excited" else int)
                     for i, v in enumerate(value)]
            if key == "p_range":
                if len(value) != 2:
                    raise ConfigError("init.p_range must be [low, high]")
                value = (value[0], value[1])
        setattr(out, key, value)
    return out


def parse_config(raw: dict) -> RunConfig:
    """Validate a raw config dict into a RunConfig; raises ConfigError."""
    if not isinstance(raw, dict):
        raise ConfigError("config root must be an object")
    known = {"scenario", "params", "init", "integration", "spectrum", "profile", "output"}
    for key in raw:
        if key not in known:
            raise ConfigError(f"unknown section {key!r}")

    scenario = raw.get("scenario")
    if scenario not in SCENARIOS:
        raise ConfigError(f"scenario must be one of {SCENARIOS}, got {scenario!r}")

    params_raw = raw.get("params")
    if not isinstance(params_raw, dict):
        raise ConfigError("params section is required")
    kwargs: dict[str, Any] = {}
    for key, value in params_raw.items():
        if key not in _PARAM_KEYS:
            raise ConfigError(f"unknown key params.{key}")
        kind = _PARAM_KEYS[key]
        if key == "detuning_offsets":
            if value is None:
                continue
            value = [_check_number(f"params.detuning_offsets[{i}]", v, float)
                     for i, v in enumerate(_check_number(key, value, list))]
            value = tuple(value)
        else:
            value = _check_number(f"params.{key}", value, kind)
        kwargs[key] = value
    if kwargs.get("gamma", 1.0) != 1.0:
        raise ConfigError("gamma is the unit of all rates; only gamma = 1 is accepted")
    try:
        params = PhysParams(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid params: {exc}") from exc

    init = _parse_section("init", raw.get("init", {}), InitConfig)
    integration = _parse_section("integration", raw.get("integration", {}), IntegrationConfig)
    spectrum = _parse_section("spectrum", raw.get("spectrum", {}), SpectrumConfig)
    profile = _parse_section("profile", raw.get("profile", {}), ProfileConfig)
    output = _parse_section("output", raw.get("output", {}), OutputConfig)

    if scenario != "dressed-profile":
        if not integration.t_end > 0:
            raise ConfigError("integration.t_end must be positive")
        if not integration.sample_dt > 0:
            raise ConfigError("integration.sample_dt must be positive")
    for name, value in (("x0", init.x0), ("p0", init.p0)):
        if value is not None and len(value) != params.n_atoms:
            raise ConfigError(f"init.{name} must list one value per atom")
    if any(m < 0 or m >= params.n_atoms for m in init.excited):
        raise ConfigError("init.excited indices out of range")
    if init.p_range[1] < init.p_range[0]:
        raise ConfigError("init.p_range must be ordered")
    if scenario == "spectrum":
        if spectrum.window > integration.t_end:
            raise ConfigError("spectrum.window exceeds integration.t_end")

    if not output.label:
        output.label = scenario
    return RunConfig(scenario=scenario, params=params, init=init,
                     integration=integration, spectrum=spectrum, profile=profile,
                     output=output, raw=raw)


def apply_overrides(raw: dict, overrides: list[str]) -> dict:
    """Apply --set dotted-key overrides; values parse as JSON fragments,
    falling back to bare strings."""
    out = json.loads(json.dumps(raw))  # deep copy, JSON-only content
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not KEY=VALUE")
        key, _, text = item.partition("=")
        try:
            value = json.loads(text)
        except json.JSONDecodeError:
            value = text
        node = out
        parts = key.split(".")
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ConfigError(f"cannot descend into {part!r} of override {key!r}")
        node[parts[-1]] = value
    return out

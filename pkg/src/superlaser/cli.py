"""Command-line entry point.

    superlaser run <config.json | preset-name> [--set key=value]... [--out DIR]
    superlaser presets
    superlaser spectrum <manifest.json> [--set key=value]... [--out DIR]

Exit codes: 0 success, 2 configuration error, 3 dimension budget exceeded,
4 integrator failure, 1 anything else.  The output root directory comes
from --out or the SUPERLASER_OUTPUT_ROOT environment variable.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import ConfigError, apply_overrides, parse_config
from .cumulant import CumulantNanError
from .hilbert import DimensionBudgetError
from .ode import IntegrationError
from .presets import preset_names, presets
from .quantum import PositivityError
from .runner import run

EXIT_CONFIG = 2
EXIT_DIMENSION = 3
EXIT_INTEGRATION = 4


def _load_raw_config(source: str) -> dict:
    bundled = presets()
    if source in bundled:
        return bundled[source]
    path = Path(source)
    if not path.exists():
        raise ConfigError(f"no preset or config file named {source!r}")
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}: invalid JSON ({exc})") from exc
    if isinstance(raw, dict) and "config" in raw and "schema_version" in raw:
        raw = raw["config"]  # a manifest: re-run its embedded config
    return raw


def _execute(source: str, overrides: list[str], out_dir: str | None,
             force_scenario: str | None = None) -> int:
    raw = _load_raw_config(source)
    if force_scenario is not None:
        raw = dict(raw)
        raw["scenario"] = force_scenario
    raw = apply_overrides(raw, overrides)
    config = parse_config(raw)
    result = run(config, out_root=Path(out_dir) if out_dir else None)
    for key, path in sorted(result.files.items()):
        print(f"{key}: {path}")
    print(f"manifest: {result.manifest_path}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="superlaser",
                                     description="driven atom-cavity simulation runner")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a config file, preset, or manifest")
    p_run.add_argument("config", help="preset name, config JSON, or manifest JSON")
    p_run.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="KEY=VALUE", help="dotted-key override, JSON value")
    p_run.add_argument("--out", default=None, help="output root directory")

    sub.add_parser("presets", help="list bundled scenario presets")

    p_spec = sub.add_parser("spectrum", help="spectrum stage from a trajectory manifest")
    p_spec.add_argument("manifest", help="manifest JSON of a cumulant/spectrum run")
    p_spec.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="KEY=VALUE")
    p_spec.add_argument("--out", default=None)

    args = parser.parse_args(argv)
    try:
        if args.command == "presets":
            bundled = presets()
            for name in preset_names():
                cfg = bundled[name]
                params = cfg["params"]
                brief = ", ".join(f"{k}={params[k]}" for k in
                                  ("omega_drive", "delta_a", "eta", "omega_r", "n_atoms")
                                  if k in params)
                print(f"{name:6s} {cfg['scenario']:15s} {brief}")
            return 0
        if args.command == "run":
            return _execute(args.config, args.overrides, args.out)
        if args.command == "spectrum":
            return _execute(args.manifest, args.overrides, args.out,
                            force_scenario="spectrum")
        raise AssertionError(args.command)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DimensionBudgetError as exc:
        print(f"dimension budget: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (IntegrationError, CumulantNanError, PositivityError) as exc:
        print(f"integration failure: {exc}", file=sys.stderr)
        return EXIT_INTEGRATION


if __name__ == "__main__":
    raise SystemExit(main())

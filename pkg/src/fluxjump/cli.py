"""Command-line front end: run ensembles, inspect and validate configs.

Subcommands: ``run``, ``list-scenarios``, ``validate``, ``flux-curves``.
A scenario argument is either a built-in name or a path to a TOML file.
Exit codes: 0 success, 1 runtime failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .engine import EnsembleError
from .fluxes import ParameterError
from .scenarios import (
    BUILTIN_SCENARIOS,
    ConfigValidationError,
    ScenarioConfig,
    build,
    builtin_scenario,
    ensure_valid,
    load_config,
    run,
    with_resolution,
    write_flux_curves_csv,
)

_SCENARIO_BLURBS = {
    "production": "saturating production flux, Gaussian jumps driven by work in progress",
    "traffic-free": "gamma traffic flux, uniform jumps, light initial load",
    "traffic-congested": "gamma traffic flux, uniform jumps, heavy initial load",
}


def _resolve_scenario(text: str) -> ScenarioConfig:
    if text in BUILTIN_SCENARIOS:
        return builtin_scenario(text)
    path = Path(text)
    if path.exists():
        return load_config(path)
    raise ConfigValidationError(
        [f"{text!r} is neither a built-in scenario nor an existing file; "
         f"builtins: {', '.join(BUILTIN_SCENARIOS)}"]
    )


def _cmd_run(args) -> int:
    config = _resolve_scenario(args.scenario)
    config = with_resolution(config, dx=args.dx, cfl=args.cfl)
    if args.alpha0 is not None:
        config = dataclasses.replace(config, alpha0=args.alpha0)
    paths = run(config, args.seed, args.samples, args.out, n_workers=args.workers)
    n_jumps = sum(p.n_jumps for p in paths)
    n_events = sum(len(p.events) for p in paths)
    print(
        f"{config.scenario_id}: {len(paths)} path(s), {n_jumps} jump(s) "
        f"out of {n_events} candidate(s); output in {args.out}"
    )
    return 0


def _cmd_list_scenarios(args) -> int:
    for name in BUILTIN_SCENARIOS:
        print(f"{name:20s} {_SCENARIO_BLURBS[name]}")
    return 0


def _cmd_validate(args) -> int:
    config = load_config(args.path)
    ensure_valid(config)
    print(f"OK: {config.scenario_id}")
    return 0


def _cmd_flux_curves(args) -> int:
    config = _resolve_scenario(args.scenario)
    scenario = build(config)
    try:
        alphas = [float(part) for part in args.alphas.split(",") if part.strip()]
    except ValueError:
        raise ConfigValidationError([f"--alphas must be comma-separated numbers, got {args.alphas!r}"])
    if not alphas:
        raise ConfigValidationError(["--alphas must name at least one parameter value"])
    out = Path(args.out)
    if out.parent != Path(""):
        out.parent.mkdir(parents=True, exist_ok=True)
    write_flux_curves_csv(out, scenario.family, alphas)
    print(f"wrote {len(alphas)} curve(s) to {out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fluxjump",
        description="Simulate conservation-law dynamics with randomly switching flux.",
    )
    parser.add_argument("--version", action="version", version=f"fluxjump {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an ensemble and write CSV output")
    p_run.add_argument("--scenario", required=True, help="built-in name or TOML path")
    p_run.add_argument("--seed", type=int, default=0, help="base seed (default 0)")
    p_run.add_argument("--samples", type=int, default=1, help="number of paths (default 1)")
    p_run.add_argument("--out", default="fluxjump-out", help="output directory")
    p_run.add_argument("--dx", type=float, default=None, help="override grid spacing")
    p_run.add_argument("--cfl", type=float, default=None, help="override CFL number")
    p_run.add_argument("--alpha0", type=float, default=None, help="override initial parameter")
    p_run.add_argument("--workers", type=int, default=1, help="parallel workers (default 1)")
    p_run.set_defaults(func=_cmd_run)

    p_list = sub.add_parser("list-scenarios", help="list built-in scenarios")
    p_list.set_defaults(func=_cmd_list_scenarios)

    p_val = sub.add_parser("validate", help="validate a TOML scenario file")
    p_val.add_argument("path", help="TOML file to check")
    p_val.set_defaults(func=_cmd_validate)

    p_fc = sub.add_parser("flux-curves", help="tabulate flux curves to CSV")
    p_fc.add_argument("--scenario", required=True, help="built-in name or TOML path")
    p_fc.add_argument("--alphas", required=True, help="comma-separated parameter values")
    p_fc.add_argument("--out", required=True, help="output CSV file")
    p_fc.set_defaults(func=_cmd_flux_curves)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigValidationError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (EnsembleError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Scenario configuration, built-in setups, ensemble driver, CSV output.

A scenario config is a plain description (flux family, jump kernel, initial
profile, grid, schedule) that can round-trip through TOML. Validation is
aggregated: a bad config reports every violation at once. ``run`` drives an
ensemble and serializes it to CSV files whose bytes depend only on
(config, base_seed, n_samples), never on worker count or wall clock.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np
import tomli

from . import __version__
from .diagnostics import extract_scatter
from .engine import SamplePath, Scenario, run_ensemble
from .fluxes import (
    FluxFamily,
    ParameterError,
    WorkingRange,
    make_piecewise_min,
    make_production_exp,
    make_traffic_gamma,
    tabulate_flux_curves,
)
from .godunov import CflConfig
from .grid import Grid, GridFunction, sample_function
from .kernels import (
    ConstantRateKernel,
    ProductionGaussianKernel,
    ProductionKernelParams,
    RateKernel,
    TrafficKernelParams,
    TrafficUniformKernel,
)

# headroom above the initial maximum; jumps move the parameter, not the
# density, and the scheme obeys a max principle, so 5% covers roundoff
_RANGE_HEADROOM = 1.05

BUILTIN_SCENARIOS = ("production", "traffic-free", "traffic-congested")


class ConfigValidationError(ValueError):
    """Aggregated config report; ``problems`` lists every violation."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        lines = "\n".join(f"  - {p}" for p in self.problems)
        super().__init__(f"invalid scenario config:\n{lines}")


@dataclass(frozen=True)
class ScenarioConfig:
    """Declarative description of one simulation setup."""

    scenario_id: str
    family_kind: str
    family_params: dict
    kernel_kind: str
    kernel_params: dict
    ic_form: str
    ic_params: dict
    x_min: float
    x_max: float
    n_cells: int
    horizon: float
    cfl_number: float
    snapshot_interval: float
    probes: tuple[float, ...]
    alpha0: float


# ---------------------------------------------------------------------------
# registries: flux families, kernels, initial-condition forms


def _family_piecewise_min(params: dict, working_range: WorkingRange) -> FluxFamily:
    return make_piecewise_min(params["v"], params["mu"], working_range)


def _family_production_exp(params: dict, working_range: WorkingRange) -> FluxFamily:
    return make_production_exp(working_range)


def _family_traffic_gamma(params: dict, working_range: WorkingRange) -> FluxFamily:
    return make_traffic_gamma(params["theta"], working_range)


_FAMILY_REGISTRY: dict[str, tuple[frozenset, Callable]] = {
    "piecewise_min": (frozenset({"v", "mu"}), _family_piecewise_min),
    "production_exp": (frozenset(), _family_production_exp),
    "traffic_gamma": (frozenset({"theta"}), _family_traffic_gamma),
}


def _kernel_production_gaussian(params: dict) -> RateKernel:
    rate_bound = params.get("rate_bound")
    core = ProductionKernelParams(
        a=params["a"],
        b=params["b"],
        lambda0=params["lambda0"],
        lambda1=params["lambda1"],
        alpha_bar=params["alpha_bar"],
        sigma_sq=params["sigma_sq"],
    )
    return ProductionGaussianKernel(core, rate_bound=rate_bound)


def _kernel_traffic_uniform(params: dict) -> RateKernel:
    core = TrafficKernelParams(
        lambda0=params["lambda0"],
        lambda1=params["lambda1"],
        alpha0=params["alpha0"],
        half_width_scale=params.get("half_width_scale", 9.0 / 2000.0),
    )
    return TrafficUniformKernel(core)


def _kernel_constant_rate(params: dict) -> RateKernel:
    return ConstantRateKernel(
        rate=params["rate"],
        post_jump_low=params.get("post_jump_low", 0.0),
        post_jump_high=params.get("post_jump_high", 1.0),
    )


# (required keys, optional keys, builder)
_KERNEL_REGISTRY: dict[str, tuple[frozenset, frozenset, Callable]] = {
    "production_gaussian": (
        frozenset({"a", "b", "lambda0", "lambda1", "alpha_bar", "sigma_sq"}),
        frozenset({"rate_bound"}),
        _kernel_production_gaussian,
    ),
    "traffic_uniform": (
        frozenset({"lambda0", "lambda1", "alpha0"}),
        frozenset({"half_width_scale"}),
        _kernel_traffic_uniform,
    ),
    "constant_rate": (
        frozenset({"rate"}),
        frozenset({"post_jump_low", "post_jump_high"}),
        _kernel_constant_rate,
    ),
}


def _ic_shifted_sine(params: dict) -> Callable:
    c0, c1, ell = params["offset"], params["amplitude"], params["decay_length"]
    return lambda x: (c0 + c1 * (np.sin(x) + 1.0)) * np.exp(-np.abs(x) / ell)


def _ic_clipped_sine(params: dict) -> Callable:
    c0, c1, ell = params["offset"], params["amplitude"], params["decay_length"]
    return lambda x: (c0 + c1 * np.maximum(np.sin(x), 0.0)) * np.exp(-np.abs(x) / ell)


def _ic_constant(params: dict) -> Callable:
    value = params["value"]
    return lambda x: np.full_like(np.asarray(x, dtype=np.float64), float(value))


def _ic_step(params: dict) -> Callable:
    left, right, x0 = params["left"], params["right"], params["x0"]
    return lambda x: np.where(np.asarray(x) < x0, float(left), float(right))


_IC_REGISTRY: dict[str, tuple[frozenset, Callable]] = {
    "shifted_sine": (frozenset({"offset", "amplitude", "decay_length"}), _ic_shifted_sine),
    "clipped_sine": (frozenset({"offset", "amplitude", "decay_length"}), _ic_clipped_sine),
    "constant": (frozenset({"value"}), _ic_constant),
    "step": (frozenset({"left", "right", "x0"}), _ic_step),
}


# ---------------------------------------------------------------------------
# built-in scenarios


def builtin_scenario(name: str) -> ScenarioConfig:
    """One of the three built-in setups; see BUILTIN_SCENARIOS."""
    common = dict(x_min=-200.0, x_max=200.0, n_cells=8000, horizon=50.0, cfl_number=0.5)
    if name == "production":
        return ScenarioConfig(
            scenario_id="production",
            family_kind="production_exp",
            family_params={},
            kernel_kind="production_gaussian",
            kernel_params={
                "a": 0.0,
                "b": 1.0,
                "lambda0": 5.0,
                "lambda1": 1.0,
                "alpha_bar": 0.0,
                "sigma_sq": 0.01,
            },
            ic_form="shifted_sine",
            ic_params={"offset": 0.0, "amplitude": 1.5, "decay_length": 100.0},
            snapshot_interval=0.2,
            probes=(0.0,),
            alpha0=0.0,
            **common,
        )
    if name in ("traffic-free", "traffic-congested"):
        free = name == "traffic-free"
        return ScenarioConfig(
            scenario_id=name,
            family_kind="traffic_gamma",
            family_params={"theta": 2.1},
            kernel_kind="traffic_uniform",
            kernel_params={
                "lambda0": 3.0,
                "lambda1": 10.0,
                "alpha0": 0.4,
                "half_width_scale": 9.0 / 2000.0,
            },
            ic_form="clipped_sine",
            ic_params={
                "offset": 0.05 if free else 0.4,
                "amplitude": 0.4 if free else 1.0,
                "decay_length": 100.0,
            },
            snapshot_interval=0.1,
            probes=(0.0, 1.0),
            alpha0=0.4,
            **common,
        )
    raise ValueError(f"unknown scenario {name!r}; builtins: {', '.join(BUILTIN_SCENARIOS)}")


# ---------------------------------------------------------------------------
# validation and construction


def _check_params(kind: str, given: dict, required: frozenset, optional: frozenset,
                  what: str, problems: list[str]) -> bool:
    ok = True
    missing = sorted(required - given.keys())
    extra = sorted(given.keys() - required - optional)
    if missing:
        problems.append(f"{what} {kind!r}: missing parameters {missing}")
        ok = False
    if extra:
        problems.append(f"{what} {kind!r}: unknown parameters {extra}")
        ok = False
    for key in sorted(given.keys() - set(extra)):
        value = given[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            problems.append(f"{what} {kind!r}: parameter {key} must be a number")
            ok = False
    return ok


def validate_config(config: ScenarioConfig) -> list[str]:
    """All violations found in the config, empty when it is runnable."""
    problems: list[str] = []
    c = config

    if not isinstance(c.scenario_id, str) or not c.scenario_id:
        problems.append("scenario_id must be a nonempty string")

    grid_ok = True
    if not (math.isfinite(c.x_min) and math.isfinite(c.x_max) and c.x_min < c.x_max):
        problems.append(f"grid needs x_min < x_max, got [{c.x_min}, {c.x_max}]")
        grid_ok = False
    if not (isinstance(c.n_cells, int) and c.n_cells >= 2):
        problems.append(f"n_cells must be an integer >= 2, got {c.n_cells}")
        grid_ok = False

    if not (math.isfinite(c.horizon) and c.horizon > 0):
        problems.append(f"horizon must be > 0, got {c.horizon}")
    if not (0.0 < c.cfl_number <= 1.0):
        problems.append(f"cfl_number must be in (0, 1], got {c.cfl_number}")
    if not (math.isfinite(c.snapshot_interval) and 0 < c.snapshot_interval <= c.horizon):
        problems.append(
            f"snapshot_interval must be in (0, horizon], got {c.snapshot_interval}"
        )
    if grid_ok:
        for x in c.probes:
            if not (c.x_min <= x <= c.x_max):
                problems.append(f"probe {x} outside grid [{c.x_min}, {c.x_max}]")

    family = None
    if c.family_kind not in _FAMILY_REGISTRY:
        problems.append(
            f"unknown flux family {c.family_kind!r}; "
            f"known: {sorted(_FAMILY_REGISTRY)}"
        )
    else:
        required, builder = _FAMILY_REGISTRY[c.family_kind]
        if _check_params(c.family_kind, c.family_params, required, frozenset(),
                         "flux family", problems):
            try:
                family = builder(c.family_params, WorkingRange(0.0, 1.0))
            except ParameterError as exc:
                text = str(exc)
                prefix = "" if text.startswith(c.family_kind) else f"flux family {c.family_kind!r}: "
                problems.append(prefix + text)

    kernel = None
    if c.kernel_kind not in _KERNEL_REGISTRY:
        problems.append(
            f"unknown kernel {c.kernel_kind!r}; known: {sorted(_KERNEL_REGISTRY)}"
        )
    else:
        required, optional, builder = _KERNEL_REGISTRY[c.kernel_kind]
        if _check_params(c.kernel_kind, c.kernel_params, required, optional,
                         "kernel", problems):
            try:
                kernel = builder(c.kernel_params)
            except ValueError as exc:
                problems.append(f"kernel {c.kernel_kind!r}: {exc}")
    if kernel is not None and c.kernel_kind == "production_gaussian" and grid_ok:
        a, b = c.kernel_params["a"], c.kernel_params["b"]
        if not (c.x_min <= a and b <= c.x_max):
            problems.append(
                f"kernel window [{a}, {b}] must lie inside the grid "
                f"[{c.x_min}, {c.x_max}]"
            )

    if family is not None:
        try:
            family.check_parameter(c.alpha0)
        except ParameterError as exc:
            problems.append(f"alpha0: {exc}")
        if kernel is not None and c.kernel_kind == "traffic_uniform":
            center = c.kernel_params["alpha0"]
            reach = kernel.params.max_half_width
            for edge in (center - reach, center + reach):
                try:
                    family.check_parameter(edge)
                except ParameterError as exc:
                    problems.append(f"post-jump support exits the parameter domain: {exc}")

    if c.ic_form not in _IC_REGISTRY:
        problems.append(
            f"unknown initial condition {c.ic_form!r}; known: {sorted(_IC_REGISTRY)}"
        )
    else:
        required, builder = _IC_REGISTRY[c.ic_form]
        if _check_params(c.ic_form, c.ic_params, required, frozenset(),
                         "initial condition", problems) and grid_ok:
            if "decay_length" in c.ic_params and not c.ic_params["decay_length"] > 0:
                problems.append(
                    f"initial condition: decay_length must be > 0, "
                    f"got {c.ic_params['decay_length']}"
                )
            else:
                values = builder(c.ic_params)(_grid_of(c).cell_centers())
                if not np.all(np.isfinite(values)):
                    problems.append("initial condition evaluates to non-finite values")
                elif np.min(values) < 0:
                    problems.append("initial condition must be nonnegative (a density)")

    return problems


def ensure_valid(config: ScenarioConfig) -> None:
    problems = validate_config(config)
    if problems:
        raise ConfigValidationError(problems)


def _grid_of(config: ScenarioConfig) -> Grid:
    return Grid(config.x_min, config.x_max, config.n_cells)


def snapshot_schedule(horizon: float, interval: float) -> np.ndarray:
    """Multiples of the interval from 0 up to the horizon, inclusive when exact."""
    n = int(round(horizon / interval))
    if n >= 1 and abs(n * interval - horizon) <= 1e-9 * max(1.0, horizon):
        return np.linspace(0.0, horizon, n + 1)
    times = np.arange(math.floor(horizon / interval) + 1, dtype=np.float64) * interval
    return times[times <= horizon]


def build(config: ScenarioConfig) -> Scenario:
    """Validated config to a runnable scenario; raises ConfigValidationError."""
    ensure_valid(config)
    grid = _grid_of(config)
    _, ic_builder = _IC_REGISTRY[config.ic_form]
    initial = sample_function(grid, ic_builder(config.ic_params))
    u_max = float(np.max(initial.values))
    working_range = WorkingRange(0.0, _RANGE_HEADROOM * u_max if u_max > 0 else 1.0)
    _, family_builder = _FAMILY_REGISTRY[config.family_kind]
    family = family_builder(config.family_params, working_range)
    _, _, kernel_builder = _KERNEL_REGISTRY[config.kernel_kind]
    kernel = kernel_builder(config.kernel_params)
    return Scenario(
        family=family,
        kernel=kernel,
        initial=initial,
        alpha0=config.alpha0,
        horizon=config.horizon,
        snapshot_times=snapshot_schedule(config.horizon, config.snapshot_interval),
        probes=config.probes,
        cfl=CflConfig(config.cfl_number),
    )


def truncated_tail_mass(config: ScenarioConfig) -> float:
    """Initial mass outside the grid, one domain width beyond each end.

    Same-resolution midpoint quadrature; a diagnostic for how much of the
    profile the finite domain cuts off.
    """
    grid = _grid_of(config)
    _, ic_builder = _IC_REGISTRY[config.ic_form]
    func = ic_builder(config.ic_params)
    width = config.x_max - config.x_min
    dx = grid.dx
    centers = grid.cell_centers()
    left = centers - width
    right = centers + width
    return float(dx * (np.sum(func(left)) + np.sum(func(right))))


# ---------------------------------------------------------------------------
# TOML round-trip


def config_to_dict(config: ScenarioConfig) -> dict:
    return {
        "scenario_id": config.scenario_id,
        "family": {"kind": config.family_kind, **config.family_params},
        "kernel": {"kind": config.kernel_kind, **config.kernel_params},
        "initial_condition": {"form": config.ic_form, **config.ic_params},
        "grid": {
            "x_min": config.x_min,
            "x_max": config.x_max,
            "n_cells": config.n_cells,
        },
        "run": {
            "horizon": config.horizon,
            "cfl_number": config.cfl_number,
            "snapshot_interval": config.snapshot_interval,
            "probes": list(config.probes),
            "alpha0": config.alpha0,
        },
    }


def _float_field(section: dict, section_name: str, key: str,
                 problems: list[str], default: float = math.nan) -> float:
    if key not in section:
        problems.append(f"[{section_name}] missing key {key!r}")
        return default
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        problems.append(f"[{section_name}] {key} must be a number, got {value!r}")
        return default
    return float(value)


def config_from_dict(data: dict) -> ScenarioConfig:
    """Parsed TOML data to a config; structural problems are aggregated."""
    problems: list[str] = []
    known = {"scenario_id", "family", "kernel", "initial_condition", "grid", "run"}
    for key in sorted(data.keys() - known):
        problems.append(f"unknown top-level key {key!r}")

    scenario_id = data.get("scenario_id")
    if not isinstance(scenario_id, str) or not scenario_id:
        problems.append("scenario_id must be a nonempty string")
        scenario_id = ""

    def section(name: str, tag_key: str) -> tuple[str, dict]:
        raw = data.get(name)
        if not isinstance(raw, dict):
            problems.append(f"missing [{name}] table")
            return "", {}
        raw = dict(raw)
        tag = raw.pop(tag_key, None)
        if not isinstance(tag, str) or not tag:
            problems.append(f"[{name}] needs a string {tag_key!r} key")
            tag = ""
        return tag, raw

    family_kind, family_params = section("family", "kind")
    kernel_kind, kernel_params = section("kernel", "kind")
    ic_form, ic_params = section("initial_condition", "form")

    grid = data.get("grid")
    if not isinstance(grid, dict):
        problems.append("missing [grid] table")
        grid = {}
    x_min = _float_field(grid, "grid", "x_min", problems)
    x_max = _float_field(grid, "grid", "x_max", problems)
    n_cells_raw = grid.get("n_cells")
    if isinstance(n_cells_raw, bool) or not isinstance(n_cells_raw, int):
        problems.append(f"[grid] n_cells must be an integer, got {n_cells_raw!r}")
        n_cells = 0
    else:
        n_cells = n_cells_raw
    for key in sorted(grid.keys() - {"x_min", "x_max", "n_cells"}):
        problems.append(f"[grid] unknown key {key!r}")

    run = data.get("run")
    if not isinstance(run, dict):
        problems.append("missing [run] table")
        run = {}
    horizon = _float_field(run, "run", "horizon", problems)
    cfl_number = _float_field(run, "run", "cfl_number", problems)
    snapshot_interval = _float_field(run, "run", "snapshot_interval", problems)
    alpha0 = _float_field(run, "run", "alpha0", problems)
    probes_raw = run.get("probes")
    probes: tuple[float, ...] = ()
    if not isinstance(probes_raw, list) or any(
        isinstance(x, bool) or not isinstance(x, (int, float)) for x in probes_raw
    ):
        problems.append("[run] probes must be a list of numbers")
    else:
        probes = tuple(float(x) for x in probes_raw)
    keys = {"horizon", "cfl_number", "snapshot_interval", "probes", "alpha0"}
    for key in sorted(run.keys() - keys):
        problems.append(f"[run] unknown key {key!r}")

    if problems:
        raise ConfigValidationError(problems)
    return ScenarioConfig(
        scenario_id=scenario_id,
        family_kind=family_kind,
        family_params=family_params,
        kernel_kind=kernel_kind,
        kernel_params=kernel_params,
        ic_form=ic_form,
        ic_params=ic_params,
        x_min=x_min,
        x_max=x_max,
        n_cells=n_cells,
        horizon=horizon,
        cfl_number=cfl_number,
        snapshot_interval=snapshot_interval,
        probes=probes,
        alpha0=alpha0,
    )


def parse_config(text: str) -> ScenarioConfig:
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ConfigValidationError([f"TOML syntax: {exc}"]) from exc
    return config_from_dict(data)


def load_config(path) -> ScenarioConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def _toml_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        text = repr(float(value))
        # a TOML float needs a fractional or exponent part
        if not any(ch in text for ch in ".eE"):
            text += ".0"
        return text
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_toml_value(x) for x in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__} to TOML")


def serialize_config(config: ScenarioConfig) -> str:
    """Deterministic TOML text; parse_config(serialize_config(c)) == c."""
    data = config_to_dict(config)
    lines = [f"scenario_id = {_toml_value(data['scenario_id'])}"]
    for name in ("family", "kernel", "initial_condition", "grid", "run"):
        lines.append("")
        lines.append(f"[{name}]")
        table = data[name]
        for key in table:
            lines.append(f"{key} = {_toml_value(table[key])}")
    return "\n".join(lines) + "\n"


def save_config(config: ScenarioConfig, path) -> None:
    Path(path).write_text(serialize_config(config), encoding="utf-8")


# ---------------------------------------------------------------------------
# CSV serialization

_FLUX_CURVE_POINTS = 201


def _fmt(value) -> str:
    """Shortest round-trip cell text: repr floats, bare ints, empty None."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _probe_label(x: float) -> str:
    x = float(x)
    return str(int(x)) if x == int(x) else repr(x)


def _write_csv(path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(_fmt(v) for v in row) + "\n")


def write_paths_csv(path, paths: Sequence[SamplePath], family: FluxFamily,
                    probes: Sequence[float]) -> None:
    header = ["sample_id", "t", "alpha", "mass", "tv"]
    for x in probes:
        label = _probe_label(x)
        header += [f"rho@{label}", f"flux@{label}"]

    def rows():
        for sample in paths:
            for snap in sample.snapshots:
                row = [sample.sample_index, snap.t, snap.alpha, snap.mass, snap.tv]
                for rho in snap.probe_values:
                    row += [rho, family.flux(snap.alpha, rho)]
                yield row

    _write_csv(path, header, rows())


def write_events_csv(path, paths: Sequence[SamplePath], lambda_max: float) -> None:
    header = [
        "sample_id", "event_index", "candidate_time", "accepted", "total_rate",
        "lambda_max", "functional_value", "alpha_before", "alpha_after",
    ]

    def rows():
        for sample in paths:
            for index, ev in enumerate(sample.events):
                yield [
                    sample.sample_index, index, ev.candidate_time, ev.accepted,
                    ev.total_rate, lambda_max, ev.functional_value,
                    ev.alpha_before, ev.alpha_after,
                ]

    _write_csv(path, header, rows())


def write_scatter_csv(path, paths: Sequence[SamplePath], family: FluxFamily) -> None:
    header = ["sample_id", "t", "probe_x", "rho", "flux"]

    def rows():
        for sample in paths:
            for rec in extract_scatter(sample, family):
                yield [rec.sample_id, rec.t, rec.probe_x, rec.rho, rec.flux]

    _write_csv(path, header, rows())


def write_flux_curves_csv(path, family: FluxFamily, alphas: Sequence[float],
                          n_points: int = _FLUX_CURVE_POINTS) -> None:
    rows = tabulate_flux_curves(family, alphas, n_points=n_points)
    _write_csv(path, ["alpha", "rho", "flux"], rows)


# ---------------------------------------------------------------------------
# ensemble driver


def run(
    config: ScenarioConfig,
    base_seed: int,
    n_samples: int,
    out_dir,
    n_workers: int = 1,
) -> list[SamplePath]:
    """Run the ensemble and write the CSV artifacts into out_dir.

    Writes paths.csv, events.csv, scatter.csv, fluxcurves.csv (the curve of
    the initial parameter, the natural reference overlay), and
    run_meta.json. Output bytes are a function of (config, base_seed,
    n_samples) only.
    """
    scenario = build(config)
    paths = run_ensemble(scenario, base_seed, n_samples, n_workers=n_workers)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_paths_csv(out / "paths.csv", paths, scenario.family, scenario.probes)
    write_events_csv(out / "events.csv", paths, scenario.kernel.lambda_max)
    write_scatter_csv(out / "scatter.csv", paths, scenario.family)
    write_flux_curves_csv(out / "fluxcurves.csv", scenario.family, [config.alpha0])
    meta = {
        "code_version": __version__,
        "base_seed": int(base_seed),
        "n_samples": int(n_samples),
        "dx": scenario.initial.grid.dx,
        "truncated_tail_mass": truncated_tail_mass(config),
        "total_events": sum(len(p.events) for p in paths),
        "total_jumps": sum(p.n_jumps for p in paths),
        "scenario": config_to_dict(config),
    }
    with open(out / "run_meta.json", "w", encoding="utf-8") as f:
        json.dump(meta, f, sort_keys=True, indent=2)
        f.write("\n")
    return paths


def with_resolution(config: ScenarioConfig, dx: Optional[float] = None,
                    cfl: Optional[float] = None) -> ScenarioConfig:
    """Copy with grid spacing and/or CFL number overridden.

    The spacing must tile the domain: (x_max - x_min) / dx is required to be
    an integer up to 1e-9 relative.
    """
    changes: dict = {}
    if dx is not None:
        width = config.x_max - config.x_min
        n_real = width / dx
        n = int(round(n_real))
        if n < 2 or abs(n_real - n) > 1e-9 * n_real:
            raise ConfigValidationError(
                [f"dx = {dx} does not evenly divide the domain width {width}"]
            )
        changes["n_cells"] = n
    if cfl is not None:
        changes["cfl_number"] = cfl
    return dataclasses.replace(config, **changes) if changes else config

"""Random flux switching on top of a finite-volume conservation-law solver.

The package simulates a hybrid Markov process: a density profile evolves
under a scalar conservation law solved by a monotone Godunov scheme, and a
flux-family parameter switches at random, state-dependent times. Built-in
production and traffic scenarios reproduce the reference experiments, and
the CSV output feeds the companion figures package.
"""

__version__ = "0.1.0"

from .diagnostics import (
    PhaseStatistics,
    ScatterRecord,
    extract_scatter,
    l1_distance,
    mass,
    phase_statistics,
    tv,
)
from .engine import (
    EnsembleError,
    EventRecord,
    JumpCapExceededError,
    NonFiniteStateError,
    RateBoundViolationError,
    SamplePath,
    Scenario,
    Snapshot,
    path_seed,
    run_ensemble,
    simulate_path,
)
from .fluxes import (
    FamilyId,
    FluxFamily,
    FluxShape,
    ParameterError,
    PiecewiseMinFlux,
    ProductionExpFlux,
    ScaledFlux,
    ShapeKind,
    TrafficGammaFlux,
    WorkingRange,
    make_piecewise_min,
    make_production_exp,
    make_scaled,
    make_traffic_gamma,
    tabulate_flux_curves,
)
from .godunov import (
    CflConfig,
    CflViolationError,
    cfl_timestep,
    evolve,
    godunov_numerical_flux,
    interface_fluxes,
    step,
)
from .grid import Grid, GridFunction, NonFiniteValuesError, sample_function
from .kernels import (
    ConstantRateKernel,
    ProductionGaussianKernel,
    ProductionKernelParams,
    RateKernel,
    TrafficKernelParams,
    TrafficUniformKernel,
    coverage_fraction,
    wip,
)
from .scenarios import (
    BUILTIN_SCENARIOS,
    ConfigValidationError,
    ScenarioConfig,
    build,
    builtin_scenario,
    config_from_dict,
    config_to_dict,
    ensure_valid,
    load_config,
    parse_config,
    run,
    save_config,
    serialize_config,
    snapshot_schedule,
    truncated_tail_mass,
    validate_config,
    with_resolution,
    write_events_csv,
    write_flux_curves_csv,
    write_paths_csv,
    write_scatter_csv,
)

__all__ = [
    "__version__",
    # grid
    "Grid", "GridFunction", "NonFiniteValuesError", "sample_function",
    # flux families
    "FluxFamily", "FamilyId", "FluxShape", "ShapeKind", "WorkingRange",
    "ParameterError", "ScaledFlux", "PiecewiseMinFlux", "ProductionExpFlux",
    "TrafficGammaFlux", "make_scaled", "make_piecewise_min",
    "make_production_exp", "make_traffic_gamma", "tabulate_flux_curves",
    # solver
    "CflConfig", "CflViolationError", "godunov_numerical_flux",
    "interface_fluxes", "cfl_timestep", "step", "evolve",
    # kernels
    "RateKernel", "ProductionKernelParams", "ProductionGaussianKernel",
    "TrafficKernelParams", "TrafficUniformKernel", "ConstantRateKernel",
    "wip", "coverage_fraction",
    # engine
    "Scenario", "SamplePath", "Snapshot", "EventRecord", "simulate_path",
    "path_seed", "run_ensemble", "NonFiniteStateError", "JumpCapExceededError",
    "RateBoundViolationError", "EnsembleError",
    # diagnostics
    "tv", "mass", "l1_distance", "ScatterRecord", "extract_scatter",
    "PhaseStatistics", "phase_statistics",
    # scenarios
    "ScenarioConfig", "ConfigValidationError", "BUILTIN_SCENARIOS",
    "builtin_scenario", "validate_config", "ensure_valid", "build", "run",
    "parse_config", "serialize_config", "load_config", "save_config",
    "snapshot_schedule", "truncated_tail_mass", "with_resolution",
    "config_to_dict", "config_from_dict", "write_paths_csv",
    "write_events_csv", "write_scatter_csv", "write_flux_curves_csv",
]

"""Sample paths of the hybrid process (flux parameter, density profile).

Between jumps the density evolves deterministically under the Godunov
scheme with the current flux; at random times the flux parameter switches.
Jump times are built by exact thinning: candidates arrive as a Poisson
process at the kernel's uniform rate bound, and each candidate is accepted
with probability total_rate / bound evaluated in the fully evolved state.
Jumps change only the parameter, never the density profile.

Randomness discipline: one generator per path, draws consumed in the fixed
order (candidate gap, acceptance uniform, post-jump draw if accepted), so
identical seeds reproduce paths bit for bit and event logs are replayable.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .fluxes import FluxFamily
from .godunov import CflConfig, evolve
from .grid import GridFunction, NonFiniteValuesError
from .kernels import RateKernel


class NonFiniteStateError(RuntimeError):
    """Simulation produced NaN or infinities; carries time and parameter."""


class JumpCapExceededError(RuntimeError):
    """A path accepted vastly more jumps than the rate bound explains."""


class RateBoundViolationError(RuntimeError):
    """A kernel reported a total rate outside [0, lambda_max]."""


class EnsembleError(RuntimeError):
    """A sample path failed; the message names the failing sample index."""


@dataclass(frozen=True)
class Scenario:
    """Everything one sample path needs: dynamics, jumps, schedule, probes."""

    family: FluxFamily
    kernel: RateKernel
    initial: GridFunction
    alpha0: float
    horizon: float
    snapshot_times: np.ndarray
    probes: tuple[float, ...] = ()
    cfl: CflConfig = CflConfig()

    def __post_init__(self):
        self.family.check_parameter(self.alpha0)
        if not self.horizon > 0:
            raise ValueError(f"horizon must be > 0, got {self.horizon}")
        times = np.asarray(self.snapshot_times, dtype=np.float64)
        if times.ndim != 1 or times.size == 0:
            raise ValueError("snapshot_times must be a nonempty 1-D array")
        if np.any(np.diff(times) <= 0):
            raise ValueError("snapshot_times must be strictly increasing")
        if times[0] < 0 or times[-1] > self.horizon:
            raise ValueError("snapshot_times must lie in [0, horizon]")
        times = times.copy()
        times.flags.writeable = False
        object.__setattr__(self, "snapshot_times", times)
        grid = self.initial.grid
        for x in self.probes:
            if not (grid.x_min <= x <= grid.x_max):
                raise ValueError(f"probe {x} outside grid [{grid.x_min}, {grid.x_max}]")
        lam = self.kernel.lambda_max
        if not (math.isfinite(lam) and lam >= 0):
            raise ValueError(f"kernel rate bound must be finite and >= 0, got {lam}")


@dataclass(frozen=True)
class EventRecord:
    """Audit record of one thinning candidate."""

    candidate_time: float
    accepted: bool
    total_rate: float
    acceptance_uniform: float
    alpha_before: float
    alpha_after: Optional[float]
    functional_value: Optional[float]


@dataclass(frozen=True)
class Snapshot:
    """State summary at one scheduled sample time."""

    t: float
    alpha: float
    mass: float
    tv: float
    probe_values: tuple[float, ...]


@dataclass(frozen=True)
class SamplePath:
    """One realization: jump data, snapshots, event log, final profile.

    ``jump_times[0] == 0`` and ``post_jump_params[0]`` is the initial
    parameter, matching the convention that the path starts at its own
    zeroth post-jump location.
    """

    sample_index: int
    seed_key: str
    jump_times: list[float]
    post_jump_params: list[float]
    snapshots: list[Snapshot]
    events: list[EventRecord]
    probe_positions: tuple[float, ...]
    final_state: GridFunction = field(repr=False)
    boundary_outflow: float

    @property
    def n_jumps(self) -> int:
        return len(self.jump_times) - 1

    def alpha_at(self, t: float) -> float:
        """Parameter in effect at time t (right-continuous at jumps)."""
        idx = int(np.searchsorted(self.jump_times, t, side="right")) - 1
        return self.post_jump_params[idx]


def _seed_key(seed) -> str:
    if isinstance(seed, np.random.SeedSequence):
        return f"entropy={seed.entropy},spawn_key={tuple(seed.spawn_key)}"
    return str(seed)


class _PathBuilder:
    """Mutable state of one path under construction."""

    def __init__(self, scenario: Scenario, sample_index: int):
        self.sc = scenario
        self.sample_index = sample_index
        self.t = 0.0
        self.alpha = scenario.alpha0
        self.u = scenario.initial
        self.snap_idx = 0
        self.snapshots: list[Snapshot] = []
        self.outflow = 0.0

    def _record_snapshot(self, t: float):
        u = self.u
        probe_values = tuple(u.value_at(x) for x in self.sc.probes)
        self.snapshots.append(
            Snapshot(t, self.alpha, u.mass(), u.total_variation(), probe_values)
        )

    def _evolve_to(self, target: float):
        duration = target - self.t
        try:
            self.u, out = evolve(
                self.u,
                self.sc.family,
                self.alpha,
                duration,
                cfl=self.sc.cfl,
                track_boundary_flux=True,
            )
        except NonFiniteValuesError as exc:
            raise NonFiniteStateError(
                f"non-finite state while evolving from t = {self.t} to "
                f"t = {target} with alpha = {self.alpha}"
            ) from exc
        self.outflow += out
        self.t = target

    def advance(self, t_to: float, defer_snapshot_at_end: bool) -> bool:
        """Evolve to t_to, recording scheduled snapshots along the way.

        With ``defer_snapshot_at_end`` a snapshot falling exactly on t_to is
        left pending (a jump decision happens there first); returns whether
        one is pending.
        """
        times = self.sc.snapshot_times
        while self.snap_idx < times.size and times[self.snap_idx] <= t_to:
            ts = float(times[self.snap_idx])
            if defer_snapshot_at_end and ts == t_to:
                break
            self._evolve_to(ts)
            self._record_snapshot(ts)
            self.snap_idx += 1
        self._evolve_to(t_to)
        return (
            defer_snapshot_at_end
            and self.snap_idx < times.size
            and float(times[self.snap_idx]) == t_to
        )

    def record_pending_snapshot(self):
        # post-jump parameter by convention; the profile is unchanged either way
        self._record_snapshot(float(self.sc.snapshot_times[self.snap_idx]))
        self.snap_idx += 1


def simulate_path(
    scenario: Scenario,
    seed,
    sample_index: int = 0,
    jump_cap: Optional[int] = None,
) -> SamplePath:
    """Simulate one sample path by exact thinning.

    ``seed`` is anything ``numpy.random.default_rng`` accepts (an integer or
    a SeedSequence); the same seed reproduces the path bit for bit.
    ``jump_cap`` guards against runaway configurations and defaults to
    100 * lambda_max * horizon accepted jumps.
    """
    rng = np.random.default_rng(seed)
    kernel = scenario.kernel
    lam_max = kernel.lambda_max
    horizon = scenario.horizon
    if jump_cap is None:
        jump_cap = int(math.ceil(100.0 * lam_max * horizon)) if lam_max > 0 else 0

    builder = _PathBuilder(scenario, sample_index)
    jump_times = [0.0]
    post_jump_params = [scenario.alpha0]
    events: list[EventRecord] = []

    while True:
        if lam_max == 0.0:
            builder.advance(horizon, defer_snapshot_at_end=False)
            break
        tau = builder.t + rng.exponential(1.0 / lam_max)
        if tau > horizon:
            builder.advance(horizon, defer_snapshot_at_end=False)
            break
        pending = builder.advance(tau, defer_snapshot_at_end=True)
        rate = kernel.total_rate(builder.alpha, tau, builder.u)
        if not (0.0 <= rate <= lam_max * (1.0 + 1e-12)):
            raise RateBoundViolationError(
                f"total rate {rate} outside [0, {lam_max}] at t = {tau}"
            )
        uniform = rng.uniform()
        accepted = uniform < rate / lam_max
        functional = kernel.functional_value(builder.alpha, tau, builder.u)
        alpha_after: Optional[float] = None
        if accepted:
            alpha_after = kernel.sample_post_jump(builder.alpha, tau, builder.u, rng)
            scenario.family.check_parameter(alpha_after)
            jump_times.append(tau)
            post_jump_params.append(alpha_after)
        events.append(
            EventRecord(
                candidate_time=tau,
                accepted=accepted,
                total_rate=rate,
                acceptance_uniform=uniform,
                alpha_before=builder.alpha,
                alpha_after=alpha_after,
                functional_value=functional,
            )
        )
        if accepted:
            builder.alpha = alpha_after
            if len(jump_times) - 1 > jump_cap:
                raise JumpCapExceededError(
                    f"more than {jump_cap} accepted jumps by t = {tau}; "
                    f"check the rate configuration"
                )
        if pending:
            builder.record_pending_snapshot()

    return SamplePath(
        sample_index=sample_index,
        seed_key=_seed_key(seed),
        jump_times=jump_times,
        post_jump_params=post_jump_params,
        snapshots=builder.snapshots,
        events=events,
        probe_positions=tuple(float(x) for x in scenario.probes),
        final_state=builder.u,
        boundary_outflow=builder.outflow,
    )


def path_seed(base_seed: int, sample_index: int) -> np.random.SeedSequence:
    """Deterministic per-path stream: spawn_key (sample_index,) off base_seed."""
    return np.random.SeedSequence(entropy=base_seed, spawn_key=(sample_index,))


def run_ensemble(
    scenario: Scenario,
    base_seed: int,
    n_samples: int,
    n_workers: int = 1,
) -> list[SamplePath]:
    """n_samples independent paths with per-index derived seeds.

    Results are ordered by sample index and identical for any ``n_workers``;
    parallelism only changes wall time.
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")

    def one(k: int) -> SamplePath:
        try:
            return simulate_path(scenario, path_seed(base_seed, k), sample_index=k)
        except Exception as exc:
            raise EnsembleError(f"sample {k} failed: {exc}") from exc

    if n_workers <= 1:
        return [one(k) for k in range(n_samples)]
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        return list(pool.map(one, range(n_samples)))

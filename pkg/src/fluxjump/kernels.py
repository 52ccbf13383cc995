"""State-dependent jump intensities and post-jump parameter distributions.

A rate kernel is the pair (total intensity, post-jump law): the total rate
says how often the flux parameter switches, the post-jump sampler says where
it lands. Both may depend on the current parameter, the time, and the
current density profile; the total rate is bounded by ``lambda_max``
uniformly, which is what makes exact thinning possible.

Two model kernels are included, plus a constant-rate kernel used to
validate the thinning engine statistically:

* production: rate lambda0 * (1 - exp(-lambda1 * WIP)) driven by the work
  in progress WIP = integral of rho over a window [a, b]; post-jump
  parameter drawn from a Gaussian centered at alpha_bar.
* traffic: rate lambda0 + (lambda1 - lambda0) * V driven by the coverage
  fraction V = measure of {x in [0, 1] : rho(x) >= alpha}; post-jump
  parameter uniform on [alpha0 - a, alpha0 + a] with the half-width a
  itself depending on V.
"""

from __future__ import annotations

import abc
import enum
import math
from dataclasses import dataclass

import numpy as np

from .grid import GridFunction

# window of the traffic coverage functional, fixed by the model
_COVERAGE_WINDOW = (0.0, 1.0)


class KernelId(enum.Enum):
    PRODUCTION_GAUSSIAN = "production_gaussian"
    TRAFFIC_UNIFORM = "traffic_uniform"
    CONSTANT_TEST = "constant_test"


def _window_overlaps(u: GridFunction, a: float, b: float) -> np.ndarray:
    """Per-cell overlap lengths with the window [a, b]."""
    grid = u.grid
    if not (grid.x_min <= a < b <= grid.x_max):
        raise ValueError(
            f"window [{a}, {b}] not inside grid domain "
            f"[{grid.x_min}, {grid.x_max}]"
        )
    edges = grid.cell_edges()
    overlaps = np.minimum(b, edges[1:]) - np.maximum(a, edges[:-1])
    return np.clip(overlaps, 0.0, None)


def wip(u: GridFunction, a: float, b: float) -> float:
    """Work in progress: integral of the density over [a, b].

    Midpoint rule with cells at the window edges weighted by their overlap
    fraction.
    """
    return float(np.dot(u.values, _window_overlaps(u, a, b)))


def coverage_fraction(alpha: float, u: GridFunction) -> float:
    """Measure of {x in [0, 1] : rho(x) >= alpha}, clamped to [0, 1].

    Cell averages stand in for pointwise values; edge cells are
    overlap-weighted.
    """
    overlaps = _window_overlaps(u, *_COVERAGE_WINDOW)
    raw = float(np.dot(overlaps, (u.values >= alpha).astype(np.float64)))
    return min(max(raw, 0.0), 1.0)


class RateKernel(abc.ABC):
    """Total jump intensity plus post-jump parameter sampler.

    Kernels are immutable; sampling draws from a caller-owned generator so
    independent sample paths can run concurrently.
    """

    kernel_id: KernelId
    lambda_max: float

    @abc.abstractmethod
    def total_rate(self, alpha: float, t: float, u: GridFunction) -> float:
        """Total intensity that a jump fires in state (alpha, u) at time t."""

    @abc.abstractmethod
    def sample_post_jump(
        self, alpha: float, t: float, u: GridFunction, rng: np.random.Generator
    ) -> float:
        """Draw the parameter after a jump from state (alpha, u) at time t."""

    def functional_value(self, alpha: float, t: float, u: GridFunction):
        """The state functional driving the rate (WIP or V), if any."""
        return None


@dataclass(frozen=True)
class ProductionKernelParams:
    """WIP window [a, b], rate scale/sensitivity, Gaussian center/variance."""

    a: float
    b: float
    lambda0: float
    lambda1: float
    alpha_bar: float
    sigma_sq: float

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"WIP window needs a < b, got [{self.a}, {self.b}]")
        # zero is allowed and means "no jump can fire"
        if self.lambda0 < 0 or self.lambda1 < 0:
            raise ValueError("rate parameters lambda0, lambda1 must be >= 0")
        if self.sigma_sq <= 0:
            raise ValueError(f"variance must be > 0, got {self.sigma_sq}")


class ProductionGaussianKernel(RateKernel):
    """Rate saturating in WIP; Gaussian post-jump law centered at alpha_bar.

    ``rate_bound`` overrides the thinning bound (default: the tight bound
    lambda0). Thinning stays exact for any bound >= the true rate; a looser
    bound only generates more rejected candidates.
    """

    kernel_id = KernelId.PRODUCTION_GAUSSIAN

    def __init__(self, params: ProductionKernelParams, rate_bound: float | None = None):
        if rate_bound is not None and rate_bound < params.lambda0:
            raise ValueError(
                f"rate_bound {rate_bound} below the rate supremum {params.lambda0}"
            )
        self.params = params
        self.lambda_max = params.lambda0 if rate_bound is None else float(rate_bound)

    def variance(self, u: GridFunction) -> float:
        # constant in the reference experiments; the state argument keeps
        # the signature open for density-dependent spreads
        return self.params.sigma_sq

    def total_rate(self, alpha, t, u):
        p = self.params
        return p.lambda0 * (1.0 - math.exp(-p.lambda1 * wip(u, p.a, p.b)))

    def sample_post_jump(self, alpha, t, u, rng):
        return float(rng.normal(self.params.alpha_bar, math.sqrt(self.variance(u))))

    def functional_value(self, alpha, t, u):
        return wip(u, self.params.a, self.params.b)


@dataclass(frozen=True)
class TrafficKernelParams:
    """Rate range [lambda0, lambda1], uniform center alpha0, half-width scale.

    The post-jump half-width is a(V) = sqrt(half_width_scale * (V + 1)) for
    coverage fraction V in [0, 1], so it never exceeds
    a_max = sqrt(2 * half_width_scale); alpha0 - a_max must stay positive so
    sampled parameters remain admissible.
    """

    lambda0: float
    lambda1: float
    alpha0: float
    half_width_scale: float = 9.0 / 2000.0

    def __post_init__(self):
        if not 0 < self.lambda0 <= self.lambda1:
            raise ValueError(
                f"need 0 < lambda0 <= lambda1, got ({self.lambda0}, {self.lambda1})"
            )
        if self.half_width_scale <= 0:
            raise ValueError("half_width_scale must be > 0")
        if self.alpha0 - self.max_half_width <= 0:
            raise ValueError(
                f"alpha0 = {self.alpha0} too close to zero: post-jump support "
                f"must stay positive (a_max = {self.max_half_width})"
            )

    @property
    def max_half_width(self) -> float:
        return math.sqrt(2.0 * self.half_width_scale)


class TrafficUniformKernel(RateKernel):
    """Rate affine in the coverage fraction; uniform post-jump law."""

    kernel_id = KernelId.TRAFFIC_UNIFORM

    def __init__(self, params: TrafficKernelParams):
        self.params = params
        self.lambda_max = params.lambda1

    def half_width(self, alpha: float, u: GridFunction) -> float:
        v = coverage_fraction(alpha, u)
        return math.sqrt(self.params.half_width_scale * (v + 1.0))

    def total_rate(self, alpha, t, u):
        p = self.params
        return p.lambda0 + (p.lambda1 - p.lambda0) * coverage_fraction(alpha, u)

    def sample_post_jump(self, alpha, t, u, rng):
        a = self.half_width(alpha, u)
        p = self.params
        return float(rng.uniform(p.alpha0 - a, p.alpha0 + a))

    def functional_value(self, alpha, t, u):
        return coverage_fraction(alpha, u)


class ConstantRateKernel(RateKernel):
    """Fixed rate and fixed uniform post-jump law, for engine validation.

    With total rate equal to lambda_max every thinning candidate is
    accepted, so jump times form a homogeneous Poisson process.
    """

    kernel_id = KernelId.CONSTANT_TEST

    def __init__(self, rate: float, post_jump_low: float = 0.0, post_jump_high: float = 1.0):
        if rate < 0:
            raise ValueError(f"rate must be >= 0, got {rate}")
        if not post_jump_low < post_jump_high:
            raise ValueError("post-jump interval must be nonempty")
        self.rate = float(rate)
        self.lambda_max = float(rate)
        self.post_jump_low = float(post_jump_low)
        self.post_jump_high = float(post_jump_high)

    def total_rate(self, alpha, t, u):
        return self.rate

    def sample_post_jump(self, alpha, t, u, rng):
        return float(rng.uniform(self.post_jump_low, self.post_jump_high))

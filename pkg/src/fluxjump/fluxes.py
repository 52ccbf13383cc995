"""Parametrized families of Lipschitz flux functions.

Four families are provided:

* ``ScaledFlux``: f_a(u) = a * f(u) for a user-supplied base function f.
* ``PiecewiseMinFlux``: f(rho) = min(v * rho, mu), the classic capacity-capped
  production flux (independent of the family parameter).
* ``ProductionExpFlux``: f_a(rho) = mu(a) * (1 - exp(-v(a) * rho / mu(a)))
  with mu(a) = 1 + tanh(a / 2) and v(a) = 1 + tanh(a).
* ``TrafficGammaFlux``: Gamma-density-shaped fundamental diagram with shape
  parameter theta >= 2 and critical density at rho = a.

Each family reports shape metadata (monotone or unimodal with known argmax)
used by the Godunov interface flux, a Lipschitz constant over a bounded
working range, and the C^{0,1} distance between two members
(sup-norm of the difference plus Lipschitz seminorm of the difference).
"""

from __future__ import annotations

import abc
import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import gammaln

# Sampling resolution for working-range suprema (C^{0,1} norms, Lipschitz
# constants without closed form, construction-time finiteness checks).
WORKING_GRID_POINTS = 10_000

# Relative inflation applied to grid-sampled Lipschitz constants so the
# reported bound stays >= the true supremum despite finite sampling.
_SAMPLED_LIP_GUARD = 1e-6

# log-Gamma accuracy is only certified on [1, 20]; the traffic constructor
# restricts its parameter domain so the Gamma argument stays inside.
_GAMMA_ARG_MIN = 1.0
_GAMMA_ARG_MAX = 20.0


class ParameterError(ValueError):
    """Raised when a flux parameter lies outside the family's domain."""


class ShapeKind(enum.Enum):
    MONOTONE_INCREASING = "monotone_increasing"
    UNIMODAL = "unimodal"


class FamilyId(enum.Enum):
    SCALED = "scaled"
    PIECEWISE_MIN = "piecewise_min"
    PRODUCTION_EXP = "production_exp"
    TRAFFIC_GAMMA = "traffic_gamma"


@dataclass(frozen=True)
class WorkingRange:
    """Density interval over which norms and Lipschitz constants are taken."""

    u_min: float
    u_max: float

    def __post_init__(self):
        if not self.u_min < self.u_max:
            raise ValueError(
                f"working range needs u_min < u_max, got [{self.u_min}, {self.u_max}]"
            )


@dataclass(frozen=True)
class FluxShape:
    """Monotonicity metadata consumed by the Godunov interface flux."""

    kind: ShapeKind
    critical_density: Optional[float] = None

    def __post_init__(self):
        if self.kind is ShapeKind.UNIMODAL and self.critical_density is None:
            raise ValueError("unimodal shape requires a critical density")


class FluxFamily(abc.ABC):
    """A parameter-indexed family of Lipschitz flux functions.

    Instances are immutable after construction and safe to share across
    concurrently running sample paths.
    """

    family_id: FamilyId

    def __init__(self, working_range: WorkingRange, parameter_domain: tuple):
        self._working_range = working_range
        self._domain = (float(parameter_domain[0]), float(parameter_domain[1]))
        self._eval_grid = np.linspace(
            working_range.u_min, working_range.u_max, WORKING_GRID_POINTS
        )
        self._lip_cache: dict = {}

    @property
    def working_range(self) -> WorkingRange:
        return self._working_range

    @property
    def parameter_domain(self) -> tuple:
        """Closed interval (lo, hi) of admissible parameters."""
        return self._domain

    def check_parameter(self, alpha: float) -> float:
        alpha = float(alpha)
        lo, hi = self._domain
        if not (lo <= alpha <= hi) or not math.isfinite(alpha):
            raise ParameterError(
                f"{self.family_id.value}: parameter {alpha} outside [{lo}, {hi}]"
            )
        return alpha

    def flux(self, alpha: float, u):
        """Evaluate f_alpha(u); u may be a scalar or an ndarray."""
        alpha = self.check_parameter(alpha)
        u_arr = np.asarray(u, dtype=np.float64)
        out = self._flux(alpha, u_arr)
        return out if isinstance(u, np.ndarray) else float(out)

    def flux_derivative(self, alpha: float, u):
        """Evaluate f_alpha'(u); one-sided conventions at kinks."""
        alpha = self.check_parameter(alpha)
        u_arr = np.asarray(u, dtype=np.float64)
        out = self._flux_derivative(alpha, u_arr)
        return out if isinstance(u, np.ndarray) else float(out)

    def lipschitz_constant(self, alpha: float) -> float:
        """Upper bound for sup |f_alpha'| over the working range."""
        alpha = self.check_parameter(alpha)
        cached = self._lip_cache.get(alpha)
        if cached is None:
            cached = self._lipschitz(alpha)
            self._lip_cache[alpha] = cached
        return cached

    def shape(self, alpha: float) -> FluxShape:
        alpha = self.check_parameter(alpha)
        return self._shape(alpha)

    def c01_distance(self, alpha: float, beta: float) -> float:
        """C^{0,1} distance sup|f_a - f_b| + sup|f_a' - f_b'| over the range.

        Suprema are sampled on a fixed grid of WORKING_GRID_POINTS points.
        """
        alpha = self.check_parameter(alpha)
        beta = self.check_parameter(beta)
        grid = self._eval_grid
        sup = float(np.max(np.abs(self._flux(alpha, grid) - self._flux(beta, grid))))
        lip = float(
            np.max(
                np.abs(
                    self._flux_derivative(alpha, grid)
                    - self._flux_derivative(beta, grid)
                )
            )
        )
        return sup + lip

    @abc.abstractmethod
    def _flux(self, alpha: float, u: np.ndarray) -> np.ndarray: ...

    @abc.abstractmethod
    def _flux_derivative(self, alpha: float, u: np.ndarray) -> np.ndarray: ...

    @abc.abstractmethod
    def _lipschitz(self, alpha: float) -> float: ...

    @abc.abstractmethod
    def _shape(self, alpha: float) -> FluxShape: ...

    def _sampled_lipschitz(self, alpha: float) -> float:
        grid_max = float(np.max(np.abs(self._flux_derivative(alpha, self._eval_grid))))
        return grid_max * (1.0 + _SAMPLED_LIP_GUARD)


class ScaledFlux(FluxFamily):
    """f_a(u) = a * f(u) for a Lipschitz base function f, a in R.

    The base derivative may be supplied; without it, derivatives fall back
    to central differences and the Lipschitz seminorm of f is estimated
    from difference quotients on the sampling grid.
    """

    family_id = FamilyId.SCALED

    def __init__(
        self,
        base: Callable,
        working_range: WorkingRange,
        base_derivative: Optional[Callable] = None,
        base_shape: ShapeKind = ShapeKind.MONOTONE_INCREASING,
    ):
        super().__init__(working_range, (-math.inf, math.inf))
        self._base = base
        self._base_derivative = base_derivative
        self._base_shape = base_shape
        samples = np.asarray(base(self._eval_grid), dtype=np.float64)
        if samples.shape != self._eval_grid.shape or not np.all(np.isfinite(samples)):
            raise ParameterError("scaled: base function must be finite on the range")
        self._base_sup = float(np.max(np.abs(samples)))
        if base_derivative is not None:
            dsamples = np.asarray(base_derivative(self._eval_grid), dtype=np.float64)
            if not np.all(np.isfinite(dsamples)):
                raise ParameterError("scaled: base derivative must be finite")
            self._base_lip = float(np.max(np.abs(dsamples)))
        else:
            quotients = np.diff(samples) / np.diff(self._eval_grid)
            self._base_lip = float(np.max(np.abs(quotients)))
        # finite-difference step for the derivative fallback
        self._fd_step = (working_range.u_max - working_range.u_min) * 1e-7

    @property
    def base_c01_norm(self) -> float:
        """||f||_{C^{0,1}} of the base, sampled on the working grid."""
        return self._base_sup + self._base_lip

    def _flux(self, alpha, u):
        return alpha * np.asarray(self._base(u), dtype=np.float64)

    def _flux_derivative(self, alpha, u):
        if self._base_derivative is not None:
            return alpha * np.asarray(self._base_derivative(u), dtype=np.float64)
        h = self._fd_step
        upper = np.asarray(self._base(u + h), dtype=np.float64)
        lower = np.asarray(self._base(u - h), dtype=np.float64)
        return alpha * (upper - lower) / (2.0 * h)

    def _lipschitz(self, alpha):
        return abs(alpha) * self._base_lip

    def _shape(self, alpha):
        # Monotone upwinding is only valid for nonnegative scalings; the
        # solver is not used with negative ones.
        if alpha < 0 and self._base_shape is ShapeKind.MONOTONE_INCREASING:
            raise ParameterError(
                "scaled: shape metadata undefined for negative scaling of a "
                "monotone base"
            )
        if self._base_shape is ShapeKind.UNIMODAL:
            raise ParameterError("scaled: unimodal base shapes are not supported")
        return FluxShape(ShapeKind.MONOTONE_INCREASING)


class PiecewiseMinFlux(FluxFamily):
    """Capacity-capped linear flux f(rho) = min(v * rho, mu).

    The family parameter is accepted (domain R) but does not change the
    flux; velocity v and capacity mu are fixed at construction.
    """

    family_id = FamilyId.PIECEWISE_MIN

    def __init__(self, v: float, mu: float, working_range: WorkingRange):
        if v <= 0:
            raise ParameterError(f"piecewise_min: velocity must be > 0, got {v}")
        if mu <= 0:
            raise ParameterError(f"piecewise_min: capacity must be > 0, got {mu}")
        super().__init__(working_range, (-math.inf, math.inf))
        self.v = float(v)
        self.mu = float(mu)

    @property
    def kink(self) -> float:
        """Density mu / v where the two branches meet."""
        return self.mu / self.v

    def _flux(self, alpha, u):
        return np.minimum(self.v * u, self.mu)

    def _flux_derivative(self, alpha, u):
        # one-sided value v at the kink itself: a consistent CFL upper bound
        return np.where(u <= self.kink, self.v, 0.0)

    def _lipschitz(self, alpha):
        return self.v

    def _shape(self, alpha):
        return FluxShape(ShapeKind.MONOTONE_INCREASING)


class ProductionExpFlux(FluxFamily):
    """Saturating production flux f_a(rho) = mu(a) * (1 - exp(-v(a) rho / mu(a))).

    Capacity mu(a) = 1 + tanh(a / 2) and velocity v(a) = 1 + tanh(a), both
    positive for every real a, so the family is defined on all of R.
    """

    family_id = FamilyId.PRODUCTION_EXP

    def __init__(self, working_range: WorkingRange):
        super().__init__(working_range, (-math.inf, math.inf))

    @staticmethod
    def capacity(alpha: float) -> float:
        return 1.0 + math.tanh(alpha / 2.0)

    @staticmethod
    def velocity(alpha: float) -> float:
        return 1.0 + math.tanh(alpha)

    def _flux(self, alpha, u):
        mu = self.capacity(alpha)
        v = self.velocity(alpha)
        return mu * (1.0 - np.exp(-(v / mu) * u))

    def _flux_derivative(self, alpha, u):
        mu = self.capacity(alpha)
        v = self.velocity(alpha)
        return v * np.exp(-(v / mu) * u)

    def _lipschitz(self, alpha):
        # sup of v * exp(-v rho / mu) over [u_min, u_max] sits at u_min
        mu = self.capacity(alpha)
        v = self.velocity(alpha)
        return v * math.exp(-(v / mu) * self.working_range.u_min)

    def _shape(self, alpha):
        return FluxShape(ShapeKind.MONOTONE_INCREASING)


class TrafficGammaFlux(FluxFamily):
    """Gamma-density-shaped traffic flux with critical density at rho = a.

    f_a(rho) = (theta-1) / (a^theta * Gamma((theta-1)/a))
               * rho^(theta-1) * exp(-(theta-1) rho / a)     for rho >= 0,
    extended by zero for rho < 0. Requires theta >= 2 so the family is
    Lipschitz. The parameter domain is restricted so the Gamma argument
    (theta-1)/a stays in [1, 20], where the log-Gamma evaluation is
    certified to 1e-12 relative accuracy.
    """

    family_id = FamilyId.TRAFFIC_GAMMA

    def __init__(self, theta: float, working_range: WorkingRange):
        if theta < 2.0:
            raise ParameterError(f"traffic_gamma: theta must be >= 2, got {theta}")
        self.theta = float(theta)
        lo = (self.theta - 1.0) / _GAMMA_ARG_MAX
        hi = (self.theta - 1.0) / _GAMMA_ARG_MIN
        super().__init__(working_range, (lo, hi))

    def check_parameter(self, alpha: float) -> float:
        alpha = float(alpha)
        if alpha <= 0:
            raise ParameterError(f"traffic_gamma: parameter must be > 0, got {alpha}")
        return super().check_parameter(alpha)

    def _coefficient(self, alpha: float) -> float:
        th = self.theta
        k = (th - 1.0) / alpha
        return math.exp(math.log(th - 1.0) - th * math.log(alpha) - gammaln(k))

    def _flux(self, alpha, u):
        th = self.theta
        k = (th - 1.0) / alpha
        c = self._coefficient(alpha)
        pos = np.maximum(u, 0.0)
        vals = c * np.power(pos, th - 1.0) * np.exp(-k * pos)
        return np.where(u > 0.0, vals, 0.0)

    def _flux_derivative(self, alpha, u):
        th = self.theta
        k = (th - 1.0) / alpha
        c = self._coefficient(alpha)
        pos = np.maximum(u, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = c * np.power(pos, th - 2.0) * np.exp(-k * pos) * ((th - 1.0) - k * pos)
        # rho^(theta-2) at rho = 0: zero slope for theta > 2, c for theta == 2
        at_zero = c * (th - 1.0) if th == 2.0 else 0.0
        vals = np.where(u == 0.0, at_zero, vals)
        return np.where(u < 0.0, 0.0, vals)

    def _lipschitz(self, alpha):
        return self._sampled_lipschitz(alpha)

    def _shape(self, alpha):
        return FluxShape(ShapeKind.UNIMODAL, critical_density=alpha)


def make_scaled(
    base: Callable,
    working_range: WorkingRange,
    base_derivative: Optional[Callable] = None,
) -> ScaledFlux:
    """Family f_a = a * base over the given working range."""
    return ScaledFlux(base, working_range, base_derivative=base_derivative)


def make_piecewise_min(v: float, mu: float, working_range: WorkingRange) -> PiecewiseMinFlux:
    """Capacity-capped flux min(v * rho, mu)."""
    return PiecewiseMinFlux(v, mu, working_range)


def make_production_exp(working_range: WorkingRange) -> ProductionExpFlux:
    """Saturating production family with tanh-parametrized capacity/velocity."""
    return ProductionExpFlux(working_range)


def make_traffic_gamma(theta: float, working_range: WorkingRange) -> TrafficGammaFlux:
    """Gamma-shaped traffic family, theta >= 2."""
    return TrafficGammaFlux(theta, working_range)


def tabulate_flux_curves(
    family: FluxFamily,
    alphas: Sequence[float],
    n_points: int = 201,
) -> list[tuple[float, float, float]]:
    """(alpha, rho, flux) triples over the working range, per parameter.

    Rows are grouped by parameter in the given order, density ascending
    within each group; each parameter is validated first.
    """
    if n_points < 2:
        raise ParameterError(f"n_points must be >= 2, got {n_points}")
    rng_ = family.working_range
    rho = np.linspace(rng_.u_min, rng_.u_max, n_points)
    rows = []
    for alpha in alphas:
        alpha = family.check_parameter(alpha)
        vals = family.flux(alpha, rho)
        rows.extend((alpha, float(r), float(f)) for r, f in zip(rho, vals))
    return rows

"""Delay models for a two-lane highway on-ramp with mixed selfish/altruistic drivers.

Lane 0 is the on-ramp, lane 1 the outer mainline lane whose drivers choose to
stay steadfast (merge with the ramp traffic) or bypass it (shift to lane 2),
and lane 2 the inner mainline lane.  Flows are proportions of the lane-1
flow.  Once a configuration is fixed, every delay is affine in the total
bypass share, so the whole model reduces to five derived constants.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError

# absolute tolerance for the n0 + n2 = 1 closure check
FLOW_CLOSURE_TOL = 1e-12

# required keys of a JSON config document; no others are accepted
CONFIG_KEYS = ("n0", "c1t", "c1m", "c2t", "c2m", "mu", "gamma")


@dataclass(frozen=True)
class NeighborFlows:
    """Normalized flows on the lanes neighboring lane 1.

    ``n2`` may be omitted and is then computed as ``1 - n0``; when supplied it
    must close to 1 with ``n0`` within ``FLOW_CLOSURE_TOL``.
    """

    n0: float
    n2: float = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.n2 is None:
            object.__setattr__(self, "n2", 1.0 - self.n0)
        if not (math.isfinite(self.n0) and math.isfinite(self.n2)):
            raise ConfigError("neighbor flows must be finite numbers")
        if self.n0 < 0.0 or self.n2 < 0.0:
            raise ConfigError(
                f"neighbor flows must be nonnegative, got n0={self.n0}, n2={self.n2}"
            )
        if abs(self.n0 + self.n2 - 1.0) > FLOW_CLOSURE_TOL:
            raise ConfigError(f"n0 + n2 must equal 1, got {self.n0 + self.n2!r}")


@dataclass(frozen=True)
class CostCoefficients:
    """Calibrated delay-model coefficients, all nonnegative.

    ``c1t``/``c1m`` weight the lane-1 through and merge terms, ``c2t``/``c2m``
    the lane-2 terms; ``mu`` amplifies the merge interaction and ``gamma`` the
    lane-change interaction.  They are treated as opaque calibrated constants.
    """

    c1t: float
    c1m: float
    c2t: float
    c2m: float
    mu: float
    gamma: float

    def __post_init__(self):
        for name in ("c1t", "c1m", "c2t", "c2m", "mu", "gamma"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0.0:
                raise ConfigError(
                    f"cost coefficient {name} must be finite and >= 0, got {value}"
                )


@dataclass(frozen=True)
class OnRampConfig:
    """Full on-ramp description: neighboring flows plus cost coefficients."""

    flows: NeighborFlows
    costs: CostCoefficients

    @classmethod
    def from_values(cls, n0, c1t, c1m, c2t, c2m, mu, gamma):
        return cls(
            flows=NeighborFlows(n0),
            costs=CostCoefficients(c1t=c1t, c1m=c1m, c2t=c2t, c2m=c2m, mu=mu, gamma=gamma),
        )

    @classmethod
    def from_dict(cls, data) -> "OnRampConfig":
        """Build a config from a flat mapping with exactly the keys in CONFIG_KEYS."""
        if not isinstance(data, dict):
            raise ConfigError("config document must be a JSON object")
        unknown = sorted(set(data) - set(CONFIG_KEYS))
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        values = {}
        for key in CONFIG_KEYS:
            if key not in data:
                raise ConfigError(f"missing config key: {key}")
            value = data[key]
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"config key {key} must be a number, got {value!r}")
            values[key] = float(value)
        return cls.from_values(**values)


def load_config(path) -> OnRampConfig:
    """Parse a JSON config file into an OnRampConfig."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc
    return OnRampConfig.from_dict(data)


@dataclass(frozen=True)
class DelayCoefficients:
    """Affine constants of the four delay curves in the total bypass share x.

    steadfast (and on-ramp) delay: steadfast_slope * (1 - x) + steadfast_intercept
    bypass delay:                  bypass_slope * x + bypass_intercept
    lane-2 delay:                  lane2_slope * x + bypass_intercept
    """

    steadfast_slope: float
    steadfast_intercept: float
    bypass_slope: float
    bypass_intercept: float
    lane2_slope: float

    @property
    def slope_sum(self) -> float:
        return self.steadfast_slope + self.bypass_slope


def derive_coefficients(config: OnRampConfig) -> DelayCoefficients:
    """Collapse a validated config into the five affine delay constants."""
    n0, n2 = config.flows.n0, config.flows.n2
    c = config.costs
    return DelayCoefficients(
        steadfast_slope=c.c1t * c.mu + c.c1m * n0,
        steadfast_intercept=c.c1t * c.mu * n0,
        bypass_slope=c.c2t * c.gamma + c.c2m * n2,
        bypass_intercept=c.c2t * n2,
        lane2_slope=c.c2t + c.c2m * n2,
    )


@dataclass(frozen=True)
class DelayProfile:
    """Travel delays by option/lane; on_ramp always equals steadfast."""

    steadfast: float
    bypass: float
    on_ramp: float
    lane2: float


def delays(derived: DelayCoefficients, x_hat_b: float) -> DelayProfile:
    """Travel delays at total bypass share ``x_hat_b`` in [0, 1]."""
    if not 0.0 <= x_hat_b <= 1.0:
        raise ValueError(f"bypass share must lie in [0, 1], got {x_hat_b}")
    steadfast = derived.steadfast_slope * (1.0 - x_hat_b) + derived.steadfast_intercept
    bypass = derived.bypass_slope * x_hat_b + derived.bypass_intercept
    lane2 = derived.lane2_slope * x_hat_b + derived.bypass_intercept
    return DelayProfile(steadfast=steadfast, bypass=bypass, on_ramp=steadfast, lane2=lane2)


def social_delay(config: OnRampConfig, derived: DelayCoefficients, x_hat_b: float) -> float:
    """Flow-weighted total delay, a convex quadratic in the bypass share.

    The argument is deliberately unrestricted: the unconstrained minimizer may
    fall outside [0, 1] and callers locate it by evaluating the same affine
    extension used here.
    """
    x = x_hat_b
    steadfast = derived.steadfast_slope * (1.0 - x) + derived.steadfast_intercept
    bypass = derived.bypass_slope * x + derived.bypass_intercept
    lane2 = derived.lane2_slope * x + derived.bypass_intercept
    n0, n2 = config.flows.n0, config.flows.n2
    return (1.0 - x) * steadfast + x * bypass + n0 * steadfast + n2 * lane2


@dataclass(frozen=True)
class AltruisticCostPair:
    """Costs perceived by altruistic drivers for the two options."""

    steadfast_cost: float
    bypass_cost: float


def altruistic_costs(
    config: OnRampConfig,
    derived: DelayCoefficients,
    x_hat_b: float,
    beta: float,
    error: float = 1.0,
) -> AltruisticCostPair:
    """Perceived costs at level ``beta`` with multiplicative error ``error``.

    Each cost is the travel delay plus beta*error times the marginal-delay
    term of that option; the costs depend on beta and error only through
    their product, which is computed first so scaling one against the other
    is exactly neutral.
    """
    if beta < 0.0:
        raise ValueError(f"altruism level must be >= 0, got {beta}")
    if error <= 0.0:
        raise ValueError(f"error factor must be > 0, got {error}")
    level = beta * error
    profile = delays(derived, x_hat_b)
    n0, n2 = config.flows.n0, config.flows.n2
    steadfast_cost = profile.steadfast + level * derived.steadfast_slope * (
        (1.0 - x_hat_b) + n0
    )
    bypass_cost = profile.bypass + level * (
        derived.bypass_slope * x_hat_b + derived.lane2_slope * n2
    )
    return AltruisticCostPair(steadfast_cost=steadfast_cost, bypass_cost=bypass_cost)


@dataclass(frozen=True)
class FlowDistribution:
    """Split of the lane-1 flow by driver class and option.

    Deliberately unvalidated so that infeasible candidates can be constructed
    and reported on; use validate_flow_distribution for feasibility checks.
    """

    selfish_steadfast: float
    selfish_bypass: float
    altruistic_steadfast: float
    altruistic_bypass: float

    @property
    def total_steadfast(self) -> float:
        return self.selfish_steadfast + self.altruistic_steadfast

    @property
    def total_bypass(self) -> float:
        return self.selfish_bypass + self.altruistic_bypass

    @property
    def altruistic_ratio(self) -> float:
        return self.altruistic_steadfast + self.altruistic_bypass


@dataclass(frozen=True)
class ConstraintViolation:
    constraint: str
    residual: float


def validate_flow_distribution(
    flow: FlowDistribution, alpha: float, tol: float = 1e-9
) -> list[ConstraintViolation]:
    """Report every feasibility constraint violated beyond ``tol``.

    An empty list means the flow is a feasible split for altruistic ratio
    ``alpha``: class masses balance and all components are nonnegative.
    """
    violations = []
    selfish_residual = abs(flow.selfish_steadfast + flow.selfish_bypass - (1.0 - alpha))
    if selfish_residual > tol:
        violations.append(ConstraintViolation("selfish_mass_balance", selfish_residual))
    altruistic_residual = abs(
        flow.altruistic_steadfast + flow.altruistic_bypass - alpha
    )
    if altruistic_residual > tol:
        violations.append(
            ConstraintViolation("altruistic_mass_balance", altruistic_residual)
        )
    for name in (
        "selfish_steadfast",
        "selfish_bypass",
        "altruistic_steadfast",
        "altruistic_bypass",
    ):
        value = getattr(flow, name)
        if value < -tol:
            violations.append(ConstraintViolation(f"nonnegative_{name}", -value))
    return violations


@dataclass(frozen=True)
class PopulationParams:
    """Altruistic share of the lane-1 flow and the assigned altruism level."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.beta < 0.0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")

"""Worst-case social delay under marginal-cost measurement error.

The price of anarchy takes the supremum of the equilibrium social delay over
the error interval and over abundant altruistic ratios, normalized by the
optimum.  Closed-form evaluation reduces both suprema to two endpoint solves;
a grid oracle re-derives the optimal altruism level by brute force.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import (
    AnalysisSummary,
    ErrorInterval,
    Regime,
    classify,
)
from .equilibrium import solve_equilibrium
from .errors import NotInMeaningfulSetError, TransitionUndefinedError, ZeroOptimumError
from .model import DelayCoefficients, OnRampConfig, social_delay


@dataclass(frozen=True)
class WorstCasePoint:
    error: float
    alpha: float
    x_hat_b: float
    j_soc: float


@dataclass(frozen=True)
class RobustnessSummary:
    poa: float
    beta_star: float
    branch: Regime
    transition_level_at_full_altruism: float | None
    worst_case_points: tuple[WorstCasePoint, ...]


def worst_case_social_delay(
    config: OnRampConfig,
    derived: DelayCoefficients,
    summary: AnalysisSummary,
    beta: float,
    interval: ErrorInterval,
) -> tuple[float, tuple[WorstCasePoint, ...]]:
    """Supremum of the equilibrium social delay over errors and abundant ratios.

    The ratio supremum is attained at full altruism, and the error supremum at
    an interval endpoint: the equilibrium bypass share is monotone in the
    error factor while the social delay is convex in the share, so no interior
    error can dominate both endpoints.  Returns the supremum and the endpoint
    evaluations achieving it (both, on a tie).
    """
    if not summary.in_meaningful_set:
        raise NotInMeaningfulSetError(
            summary.exclusion_reason or "configuration outside the meaningful set"
        )
    if beta < 0.0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    points = []
    for error in dict.fromkeys((interval.e_lower, interval.e_upper)):
        result = solve_equilibrium(config, derived, summary, alpha=1.0, beta=beta, error=error)
        points.append(
            WorstCasePoint(
                error=error, alpha=1.0, x_hat_b=result.x_hat_b, j_soc=result.social_delay
            )
        )
    supremum = max(point.j_soc for point in points)
    achieving = tuple(p for p in points if p.j_soc >= supremum - 1e-12)
    return supremum, achieving


def price_of_anarchy(
    config: OnRampConfig,
    derived: DelayCoefficients,
    summary: AnalysisSummary,
    beta: float,
    interval: ErrorInterval,
) -> float:
    """Worst-case social delay normalized by the optimum; always >= 1."""
    if summary.j_opt <= 0.0:
        raise ZeroOptimumError("optimal social delay is zero; ratio undefined")
    supremum, _ = worst_case_social_delay(config, derived, summary, beta, interval)
    return supremum / summary.j_opt


def transition_beta(alpha: float, phi: float, delta: float) -> float:
    """Effective level beyond which the equilibrium sticks at the share alpha.

    Defined only while 2*delta - phi - alpha > 0; at alpha == delta it equals
    1, and at alpha == 1 (when defined) it equals the regime ratio.
    """
    denominator = 2.0 * delta - phi - alpha
    if denominator <= 0.0:
        raise TransitionUndefinedError(
            f"no finite transition level: 2*delta - phi - alpha = {denominator} <= 0"
        )
    return (alpha - phi) / denominator


def optimal_altruism_level(
    config: OnRampConfig,
    derived: DelayCoefficients,
    summary: AnalysisSummary,
    interval: ErrorInterval,
) -> RobustnessSummary:
    """Altruism level minimizing the price of anarchy, with its achieved value.

    In the endpoint-symmetric regime the minimizer is the reciprocal of the
    interval's geometric mean, placing the two endpoint crossings at equal
    social delay.  In the transition-limited regime it is 1/(e_lower * pi),
    equalizing the lower endpoint against the flat stage that starts at
    effective level pi.
    """
    if not summary.in_meaningful_set:
        raise NotInMeaningfulSetError(
            summary.exclusion_reason or "configuration outside the meaningful set"
        )
    label = classify(config, derived, interval)
    if label.regime is Regime.TRANSITION_LIMITED:
        beta_star = 1.0 / (interval.e_lower * summary.pi)
    else:
        beta_star = 1.0 / interval.geometric_mean
    if summary.j_opt <= 0.0:
        raise ZeroOptimumError("optimal social delay is zero; ratio undefined")
    supremum, points = worst_case_social_delay(config, derived, summary, beta_star, interval)
    transition = (
        summary.pi if math.isfinite(summary.pi) and summary.pi > 0.0 else None
    )
    return RobustnessSummary(
        poa=supremum / summary.j_opt,
        beta_star=beta_star,
        branch=label.regime,
        transition_level_at_full_altruism=transition,
        worst_case_points=points,
    )


def _span_grid(lower: float, upper: float, step: float) -> np.ndarray:
    """Multiples of ``step`` from ``lower`` with both endpoints included."""
    if upper <= lower:
        return np.array([lower])
    count = int(math.floor((upper - lower) / step + 1e-9))
    grid = lower + np.arange(count + 1, dtype=float) * step
    if grid[-1] > upper:
        grid[-1] = upper
    elif upper - grid[-1] > 1e-12:
        grid = np.append(grid, upper)
    return grid


def grid_poa(
    config: OnRampConfig,
    derived: DelayCoefficients,
    summary: AnalysisSummary,
    beta: float,
    interval: ErrorInterval,
    inner_grid_step: float = 1e-2,
) -> float:
    """Grid-sampled price of anarchy: errors and ratios enumerated exhaustively.

    Evaluates the equilibrium share min(alpha, crossing(beta*error)) on the
    product grid; valid for the abundant-ratio range where alpha > phi.
    """
    if inner_grid_step <= 0.0:
        raise ValueError(f"inner grid step must be > 0, got {inner_grid_step}")
    if not summary.in_meaningful_set:
        raise NotInMeaningfulSetError(
            summary.exclusion_reason or "configuration outside the meaningful set"
        )
    if summary.j_opt <= 0.0:
        raise ZeroOptimumError("optimal social delay is zero; ratio undefined")
    errors = _span_grid(interval.e_lower, interval.e_upper, inner_grid_step)
    delta_clamped = min(max(summary.delta, 0.0), 1.0)
    alphas = _span_grid(delta_clamped, 1.0, inner_grid_step)
    levels = beta * errors
    # same crossing formula as altruistic_intersection, vectorized over the error grid
    crossings = ((1.0 - levels) * summary.phi + 2.0 * levels * summary.delta) / (1.0 + levels)
    shares = np.minimum(alphas[None, :], crossings[:, None])
    values = social_delay(config, derived, shares)
    return float(values.max()) / summary.j_opt


def grid_optimal_beta(
    config: OnRampConfig,
    derived: DelayCoefficients,
    summary: AnalysisSummary,
    interval: ErrorInterval,
    beta_grid_step: float = 1e-3,
    inner_grid_step: float = 1e-2,
) -> float:
    """Brute-force minimizer of the grid-sampled price of anarchy.

    Searches levels on (0, 2/e_lower], a range that provably contains both
    closed-form minimizers; ties resolve to the smallest level.
    """
    if beta_grid_step <= 0.0:
        raise ValueError(f"beta grid step must be > 0, got {beta_grid_step}")
    beta_max = 2.0 / interval.e_lower
    count = int(math.floor(beta_max / beta_grid_step + 1e-9))
    if count < 1:
        raise ValueError("beta grid step larger than the search range")
    best_beta = beta_grid_step
    best_value = math.inf
    for index in range(1, count + 1):
        beta = index * beta_grid_step
        value = grid_poa(config, derived, summary, beta, interval, inner_grid_step)
        if value < best_value:
            best_value = value
            best_beta = beta
    return best_beta

"""Parameter sweeps over the altruistic ratio and the effective level, with CSV emission."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from .analysis import AnalysisSummary
from .equilibrium import EquilibriumCase, solve_equilibrium
from .model import DelayCoefficients, DelayProfile, OnRampConfig

ALPHA_SWEEP_COLUMNS = ("beta", "alpha", "x_hat_b", "case", "j_soc")
LEVEL_SWEEP_COLUMNS = ("alpha", "beta_e", "x_hat_b", "case", "j_soc")


def format_number(value: float) -> str:
    """CSV number format: 12 significant digits, below every tolerance in use."""
    return format(value, ".12g")


def inclusive_grid(lower: float, upper: float, step: float) -> list[float]:
    """Multiples of ``step`` from ``lower``, with ``upper`` always included."""
    if step <= 0.0:
        raise ValueError(f"step must be > 0, got {step}")
    if upper < lower:
        raise ValueError(f"empty grid: [{lower}, {upper}]")
    count = int(math.floor((upper - lower) / step + 1e-9))
    values = [lower + index * step for index in range(count + 1)]
    if values[-1] > upper:
        values[-1] = upper
    elif upper - values[-1] > 1e-12:
        values.append(upper)
    return values


@dataclass(frozen=True)
class AlphaSweepRow:
    beta: float
    alpha: float
    x_hat_b: float
    case: EquilibriumCase
    j_soc: float
    delays: DelayProfile


@dataclass(frozen=True)
class LevelSweepRow:
    alpha: float
    beta_e: float
    x_hat_b: float
    case: EquilibriumCase
    j_soc: float
    delays: DelayProfile


def sweep_alpha(
    config: OnRampConfig,
    derived: DelayCoefficients,
    summary: AnalysisSummary,
    betas: Sequence[float],
    alpha_step: float,
) -> list[AlphaSweepRow]:
    """One row per (beta, alpha) with alpha on a [0, 1] grid, error factor 1."""
    if not 0.0 < alpha_step <= 0.1:
        raise ValueError(f"alpha step must lie in (0, 0.1], got {alpha_step}")
    rows = []
    for beta in betas:
        for alpha in inclusive_grid(0.0, 1.0, alpha_step):
            result = solve_equilibrium(config, derived, summary, alpha, beta)
            rows.append(
                AlphaSweepRow(
                    beta=beta,
                    alpha=alpha,
                    x_hat_b=result.x_hat_b,
                    case=result.case,
                    j_soc=result.social_delay,
                    delays=result.delays,
                )
            )
    return rows


def sweep_beta_e(
    config: OnRampConfig,
    derived: DelayCoefficients,
    summary: AnalysisSummary,
    alphas: Sequence[float],
    beta_e_max: float,
    step: float,
) -> list[LevelSweepRow]:
    """One row per (alpha, beta_e) with the effective level on a [0, max] grid.

    The level is applied as the altruism level itself (error factor 1), which
    is equivalent to any (beta, error) pair with the same product.
    """
    if beta_e_max <= 0.0:
        raise ValueError(f"beta_e_max must be > 0, got {beta_e_max}")
    rows = []
    for alpha in alphas:
        for level in inclusive_grid(0.0, beta_e_max, step):
            result = solve_equilibrium(config, derived, summary, alpha, beta=level)
            rows.append(
                LevelSweepRow(
                    alpha=alpha,
                    beta_e=level,
                    x_hat_b=result.x_hat_b,
                    case=result.case,
                    j_soc=result.social_delay,
                    delays=result.delays,
                )
            )
    return rows


def _write_csv(stream: IO[str], header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(row) + "\n")


def write_alpha_sweep(rows: Iterable[AlphaSweepRow], stream: IO[str]) -> None:
    _write_csv(
        stream,
        ALPHA_SWEEP_COLUMNS,
        (
            (
                format_number(row.beta),
                format_number(row.alpha),
                format_number(row.x_hat_b),
                row.case.value,
                format_number(row.j_soc),
            )
            for row in rows
        ),
    )


def write_beta_e_sweep(rows: Iterable[LevelSweepRow], stream: IO[str]) -> None:
    _write_csv(
        stream,
        LEVEL_SWEEP_COLUMNS,
        (
            (
                format_number(row.alpha),
                format_number(row.beta_e),
                format_number(row.x_hat_b),
                row.case.value,
                format_number(row.j_soc),
            )
            for row in rows
        ),
    )

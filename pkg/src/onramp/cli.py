"""Command line front end.

Exit codes: 0 success, 1 input error (flags or config file), 2 configuration
outside the meaningful set where membership is required, 3 oracle
verification mismatch.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import nullcontext

from .analysis import ErrorInterval, analyze, classify
from .equilibrium import (
    best_response_dynamics,
    brute_force_equilibrium,
    solve_equilibrium,
    verify_wardrop,
)
from .errors import ConfigError, DegenerateConfigError, NotInMeaningfulSetError
from .model import FlowDistribution, derive_coefficients, load_config
from .robustness import (
    grid_optimal_beta,
    optimal_altruism_level,
    price_of_anarchy,
    worst_case_social_delay,
)
from .sweeps import (
    format_number as fmt,
    sweep_alpha,
    sweep_beta_e,
    write_alpha_sweep,
    write_beta_e_sweep,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_MEANINGFUL = 2
EXIT_VERIFY_FAILED = 3

DEFAULT_SWEEP_BETAS = (0.2, 0.5, 1.0)
DEFAULT_SWEEP_ALPHAS = (0.63, 0.8)


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage problems with exit code 1."""

    def error(self, message):
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="onramp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="path to a JSON config file")
        return cmd

    analyze_cmd = add("analyze", "derived coefficients and structural quantities")
    analyze_cmd.add_argument("--e-lower", type=float, default=None)
    analyze_cmd.add_argument("--e-upper", type=float, default=None)

    eq_cmd = add("equilibrium", "closed-form equilibrium at one population point")
    eq_cmd.add_argument("--alpha", type=float, required=True)
    eq_cmd.add_argument("--beta", type=float, required=True)
    eq_cmd.add_argument("--error", type=float, default=1.0)

    sa_cmd = add("sweep-alpha", "CSV sweep of the altruistic ratio per level")
    sa_cmd.add_argument(
        "--beta", type=float, action="append", default=None,
        help=f"repeatable; default {list(DEFAULT_SWEEP_BETAS)}",
    )
    sa_cmd.add_argument("--step", type=float, default=0.01)
    sa_cmd.add_argument("--out", default=None, help="output path (default: stdout)")

    sb_cmd = add("sweep-beta-e", "CSV sweep of the effective level per ratio")
    sb_cmd.add_argument(
        "--alpha", type=float, action="append", default=None,
        help=f"repeatable; default {list(DEFAULT_SWEEP_ALPHAS)}",
    )
    sb_cmd.add_argument("--beta-e-max", type=float, default=4.0)
    sb_cmd.add_argument("--step", type=float, default=0.01)
    sb_cmd.add_argument("--out", default=None, help="output path (default: stdout)")

    poa_cmd = add("poa", "price of anarchy at a given level")
    poa_cmd.add_argument("--beta", type=float, required=True)
    poa_cmd.add_argument("--e-lower", type=float, required=True)
    poa_cmd.add_argument("--e-upper", type=float, required=True)
    poa_cmd.add_argument("--verify", action="store_true",
                         help="cross-check the closed form against the grid minimizer")

    ob_cmd = add("optimal-beta", "worst-case-optimal altruism level")
    ob_cmd.add_argument("--e-lower", type=float, required=True)
    ob_cmd.add_argument("--e-upper", type=float, required=True)
    ob_cmd.add_argument("--verify", action="store_true",
                        help="cross-check the closed form against the grid minimizer")

    ver_cmd = add("verify", "closed form vs. grid and dynamics oracles at one point")
    ver_cmd.add_argument("--alpha", type=float, default=0.8)
    ver_cmd.add_argument("--beta", type=float, default=1.0)
    ver_cmd.add_argument("--error", type=float, default=1.0)
    ver_cmd.add_argument("--step", type=float, default=1e-3, help="oracle grid step")
    return parser


def _print(key, value):
    if isinstance(value, float):
        value = fmt(value)
    print(f"{key} = {value}")


def _load(args):
    config = load_config(args.config)
    derived = derive_coefficients(config)
    summary = analyze(config, derived)
    return config, derived, summary


def _require_meaningful(summary):
    if not summary.in_meaningful_set:
        print("meaningful_set = false", file=sys.stderr)
        print(f"exclusion_reason = {summary.exclusion_reason}", file=sys.stderr)
        raise NotInMeaningfulSetError(summary.exclusion_reason)


def _interval(args) -> ErrorInterval:
    try:
        return ErrorInterval(args.e_lower, args.e_upper)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid error interval: {exc}") from exc


def _cmd_analyze(args) -> int:
    config, derived, summary = _load(args)
    _print("n0", config.flows.n0)
    _print("n2", config.flows.n2)
    _print("steadfast_slope", derived.steadfast_slope)
    _print("steadfast_intercept", derived.steadfast_intercept)
    _print("bypass_slope", derived.bypass_slope)
    _print("bypass_intercept", derived.bypass_intercept)
    _print("lane2_slope", derived.lane2_slope)
    _print("phi", summary.phi)
    _print("delta", summary.delta)
    _print("pi", summary.pi)
    _print("j_opt", summary.j_opt)
    _print("j_soc_at_phi", summary.j_soc_at_phi)
    _print("decrease_alpha_above", summary.decrease_interval[0])
    _print("optimize_alpha_from", summary.optimize_interval[0])
    _print("meaningful_set", "true" if summary.in_meaningful_set else "false")
    if not summary.in_meaningful_set:
        _print("exclusion_reason", summary.exclusion_reason)
        return EXIT_NOT_MEANINGFUL
    if args.e_lower is not None or args.e_upper is not None:
        if args.e_lower is None or args.e_upper is None:
            raise ConfigError("--e-lower and --e-upper must be given together")
        label = classify(config, derived, _interval(args))
        _print("regime", label.regime.value)
    return EXIT_OK


def _cmd_equilibrium(args) -> int:
    config, derived, summary = _load(args)
    _require_meaningful(summary)
    try:
        result = solve_equilibrium(config, derived, summary, args.alpha, args.beta, args.error)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _print("case", result.case.value)
    _print("x_hat_b", result.x_hat_b)
    _print("selfish_steadfast", result.flow.selfish_steadfast)
    _print("selfish_bypass", result.flow.selfish_bypass)
    _print("altruistic_steadfast", result.flow.altruistic_steadfast)
    _print("altruistic_bypass", result.flow.altruistic_bypass)
    _print("delay_steadfast", result.delays.steadfast)
    _print("delay_bypass", result.delays.bypass)
    _print("delay_on_ramp", result.delays.on_ramp)
    _print("delay_lane2", result.delays.lane2)
    _print("j_soc", result.social_delay)
    report = verify_wardrop(config, derived, result.flow, args.beta, args.error)
    _print("wardrop_selfish_steadfast", report.selfish_steadfast)
    _print("wardrop_selfish_bypass", report.selfish_bypass)
    _print("wardrop_altruistic_steadfast", report.altruistic_steadfast)
    _print("wardrop_altruistic_bypass", report.altruistic_bypass)
    _print("wardrop_pass", "true" if report.passed else "false")
    return EXIT_OK


def _open_out(path):
    if path is None:
        return nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8", newline="")


def _cmd_sweep_alpha(args) -> int:
    config, derived, summary = _load(args)
    _require_meaningful(summary)
    betas = args.beta if args.beta else list(DEFAULT_SWEEP_BETAS)
    for beta in betas:
        if beta < 0.0:
            raise ConfigError(f"beta must be >= 0, got {beta}")
    try:
        rows = sweep_alpha(config, derived, summary, betas, args.step)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    with _open_out(args.out) as stream:
        write_alpha_sweep(rows, stream)
    return EXIT_OK


def _cmd_sweep_beta_e(args) -> int:
    config, derived, summary = _load(args)
    _require_meaningful(summary)
    alphas = args.alpha if args.alpha else list(DEFAULT_SWEEP_ALPHAS)
    for alpha in alphas:
        if not 0.0 <= alpha <= 1.0:
            raise ConfigError(f"alpha must lie in [0, 1], got {alpha}")
    try:
        rows = sweep_beta_e(config, derived, summary, alphas, args.beta_e_max, args.step)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    with _open_out(args.out) as stream:
        write_beta_e_sweep(rows, stream)
    return EXIT_OK


def _print_worst_case(points):
    for index, point in enumerate(points):
        print(
            f"worst_case[{index}] = error={fmt(point.error)}"
            f" alpha={fmt(point.alpha)} x_hat_b={fmt(point.x_hat_b)} j_soc={fmt(point.j_soc)}"
        )


def _print_summary(result) -> None:
    _print("beta_star", result.beta_star)
    _print("branch", result.branch.value)
    _print("poa_at_beta_star", result.poa)
    if result.transition_level_at_full_altruism is not None:
        _print("transition_level_at_full_altruism", result.transition_level_at_full_altruism)


def _verify_beta_star(config, derived, summary, interval, beta_star) -> int:
    sampled = grid_optimal_beta(
        config, derived, summary, interval, beta_grid_step=1e-3, inner_grid_step=1e-2
    )
    gap = abs(beta_star - sampled)
    _print("grid_beta_star", sampled)
    _print("grid_beta_star_gap", gap)
    if gap > 2e-3:
        _print("verify_pass", "false")
        return EXIT_VERIFY_FAILED
    _print("verify_pass", "true")
    return EXIT_OK


def _cmd_poa(args) -> int:
    config, derived, summary = _load(args)
    _require_meaningful(summary)
    interval = _interval(args)
    if args.beta < 0.0:
        raise ConfigError(f"beta must be >= 0, got {args.beta}")
    supremum, points = worst_case_social_delay(config, derived, summary, args.beta, interval)
    _print("beta", args.beta)
    _print("e_lower", interval.e_lower)
    _print("e_upper", interval.e_upper)
    _print("j_opt", summary.j_opt)
    _print("worst_case_j_soc", supremum)
    _print("poa", price_of_anarchy(config, derived, summary, args.beta, interval))
    _print_worst_case(points)
    result = optimal_altruism_level(config, derived, summary, interval)
    _print_summary(result)
    if args.verify:
        return _verify_beta_star(config, derived, summary, interval, result.beta_star)
    return EXIT_OK


def _cmd_optimal_beta(args) -> int:
    config, derived, summary = _load(args)
    _require_meaningful(summary)
    interval = _interval(args)
    result = optimal_altruism_level(config, derived, summary, interval)
    _print("e_lower", interval.e_lower)
    _print("e_upper", interval.e_upper)
    _print("j_opt", summary.j_opt)
    _print_summary(result)
    _print_worst_case(result.worst_case_points)
    if args.verify:
        return _verify_beta_star(config, derived, summary, interval, result.beta_star)
    return EXIT_OK


def _cmd_verify(args) -> int:
    config, derived, summary = _load(args)
    _require_meaningful(summary)
    try:
        result = solve_equilibrium(config, derived, summary, args.alpha, args.beta, args.error)
        candidates = brute_force_equilibrium(
            config, derived, args.alpha, args.beta, args.error, grid_step=args.step
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _print("closed_form_x_hat_b", result.x_hat_b)
    _print("case", result.case.value)
    _print("brute_force_count", len(candidates))
    ok = True
    if candidates:
        closest = min(candidates, key=lambda flow: abs(flow.total_bypass - result.x_hat_b))
        gap = abs(closest.total_bypass - result.x_hat_b)
        _print("brute_force_closest", closest.total_bypass)
        _print("brute_force_gap", gap)
        ok &= gap <= 2.0 * args.step
    else:
        ok = False
    start = FlowDistribution(1.0 - args.alpha, 0.0, args.alpha, 0.0)
    trace = best_response_dynamics(
        config, derived, args.alpha, args.beta, args.error, start,
        step_size=0.5, max_iters=20000, tol=1e-10, step_decay=0.5, record_every=1000,
    )
    dynamics_x = trace.final.flow.total_bypass
    _print("dynamics_x_hat_b", dynamics_x)
    _print("dynamics_gap", abs(dynamics_x - result.x_hat_b))
    _print("dynamics_iterations", trace.iterations)
    ok &= abs(dynamics_x - result.x_hat_b) <= 1e-4
    report = verify_wardrop(config, derived, result.flow, args.beta, args.error)
    _print("wardrop_max_product", report.max_product)
    ok &= report.passed
    _print("verify_pass", "true" if ok else "false")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


_HANDLERS = {
    "analyze": _cmd_analyze,
    "equilibrium": _cmd_equilibrium,
    "sweep-alpha": _cmd_sweep_alpha,
    "sweep-beta-e": _cmd_sweep_beta_e,
    "poa": _cmd_poa,
    "optimal-beta": _cmd_optimal_beta,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ConfigError, OSError) as exc:
        print(f"onramp: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotInMeaningfulSetError, DegenerateConfigError) as exc:
        print(f"onramp: configuration outside the meaningful set: {exc}", file=sys.stderr)
        return EXIT_NOT_MEANINGFUL


if __name__ == "__main__":
    sys.exit(main())

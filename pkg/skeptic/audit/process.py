import logging
from typing import Callable, Optional, Sequence
from multiprocessing.pool import ThreadPool

import numpy as np
import pandas as pd

from skeptic import config as C
from skeptic import hindsight
from skeptic.mixture import process as mixture_process
from skeptic.errors import NumericalError
from skeptic.game.tools import init_state, play_round, diagnostics
from skeptic.logistic.model import bet_ratio, log_capital_factor
from skeptic.game.structures import GameState, RoundSeries
from skeptic.audit.structures import TRACE_COLUMNS, AuditResult
from skeptic.mixture.structures import PriorSpec, MixtureState
from skeptic.features.structures import FeatureSpec
from skeptic.hindsight.structures import MleResult
from skeptic.logistic.structures import ThetaLike, as_coefficients

logger = logging.getLogger(__name__)


def _checkpoint(series: RoundSeries, state: GameState, warm: Optional[np.ndarray]) -> tuple[dict, Optional[MleResult]]:
    diag = diagnostics(state)
    row = {
        "svs_half": diag.svs / 2,
        "logdetV": diag.logdetV,
        "ratio": diag.ratio,
        "logK_mle": np.nan,
    }

    # np.errstate is thread local
    with np.errstate(over="ignore", invalid="ignore"):
        try:
            result = hindsight.mle(series[: state.n], init=warm, warn=False)
        except NumericalError:
            return row, None

    if result.converged:
        row["logK_mle"] = result.log_capital
        return row, result
    return row, None


def run_game(
    series: RoundSeries,
    spec: FeatureSpec,
    prior: Optional[PriorSpec] = None,
    theta: Optional[ThetaLike] = None,
    trace_every: int = C.TRACE_EVERY,
) -> AuditResult:
    """
    Play a strategy against a forecast series through the game protocol and record the trace.

    Exactly one of `prior` (the Bayesian logistic strategy) and `theta` (a fixed logistic
    strategy) must be given. Every round, the bet ratio is announced before the outcome is
    revealed and the capital, drift and information are updated by `play_round`. Every
    `trace_every` rounds, and at the last round, the hindsight capital and the spectral
    diagnostics are added to the trace; `trace_every <= 0` keeps only the last round.

    Args:
        series (RoundSeries): Forecasts, side information and outcomes.
        spec (FeatureSpec): The features that produced `series.c`.
        prior (PriorSpec, optional): Prior of the Bayesian strategy.
        theta (ThetaLike, optional): Parameter of a fixed strategy.
        trace_every (int): Checkpoint spacing in rounds.

    Returns:
        AuditResult: Trace, summary and final states.
    """
    if (prior is None) == (theta is None):
        raise ValueError("Give exactly one of prior and theta")
    if series.d != spec.d:
        raise ValueError(f"Series has dimension {series.d}, features have {spec.d}")
    if len(series) == 0:
        raise ValueError("Cannot play a game of zero rounds")

    mix = None
    if prior is not None:
        mix = mixture_process.init_mixture(prior, series.d)
    else:
        theta = as_coefficients(theta)

    state = init_state(series.d)
    warm = None
    last_mle = None
    rows = []
    for it, round in enumerate(series):
        if mix is not None:
            nu = mixture_process.mixture_bet_ratio(mix, round.p, round.c)
            log_before = mixture_process.log_capital(mix)
            mix = mixture_process.update_mixture(mix, round)
            log_factor = mixture_process.log_capital(mix) - log_before
        else:
            nu = float(bet_ratio(theta, round.p, round.c))
            log_factor = float(log_capital_factor(theta, round))

        state = play_round(state, round, nu, log_factor=log_factor)
        row = {"n": state.n, "p": round.p, "x": round.x, "nu": nu, "logK_pi": state.logK}

        is_last = it == len(series) - 1
        if is_last or (trace_every > 0 and state.n % trace_every == 0):
            checkpoint, result = _checkpoint(series, state, warm)
            row |= checkpoint
            warm = None if result is None else result.theta_star
            last_mle = result if is_last else last_mle

        rows.append(row)

    trace = pd.DataFrame(rows).reindex(columns=TRACE_COLUMNS)
    logger.info("Game of %d rounds finished with log capital %.4f", state.n, state.logK)

    summary = summarize(state, spec, prior=prior, mle=last_mle, mix=mix)
    return AuditResult(trace=trace, summary=summary, state=state, mle=last_mle, mixture=mix)


def summarize(
    state: GameState,
    spec: FeatureSpec,
    prior: Optional[PriorSpec] = None,
    mle: Optional[MleResult] = None,
    mix: Optional[MixtureState] = None,
) -> dict:
    """
    Final numbers of a game. Hindsight entries are NaN when the MLE does not exist.
    """
    diag = diagnostics(state)
    summary = {
        "rounds": state.n,
        "log_k_pi": state.logK,
        "max_log_k_pi": state.max_logK,
        "drift_ratio": hindsight.drift_ratio(diag),
        "svs_half": diag.svs / 2,
        "logdetV": diag.logdetV,
        "log_k_mle": np.nan,
        "theta_star": None,
        "beta_star": np.nan,
        "quadratic_ratio": np.nan,
        "regret_ratio": np.nan,
        "laplace_discrepancy": np.nan,
        "posterior_mean": None,
    }

    if mix is not None:
        summary["posterior_mean"] = mixture_process.posterior_mean(mix).tolist()

    if mle is None:
        return summary

    summary["log_k_mle"] = mle.log_capital
    summary["theta_star"] = mle.theta_star.tolist()
    if spec.logit_index is not None:
        summary["beta_star"] = float(mle.theta_star[spec.logit_index] + 1)
    summary["quadratic_ratio"] = hindsight.quadratic_ratio(mle, diag)
    summary["regret_ratio"] = hindsight.regret_ratio(mle, state.logK, diag)

    if prior is not None:
        try:
            summary["laplace_discrepancy"] = hindsight.laplace_discrepancy(mle, prior, state.logK, diag, warn=False)
        except NumericalError:
            logger.info("No Laplace approximation, the Hessian at theta* is singular")

    return summary


def sweep(
    make_series: Callable[[int], RoundSeries],
    seeds: Sequence[int],
    spec: FeatureSpec,
    prior: Optional[PriorSpec] = None,
    theta: Optional[ThetaLike] = None,
    trace_every: int = 0,
    n_workers: int = C.N_WORKERS,
) -> pd.DataFrame:
    """
    Run the same strategy over many seeds.

    Games are independent and fan out over a thread pool; results are merged in seed order.

    Args:
        make_series (Callable[[int], RoundSeries]): Builds the game record of one seed.
        seeds (Sequence[int]): Seeds to run.
        spec (FeatureSpec): Features of the records.
        prior (PriorSpec, optional): Prior of the Bayesian strategy.
        theta (ThetaLike, optional): Parameter of a fixed strategy.
        trace_every (int): Checkpoint spacing inside each game, final round only by default.
        n_workers (int): Size of the thread pool.

    Returns:
        pd.DataFrame: One summary row per seed, with a `seed` column, in the order of `seeds`.
    """

    def play(seed: int) -> dict:
        result = run_game(make_series(seed), spec, prior=prior, theta=theta, trace_every=trace_every)
        return {"seed": seed} | result.summary

    logger.info("Sweeping %d seeds on %d workers", len(seeds), n_workers)
    with ThreadPool(max(1, n_workers)) as pool:
        summaries = pool.map(play, list(seeds))

    return pd.DataFrame(summaries)

from typing import Union, Sequence

import numpy as np
from scipy.special import expit, logit

from skeptic.game.tools import clip_to_admissible
from skeptic.game.structures import Round, RoundSeries, as_series
from skeptic.logistic.structures import ThetaLike, PotentialEval, as_coefficients


def log_partition(p, y):
    """
    Numerically guarded log(1 + p (e^y - 1)), elementwise with broadcasting.

    For y <= 0 this is log1p(p expm1(y)); for y > 0 it is rewritten as
    y + log1p((1 - p) expm1(-y)) so that large exponents never overflow.

    Args:
        p (float | np.ndarray): Forecast probabilities in (0, 1).
        y (float | np.ndarray): Exponents theta'c.

    Returns:
        np.ndarray | float: The per-round log partition values.
    """
    p = np.asarray(p, dtype=float)
    y = np.asarray(y, dtype=float)

    # Both branches are evaluated on clipped inputs, np.where only picks
    negative = np.minimum(y, 0.0)
    positive = np.maximum(y, 0.0)
    low = np.log1p(p * np.expm1(negative))
    high = positive + np.log1p((1 - p) * np.expm1(-positive))

    return np.where(y > 0, high, low)[()]


def ratio_from_exponent(p, y):
    """
    Kelly bet ratio implied by the exponent y = theta'c, without forming p_hat:
    nu = expm1(y) / (1 + p expm1(y)), rewritten for y > 0 as
    -expm1(-y) / (p + (1 - p) e^{-y}).

    For |y| beyond about 37 the ratio rounds onto an end of the admissible interval
    (-1 / (1 - p), 1 / p); it is then pulled back to the nearest float inside.
    """
    p = np.asarray(p, dtype=float)
    y = np.asarray(y, dtype=float)

    negative = np.minimum(y, 0.0)
    positive = np.maximum(y, 0.0)
    em = np.expm1(negative)
    low = em / (1 + p * em)
    high = -np.expm1(-positive) / (p + (1 - p) * np.exp(-positive))

    return clip_to_admissible(p, np.where(y > 0, high, low))


def _exponent(theta: ThetaLike, c) -> np.ndarray:
    y = as_coefficients(theta) @ np.asarray(c, dtype=float)
    if not np.all(np.isfinite(y)):
        raise ValueError("theta'c must be finite")
    return y


def predict(theta: ThetaLike, p: float, c) -> float:
    """
    Skeptic's probability p_hat = p e^{theta'c} / (1 + p (e^{theta'c} - 1)).

    Computed on the log-odds scale, logit(p_hat) = logit(p) + theta'c.

    Examples:
        >>> predict([np.log(2)], 0.5, [1.0])
        0.666...
    """
    if not 0 < p < 1:
        raise ValueError(f"Forecast must be inside (0, 1), got {p}")

    y = _exponent(theta, c)
    return expit(logit(p) + y)


def kelly_ratio(phat: float, p: float) -> float:
    """
    The fraction of capital maximizing the expected log growth when Skeptic believes
    the success probability is `phat` while tickets are priced at `p`.

    Args:
        phat (float): Skeptic's probability, inside (0, 1).
        p (float): Forecaster's probability, inside (0, 1).

    Returns:
        float: nu = (phat - p) / (p (1 - p)). Negative values bet on x = 0.

    Raises:
        ValueError: If either probability is on the boundary or outside (0, 1).
    """
    if not 0 < phat < 1:
        raise ValueError(f"Skeptic's probability must be inside (0, 1), got {phat}")
    if not 0 < p < 1:
        raise ValueError(f"Forecast must be inside (0, 1), got {p}")

    return (phat - p) / (p * (1 - p))


def bet_ratio(theta: ThetaLike, p: float, c) -> Union[float, np.ndarray]:
    """
    Kelly ratio of the logistic strategy at `theta`. `theta` may hold one parameter
    vector (d,) or many (m, d); the result then has shape (m,).
    """
    if not 0 < p < 1:
        raise ValueError(f"Forecast must be inside (0, 1), got {p}")

    y = _exponent(theta, c)
    return ratio_from_exponent(p, y)


def log_capital_factor(theta: ThetaLike, round: Round) -> Union[float, np.ndarray]:
    """
    Log of the capital multiplier of the fixed-theta strategy in one round:
    theta'c x - log(1 + p (e^{theta'c} - 1)). Vectorized over rows of `theta`.
    """
    y = _exponent(theta, round.c)
    return y * round.x - log_partition(round.p, y)


def potential(theta: ThetaLike, rounds: Union[Sequence[Round], RoundSeries]) -> PotentialEval:
    """
    Evaluate psi(theta) over a game, with gradient and Hessian.

    The gradient is sum_i c_i p_hat_i and the Hessian sum_i c_i c_i' p_hat_i (1 - p_hat_i),
    where p_hat_i is Skeptic's probability at `theta` in round i.

    Args:
        theta (ThetaLike): Parameter vector of dimension d.
        rounds (Sequence[Round] | RoundSeries): Non-empty game record.

    Returns:
        PotentialEval: value, grad and hess of psi at `theta`.
    """
    series = as_series(rounds)
    if len(series) == 0:
        raise ValueError("Potential needs at least one round")

    y = series.c @ as_coefficients(theta)
    log_odds = logit(series.p) + y
    phat = expit(log_odds)
    # 1 - phat computed directly, keeps precision when phat is close to 1
    qhat = expit(-log_odds)

    out = PotentialEval(
        value=float(np.sum(log_partition(series.p, y))),
        grad=series.c.T @ phat,
        hess=(series.c * (phat * qhat)[:, np.newaxis]).T @ series.c,
    )
    return out


def monotone_bet_ratio(p, beta: float, tau: float):
    """
    Bet ratio as a function of the forecast when Skeptic uses
    logit(p_hat) = beta * logit(p) + tau.

    For beta <= 1 the ratio is non-increasing in p: the higher the announced price,
    the more Skeptic leans towards x = 0.
    """
    p = np.asarray(p, dtype=float)
    y = (beta - 1) * logit(p) + tau
    return ratio_from_exponent(p, y)

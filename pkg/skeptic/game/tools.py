from typing import Union, Optional, Sequence

import numpy as np

from skeptic.errors import CollateralDutyError
from skeptic.game.structures import Round, GameState, RoundSeries, Diagnostics, as_series


def init_state(d: int) -> GameState:
    """
    Start a game: unit capital, zero drift and zero information.

    Args:
        d (int): Dimension of the side information.

    Returns:
        GameState: The state before the first round.

    Raises:
        ValueError: If `d` is smaller than 1.
    """
    if d < 1:
        raise ValueError(f"Side information dimension must be at least 1, got {d}")

    return GameState(n=0, logK=0.0, S=np.zeros(d), V=np.zeros((d, d)))


def admissible_interval(p: float) -> tuple[float, float]:
    # Bets inside this open interval keep 1 + nu (x - p) positive for both outcomes
    return -1 / (1 - p), 1 / p


def clip_to_admissible(p, nu):
    """
    Pull bet ratios that rounded onto an end of the admissible interval back to the
    nearest float inside it. Elementwise; ratios already inside are returned unchanged.
    """
    p = np.asarray(p, dtype=float)
    lo, hi = -1 / (1 - p), 1 / p
    return np.clip(nu, np.nextafter(lo, 0), np.nextafter(hi, 0))[()]


def play_round(state: GameState, round: Round, nu: float, log_factor: Optional[float] = None) -> GameState:
    """
    Play one round with the bet ratio `nu` (the fraction of current capital Skeptic bets).

    The capital is multiplied by 1 + nu (x - p), the drift grows by c (x - p) and
    the information by c c' p (1 - p).

    Args:
        state (GameState): State after the previous round.
        round (Round): Forecast, side information and outcome of this round.
        nu (float): Bet ratio, must lie strictly inside `admissible_interval(round.p)`.
        log_factor (float, optional): Exact log of the capital multiplier, when the strategy knows it
            better than log1p(nu (x - p)) does, e.g. for a ratio pulled in by `clip_to_admissible`.

    Returns:
        GameState: The new state; the input state is left untouched.

    Raises:
        CollateralDutyError: If the bet could make the capital non-positive.
        ValueError: If the side information dimension does not match the game.
    """
    if round.d != state.d:
        raise ValueError(f"Side information has dimension {round.d}, the game has {state.d}")

    lo, hi = admissible_interval(round.p)
    if not lo < nu < hi:
        raise CollateralDutyError(f"Bet ratio {nu} is outside the admissible interval ({lo}, {hi}) for p={round.p}")

    residual = round.x - round.p
    if log_factor is None:
        log_factor = np.log1p(nu * residual)
    logK = state.logK + float(log_factor)

    out = GameState(
        n=state.n + 1,
        logK=logK,
        S=state.S + round.c * residual,
        V=state.V + np.outer(round.c, round.c) * round.p * (1 - round.p),
        max_logK=max(state.max_logK, logK),
    )
    return out


def replay(rounds: Union[Sequence[Round], RoundSeries], nus: Sequence[float]) -> GameState:
    rounds = list(rounds)
    if not rounds:
        raise ValueError("Cannot replay zero rounds")
    if len(rounds) != len(nus):
        raise ValueError("Need exactly one bet ratio per round")

    state = init_state(rounds[0].d)
    for round, nu in zip(rounds, nus):
        state = play_round(state, round, nu)

    return state


def accumulate(rounds: Union[Sequence[Round], RoundSeries]) -> GameState:
    """
    Drift and information of a game in which Skeptic never bets (capital stays 1).
    Vectorized, for when only S and V are needed.
    """
    series = as_series(rounds)
    weights = series.p * (1 - series.p)

    out = GameState(
        n=len(series),
        logK=0.0,
        S=series.c.T @ (series.x - series.p),
        V=(series.c * weights[:, np.newaxis]).T @ series.c,
    )
    return out


def diagnostics(state: GameState) -> Diagnostics:
    """
    Eigen-extremes of V together with V^-1 S, S'V^-1 S, log det V and their ratio.

    A singular V gives a degenerate result (lambda_min = 0 and NaN inverse quantities)
    instead of an error, since early rounds routinely have a singular V.

    Args:
        state (GameState): Current state of the game.

    Returns:
        Diagnostics: All spectral quantities. `ratio` is NaN and `ratio_defined` is False
            until log det V is positive.
    """
    eigenvalues, eigenvectors = np.linalg.eigh(state.V)
    lambda_min = float(eigenvalues[0])
    lambda_max = float(eigenvalues[-1])

    tolerance = state.d * np.finfo(float).eps * max(lambda_max, 1.0)
    if lambda_min <= tolerance:
        out = Diagnostics(
            lambda_min=0.0,
            lambda_max=max(lambda_max, 0.0),
            vinv_s=np.full(state.d, np.nan),
            svs=np.nan,
            logdetV=-np.inf,
            ratio=np.nan,
            degenerate=True,
            ratio_defined=False,
        )
        return out

    # V^-1 S through the eigendecomposition keeps V symmetric in the solve
    vinv_s = eigenvectors @ ((eigenvectors.T @ state.S) / eigenvalues)
    svs = float(state.S @ vinv_s)
    logdetV = float(np.sum(np.log(eigenvalues)))

    ratio_defined = logdetV > 0
    ratio = svs / logdetV if ratio_defined else np.nan

    out = Diagnostics(
        lambda_min=lambda_min,
        lambda_max=lambda_max,
        vinv_s=vinv_s,
        svs=svs,
        logdetV=logdetV,
        ratio=ratio,
        ratio_defined=ratio_defined,
    )
    return out

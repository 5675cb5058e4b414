import logging
import warnings
from typing import Union, Optional, Sequence

import numpy as np
from scipy.optimize import linprog

from skeptic import config as C
from skeptic.game.tools import accumulate, diagnostics
from skeptic.logistic.model import potential
from skeptic.game.structures import Round, GameState, RoundSeries, Diagnostics, as_series
from skeptic.errors import NumericalError, SeparationError, PriorSupportWarning, SingularInformationWarning
from skeptic.mixture.structures import PriorSpec
from skeptic.logistic.structures import ThetaLike, as_coefficients
from skeptic.hindsight.structures import MleResult, BoundReport

logger = logging.getLogger(__name__)

Rounds = Union[Sequence[Round], RoundSeries]


def log_capital_at(theta: ThetaLike, rounds: Rounds, t: Optional[np.ndarray] = None) -> float:
    """log K^theta = theta'T - psi(theta) for a fixed parameter."""
    series = as_series(rounds)
    theta = as_coefficients(theta)
    t = series.t if t is None else np.asarray(t, dtype=float)
    return float(theta @ t - potential(theta, series).value)


def find_separation(rounds: Rounds) -> Optional[np.ndarray]:
    """
    Direction of recession of log K^theta, if there is one.

    The maximizer is infinite exactly when the vectors {c_i | x_i = 1} and {-c_i | x_i = 0}
    lie in a closed half-space through the origin with at least one of them strictly inside.
    This is a linear feasibility problem: z_i'u >= 0 for all i and sum_i z_i'u = 1.

    Returns:
        np.ndarray | None: Unit direction along which the capital grows without bound,
            or None when the data are not separated.
    """
    series = as_series(rounds)
    signed = series.c * (2 * series.x - 1)[:, np.newaxis]

    res = linprog(
        c=np.zeros(series.d),
        A_ub=-signed,
        b_ub=np.zeros(len(series)),
        A_eq=signed.sum(axis=0)[np.newaxis, :],
        b_eq=[1.0],
        bounds=[(None, None)] * series.d,
        method="highs",
    )
    if res.status != 0:
        return None

    return res.x / np.linalg.norm(res.x)


def mle(
    rounds: Rounds,
    init: Optional[ThetaLike] = None,
    tol: float = C.MLE_TOL,
    max_iter: int = C.MLE_MAX_ITER,
    t: Optional[np.ndarray] = None,
    warn: bool = True,
) -> MleResult:
    """
    Maximum likelihood estimate of the logistic model, i.e. the best constant theta in hindsight.

    Damped Newton ascent on the concave log K^theta = theta'T - psi(theta): the step
    H^-1 (T - grad psi) is halved until the log capital does not decrease. Convergence is
    declared when ||T - grad psi|| <= tol (1 + ||T||).

    Args:
        rounds (Sequence[Round] | RoundSeries): The game record.
        init (ThetaLike, optional): Starting point, zero by default.
        tol (float): Relative gradient tolerance.
        max_iter (int): Newton iteration limit.
        t (np.ndarray, optional): Solve grad psi(theta) = t instead of the observed T_n.
        warn (bool): Issue `SingularInformationWarning`. Checkpoints of a running game turn it off.

    Returns:
        MleResult: The estimate; `converged` is False if the iteration limit was hit.

    Raises:
        SeparationError: If the data are separated and no finite maximizer exists.

    Note:
        A singular information matrix V_n makes theta* non-identifiable. A
        `SingularInformationWarning` is issued and least-squares steps return the
        minimum-norm solution on the identifiable subspace.
    """
    series = as_series(rounds)
    target = series.t if t is None else np.asarray(t, dtype=float)
    theta = np.zeros(series.d) if init is None else np.array(as_coefficients(init), dtype=float)

    information = accumulate(series).V
    smallest_information = np.linalg.eigvalsh(information)[0]
    if warn and smallest_information <= series.d * np.finfo(float).eps * max(np.abs(information).max(), 1.0):
        warnings.warn("V_n is singular, theta* is not identifiable", SingularInformationWarning, stacklevel=2)

    threshold = tol * (1 + np.linalg.norm(target))
    pe = potential(theta, series)
    objective = theta @ target - pe.value
    grad = target - pe.grad

    converged = False
    iterations = 0
    previous_grad_norm = np.inf
    while True:
        grad_norm = np.linalg.norm(grad)
        if grad_norm <= threshold:
            converged = True
            break
        if iterations >= max_iter:
            break
        if np.linalg.norm(theta) > C.SEPARATION_NORM and grad_norm >= previous_grad_norm:
            break

        step = np.linalg.lstsq(pe.hess, grad, rcond=None)[0]

        # Step halving, concavity guarantees an ascent direction
        scale = 1.0
        accepted = False
        for _ in range(60):
            candidate = theta + scale * step
            candidate_pe = potential(candidate, series)
            candidate_objective = candidate @ target - candidate_pe.value
            if candidate_objective >= objective - 1e-12 * max(1.0, abs(objective)):
                accepted = True
                break
            scale /= 2

        if not accepted:
            # No representable ascent left
            break

        theta, pe, objective = candidate, candidate_pe, candidate_objective
        grad = target - pe.grad
        previous_grad_norm = grad_norm
        iterations += 1

    if t is None and _looks_separated(theta, pe.hess, information, converged):
        direction = find_separation(series)
        if direction is not None:
            raise SeparationError(
                f"Data are separated, capital grows without bound along {np.round(direction, 6)}",
                direction=direction,
                theta=theta,
            )

    if not converged:
        logger.warning("MLE did not converge after %d iterations (gradient norm %.3g)", iterations, grad_norm)
    else:
        logger.debug("MLE converged in %d iterations", iterations)

    out = MleResult(
        theta_star=theta,
        log_capital=float(objective),
        hess=pe.hess,
        grad_norm=float(np.linalg.norm(grad)),
        converged=converged,
        iterations=iterations,
        t=target,
    )
    return out


def _looks_separated(theta: np.ndarray, hess: np.ndarray, information: np.ndarray, converged: bool) -> bool:
    if not converged or np.linalg.norm(theta) > C.SEPARATION_CHECK_NORM:
        return True

    # Under separation the fitted information collapses relative to V
    information_floor = np.linalg.eigvalsh(information)[0]
    return information_floor > 0 and np.linalg.eigvalsh(hess)[0] < 1e-8 * information_floor


def laplace_log_capital(mle: MleResult, prior: PriorSpec, warn: bool = True) -> float:
    """
    Laplace approximation of the mixture capital around the hindsight parameter:
    log K^theta* + log pi(theta*) + (d/2) log(2 pi) - (1/2) log det H_psi(theta*).

    Issues a `PriorSupportWarning` (unless `warn` is False) when theta* is not inside
    the prior box, where the approximation has no meaning.
    """
    if not mle.converged:
        raise NumericalError("Laplace approximation needs a converged MLE")

    theta = mle.theta_star
    if warn and not prior.contains(theta, strict=True):
        warnings.warn(
            f"theta* = {np.round(theta, 4)} is outside the interior of the prior box {prior.to_text()}",
            PriorSupportWarning,
            stacklevel=2,
        )

    sign, logdet = np.linalg.slogdet(mle.hess)
    if sign <= 0:
        raise NumericalError("Hessian of psi at theta* is not positive definite")

    d = theta.size
    return float(mle.log_capital + prior.log_density + 0.5 * d * np.log(2 * np.pi) - 0.5 * logdet)


def small_mle_bound(rounds: Rounds, state: GameState, mle: MleResult) -> BoundReport:
    """
    Evaluate the small-MLE bound and the hindsight capital sandwich for one game.

    Args:
        rounds (Sequence[Round] | RoundSeries): The game record (for L_c).
        state (GameState): Drift and information of the same game.
        mle (MleResult): Hindsight estimate for the same game.

    Returns:
        BoundReport: Constants, premise, bound and, when the premise holds,
            the ratio log K^theta* / (S'V^-1 S / 2) with its bracket exp(-/+ C_n ||V^-1 S||).

    Raises:
        ValueError: If V is singular.
    """
    series = as_series(rounds)
    diag = diagnostics(state)
    if diag.degenerate:
        raise ValueError("The small-MLE bound needs a positive definite V")

    L_c = float(np.max(np.linalg.norm(series.c, axis=1)))
    L_lambda = diag.lambda_max / diag.lambda_min
    premise_holds = diag.vinv_s_norm <= 1 / (3 * L_c * L_lambda)

    sandwich = {}
    if premise_holds and diag.svs > 0:
        spread = 3 * L_c * L_lambda * diag.vinv_s_norm
        sandwich = {
            "sandwich_ratio": mle.log_capital / (diag.svs / 2),
            "sandwich_lower": float(np.exp(-spread)),
            "sandwich_upper": float(np.exp(spread)),
        }

    out = BoundReport(
        L_c=L_c,
        L_lambda=L_lambda,
        vinv_s_norm=diag.vinv_s_norm,
        premise_holds=bool(premise_holds),
        mle_norm=float(np.linalg.norm(mle.theta_star)),
        bound=3 * L_lambda * diag.vinv_s_norm,
        converged=mle.converged,
        **sandwich,
    )
    return out


def drift_ratio(diag: Diagnostics) -> float:
    """
    S'V^-1 S / log det V. NaN (flagged by `diag.ratio_defined`) while log det V <= 0.
    """
    if not diag.ratio_defined:
        return np.nan
    return diag.svs / diag.logdetV


def quadratic_ratio(mle: MleResult, diag: Diagnostics) -> float:
    # log K^theta* against its quadratic approximation S'V^-1 S / 2
    if diag.degenerate or diag.svs <= 0:
        return np.nan
    return mle.log_capital / (diag.svs / 2)


def laplace_discrepancy(mle: MleResult, prior: PriorSpec, log_k_pi: float, diag: Diagnostics, warn: bool = True) -> float:
    """
    Error of the Laplace approximation relative to (1/2) log det V.
    """
    if not diag.ratio_defined:
        return np.nan
    return abs(laplace_log_capital(mle, prior, warn=warn) - log_k_pi) / (0.5 * diag.logdetV)


def regret_ratio(mle: MleResult, log_k_pi: float, diag: Diagnostics) -> float:
    """
    (log K^theta* - log K^pi) / ((1/2) log det V): what the mixture gives up against the
    hindsight strategy, in units of the model-size penalty. Tends to 1 on regular paths.
    """
    if not diag.ratio_defined:
        return np.nan
    return (mle.log_capital - log_k_pi) / (0.5 * diag.logdetV)

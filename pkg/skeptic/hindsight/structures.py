from typing import Optional
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class MleResult:
    """
    The hindsight strategy: the constant parameter with the largest capital in retrospect.

    Attributes:
        theta_star (np.ndarray): Maximizer of log K^theta, i.e. the logistic regression MLE.
        log_capital (float): log K^theta at `theta_star`.
        hess (np.ndarray): Hessian of psi at `theta_star` (observed Fisher information).
        grad_norm (float): Norm of T - grad psi at `theta_star`.
        converged (bool): Whether the relative gradient tolerance was met.
        iterations (int): Newton iterations used.
        t (np.ndarray): The statistic the likelihood equation was solved for.
    """

    theta_star: np.ndarray
    log_capital: float
    hess: np.ndarray
    grad_norm: float
    converged: bool
    iterations: int
    t: np.ndarray

    def __rich_repr__(self):
        yield "MleResult"
        yield "theta_star", self.theta_star
        yield "log_capital", self.log_capital
        yield "converged", self.converged
        yield "iterations", self.iterations


@dataclass(frozen=True)
class BoundReport:
    """
    Check of the small-MLE bound: when ||V^-1 S|| <= 1 / (3 L_c L_lambda),
    the MLE norm is at most 3 L_lambda ||V^-1 S||. The sandwich fields compare
    log K^theta* with S'V^-1 S / 2 under the same premise (None when the premise fails).
    """

    L_c: float
    L_lambda: float
    vinv_s_norm: float
    premise_holds: bool
    mle_norm: float
    bound: float
    converged: bool = True
    sandwich_ratio: Optional[float] = None
    sandwich_lower: Optional[float] = None
    sandwich_upper: Optional[float] = None

    def __rich_repr__(self):
        yield "BoundReport"
        yield "premise_holds", self.premise_holds
        yield "mle_norm", self.mle_norm
        yield "bound", self.bound

    @property
    def holds(self) -> bool:
        if not (self.premise_holds and self.converged):
            return True
        return self.mle_norm <= self.bound * (1 + 1e-9) + 1e-12

    @property
    def sandwich_holds(self) -> Optional[bool]:
        if self.sandwich_ratio is None:
            return None
        slack = 1e-9
        return self.sandwich_lower - slack <= self.sandwich_ratio <= self.sandwich_upper + slack

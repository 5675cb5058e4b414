from typing import Union, Sequence
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Theta:
    """
    Natural parameter of Skeptic's logistic model: logit(p_hat) = logit(p) + theta'c.

    Attributes:
        coefficients (np.ndarray): One real coefficient per side information coordinate.
    """

    coefficients: np.ndarray

    def __post_init__(self):
        coefficients = np.array(self.coefficients, dtype=float).reshape(-1)
        if coefficients.size == 0:
            raise ValueError("Theta needs at least one coefficient")
        if not np.all(np.isfinite(coefficients)):
            raise ValueError("Theta coefficients must be finite")
        coefficients.flags.writeable = False
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def d(self) -> int:
        return self.coefficients.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coefficients, dtype=dtype)


ThetaLike = Union[Theta, np.ndarray, Sequence[float]]


def as_coefficients(theta: ThetaLike) -> np.ndarray:
    if isinstance(theta, Theta):
        return theta.coefficients
    return np.asarray(theta, dtype=float)


@dataclass(frozen=True)
class PotentialEval:
    """
    The cumulant generating function psi(theta) = sum_i log(1 + p_i (e^{theta'c_i} - 1))
    with its gradient and Hessian (the Fisher information in the natural parameter).
    """

    value: float
    grad: np.ndarray
    hess: np.ndarray

    def __rich_repr__(self):
        yield "PotentialEval"
        yield "value", self.value
        yield "grad", self.grad

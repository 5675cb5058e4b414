import numpy as np
from scipy.special import logsumexp

from skeptic.logistic import log_partition
from skeptic.mixture import quadrature_grid


def log_capital_path(prior, series) -> np.ndarray:
    # log K^pi_1 ... log K^pi_n from the closed form at every quadrature node
    nodes, log_weights = quadrature_grid(prior)
    exponents = nodes @ series.c.T
    factors = exponents * series.x - log_partition(series.p[np.newaxis, :], exponents)
    return logsumexp(np.cumsum(factors, axis=1) + log_weights[:, np.newaxis], axis=0)


def honest_schedule(n: int, seed: int = 12345) -> tuple:
    rng = np.random.default_rng(seed)
    return tuple(rng.uniform(0.05, 0.95, size=n))

from skeptic.mixture.structures import PriorSpec, MixtureState
from skeptic.mixture.process import (
    log_capital,
    init_mixture,
    prior_preset,
    node_weights,
    posterior_mean,
    update_mixture,
    quadrature_grid,
    node_log_capital,
    joint_probability,
    mixture_bet_ratio,
    direct_log_capital,
)

__all__ = [
    "PriorSpec",
    "MixtureState",
    "log_capital",
    "init_mixture",
    "prior_preset",
    "node_weights",
    "posterior_mean",
    "update_mixture",
    "quadrature_grid",
    "node_log_capital",
    "joint_probability",
    "mixture_bet_ratio",
    "direct_log_capital",
]

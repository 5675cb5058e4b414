import logging
from typing import Union, Mapping, Optional, Sequence
from dataclasses import replace

import numpy as np
import pandas as pd
from scipy.special import softmax, logsumexp

from skeptic import config as C
from skeptic.features import tools as feature_tools
from skeptic.game.tools import clip_to_admissible
from skeptic.game.structures import Round, RoundSeries, as_series
from skeptic.features.structures import FeatureSpec
from skeptic.mixture.structures import PriorSpec, MixtureState
from skeptic.logistic.model import bet_ratio, log_partition, log_capital_factor

logger = logging.getLogger(__name__)

# Element budget of one chunk of the node x round exponent matrix
DIRECT_CHUNK = 10_000_000


def quadrature_grid(prior: PriorSpec) -> tuple[np.ndarray, np.ndarray]:
    """
    Gauss-Legendre tensor grid over the prior box.

    Returns:
        tuple[np.ndarray, np.ndarray]: Nodes (m, d) in theta, and the log of
            (prior density x quadrature weight), normalized to total mass 1.
    """
    points, weights = np.polynomial.legendre.leggauss(prior.resolution)

    axes = []
    for lo, hi in prior.theta_bounds:
        axes.append(0.5 * (hi - lo) * points + 0.5 * (hi + lo))

    # Uniform density 1 / (hi - lo) cancels the interval Jacobian (hi - lo) / 2
    log_axis_weight = np.log(weights / 2)

    grids = np.meshgrid(*axes, indexing="ij")
    nodes = np.column_stack([grid.ravel() for grid in grids])

    weight_grids = np.meshgrid(*[log_axis_weight] * prior.d, indexing="ij")
    log_weights = np.sum([grid.ravel() for grid in weight_grids], axis=0)
    log_weights = log_weights - logsumexp(log_weights)

    return nodes, log_weights


def init_mixture(prior: PriorSpec, d: int) -> MixtureState:
    """
    Start the Bayesian logistic strategy: every node holds unit capital.

    Args:
        prior (PriorSpec): Uniform box prior and quadrature resolution.
        d (int): Side information dimension of the game.

    Returns:
        MixtureState: Quadrature state with log K^pi_0 = 0.

    Raises:
        ValueError: If the prior dimension differs from `d`, the resolution is below 2 nodes
            per dimension, or the total node count exceeds `config.NODE_CAP`.
    """
    if prior.d != d:
        raise ValueError(f"Prior has dimension {prior.d}, the game has {d}")
    if prior.resolution < 2:
        raise ValueError(f"Need at least 2 quadrature nodes per dimension, got {prior.resolution}")

    n_nodes = prior.resolution**d
    if n_nodes > C.NODE_CAP:
        raise ValueError(f"Quadrature grid of {n_nodes} nodes exceeds the cap of {C.NODE_CAP}")

    if not prior.supports_origin:
        logger.info("Prior %s does not support a neighborhood of the origin", prior.to_text())

    nodes, log_weights = quadrature_grid(prior)
    out = MixtureState(
        nodes=nodes,
        log_node_capital=np.zeros(nodes.shape[0]),
        log_quad_weight=log_weights,
        n=0,
    )
    return out


def node_weights(mix: MixtureState) -> np.ndarray:
    # Posterior weights of the nodes: prior mass times accumulated capital
    return softmax(mix.log_node_capital + mix.log_quad_weight)


def mixture_bet_ratio(mix: MixtureState, p: float, c) -> float:
    """
    Effective bet ratio of the mixture: the capital-weighted average of the nodes' Kelly ratios.

    Since K^pi_n = sum_j w_j K^j_{n-1} (1 + nu_j (x - p)), betting this ratio reproduces
    the mixture capital exactly. A convex combination of admissible ratios is admissible.
    """
    nus = bet_ratio(mix.nodes, p, c)
    return float(clip_to_admissible(p, node_weights(mix) @ nus))


def update_mixture(mix: MixtureState, round: Round) -> MixtureState:
    """
    Absorb one round: every node's log capital grows by its fixed-theta log factor.
    """
    if round.d != mix.d:
        raise ValueError(f"Round has dimension {round.d}, the mixture has {mix.d}")

    log_node_capital = mix.log_node_capital + log_capital_factor(mix.nodes, round)
    return replace(mix, log_node_capital=log_node_capital, n=mix.n + 1)


def log_capital(mix: MixtureState) -> float:
    return float(logsumexp(mix.log_node_capital + mix.log_quad_weight))


def posterior_mean(mix: MixtureState) -> np.ndarray:
    return node_weights(mix) @ mix.nodes


def node_log_capital(nodes: np.ndarray, rounds: Union[Sequence[Round], RoundSeries]) -> np.ndarray:
    """
    log K^theta_n = theta'T_n - psi(theta) at every row of `nodes`, from the closed form.
    """
    series = as_series(rounds)
    chunk = max(1, DIRECT_CHUNK // max(len(series), 1))

    out = []
    for start in range(0, nodes.shape[0], chunk):
        exponents = nodes[start : start + chunk] @ series.c.T
        partition = log_partition(series.p[np.newaxis, :], exponents)
        out.append(exponents @ series.x - partition.sum(axis=1))

    return np.concatenate(out)


def direct_log_capital(prior: PriorSpec, rounds: Union[Sequence[Round], RoundSeries]) -> float:
    """
    log K^pi_n by quadrature of the closed-form fixed-theta capital, with no sequential play.
    """
    nodes, log_weights = quadrature_grid(prior)
    return float(logsumexp(node_log_capital(nodes, rounds) + log_weights))


def joint_probability(
    prior: PriorSpec,
    spec: FeatureSpec,
    forecasts: Sequence[float],
    outcomes: Sequence[int],
    exo: Optional[Mapping[str, Sequence[float]]] = None,
) -> float:
    """
    Skeptic's joint probability of an outcome sequence under the mixture:
    prod_i p_i^x_i (1 - p_i)^(1 - x_i) times K^pi_n. Side information is rebuilt
    from `outcomes`, so lagged features follow the sequence being scored.
    """
    frame = pd.DataFrame({"p": forecasts, "x": outcomes})
    for name, values in (exo or {}).items():
        frame[name] = values

    series = feature_tools.attach(spec, frame)
    log_forecaster = np.sum(np.where(series.x == 1, np.log(series.p), np.log1p(-series.p)))

    return float(np.exp(log_forecaster + direct_log_capital(prior, series)))


def prior_preset(name: str, nodes_per_dim: Optional[int] = None) -> PriorSpec:
    """Unit box priors of the reference strategies, with the log-odds coordinate on the beta scale."""
    spec = feature_tools.preset(name)
    return PriorSpec.for_features(spec, nodes_per_dim=nodes_per_dim)

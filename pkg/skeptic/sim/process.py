import logging
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from skeptic.logistic.model import log_partition
from skeptic.sim.structures import Honest, Constant, Scenario, Bernoulli, Alternating, MarkovChain

logger = logging.getLogger(__name__)

SCENARIOS = ["case-1", "case-2", "case-3", "honest"]

# Persistent chain for case-3, configurable
CASE3_P11 = 0.7
CASE3_P10 = 0.3


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def generate(scenario: Scenario) -> pd.DataFrame:
    """
    Play Forecaster and Reality of a scenario.

    Forecasts follow the deterministic schedule of the forecaster model; outcomes are drawn
    from a PCG64 stream seeded with `scenario.seed`, so the result is reproducible across platforms.

    Args:
        scenario (Scenario): What to simulate.

    Returns:
        pd.DataFrame: Columns `n` (1-based round), `p` and `x`. Side information is attached later.
    """
    rng = make_rng(scenario.seed)
    p = scenario.forecast_schedule()
    reality = scenario.reality

    if isinstance(reality, Honest):
        x = (rng.random(scenario.n) < p).astype(int)
    elif isinstance(reality, Bernoulli):
        x = (rng.random(scenario.n) < reality.q).astype(int)
    elif isinstance(reality, MarkovChain):
        x = _markov_outcomes(reality, rng.random(scenario.n))
    else:
        raise TypeError(f"Unsupported reality model: {reality!r}")

    logger.debug("Generated %d rounds of %s with seed %d", scenario.n, scenario.name, scenario.seed)
    df = pd.DataFrame({"n": np.arange(1, scenario.n + 1), "p": p, "x": x})
    return df


def _markov_outcomes(chain: MarkovChain, uniforms: np.ndarray) -> np.ndarray:
    x = np.empty(uniforms.size, dtype=int)
    probability = chain.initial
    for it, u in enumerate(uniforms):
        x[it] = int(u < probability)
        probability = chain.p11 if x[it] else chain.p10
    return x


def preset(
    name: str,
    n: int = 10_000,
    seed: int = 0,
    p11: float = CASE3_P11,
    p10: float = CASE3_P10,
    forecast: float = 0.5,
) -> Scenario:
    """
    Reference scenarios.

    - case-1: Bernoulli(0.7) Reality against forecasts alternating 0.4 / 0.6
    - case-2: Bernoulli(0.5) Reality against the same forecasts
    - case-3: constant forecast 0.5 against a Markov chain Reality (p11, p10)
    - honest: constant forecast `forecast`, outcomes drawn from it

    Raises:
        KeyError: For an unknown scenario name.
    """
    if name == "case-1":
        forecaster, reality = Alternating((0.4, 0.6)), Bernoulli(0.7)
    elif name == "case-2":
        forecaster, reality = Alternating((0.4, 0.6)), Bernoulli(0.5)
    elif name == "case-3":
        chain = MarkovChain(p11=p11, p10=p10)
        forecaster, reality = Constant(0.5), MarkovChain(p11=p11, p10=p10, initial=chain.stationary)
    elif name == "honest":
        forecaster, reality = Constant(forecast), Honest()
    else:
        raise KeyError(f"Unknown scenario '{name}', available: {', '.join(SCENARIOS)}")

    return Scenario(forecaster=forecaster, reality=reality, n=n, seed=seed, name=name)


def oracle_growth_rate(
    forecasts: Sequence[float],
    q: float,
    theta_grid: Optional[np.ndarray] = None,
) -> tuple[float, float]:
    """
    Best expected log growth per round of a constant-feature logistic strategy
    against a Bernoulli(q) Reality and a cycled forecast schedule.

    The expected log factor at theta is q theta - log(1 + p (e^theta - 1)), averaged
    over the schedule and maximized over `theta_grid`.

    Returns:
        tuple[float, float]: The maximizing theta and the growth rate.

    Examples:
        >>> oracle_growth_rate([0.4, 0.6], q=0.7)
        (0.88..., 0.086...)
    """
    if theta_grid is None:
        theta_grid = np.linspace(-5, 5, 100_001)

    forecasts = np.asarray(forecasts, dtype=float)
    rates = q * theta_grid - log_partition(forecasts[np.newaxis, :], theta_grid[:, np.newaxis]).mean(axis=1)
    best = int(np.argmax(rates))

    return float(theta_grid[best]), float(rates[best])

from typing import Union, Optional
from dataclasses import dataclass

import numpy as np


def _check_probability(value: float, name: str, closed: bool = True):
    inside = 0 <= value <= 1 if closed else 0 < value < 1
    if not inside:
        interval = "[0, 1]" if closed else "(0, 1)"
        raise ValueError(f"{name} must be inside {interval}, got {value}")


@dataclass(frozen=True)
class Bernoulli:
    """Reality tosses an independent coin with success probability `q` every round."""

    q: float

    def __post_init__(self):
        _check_probability(self.q, "Success probability")


@dataclass(frozen=True)
class MarkovChain:
    """
    Two-state chain for Reality.

    Attributes:
        p11 (float): P(x_n = 1 | x_{n-1} = 1).
        p10 (float): P(x_n = 1 | x_{n-1} = 0).
        initial (float): P(x_1 = 1).
    """

    p11: float
    p10: float
    initial: float = 0.5

    def __post_init__(self):
        _check_probability(self.p11, "p11")
        _check_probability(self.p10, "p10")
        _check_probability(self.initial, "Initial probability")

    @property
    def stationary(self) -> float:
        # Long run frequency of x = 1
        denominator = 1 - self.p11 + self.p10
        if denominator == 0:
            return self.initial
        return self.p10 / denominator


@dataclass(frozen=True)
class Honest:
    """Reality follows the forecast: x_n ~ Bernoulli(p_n)."""


@dataclass(frozen=True)
class Alternating:
    """Forecast schedule cycling through `values`."""

    values: tuple

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ValueError("Alternating forecaster needs at least one value")
        for value in values:
            _check_probability(value, "Forecast", closed=False)
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class Constant:
    p: float

    def __post_init__(self):
        _check_probability(self.p, "Forecast", closed=False)


@dataclass(frozen=True)
class FromData:
    """Replay recorded forecasts, e.g. the `p` column of an ingested series."""

    forecasts: tuple

    def __post_init__(self):
        forecasts = tuple(float(v) for v in np.asarray(self.forecasts, dtype=float).reshape(-1))
        if not forecasts:
            raise ValueError("No forecasts to replay")
        if not all(0 < v < 1 for v in forecasts):
            raise ValueError("Replayed forecasts must be inside (0, 1)")
        object.__setattr__(self, "forecasts", forecasts)


RealityModel = Union[Bernoulli, MarkovChain, Honest]
ForecasterModel = Union[Alternating, Constant, FromData]


@dataclass(frozen=True)
class Scenario:
    """
    A fully specified simulated game: who forecasts, how Reality moves, for how long, and the seed.

    Examples:
        >>> Scenario(forecaster=Alternating((0.4, 0.6)), reality=Bernoulli(0.7), n=10_000, seed=7)
    """

    forecaster: ForecasterModel
    reality: RealityModel
    n: int
    seed: int = 0
    name: Optional[str] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"A scenario needs at least one round, got n={self.n}")
        if isinstance(self.forecaster, FromData) and len(self.forecaster.forecasts) < self.n:
            raise ValueError(f"Only {len(self.forecaster.forecasts)} recorded forecasts for n={self.n} rounds")

    def __rich_repr__(self):
        yield "Scenario"
        yield "name", self.name
        yield "forecaster", self.forecaster
        yield "reality", self.reality
        yield "n", self.n
        yield "seed", self.seed

    def forecast_schedule(self) -> np.ndarray:
        if isinstance(self.forecaster, Alternating):
            return np.resize(np.array(self.forecaster.values), self.n)
        if isinstance(self.forecaster, Constant):
            return np.full(self.n, self.forecaster.p)
        return np.array(self.forecaster.forecasts[: self.n])

    def with_seed(self, seed: int) -> "Scenario":
        return Scenario(forecaster=self.forecaster, reality=self.reality, n=self.n, seed=seed, name=self.name)

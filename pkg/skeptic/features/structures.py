from typing import Union, Mapping, Optional, Sequence
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Constant:
    token = "const"

    def build(self, outcomes: Sequence[int], p: float, exo: Optional[Mapping[str, float]]) -> float:
        return 1.0


@dataclass(frozen=True)
class ForecastLogit:
    token = "logit"

    def build(self, outcomes: Sequence[int], p: float, exo: Optional[Mapping[str, float]]) -> float:
        return float(np.log(p / (1 - p)))


@dataclass(frozen=True)
class LagOutcome:
    """Outcome k rounds back; rounds before the start of the game count as x = 0."""

    k: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"Lag must be at least 1, got {self.k}")

    @property
    def token(self) -> str:
        return f"lag{self.k}"

    def build(self, outcomes: Sequence[int], p: float, exo: Optional[Mapping[str, float]]) -> float:
        if len(outcomes) < self.k:
            return 0.0
        return float(outcomes[-self.k])


@dataclass(frozen=True)
class ExogenousColumn:
    name: str

    @property
    def token(self) -> str:
        return f"exo:{self.name}"

    def build(self, outcomes: Sequence[int], p: float, exo: Optional[Mapping[str, float]]) -> float:
        if not exo or self.name not in exo:
            raise KeyError(f"Exogenous column '{self.name}' is not available")
        return float(exo[self.name])


Builder = Union[Constant, ForecastLogit, LagOutcome, ExogenousColumn]


def parse_builder(token: str) -> Builder:
    token = token.strip()
    if token == "const":
        return Constant()
    if token == "logit":
        return ForecastLogit()
    if token.startswith("lag"):
        k = token[3:] or "1"
        if not k.isdigit():
            raise ValueError(f"Cannot parse lag feature '{token}'")
        return LagOutcome(k=int(k))
    if token.startswith("exo:") and len(token) > 4:
        return ExogenousColumn(name=token[4:])

    raise ValueError(f"Unknown feature '{token}', expected one of: const, logit, lag<k>, exo:<name>")


@dataclass(frozen=True)
class FeatureSpec:
    """
    Ordered list of side information builders; the game dimension d is their count.

    Examples:
        >>> FeatureSpec.from_text("const,logit,lag1").d
        3
    """

    builders: tuple

    def __post_init__(self):
        builders = tuple(self.builders)
        if not builders:
            raise ValueError("A feature spec needs at least one builder")
        object.__setattr__(self, "builders", builders)

    def __rich_repr__(self):
        yield "FeatureSpec"
        yield self.to_text()

    @property
    def d(self) -> int:
        return len(self.builders)

    @property
    def logit_index(self) -> Optional[int]:
        for it, builder in enumerate(self.builders):
            if isinstance(builder, ForecastLogit):
                return it
        return None

    @property
    def exogenous_names(self) -> list[str]:
        return [b.name for b in self.builders if isinstance(b, ExogenousColumn)]

    def to_text(self) -> str:
        return ",".join(builder.token for builder in self.builders)

    @classmethod
    def from_text(cls, text: str) -> "FeatureSpec":
        tokens = [token for token in text.split(",") if token.strip()]
        return cls(builders=tuple(parse_builder(token) for token in tokens))

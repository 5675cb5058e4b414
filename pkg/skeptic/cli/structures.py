from typing import Optional
from dataclasses import dataclass

from skeptic import config as C
from skeptic.features import tools as feature_tools
from skeptic.mixture.structures import PriorSpec
from skeptic.features.structures import FeatureSpec


@dataclass(frozen=True)
class RunConfig:
    """
    Everything one CLI command needs, resolved from the command line.

    Exactly one input source is allowed: a simulated scenario (`case`) or a data file (`data`).
    An explicit `features` text overrides the `strategy` preset; `prior` defaults to the
    unit box of the features, with the forecast log-odds coordinate on the beta scale.
    """

    command: str
    case: Optional[str] = None
    data: Optional[str] = None
    strategy: str = "strategy-1"
    features: Optional[str] = None
    prior: Optional[str] = None
    n: Optional[int] = None
    seed: int = 0
    nodes: Optional[int] = None
    clamp_eps: float = C.CLAMP_EPS
    out: str = "-"
    trace_every: int = C.TRACE_EVERY
    sweep: Optional[int] = None
    p11: float = 0.7
    p10: float = 0.3
    forecast: float = 0.5

    def __post_init__(self):
        if (self.case is None) == (self.data is None):
            raise ValueError("Give exactly one input source: --case or --data")
        if self.n is not None and self.n < 1:
            raise ValueError(f"--n must be at least 1, got {self.n}")
        if self.nodes is not None and self.nodes < 2:
            raise ValueError(f"--nodes must be at least 2, got {self.nodes}")
        if self.sweep is not None:
            if self.sweep < 1:
                raise ValueError(f"--sweep must be at least 1, got {self.sweep}")
            if self.case is None:
                raise ValueError("--sweep needs a simulated scenario")

    def __rich_repr__(self):
        yield "RunConfig"
        yield "command", self.command
        yield "source", self.case or self.data
        yield "features", self.feature_spec.to_text()

    @property
    def feature_spec(self) -> FeatureSpec:
        if self.features is not None:
            return FeatureSpec.from_text(self.features)
        return feature_tools.preset(self.strategy)

    @property
    def prior_spec(self) -> PriorSpec:
        if self.prior is not None:
            return PriorSpec.from_text(self.prior, self.feature_spec, nodes_per_dim=self.nodes)
        return PriorSpec.for_features(self.feature_spec, nodes_per_dim=self.nodes)

from typing import Optional, Sequence
from dataclasses import dataclass

import numpy as np

from skeptic import config as C
from skeptic.features.structures import FeatureSpec


@dataclass(frozen=True)
class PriorSpec:
    """
    Product of independent uniform priors on a box.

    Coordinates listed in `beta_coordinates` are stated on the trust scale beta, where the
    coefficient of the forecast log-odds feature is beta - 1. `theta_bounds` translates them
    to the natural parameter.

    Attributes:
        bounds (tuple): One (lo, hi) interval per coordinate, as stated.
        nodes_per_dim (int, optional): Quadrature resolution; defaults to `config.default_nodes_per_dim(d)`.
        beta_coordinates (tuple): Indices of coordinates stated on the beta scale.

    Examples:
        A prior for strategy-3 with beta uniform over [0, 2]:
        >>> PriorSpec(bounds=((0, 1), (0, 2), (0, 1)), beta_coordinates=(1,))
    """

    bounds: tuple
    nodes_per_dim: Optional[int] = None
    beta_coordinates: tuple = ()

    def __post_init__(self):
        bounds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        if not bounds:
            raise ValueError("A prior needs at least one coordinate")
        for lo, hi in bounds:
            if not (np.isfinite(lo) and np.isfinite(hi)):
                raise ValueError("Prior bounds must be finite")
            if not lo < hi:
                raise ValueError(f"Prior interval must have lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "bounds", bounds)

        beta_coordinates = tuple(int(it) for it in self.beta_coordinates)
        if any(not 0 <= it < len(bounds) for it in beta_coordinates):
            raise ValueError("beta coordinate index out of range")
        object.__setattr__(self, "beta_coordinates", beta_coordinates)

    def __rich_repr__(self):
        yield "PriorSpec"
        yield "bounds", self.bounds
        yield "nodes_per_dim", self.resolution
        yield "supports_origin", self.supports_origin

    @property
    def d(self) -> int:
        return len(self.bounds)

    @property
    def resolution(self) -> int:
        if self.nodes_per_dim is None:
            return C.default_nodes_per_dim(self.d)
        return self.nodes_per_dim

    @property
    def theta_bounds(self) -> np.ndarray:
        out = np.array(self.bounds)
        for it in self.beta_coordinates:
            out[it] -= 1.0
        return out

    @property
    def supports_origin(self) -> bool:
        # Positive density on a neighborhood of theta = 0
        box = self.theta_bounds
        return bool(np.all((box[:, 0] < 0) & (box[:, 1] > 0)))

    @property
    def log_density(self) -> float:
        box = self.theta_bounds
        return float(-np.sum(np.log(box[:, 1] - box[:, 0])))

    def contains(self, theta, strict: bool = True) -> bool:
        theta = np.asarray(theta, dtype=float)
        box = self.theta_bounds
        if strict:
            return bool(np.all((box[:, 0] < theta) & (theta < box[:, 1])))
        return bool(np.all((box[:, 0] <= theta) & (theta <= box[:, 1])))

    def to_text(self) -> str:
        return ",".join(f"{lo:g}:{hi:g}" for lo, hi in self.bounds)

    @classmethod
    def for_features(
        cls,
        spec: FeatureSpec,
        bounds: Optional[Sequence] = None,
        nodes_per_dim: Optional[int] = None,
    ) -> "PriorSpec":
        """
        Prior matching a feature spec. Bounds default to the unit interval per coordinate;
        the forecast log-odds coordinate, if any, is read on the beta scale.
        """
        if bounds is None:
            bounds = [C.DEFAULT_PRIOR_BOX] * spec.d
        if len(bounds) != spec.d:
            raise ValueError(f"Prior has {len(bounds)} intervals, features have {spec.d} coordinates")

        beta_coordinates = () if spec.logit_index is None else (spec.logit_index,)
        return cls(bounds=tuple(bounds), nodes_per_dim=nodes_per_dim, beta_coordinates=beta_coordinates)

    @classmethod
    def from_text(cls, text: str, spec: FeatureSpec, nodes_per_dim: Optional[int] = None) -> "PriorSpec":
        # "lo:hi,lo:hi,..."
        bounds = []
        for part in text.split(","):
            try:
                lo, hi = part.split(":")
                bounds.append((float(lo), float(hi)))
            except ValueError as exc:
                raise ValueError(f"Cannot parse prior interval '{part}', expected lo:hi") from exc

        return cls.for_features(spec, bounds=bounds, nodes_per_dim=nodes_per_dim)


@dataclass(frozen=True)
class MixtureState:
    """
    Tensor-product quadrature of the mixture capital over the prior box.

    Attributes:
        nodes (np.ndarray): Grid points in theta, shape (m, d).
        log_node_capital (np.ndarray): log K^theta_n at every node, shape (m,).
        log_quad_weight (np.ndarray): log of prior density times quadrature weight, normalized to total mass 1.
        n (int): Rounds absorbed so far.
    """

    nodes: np.ndarray
    log_node_capital: np.ndarray
    log_quad_weight: np.ndarray
    n: int = 0

    def __rich_repr__(self):
        yield "MixtureState"
        yield "nodes", self.nodes.shape
        yield "n", self.n

    @property
    def d(self) -> int:
        return self.nodes.shape[1]

    @property
    def size(self) -> int:
        return self.nodes.shape[0]

from typing import Union, Iterator, Optional, Sequence
from dataclasses import field, dataclass

import numpy as np


@dataclass(frozen=True)
class Round:
    """
    A single step of the forecasting game.

    Forecaster announces the probability `p` together with the side information `c`,
    Skeptic bets, and Reality answers with the binary outcome `x`.

    Attributes:
        p (float): Forecast probability, strictly inside (0, 1).
        c (np.ndarray): Side information vector of dimension d.
        x (int): Outcome, 0 or 1.

    Examples:
        >>> Round(p=0.4, c=[1.0, -0.405], x=1)
    """

    p: float
    c: np.ndarray
    x: int

    def __post_init__(self):
        c = np.array(self.c, dtype=float).reshape(-1)
        c.flags.writeable = False
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "p", float(self.p))

        if not 0 < self.p < 1:
            raise ValueError(f"Forecast must be inside (0, 1), got {self.p}")
        if self.x not in (0, 1):
            raise ValueError(f"Outcome must be 0 or 1, got {self.x}")
        if c.size == 0:
            raise ValueError("Side information must have at least one coordinate")
        if not np.all(np.isfinite(c)):
            raise ValueError("Side information must be finite")
        object.__setattr__(self, "x", int(self.x))

    @property
    def d(self) -> int:
        return self.c.size


@dataclass
class RoundSeries:
    """
    Columnar storage of a whole game: forecasts `p` (n,), side information `c` (n, d)
    and outcomes `x` (n,). Indexing with an integer gives a `Round`, slicing gives
    another `RoundSeries`.
    """

    p: np.ndarray
    c: np.ndarray
    x: np.ndarray
    dates: Optional[np.ndarray] = None

    def __post_init__(self):
        self.p = np.asarray(self.p, dtype=float).reshape(-1)
        self.x = np.asarray(self.x).astype(int).reshape(-1)
        self.c = np.asarray(self.c, dtype=float)
        if self.c.ndim == 1:
            self.c = self.c[:, np.newaxis]

        n = self.p.size
        if self.x.size != n or self.c.shape[0] != n:
            raise ValueError("p, c and x must describe the same number of rounds")
        if n and not np.all((self.p > 0) & (self.p < 1)):
            raise ValueError("All forecasts must be inside (0, 1)")
        if n and not np.all((self.x == 0) | (self.x == 1)):
            raise ValueError("All outcomes must be 0 or 1")
        if not np.all(np.isfinite(self.c)):
            raise ValueError("Side information must be finite")

    def __rich_repr__(self):
        yield "RoundSeries"
        yield "rounds", len(self)
        yield "d", self.d

    def __len__(self) -> int:
        return self.p.size

    @property
    def d(self) -> int:
        return self.c.shape[1]

    def __getitem__(self, index: Union[int, slice]) -> Union[Round, "RoundSeries"]:
        if isinstance(index, slice):
            dates = self.dates[index] if self.dates is not None else None
            return RoundSeries(p=self.p[index], c=self.c[index], x=self.x[index], dates=dates)

        return Round(p=self.p[index], c=self.c[index], x=int(self.x[index]))

    def __iter__(self) -> Iterator[Round]:
        for it in range(len(self)):
            yield self[it]

    @property
    def t(self) -> np.ndarray:
        """Sufficient statistic T_n = sum of c_i x_i."""
        return self.c.T @ self.x

    @classmethod
    def from_rounds(cls, rounds: Sequence[Round]) -> "RoundSeries":
        if not rounds:
            raise ValueError("Cannot build a series from zero rounds")
        return cls(
            p=[r.p for r in rounds],
            c=np.vstack([r.c for r in rounds]),
            x=[r.x for r in rounds],
        )


def as_series(rounds: Union[Sequence[Round], RoundSeries]) -> RoundSeries:
    if isinstance(rounds, RoundSeries):
        return rounds
    return RoundSeries.from_rounds(list(rounds))


@dataclass(frozen=True)
class GameState:
    """
    Running quantities of the game after `n` rounds.

    Attributes:
        n (int): Number of rounds played.
        logK (float): Logarithm of Skeptic's capital.
        S (np.ndarray): Drift, sum of c_i (x_i - p_i).
        V (np.ndarray): Information, sum of c_i c_i' p_i (1 - p_i).
    """

    n: int
    logK: float
    S: np.ndarray
    V: np.ndarray
    max_logK: float = 0.0

    def __rich_repr__(self):
        yield "GameState"
        yield "n", self.n
        yield "logK", round(self.logK, 4)

    @property
    def d(self) -> int:
        return self.S.size

    @property
    def capital(self) -> float:
        return float(np.exp(self.logK))


@dataclass(frozen=True)
class Diagnostics:
    """
    Spectral summary of the drift and information processes.

    `degenerate` is set when V is singular, in which case the inverse based quantities are NaN.
    `ratio_defined` is set once log det V > 0 so that `ratio` = S'V^-1 S / log det V is meaningful.
    """

    lambda_min: float
    lambda_max: float
    vinv_s: np.ndarray
    svs: float
    logdetV: float
    ratio: float
    degenerate: bool = False
    ratio_defined: bool = True
    vinv_s_norm: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "vinv_s_norm", float(np.linalg.norm(self.vinv_s)))

    def __rich_repr__(self):
        yield "Diagnostics"
        yield "lambda", (self.lambda_min, self.lambda_max)
        yield "svs", self.svs
        yield "ratio", self.ratio

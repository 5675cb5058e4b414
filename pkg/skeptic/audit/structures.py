from typing import Optional
from dataclasses import dataclass

import pandas as pd

from skeptic.game.structures import GameState
from skeptic.hindsight.structures import MleResult
from skeptic.mixture.structures import MixtureState

TRACE_COLUMNS = ["n", "p", "x", "nu", "logK_pi", "logK_mle", "svs_half", "logdetV", "ratio"]


@dataclass
class AuditResult:
    """
    Outcome of one game between a strategy and a forecast series.

    Attributes:
        trace (pd.DataFrame): One row per round with the columns of `TRACE_COLUMNS`.
            Hindsight columns (`logK_mle`, `svs_half`, `logdetV`, `ratio`) are NaN
            between checkpoints.
        summary (dict): Final numbers of the game, see `audit.process.summarize`.
        state (GameState): Final state of the game.
        mle (MleResult, optional): Hindsight estimate on the full record, None if it does not exist.
        mixture (MixtureState, optional): Final quadrature state of a Bayesian strategy.
    """

    trace: pd.DataFrame
    summary: dict
    state: GameState
    mle: Optional[MleResult] = None
    mixture: Optional[MixtureState] = None

    def __rich_repr__(self):
        yield "AuditResult"
        yield "rounds", self.state.n
        yield "logK", round(self.state.logK, 4)
        yield "summary", self.summary

    @property
    def log_capital(self) -> float:
        return self.state.logK

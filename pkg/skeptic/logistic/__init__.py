from skeptic.logistic.structures import Theta, PotentialEval
from skeptic.logistic.model import (
    predict,
    bet_ratio,
    potential,
    kelly_ratio,
    log_partition,
    log_capital_factor,
    monotone_bet_ratio,
)

__all__ = [
    "Theta",
    "PotentialEval",
    "predict",
    "bet_ratio",
    "potential",
    "kelly_ratio",
    "log_partition",
    "log_capital_factor",
    "monotone_bet_ratio",
]

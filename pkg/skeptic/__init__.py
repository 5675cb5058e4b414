from skeptic import sim, game, audit, ingest, mixture, features, logistic, hindsight
from skeptic.game.structures import Round, GameState, RoundSeries
from skeptic.mixture.structures import PriorSpec
from skeptic.features.structures import FeatureSpec

__all__ = [
    "sim",
    "game",
    "audit",
    "ingest",
    "mixture",
    "features",
    "logistic",
    "hindsight",
    "Round",
    "GameState",
    "RoundSeries",
    "PriorSpec",
    "FeatureSpec",
]
__version__ = "0.1.0"

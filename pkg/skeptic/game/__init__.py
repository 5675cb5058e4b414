from skeptic.game.structures import Round, GameState, RoundSeries, Diagnostics
from skeptic.game.tools import replay, accumulate, init_state, play_round, diagnostics, admissible_interval

__all__ = [
    "Round",
    "GameState",
    "RoundSeries",
    "Diagnostics",
    "replay",
    "accumulate",
    "init_state",
    "play_round",
    "diagnostics",
    "admissible_interval",
]

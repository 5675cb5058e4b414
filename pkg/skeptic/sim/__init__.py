from skeptic.sim.process import SCENARIOS, preset, generate, make_rng, oracle_growth_rate
from skeptic.sim.structures import Honest, Constant, FromData, Scenario, Bernoulli, Alternating, MarkovChain

__all__ = [
    "SCENARIOS",
    "preset",
    "generate",
    "make_rng",
    "oracle_growth_rate",
    "Honest",
    "Constant",
    "FromData",
    "Scenario",
    "Bernoulli",
    "Alternating",
    "MarkovChain",
]

from skeptic.features.tools import attach, preset, build_features
from skeptic.features.structures import Constant, LagOutcome, FeatureSpec, ForecastLogit, ExogenousColumn

__all__ = [
    "attach",
    "preset",
    "build_features",
    "Constant",
    "LagOutcome",
    "FeatureSpec",
    "ForecastLogit",
    "ExogenousColumn",
]

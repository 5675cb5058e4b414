from typing import Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from skeptic.game.structures import RoundSeries
from skeptic.features.structures import Constant, LagOutcome, FeatureSpec, ForecastLogit, ExogenousColumn

PRESETS = {
    "strategy-1": "const",
    "strategy-2": "const,logit",
    "strategy-3": "const,logit,lag1",
}


def preset(name: str) -> FeatureSpec:
    """
    Side information of the three reference strategies:
    strategy-1 uses a constant, strategy-2 adds the forecast log-odds,
    strategy-3 adds the previous outcome.

    Raises:
        KeyError: For an unknown preset name.
    """
    if name not in PRESETS:
        raise KeyError(f"Unknown strategy preset '{name}', available: {', '.join(PRESETS)}")

    return FeatureSpec.from_text(PRESETS[name])


def build_features(
    spec: FeatureSpec,
    history: Sequence,
    p: float,
    exo: Optional[Mapping[str, float]] = None,
) -> np.ndarray:
    """
    Side information vector for the current round.

    Args:
        spec (FeatureSpec): Builders, in output order.
        history (Sequence): Earlier rounds, either `Round` objects or bare outcomes x_1..x_{n-1}.
        p (float): The current forecast, inside (0, 1).
        exo (Mapping[str, float], optional): Named exogenous values for this round.

    Returns:
        np.ndarray: The d-vector c_n.

    Raises:
        KeyError: If an exogenous column is referenced but missing.
    """
    if not 0 < p < 1:
        raise ValueError(f"Forecast must be inside (0, 1), got {p}")

    outcomes = [getattr(item, "x", item) for item in history]
    return np.array([builder.build(outcomes, p, exo) for builder in spec.builders])


def attach(spec: FeatureSpec, frame: pd.DataFrame) -> RoundSeries:
    """
    Build the side information for every round of a forecast series at once.

    Row n of the result equals `build_features(spec, x[:n], p[n], exo=row n)`.

    Args:
        spec (FeatureSpec): Feature builders.
        frame (pd.DataFrame): Columns `p` and `x`, plus any exogenous columns the spec names.
            An optional `date` column is carried through.

    Returns:
        RoundSeries: Rounds ready for the game.
    """
    missing = [name for name in spec.exogenous_names if name not in frame.columns]
    if missing:
        raise KeyError(f"Exogenous columns missing from the data: {', '.join(missing)}")

    p = frame.p.to_numpy(dtype=float)
    x = frame.x.to_numpy(dtype=int)

    columns = []
    for builder in spec.builders:
        if isinstance(builder, Constant):
            column = np.ones_like(p)
        elif isinstance(builder, ForecastLogit):
            column = np.log(p / (1 - p))
        elif isinstance(builder, LagOutcome):
            column = frame.x.shift(builder.k, fill_value=0).to_numpy(dtype=float)
        elif isinstance(builder, ExogenousColumn):
            column = frame[builder.name].to_numpy(dtype=float)
        else:
            raise TypeError(f"Unsupported feature builder: {builder!r}")
        columns.append(column)

    dates = frame["date"].to_numpy() if "date" in frame.columns else None
    series = RoundSeries(p=p, c=np.column_stack(columns), x=x, dates=dates)

    return series

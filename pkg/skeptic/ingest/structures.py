from typing import Mapping
from dataclasses import dataclass

import numpy as np
import pandas as pd

RECORD_COLUMNS = ["date", "p_percent", "p", "x"]
TABLE_COLUMNS = ["rainy", "dry", "total", "ratio"]


@dataclass
class ForecastRecords:
    """
    Announced probability forecasts with their binary outcomes, one row per day.

    The DataFrame `df` has the columns:
        date: calendar date (NaT when the source had none)
        p_percent: the announced forecast in percent, the calibration bin
        p: the forecast used for betting, boundary values clamped into (0, 1)
        x: the outcome, 0 or 1
    plus any extra numeric columns of the source, usable as exogenous side information.

    Examples:
        >>> records = load_csv("tokyo.csv")
        >>> records.df.head()
    """

    df: pd.DataFrame
    source: dict = None

    def __rich_repr__(self):
        yield "ForecastRecords"
        yield "rounds", len(self)
        yield "extras", self.extras
        yield "source", self.source

    def __post_init__(self):
        missing = [col for col in RECORD_COLUMNS if col not in self.df.columns]
        if missing:
            raise ValueError(f"The DataFrame is missing the required columns: {', '.join(missing)}")

        p = self.df.p.to_numpy(dtype=float)
        if not np.all((p > 0) & (p < 1)):
            raise ValueError("Forecasts used for betting must be inside (0, 1)")
        if not self.df.x.isin([0, 1]).all():
            raise ValueError("Outcomes must be 0 or 1")

        if not self.source:
            self.source = {}

    def __len__(self) -> int:
        return self.df.shape[0]

    @property
    def extras(self) -> list[str]:
        return [col for col in self.df.columns if col not in RECORD_COLUMNS]

    @property
    def dates(self) -> pd.Series:
        return self.df.date


@dataclass(eq=False)
class CalibrationTable:
    """
    Outcome counts per announced forecast bin.

    `df` is indexed by `p_percent` (observed bins only, ascending) with the columns
    `rainy` (count of x = 1), `dry` (count of x = 0), `total` and `ratio` = rainy / total.
    """

    df: pd.DataFrame

    def __post_init__(self):
        missing = [col for col in TABLE_COLUMNS if col not in self.df.columns]
        if missing:
            raise ValueError(f"Calibration table is missing the columns: {', '.join(missing)}")
        if not ((self.df.ratio >= 0) & (self.df.ratio <= 1)).all():
            raise ValueError("Calibration ratios must be inside [0, 1]")

    def __rich_repr__(self):
        yield "CalibrationTable"
        yield "bins", len(self.df)
        yield "total", self.size

    @property
    def size(self) -> int:
        return int(self.df.total.sum())

    def equals(self, other: "CalibrationTable") -> bool:
        return self.df[TABLE_COLUMNS].equals(other.df[TABLE_COLUMNS])

    def to_csv(self, path_or_buf=None, **kwargs):
        return self.df.reset_index().to_csv(path_or_buf, index=False, **kwargs)

    @classmethod
    def from_counts(cls, counts: Mapping[int, tuple[int, int]]) -> "CalibrationTable":
        """
        Build a table from {p_percent: (count of x = 1, count of x = 0)}. Empty bins are dropped.
        """
        rows = []
        for p_percent, (rainy, dry) in sorted(counts.items()):
            if rainy < 0 or dry < 0:
                raise ValueError(f"Counts must be non-negative, bin {p_percent} has ({rainy}, {dry})")
            if rainy + dry == 0:
                continue
            rows.append({"p_percent": int(p_percent), "rainy": int(rainy), "dry": int(dry)})

        if not rows:
            raise ValueError("A calibration table needs at least one observation")

        df = pd.DataFrame(rows).set_index("p_percent")
        df["total"] = df.rainy + df.dry
        df["ratio"] = df.rainy / df.total
        return cls(df=df)

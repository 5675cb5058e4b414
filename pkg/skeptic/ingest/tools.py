import logging
import warnings
from typing import Union

import numpy as np
import pandas as pd

from skeptic import config as C
from skeptic.errors import DataError, BinningWarning
from skeptic.sim.process import make_rng
from skeptic.ingest.structures import ForecastRecords, CalibrationTable

logger = logging.getLogger(__name__)

# Rainy / dry days per announced forecast, Tokyo, 2009-2011
JMA_TABLE = {
    0: (1, 61),
    10: (10, 324),
    20: (24, 193),
    30: (36, 117),
    40: (20, 26),
    50: (67, 56),
    60: (38, 14),
    70: (36, 7),
    80: (36, 4),
    90: (22, 1),
    100: (3, 0),
}


def _check_clamp_eps(clamp_eps: float):
    if not 0 < clamp_eps < 0.5:
        raise ValueError(f"clamp_eps must be inside (0, 0.5), got {clamp_eps}")


def clamp(p_percent: Union[float, np.ndarray], clamp_eps: float = C.CLAMP_EPS) -> np.ndarray:
    """
    Probability used for betting: percent / 100, with 0 % replaced by `clamp_eps`
    and 100 % by 1 - `clamp_eps`. Interior values are left alone.
    """
    _check_clamp_eps(clamp_eps)
    p = np.asarray(p_percent, dtype=float) / 100
    p = np.where(p <= 0, clamp_eps, p)
    p = np.where(p >= 1, 1 - clamp_eps, p)
    return p


def _bad_lines(mask: np.ndarray) -> list[int]:
    # Header is line 1
    return [int(it) + 2 for it in np.flatnonzero(mask)]


def load_csv(path, clamp_eps: float = C.CLAMP_EPS) -> ForecastRecords:
    """
    Load forecasts and outcomes from a CSV file with the header `date,p,x[,extra...]`.

    `p` is read as an integer percent unless any value has a decimal point, in which case the
    whole column is taken as probabilities in [0, 1] and binned to the nearest decile for
    calibration (with a `BinningWarning` if any value is off the decile grid).

    Args:
        path (str | Path | IO): The CSV source.
        clamp_eps (float): Replacement for 0 % forecasts; 100 % becomes 1 - clamp_eps.

    Returns:
        ForecastRecords: Parsed and clamped records, in file order.

    Raises:
        DataError: For an empty file, missing columns or malformed rows. `lines` lists the
            offending 1-based line numbers.
    """
    _check_clamp_eps(clamp_eps)

    try:
        raw = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.EmptyDataError as exc:
        raise DataError(f"No data in {path}") from exc
    except pd.errors.ParserError as exc:
        raise DataError(f"Cannot parse {path}: {exc}") from exc

    raw.columns = [col.strip() for col in raw.columns]
    missing = [col for col in ["p", "x"] if col not in raw.columns]
    if missing:
        raise DataError(f"{path} is missing the columns: {', '.join(missing)}")
    if raw.empty:
        raise DataError(f"No rows in {path}")

    p_text = raw.p.str.strip()
    p_value = pd.to_numeric(p_text, errors="coerce").to_numpy(dtype=float)
    is_decimal = p_text.str.contains(".", regex=False).any()

    if is_decimal:
        bad = np.isnan(p_value) | (p_value < 0) | (p_value > 1)
        if bad.any():
            lines = _bad_lines(bad)
            raise DataError(f"Forecast probabilities outside [0, 1] or unreadable at lines {lines}", lines=lines)
        p_percent = np.rint(p_value * 10).astype(int) * 10
        if not np.allclose(p_value * 100, p_percent, atol=1e-9):
            warnings.warn("Decimal forecasts binned to the nearest decile for calibration", BinningWarning, stacklevel=2)
        p = np.where(p_value <= 0, clamp_eps, np.where(p_value >= 1, 1 - clamp_eps, p_value))
    else:
        bad = np.isnan(p_value) | (p_value < 0) | (p_value > 100) | (p_value != np.round(p_value))
        if bad.any():
            lines = _bad_lines(bad)
            raise DataError(f"Forecast percents must be integers in [0, 100], see lines {lines}", lines=lines)
        p_percent = p_value.astype(int)
        p = clamp(p_percent, clamp_eps)

    x_value = pd.to_numeric(raw.x.str.strip(), errors="coerce").to_numpy(dtype=float)
    bad = ~np.isin(x_value, [0.0, 1.0])
    if bad.any():
        lines = _bad_lines(bad)
        raise DataError(f"Outcomes must be 0 or 1, see lines {lines}", lines=lines)

    if "date" in raw.columns:
        dates = pd.to_datetime(raw.date.str.strip(), errors="coerce", format="ISO8601")
        bad = dates.isna().to_numpy()
        if bad.any():
            lines = _bad_lines(bad)
            raise DataError(f"Unreadable dates at lines {lines}", lines=lines)
    else:
        dates = pd.Series(pd.NaT, index=raw.index)

    df = pd.DataFrame({"date": dates, "p_percent": p_percent, "p": p, "x": x_value.astype(int)})

    for col in raw.columns:
        if col in ("date", "p", "x"):
            continue
        values = pd.to_numeric(raw[col].str.strip(), errors="coerce")
        bad = values.isna().to_numpy()
        if bad.any():
            lines = _bad_lines(bad)
            raise DataError(f"Column '{col}' has non-numeric values at lines {lines}", lines=lines)
        df[col] = values.astype(float)

    logger.info("Loaded %d forecasts from %s", len(df), path)
    return ForecastRecords(df=df, source={"path": str(path), "clamp_eps": clamp_eps})


def calibration_table(records: Union[ForecastRecords, pd.DataFrame]) -> CalibrationTable:
    """
    Count outcomes per announced forecast bin.

    Bins are keyed by the announced percent, before clamping, so 0 % and 100 % keep their own rows.
    A frame without `p_percent` is binned from `p` to the nearest decile.
    """
    df = records.df if isinstance(records, ForecastRecords) else records
    if df.empty:
        raise DataError("Cannot tabulate an empty series")

    if "p_percent" in df.columns:
        p_percent = df.p_percent.astype(int)
    else:
        p_percent = (np.rint(df.p.to_numpy(dtype=float) * 10) * 10).astype(int)
        if not np.allclose(df.p.to_numpy(dtype=float) * 100, p_percent, atol=1e-9):
            warnings.warn("Forecasts binned to the nearest decile", BinningWarning, stacklevel=2)
        p_percent = pd.Series(p_percent, index=df.index)

    grouped = df.x.groupby(p_percent)
    rainy = grouped.sum()
    total = grouped.size()

    counts = {int(key): (int(rainy[key]), int(total[key] - rainy[key])) for key in total.index}
    return CalibrationTable.from_counts(counts)


def jma_table() -> CalibrationTable:
    return CalibrationTable.from_counts(JMA_TABLE)


def synth_from_table(
    table: CalibrationTable,
    seed: int = 0,
    clamp_eps: float = C.CLAMP_EPS,
    start: str = "2009-01-01",
) -> ForecastRecords:
    """
    A daily series with exactly the counts of `table`, in a seeded random order.

    Args:
        table (CalibrationTable): Counts to reproduce.
        seed (int): Seed of the PCG64 shuffle.
        clamp_eps (float): Clamp for the 0 % and 100 % bins.
        start (str): Date of the first day.

    Returns:
        ForecastRecords: `table.size` consecutive days starting at `start`.
    """
    p_percent = []
    x = []
    for percent, row in table.df.iterrows():
        p_percent += [percent] * (int(row.rainy) + int(row.dry))
        x += [1] * int(row.rainy) + [0] * int(row.dry)

    order = make_rng(seed).permutation(len(x))
    p_percent = np.array(p_percent, dtype=int)[order]
    x = np.array(x, dtype=int)[order]

    df = pd.DataFrame(
        {
            "date": pd.date_range(start, periods=len(x), freq="D"),
            "p_percent": p_percent,
            "p": clamp(p_percent, clamp_eps),
            "x": x,
        }
    )
    return ForecastRecords(df=df, source={"synthetic": True, "seed": seed, "clamp_eps": clamp_eps})


def seasonal_summary(trace: pd.DataFrame, dates) -> pd.DataFrame:
    """
    Sum of log capital increments per calendar month.

    Args:
        trace (pd.DataFrame): Game trace with a `logK_pi` column, one row per round.
        dates: Dates of the same rounds.

    Returns:
        pd.DataFrame: Columns `month`, `rounds` and `log_capital_change`.
    """
    dates = pd.to_datetime(pd.Series(np.asarray(dates)))
    if len(dates) != len(trace):
        raise ValueError(f"Got {len(dates)} dates for {len(trace)} rounds")
    if dates.isna().any():
        raise DataError("Seasonal summary needs a date for every round")

    increments = trace.logK_pi.diff().fillna(trace.logK_pi).to_numpy()
    frame = pd.DataFrame({"month": dates.dt.month.to_numpy(), "increment": increments})

    summary = frame.groupby("month").increment.agg(["size", "sum"]).reset_index()
    summary.columns = ["month", "rounds", "log_capital_change"]
    return summary

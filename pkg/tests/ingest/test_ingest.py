import pytest
import numpy as np
import pandas as pd

from skeptic.errors import DataError, BinningWarning
from skeptic.ingest.structures import ForecastRecords, CalibrationTable
from skeptic.ingest.tools import (
    JMA_TABLE,
    clamp,
    load_csv,
    jma_table,
    synth_from_table,
    seasonal_summary,
    calibration_table,
)

TEST_CSV_PATH = "tests/resources/forecasts.csv"
DECIMAL_CSV_PATH = "tests/resources/decimal_forecasts.csv"
MALFORMED_CSV_PATH = "tests/resources/malformed.csv"
EMPTY_CSV_PATH = "tests/resources/empty.csv"


@pytest.fixture
def records():
    return load_csv(TEST_CSV_PATH)


def test_load_csv(records):
    assert len(records) == 10
    assert records.extras == ["temp"]
    assert records.df.date.iloc[0] == pd.Timestamp("2009-01-01")
    assert records.df.p.iloc[3] == 0.5


def test_boundary_forecasts_are_clamped(records):
    df = records.df
    assert df.p[df.p_percent == 0].tolist() == [0.01]
    assert df.p[df.p_percent == 100].tolist() == [0.99]

    interior = df[(df.p_percent > 0) & (df.p_percent < 100)]
    assert np.allclose(interior.p, interior.p_percent / 100)


def test_custom_clamp():
    assert clamp([0, 50, 100], clamp_eps=0.05) == pytest.approx([0.05, 0.5, 0.95])
    with pytest.raises(ValueError):
        clamp([0], clamp_eps=0.0)


def test_decimal_forecasts_are_binned():
    with pytest.warns(BinningWarning):
        records = load_csv(DECIMAL_CSV_PATH)
    assert records.df.p_percent.tolist() == [10, 50, 90, 0]
    assert records.df.p.tolist() == [0.12, 0.5, 0.87, 0.01]


def test_malformed_rows_report_line_numbers():
    with pytest.raises(DataError) as info:
        load_csv(MALFORMED_CSV_PATH)
    assert info.value.lines == [5]


def test_bad_outcome(tmp_path):
    path = tmp_path / "outcomes.csv"
    path.write_text("date,p,x\n2009-01-01,10,0\n2009-01-02,20,2\n2009-01-03,30,1\n")
    with pytest.raises(DataError) as info:
        load_csv(path)
    assert info.value.lines == [3]


def test_bad_dates(tmp_path):
    path = tmp_path / "dates.csv"
    path.write_text("date,p,x\n2009-01-01,10,0\nyesterday,20,1\n")
    with pytest.raises(DataError) as info:
        load_csv(path)
    assert info.value.lines == [3]


def test_missing_column(tmp_path):
    path = tmp_path / "columns.csv"
    path.write_text("date,p\n2009-01-01,10\n")
    with pytest.raises(DataError):
        load_csv(path)


def test_empty_file():
    with pytest.raises(DataError):
        load_csv(EMPTY_CSV_PATH)


def test_calibration_table_of_a_single_row():
    df = pd.DataFrame({"p_percent": [50], "p": [0.5], "x": [1]})
    table = calibration_table(df)
    assert table.df.loc[50, "ratio"] == 1.0
    assert table.size == 1


def test_calibration_keeps_boundary_bins(records):
    table = calibration_table(records)
    assert 0 in table.df.index
    assert 100 in table.df.index
    assert table.size == len(records)


def test_jma_table():
    table = jma_table()
    assert len(table.df) == 11
    assert table.df.rainy.sum() == 293
    assert table.df.dry.sum() == 803
    assert table.size == 1096

    assert table.df.loc[20, "rainy"] == 24
    assert table.df.loc[20, "dry"] == 193
    assert round(100 * table.df.loc[20, "ratio"], 1) == 11.1
    assert round(100 * table.df.loc[90, "ratio"], 1) == 95.7
    assert round(100 * table.df.loc[70, "ratio"], 1) == 83.7


def test_synthetic_series_reproduces_the_table():
    table = jma_table()
    records = synth_from_table(table, seed=3)

    assert len(records) == 1096
    assert records.df.x.sum() == 293
    assert calibration_table(records).equals(table)
    assert records.df.date.iloc[0] == pd.Timestamp("2009-01-01")


def test_synthetic_series_seeds_shuffle():
    table = jma_table()
    first = synth_from_table(table, seed=1).df
    second = synth_from_table(table, seed=2).df

    assert not first.x.equals(second.x)
    pairs = sorted(zip(first.p_percent, first.x))
    assert pairs == sorted(zip(second.p_percent, second.x))


def test_table_from_counts_drops_empty_bins():
    table = CalibrationTable.from_counts({10: (0, 0), 20: (1, 3)})
    assert table.df.index.tolist() == [20]
    with pytest.raises(ValueError):
        CalibrationTable.from_counts({10: (-1, 2)})


def test_records_validation():
    df = pd.DataFrame({"date": [pd.NaT], "p_percent": [0], "p": [0.0], "x": [1]})
    with pytest.raises(ValueError):
        ForecastRecords(df=df)


def test_seasonal_summary(records):
    trace = pd.DataFrame({"logK_pi": np.arange(1, 11, dtype=float)})
    summary = seasonal_summary(trace, records.dates)

    assert summary.month.tolist() == [1, 2]
    assert summary.rounds.tolist() == [6, 4]
    assert summary.log_capital_change.sum() == pytest.approx(10.0)
    assert summary.log_capital_change.tolist() == pytest.approx([6.0, 4.0])


def test_jma_counts_are_table_one():
    assert sum(rainy for rainy, _ in JMA_TABLE.values()) == 293
    assert sum(dry for _, dry in JMA_TABLE.values()) == 803

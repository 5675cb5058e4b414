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

__all__ = [
    "ForecastRecords",
    "CalibrationTable",
    "JMA_TABLE",
    "clamp",
    "load_csv",
    "jma_table",
    "synth_from_table",
    "seasonal_summary",
    "calibration_table",
]

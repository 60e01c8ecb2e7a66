"""Delimited time-series output: one row per diagnostics record.

The header is fixed; every value is written with 17 significant digits so a
read-back reproduces the double exactly.  Rows are flushed as they are
written, so the file is complete up to the last finished record even if the
producing run stops abruptly.
"""

from __future__ import annotations

import numpy as np

from .diagnostics import DiagnosticsRecord
from .errors import FormatError

CSV_COLUMNS = (
    "t",
    "E_total",
    "D_diss",
    "X_m",
    "tildeH_m",
    "Y_m",
    "Ybar_m",
    "F_m",
    "Z_m",
    "E_mod",
    "E_sigma",
    "D_rate",
    "mc_norm",
    "min_density",
    "u_L2",
    "h_L2",
    "h_Hneg_half",
    "u_Hneg_s",
    "h_Hneg_s",
    "h_Hneg_caseA",
    "u_Hneg_caseA",
    "neg_cross",
    "caseA_cross",
    "dt_used",
)


def format_value(x: float) -> str:
    if x != x:
        return "nan"
    return "%.17g" % x


def record_row(rec: DiagnosticsRecord) -> str:
    return ",".join(format_value(getattr(rec, name)) for name in CSV_COLUMNS)


class SeriesWriter:
    """Incremental CSV writer; header goes out at open time."""

    def __init__(self, path: str):
        self.path = path
        self._fh = open(path, "w", encoding="utf-8", newline="")
        self._fh.write(",".join(CSV_COLUMNS) + "\n")
        self._fh.flush()
        self.rows = 0

    def write_record(self, rec: DiagnosticsRecord) -> None:
        self._fh.write(record_row(rec) + "\n")
        self._fh.flush()
        self.rows += 1

    def close(self) -> None:
        if not self._fh.closed:
            self._fh.close()

    def __enter__(self) -> "SeriesWriter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def read_series(path: str) -> dict[str, np.ndarray]:
    """Load a series file into column arrays; header must match exactly."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header.split(",") != list(CSV_COLUMNS):
            raise FormatError(f"unexpected series header in '{path}'")
        rows = []
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != len(CSV_COLUMNS):
                raise FormatError(f"'{path}' line {lineno}: expected {len(CSV_COLUMNS)} fields")
            try:
                rows.append([float(p) for p in parts])
            except ValueError:
                raise FormatError(f"'{path}' line {lineno}: non-numeric field") from None
    data = np.array(rows, dtype=np.float64).reshape(len(rows), len(CSV_COLUMNS))
    return {name: data[:, i] for i, name in enumerate(CSV_COLUMNS)}

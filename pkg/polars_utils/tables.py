"""
Tabular output: polars DataFrames for constants tables, region scans and
verification reports, rendered as CSV or JSON with floats rounded to
SIGNIFICANT_DIGITS significant digits so repeated runs are byte-identical.
"""

import json
import math
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

import polars as pl

from ..core.errors import InvalidParameterError
from ..formulas.positivity import positivity_constants

SIGNIFICANT_DIGITS = 12
FORMATS = ("csv", "json")

Record = Dict[str, Any]


def round_significant(value: Optional[float], digits: int = SIGNIFICANT_DIGITS) -> Optional[float]:
    if value is None or not math.isfinite(value):
        return value
    rounded = float(f"{value:.{digits}g}")
    return rounded + 0.0  # no negative zero


def _round_record(record: Record) -> Record:
    return {
        key: round_significant(value) if isinstance(value, float) else value
        for key, value in record.items()
    }


def round_frame(frame: pl.DataFrame) -> pl.DataFrame:
    float_columns = [name for name, dtype in frame.schema.items() if dtype in (pl.Float32, pl.Float64)]
    if not float_columns:
        return frame
    return frame.with_columns(
        [
            pl.col(name).map_elements(round_significant, return_dtype=pl.Float64)
            for name in float_columns
        ]
    )


def records_frame(records: Sequence[Record]) -> pl.DataFrame:
    return pl.DataFrame([_round_record(r) for r in records], infer_schema_length=None)


def constants_table(n_min: int, n_max: int, c_list: Iterable[float] = ()) -> pl.DataFrame:
    """
    Rows n, r, a, b, d, C for n_min..n_max, plus one K_<c> column per c in
    c_list (null where K is undefined).

    Raises:
        InvalidParameterError: unless 2 <= n_min <= n_max
    """
    if int(n_min) != n_min or int(n_max) != n_max or not 2 <= n_min <= n_max:
        raise InvalidParameterError(f"need integers 2 <= n_min <= n_max, got {n_min}..{n_max}")
    c_list = [float(c) for c in c_list]
    schema: Dict[str, Any] = {
        "n": pl.Int64,
        "r": pl.Int64,
        "a": pl.Int64,
        "b": pl.Int64,
        "d": pl.Int64,
        "C": pl.Float64,
    }
    schema.update({f"K_{c:g}": pl.Float64 for c in c_list})

    rows: List[Record] = []
    for n in range(int(n_min), int(n_max) + 1):
        constants = positivity_constants(n)
        row: Record = {
            "n": n,
            "r": constants.r,
            "a": constants.a,
            "b": constants.b,
            "d": constants.d,
            "C": constants.C,
        }
        for c in c_list:
            row[f"K_{c:g}"] = constants.K(c)
        rows.append(_round_record(row))
    return pl.DataFrame(rows, schema=schema)


def _json_default(value):
    # numpy scalars leak in from computed records
    if hasattr(value, "item"):
        return value.item()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def render(data: Union[pl.DataFrame, Record, Sequence[Record]], fmt: str = "csv") -> str:
    """
    Render a frame, a flat record or a list of records.

    Raises:
        InvalidParameterError: for an unknown format
    """
    if fmt not in FORMATS:
        raise InvalidParameterError(f"unknown format {fmt!r}; expected csv or json")
    if isinstance(data, pl.DataFrame):
        frame = round_frame(data)
        if fmt == "csv":
            return frame.write_csv()
        return json.dumps(frame.to_dicts(), sort_keys=True, indent=2, default=_json_default) + "\n"

    if isinstance(data, dict):
        if fmt == "csv":
            return records_frame([data]).write_csv()
        return json.dumps(_round_record(data), sort_keys=True, indent=2, default=_json_default) + "\n"

    records = [_round_record(r) for r in data]
    if fmt == "csv":
        return records_frame(records).write_csv()
    return json.dumps(records, sort_keys=True, indent=2, default=_json_default) + "\n"

"""Result tables and their serialized forms.

A :class:`ResultTable` is a set of equal-length named columns plus a metadata
block that echoes the run configuration byte for byte.  Two formats are
written:

csv
    RFC 4180: a header row, CRLF line endings, minimal quoting.  Floats are
    rendered as their shortest round-trip decimal, so parsing a cell back
    with :func:`float` recovers the exact bits.  The metadata and the column
    types travel in a sidecar ``<path>.meta.json``, since the csv body has
    nowhere to put them.

json
    A single object ``{"metadata": ..., "columns": ...}``.  NaN cells become
    ``null`` (strict JSON has no NaN); the csv form keeps the literal ``nan``.

Writes are idempotent: emitting the same table twice produces identical
bytes, and a json -> csv -> json round trip through :func:`load_table`
preserves every value and the metadata exactly.
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass, field

__all__ = ["ResultTable", "column_types", "load_table", "write_table"]


@dataclass
class ResultTable:
    """Named columns of equal length plus a metadata block."""

    columns: dict[str, list]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        lengths = {name: len(col) for name, col in self.columns.items()}
        if len(set(lengths.values())) > 1:
            raise ValueError(f"ragged columns: {lengths}")

    @property
    def n_rows(self) -> int:
        for col in self.columns.values():
            return len(col)
        return 0

    def row(self, i: int) -> dict:
        return {name: col[i] for name, col in self.columns.items()}


def _column_type(name: str, values: list) -> str:
    """Classify a column as int, float, or str.

    ``None`` marks a missing float (it serializes as JSON null / csv nan).
    A column of ints stays int only when every entry is an int; one float
    promotes the whole column.
    """
    has_float = False
    has_int = False
    has_str = False
    for v in values:
        if v is None:
            has_float = True
        elif isinstance(v, bool):
            raise TypeError(f"column {name!r} holds a bool; use 0/1 or a string")
        elif isinstance(v, float):
            has_float = True
        elif isinstance(v, int):
            has_int = True
        elif isinstance(v, str):
            has_str = True
        else:
            raise TypeError(f"column {name!r} holds {type(v).__name__}")
    if has_str:
        if has_float or has_int:
            raise TypeError(f"column {name!r} mixes strings and numbers")
        return "str"
    if has_float:
        return "float"
    if has_int:
        return "int"
    return "float"  # empty column: floats are the common case


def column_types(table: ResultTable) -> dict[str, str]:
    return {name: _column_type(name, col) for name, col in table.columns.items()}


def _csv_cell(value, kind: str) -> str:
    if kind == "str":
        return value
    if kind == "int":
        return str(value)
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "nan"
    return repr(float(value))


def _json_cell(value, kind: str):
    if kind == "float":
        if value is None:
            return None
        v = float(value)
        return None if math.isnan(v) else v
    return value


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _meta_path(path: str) -> str:
    return path + ".meta.json"


def write_table(table: ResultTable, path: str, fmt: str) -> None:
    """Write ``table`` to ``path`` in the requested format.

    The csv form also writes the ``<path>.meta.json`` sidecar.  Parent
    directories are created as needed.
    """
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    types = column_types(table)

    if fmt == "json":
        payload = {
            "metadata": table.metadata,
            "columns": {
                name: [_json_cell(v, types[name]) for v in col]
                for name, col in table.columns.items()
            },
        }
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(_dump_json(payload))
        return

    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(table.columns)
        for i in range(table.n_rows):
            writer.writerow(
                _csv_cell(col[i], types[name])
                for name, col in table.columns.items()
            )
    with open(_meta_path(path), "w", encoding="utf-8", newline="") as fh:
        fh.write(_dump_json({"metadata": table.metadata, "column_types": types}))


def _parse_csv_cell(text: str, kind: str):
    if kind == "str":
        return text
    if kind == "int":
        return int(text)
    value = float(text)
    return None if math.isnan(value) else value


def load_table(path: str) -> ResultTable:
    """Read a table previously written by :func:`write_table`.

    Format is inferred from the extension: ``.json`` is the single-object
    form, anything else is csv with its metadata sidecar.
    """
    if path.endswith(".json"):
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        columns = {}
        for name, values in payload["columns"].items():
            kinds = {type(v) for v in values}
            if float in kinds or type(None) in kinds:
                col = [None if v is None else float(v) for v in values]
            else:
                col = list(values)
            columns[name] = col
        return ResultTable(columns=columns, metadata=payload["metadata"])

    with open(_meta_path(path), "r", encoding="utf-8") as fh:
        side = json.load(fh)
    types = side["column_types"]
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        columns = {name: [] for name in header}
        for row in reader:
            for name, cell in zip(header, row):
                columns[name].append(_parse_csv_cell(cell, types[name]))
    return ResultTable(columns=columns, metadata=side["metadata"])

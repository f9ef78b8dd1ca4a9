"""Deterministic document emission.

Floats print with 17 significant digits (round-trippable for binary64), JSON
keys keep insertion order, CSV rows follow the documented column order, so
identical invocations produce byte-identical output.
"""
from __future__ import annotations

import math


def format_float(x: float) -> str:
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if x == 0.0:
            return "0"  # avoid the signed-zero "-0"
        return format(x, ".17g")
    return str(x)


def _json_scalar(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return f'"{format_float(value)}"'
        return format_float(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        out = value.replace("\\", "\\\\").replace('"', '\\"')
        out = out.replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t")
        return f'"{out}"'
    raise TypeError(f"cannot emit {type(value).__name__} as JSON")


def _json_value(value, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = [f'{inner}{_json_scalar(str(k))}: {_json_value(v, indent + 1)}'
                 for k, v in value.items()]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        parts = [f"{inner}{_json_value(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    return _json_scalar(value)


def to_json_bytes(document) -> bytes:
    return (_json_value(document, 0) + "\n").encode("utf-8")


def to_csv_bytes(columns, rows) -> bytes:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(format_float(cell) for cell in row))
    return ("\n".join(lines) + "\n").encode("utf-8")


def emit(document, fmt: str) -> bytes:
    """Serialize a command document; csv requires a tabular document with
    'columns' and 'rows' keys."""
    if fmt == "json":
        return to_json_bytes(document)
    if fmt == "csv":
        if not (isinstance(document, dict) and "columns" in document and "rows" in document):
            raise TypeError("csv output needs a tabular document")
        return to_csv_bytes(document["columns"], document["rows"])
    raise ValueError(f"unknown output format {fmt!r}")

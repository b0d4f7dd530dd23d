"""Tabular (csv, markdown) and lossless (json) reports of component records.

Tables carry one row per component in record order followed by Average,
Median and StDev (population) rows over the components where a column is
defined.  Undefined entries print as ``n/a``, entries that were never
computed (no ground truth) print empty.  ``eps_*@lmax`` columns divide by
lambda_max; the per-cycle ``eps_*(L)`` columns divide by the true
lambda(L).  Timings are never written, so reports of identical runs are
byte-identical.
"""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import statistics
import types
import typing
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional, Union

from .harness import ComponentRecord

__all__ = ["COLUMNS", "FORMATS", "Column", "aggregate_rows", "emit_report", "load_report", "table_rows"]

FORMATS = ("csv", "markdown", "json")

NA = "n/a"


@dataclass(frozen=True)
class Column:
    name: str
    kind: str  # label, int, weight, mean, pct, ratio, text
    get: Callable[[ComponentRecord], Any]
    aggregate: bool = True


def _ext(field_name: str, attr: str):
    def get(r: ComponentRecord):
        if r.extremes is None:
            return None
        return getattr(getattr(r.extremes, field_name), attr)
    return get


def _metric(block: str, attr: str):
    def get(r: ComponentRecord):
        b = getattr(r, block)
        return None if b is None else _undefined(getattr(b, attr))
    return get


class _Undefined:
    """Computed but mathematically undefined (prints ``n/a``)."""

    def __repr__(self) -> str:
        return NA


UNDEFINED = _Undefined()


def _undefined(x):
    return UNDEFINED if x is None else x


def _est(attr: str):
    def get(r: ComponentRecord):
        return None if r.estimates is None else getattr(r.estimates, attr)
    return get


def _on_complete(get):
    def wrapped(r: ComponentRecord):
        return get(r) if r.enumeration == "complete" else None
    return wrapped


def _rho(r: ComponentRecord):
    return None if r.bounds is None else _undefined(r.bounds.rho)


def _delta(r: ComponentRecord):
    return None if r.estimates is None else _undefined(r.estimates.delta)


COLUMNS: tuple[Column, ...] = (
    Column("graph", "label", lambda r: r.graph, False),
    Column("scc", "label", lambda r: r.component, False),
    Column("n", "int", lambda r: r.n),
    Column("m", "int", lambda r: r.m),
    Column("w_min", "weight", lambda r: r.w_min),
    Column("w_max", "weight", lambda r: r.w_max),
    Column("w_avg", "mean", lambda r: r.w_avg),
    Column("lambda_min", "mean", lambda r: r.lambda_min),
    Column("lambda_max", "mean", lambda r: r.lambda_max),
    Column("lambda_avg", "mean", _est("lambda_avg")),
    Column("lambda_geo", "mean", _est("lambda_geo")),
    Column("eps_avg@lmax", "pct", lambda r: r.eps_avg_lmax),
    Column("eps_geo@lmax", "pct", lambda r: r.eps_geo_lmax),
    Column("rho", "ratio", _rho),
    Column("delta", "ratio", _delta),
    Column("w(C_min)", "weight", lambda r: None if r.bounds is None else r.bounds.critical_min.max_weight),
    Column("|C_min|", "int", lambda r: None if r.bounds is None else r.bounds.critical_min.max_length),
    Column("w(C_max)", "weight", lambda r: None if r.bounds is None else r.bounds.critical_max.max_weight),
    Column("|C_max|", "int", lambda r: None if r.bounds is None else r.bounds.critical_max.max_length),
    Column("critical", "text", lambda r: None if r.bounds is None else
           ("truncated" if r.bounds.critical_min.truncated or r.bounds.critical_max.truncated else "complete"),
           False),
    Column("enumeration", "text", lambda r: r.enumeration, False),
    Column("cycles", "int", lambda r: None if r.extremes is None else r.extremes.cycle_count),
    Column("w(L_w)", "weight", _on_complete(_ext("max_weight", "weight"))),
    Column("|L_w|", "int", _on_complete(_ext("max_weight", "length"))),
    Column("lambda(L_w)", "mean", _on_complete(_ext("max_weight", "mean"))),
    Column("w(L_l)", "weight", _on_complete(_ext("max_length", "weight"))),
    Column("|L_l|", "int", _on_complete(_ext("max_length", "length"))),
    Column("lambda(L_l)", "mean", _on_complete(_ext("max_length", "mean"))),
    Column("D_w(L_w)", "pct", _metric("bound_errors", "w_lw")),
    Column("D_|L_w|", "pct", _metric("bound_errors", "len_lw")),
    Column("D_w(L_l)", "pct", _metric("bound_errors", "w_ll")),
    Column("D_|L_l|", "pct", _metric("bound_errors", "len_ll")),
    Column("eps_avg(L_w)", "pct", _metric("heuristic_errors", "avg_lw")),
    Column("eps_geo(L_w)", "pct", _metric("heuristic_errors", "geo_lw")),
    Column("eps_avg(L_l)", "pct", _metric("heuristic_errors", "avg_ll")),
    Column("eps_geo(L_l)", "pct", _metric("heuristic_errors", "geo_ll")),
    Column("violations", "int", lambda r: len(r.violations) if r.enumeration == "complete" else None),
    Column("error", "text", lambda r: r.error, False),
)

_DECIMALS = {"weight": 2, "mean": 2, "int": 2, "pct": 1, "ratio": 3}


def _fmt(value: Any, kind: str, aggregate: bool = False) -> str:
    if value is None:
        return ""
    if value is UNDEFINED:
        return NA
    if kind in ("label", "text"):
        return str(value)
    if not aggregate and isinstance(value, int) and kind in ("int", "weight"):
        return str(value)
    if kind == "pct":
        return f"{float(value):.1f}%"
    if isinstance(value, Fraction):
        # exact rounding; float conversion could misround a half-way value
        q = 10 ** _DECIMALS[kind]
        scaled = round(value * q)
        sign = "-" if scaled < 0 else ""
        whole, frac = divmod(abs(scaled), q)
        return f"{sign}{whole}.{frac:0{_DECIMALS[kind]}d}"
    return f"{float(value):.{_DECIMALS[kind]}f}"


def _numeric(values: list[Any]) -> list[float]:
    return [float(v) for v in values if v is not None and v is not UNDEFINED]


def aggregate_rows(records: list[ComponentRecord]) -> list[tuple[str, list[Optional[float]]]]:
    """(label, per-column value) for Average, Median and StDev (population).

    Values are ``None`` for label columns and for columns defined on no
    component.
    """
    stats = (("Average", statistics.fmean), ("Median", statistics.median), ("StDev", statistics.pstdev))
    out = []
    for label, fn in stats:
        row: list[Optional[float]] = []
        for col in COLUMNS:
            vals = _numeric([col.get(r) for r in records]) if col.aggregate else []
            row.append(fn(vals) if vals else None)
        out.append((label, row))
    return out


def table_rows(records: list[ComponentRecord]) -> list[list[str]]:
    """Header plus formatted rows, aggregates included when records exist."""
    rows = [[c.name for c in COLUMNS]]
    for r in records:
        rows.append([_fmt(c.get(r), c.kind) for c in COLUMNS])
    if records:
        for label, values in aggregate_rows(records):
            row = []
            for i, (c, v) in enumerate(zip(COLUMNS, values)):
                if i == 0:
                    row.append(label)
                elif v is None:
                    row.append("")
                else:
                    row.append(_fmt(v, c.kind, aggregate=True))
            rows.append(row)
    return rows


def _meta_lines(meta: Optional[dict], prefix: str, suffix: str = "") -> str:
    if not meta:
        return ""
    return "".join(f"{prefix}{k}: {meta[k]}{suffix}\n" for k in sorted(meta))


def emit_report(records: list[ComponentRecord], fmt: str = "csv", meta: Optional[dict] = None) -> bytes:
    if fmt == "md":
        fmt = "markdown"
    if fmt not in FORMATS:
        raise ValueError(f"unknown report format {fmt!r}; expected one of {FORMATS}")
    if fmt == "json":
        doc = {"meta": meta or {}, "records": [_encode(r) for r in records]}
        return (json.dumps(doc, indent=2, sort_keys=False) + "\n").encode("utf-8")
    rows = table_rows(records)
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(_meta_lines(meta, "# "))
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue().encode("utf-8")
    lines = [_meta_lines(meta, "<!-- ", " -->")]
    rows = [[cell.replace("|", "\\|") for cell in row] for row in rows]
    header, body = rows[0], rows[1:]
    lines.append("| " + " | ".join(header) + " |\n")
    lines.append("|" + "|".join("---" for _ in header) + "|\n")
    for row in body:
        lines.append("| " + " | ".join(row) + " |\n")
    return "".join(lines).encode("utf-8")


# JSON codec: Fractions become "p/q" strings, tuples become lists, and
# decoding is driven by the dataclass type hints.


def _encode(obj: Any) -> Any:
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _encode(getattr(obj, f.name)) for f in dataclasses.fields(obj) if f.compare}
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (list, tuple)):
        return [_encode(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _encode(v) for k, v in obj.items()}
    return obj


def _decode(value: Any, hint: Any) -> Any:
    if value is None:
        return None
    origin = typing.get_origin(hint)
    if origin in (Union, types.UnionType):
        args = [a for a in typing.get_args(hint) if a is not type(None)]
        if isinstance(value, str) and Fraction in args:
            return Fraction(value)
        for a in args:
            if a is Fraction:
                continue
            if dataclasses.is_dataclass(a) or typing.get_origin(a) is not None:
                return _decode(value, a)
            if isinstance(value, a):
                return value
        return value
    if hint is Fraction:
        return Fraction(value)
    if origin is tuple:
        args = typing.get_args(hint)
        if len(args) == 2 and args[1] is Ellipsis:
            return tuple(_decode(v, args[0]) for v in value)
        return tuple(_decode(v, a) for v, a in zip(value, args))
    if dataclasses.is_dataclass(hint):
        hints = typing.get_type_hints(hint)
        kwargs = {
            f.name: _decode(value[f.name], hints[f.name])
            for f in dataclasses.fields(hint)
            if f.compare and f.name in value
        }
        return hint(**kwargs)
    return value


def load_report(data: Union[str, bytes]) -> tuple[list[ComponentRecord], dict]:
    """Inverse of ``emit_report(records, "json", meta)``."""
    doc = json.loads(data)
    return [_decode(r, ComponentRecord) for r in doc["records"]], doc.get("meta", {})

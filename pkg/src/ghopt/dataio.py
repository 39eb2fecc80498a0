"""Reading and writing interval datasets, solver traces and fit reports.

All floats are written with 17 significant digits so every value
re-parses to the same double.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from .interval import Interval, InvalidInterval
from .least_squares import FitResult, IntervalDataset, ModelSpec, error_eval, model_eval
from .solver import SolveTrace

__all__ = [
    "DATASET_HEADER",
    "TRACE_FORMATS",
    "ParseError",
    "IoError",
    "parse_interval_csv",
    "write_interval_csv",
    "shipped_dataset",
    "emit_trace",
    "BandRow",
    "FitReport",
    "band_row",
    "build_fit_report",
    "emit_fit_report",
]

DATASET_HEADER = ("x_lo", "x_hi", "y_lo", "y_hi")
TRACE_FORMATS = ("csv", "json")

_NUMERAL = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")

SHIPPED = {
    "poly": "polynomial_fit.csv",
    "logistic": "logistic_fit.csv",
}


class ParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class IoError(OSError):
    pass


def _num(v: float) -> str:
    return format(float(v), ".17g")


def _parse_numeral(text: str, line: int) -> float:
    text = text.strip()
    if not _NUMERAL.fullmatch(text):
        raise ParseError(f"not a decimal numeral: {text!r}", line)
    return float(text)


def parse_interval_csv(path) -> IntervalDataset:
    """Read rows ``x_lo,x_hi,y_lo,y_hi`` after a mandatory header.

    Blank lines are skipped. Malformed lines raise :class:`ParseError`;
    reversed endpoints raise :class:`InvalidInterval`. Both name the line.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8-sig")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not UTF-8", 1) from exc

    rows = []
    header_seen = False
    for lineno, fields in enumerate(csv.reader(text.splitlines()), start=1):
        if not fields or all(not f.strip() for f in fields):
            continue
        if not header_seen:
            if tuple(f.strip() for f in fields) != DATASET_HEADER:
                raise ParseError(f"expected header {','.join(DATASET_HEADER)}", lineno)
            header_seen = True
            continue
        if len(fields) != 4:
            raise ParseError(f"expected 4 fields, got {len(fields)}", lineno)
        xl, xh, yl, yh = (_parse_numeral(f, lineno) for f in fields)
        try:
            rows.append((Interval(xl, xh), Interval(yl, yh)))
        except InvalidInterval as exc:
            raise InvalidInterval(f"line {lineno}: {exc}") from None
    if not header_seen:
        raise ParseError(f"{path} is empty", 1)
    if not rows:
        raise ParseError(f"{path} has a header but no data rows", 2)
    return IntervalDataset(tuple(rows))


def write_interval_csv(data: IntervalDataset, path) -> None:
    path = Path(path)
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(DATASET_HEADER)
            for x, y in data.rows:
                w.writerow([_num(x.lo), _num(x.hi), _num(y.lo), _num(y.hi)])
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror or exc}") from exc


def shipped_dataset(model: str) -> IntervalDataset:
    """One of the bundled datasets: ``"poly"`` (21 rows) or ``"logistic"`` (15 rows)."""
    try:
        name = SHIPPED[model]
    except KeyError:
        raise KeyError(f"no shipped dataset for {model!r}; choose from {sorted(SHIPPED)}") from None
    with resources.as_file(resources.files("ghopt") / "data" / name) as p:
        return parse_interval_csv(p)


def _trace_rows(trace: SolveTrace) -> List[dict]:
    out = []
    for rec in trace.iterations:
        out.append(
            {
                "k": rec.k,
                "x": [float(v) for v in rec.x],
                "F_lo": rec.value.lo,
                "F_hi": rec.value.hi,
                "alpha": float(rec.alpha),
                "grad_norm": rec.grad_norm,
                "nondomination_ok": rec.nondomination_ok,
            }
        )
    return out


def _open_for_write(path: Path):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        return path.open("w", newline="", encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror or exc}") from exc


def emit_trace(trace: SolveTrace, fmt: str, path) -> Path:
    """Write one row per iterate.

    CSV columns are ``k,x1..xn,F_lo,F_hi,alpha,grad_norm,nondomination_ok``;
    the flag is blank on the terminal row. JSON is a list of objects with
    the same keys, ``x`` as a list.
    """
    if fmt not in TRACE_FORMATS:
        raise ValueError(f"format must be one of {TRACE_FORMATS}, got {fmt!r}")
    path = Path(path)
    rows = _trace_rows(trace)
    with _open_for_write(path) as fh:
        if fmt == "json":
            json.dump(rows, fh, indent=1)
            fh.write("\n")
            return path
        n = len(rows[0]["x"]) if rows else 0
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", *(f"x{i + 1}" for i in range(n)), "F_lo", "F_hi", "alpha", "grad_norm", "nondomination_ok"])
        for r in rows:
            flag = r["nondomination_ok"]
            w.writerow(
                [r["k"], *(_num(v) for v in r["x"]), _num(r["F_lo"]), _num(r["F_hi"]),
                 _num(r["alpha"]), _num(r["grad_norm"]), "" if flag is None else str(flag).lower()]
            )
    return path


@dataclass(frozen=True)
class BandRow:
    """Observed band ``y`` against fitted band ``h`` for one data row.

    ``overlap`` is their intersection (``None`` if disjoint). The four
    excess pieces are the parts of ``y`` below/above ``h`` and of ``h``
    below/above ``y``; missing pieces are ``None``. Pieces are closed, so
    neighbours share an endpoint.
    """

    k: int
    x: Interval
    y: Interval
    h: Interval
    overlap: Optional[Interval]
    y_below: Optional[Interval]
    y_above: Optional[Interval]
    h_below: Optional[Interval]
    h_above: Optional[Interval]

    def pieces_of_y(self) -> List[Interval]:
        return [p for p in (self.y_below, self.overlap, self.y_above) if p is not None]

    def pieces_of_h(self) -> List[Interval]:
        return [p for p in (self.h_below, self.overlap, self.h_above) if p is not None]


def _excess(a: Interval, b: Interval):
    below = Interval(a.lo, min(a.hi, b.lo)) if a.lo < b.lo else None
    above = Interval(max(a.lo, b.hi), a.hi) if a.hi > b.hi else None
    return below, above


def band_row(k: int, x: Interval, y: Interval, h: Interval) -> BandRow:
    lo, hi = max(y.lo, h.lo), min(y.hi, h.hi)
    overlap = Interval(lo, hi) if lo <= hi else None
    y_below, y_above = _excess(y, h)
    h_below, h_above = _excess(h, y)
    return BandRow(k, x, y, h, overlap, y_below, y_above, h_below, h_above)


@dataclass(frozen=True)
class FitReport:
    model: ModelSpec
    w: float
    beta_hat: np.ndarray
    n_iter: int
    status: str
    error: Interval
    rows: Sequence[BandRow]

    def summary(self) -> dict:
        return {
            "model": self.model.kind.value,
            "c": [self.model.c.lo, self.model.c.hi],
            "w": self.w,
            "beta_hat": [float(b) for b in self.beta_hat],
            "iterations": self.n_iter,
            "status": self.status,
            "error": [self.error.lo, self.error.hi],
        }


def build_fit_report(m: ModelSpec, data: IntervalDataset, w: float, result: FitResult) -> FitReport:
    beta = result.beta_hat
    rows = [
        band_row(k, x, y, model_eval(m, x, beta))
        for k, (x, y) in enumerate(data.rows, start=1)
    ]
    return FitReport(
        m, w, np.array(beta), result.trace.n_iter, result.trace.status.value,
        error_eval(m, data, beta), tuple(rows),
    )


_BAND_FIELDS = ("x", "y", "h", "overlap", "y_below", "y_above", "h_below", "h_above")


def _band_header() -> List[str]:
    return ["k"] + [f"{f}_{end}" for f in _BAND_FIELDS for end in ("lo", "hi")]


def emit_fit_report(report: FitReport, fmt: str, path) -> Path:
    """Write the summary and per-row bands.

    JSON holds everything in one object. CSV holds only the band table, one
    row per data point, with empty cells for missing pieces; the summary
    goes to a sibling ``*.summary.json``.
    """
    if fmt not in TRACE_FORMATS:
        raise ValueError(f"format must be one of {TRACE_FORMATS}, got {fmt!r}")
    path = Path(path)

    def pair(iv):
        return None if iv is None else [iv.lo, iv.hi]

    if fmt == "json":
        doc = report.summary()
        doc["bands"] = [
            {"k": r.k, **{f: pair(getattr(r, f)) for f in _BAND_FIELDS}} for r in report.rows
        ]
        with _open_for_write(path) as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
        return path

    with _open_for_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(_band_header())
        for r in report.rows:
            cells = [r.k]
            for f in _BAND_FIELDS:
                iv = getattr(r, f)
                cells += ["", ""] if iv is None else [_num(iv.lo), _num(iv.hi)]
            w.writerow(cells)
    with _open_for_write(path.with_suffix(".summary.json")) as fh:
        json.dump(report.summary(), fh, indent=1)
        fh.write("\n")
    return path

"""Variety files and report serialization.

A variety file is JSON::

    {
      "name": "point12",
      "num_vars": 2,
      "generators": ["x1 - 2*x0"],
      "dimension": 0,                                  (optional)
      "oracle": {"type": "point", "data": [1, 2]}      (optional)
    }

``oracle.type`` is ``point`` (projective coordinates), ``mahler`` (a form in
the polynomial grammar; defaults to the single generator) or ``zero``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .estimation import HeightReport
from .hilbert import HilbertSample
from .ideal import VarietyInput
from .oracles import OracleValue, mahler_measure, weil_height_point
from .polynomial import PolynomialSyntaxError, parse_polynomial

__all__ = [
    "VarietyFileError",
    "VarietyFile",
    "load_variety",
    "parse_variety",
    "resolve_oracle",
    "CSV_COLUMNS",
    "samples_to_csv",
    "report_to_json",
]


class VarietyFileError(ValueError):
    pass


@dataclass(frozen=True)
class VarietyFile:
    variety: VarietyInput
    oracle: dict | None
    path: str = ""


def _locate(raw: str, gen: str) -> int | None:
    """1-based line of the JSON string literal ``gen`` inside ``raw``."""
    needle = json.dumps(gen)
    at = raw.find(needle)
    if at < 0:
        return None
    return raw.count("\n", 0, at) + 1


def parse_variety(raw: str, path: str = "<string>") -> VarietyFile:
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise VarietyFileError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise VarietyFileError(f"{path}: top level must be an object")
    nv = doc.get("num_vars")
    if not isinstance(nv, int) or nv < 1:
        raise VarietyFileError(f"{path}: num_vars must be a positive integer")
    gens = doc.get("generators", [])
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise VarietyFileError(f"{path}: generators must be a list of strings")
    polys = []
    for i, g in enumerate(gens):
        try:
            p = parse_polynomial(g, nv)
        except PolynomialSyntaxError as exc:
            line = _locate(raw, g)
            where = f"line {line}, " if line else ""
            raise VarietyFileError(
                f"{path}: {where}generator {i + 1}, column {exc.column}: {exc.message}"
            ) from None
        if p.is_zero():
            raise VarietyFileError(f"{path}: generator {i + 1} is zero")
        if not p.is_homogeneous():
            raise VarietyFileError(f"{path}: generator {i + 1} ({g!r}) is not homogeneous")
        polys.append(p)
    dim = doc.get("dimension")
    if dim is not None and (not isinstance(dim, int) or dim < 0):
        raise VarietyFileError(f"{path}: dimension must be a non-negative integer")
    oracle = doc.get("oracle")
    if oracle is not None:
        if not isinstance(oracle, dict) or oracle.get("type") not in ("point", "mahler", "zero"):
            raise VarietyFileError(f"{path}: oracle.type must be point, mahler or zero")
    V = VarietyInput(nv, tuple(polys), dim, str(doc.get("name", Path(path).stem)))
    return VarietyFile(V, oracle, path)


def load_variety(path: str | Path) -> VarietyFile:
    path = Path(path)
    try:
        raw = path.read_text()
    except OSError as exc:
        raise VarietyFileError(f"{path}: {exc.strerror}") from None
    return parse_variety(raw, str(path))


def resolve_oracle(entry: dict | None, V: VarietyInput, tol: float = 1e-9) -> OracleValue | None:
    if entry is None:
        return None
    kind = entry["type"]
    data = entry.get("data")
    if kind == "zero":
        return OracleValue(0.0, "closed-form")
    if kind == "point":
        if not data:
            raise VarietyFileError("point oracle needs coordinates in 'data'")
        return weil_height_point([str(x) for x in data])
    if data is None:
        if len(V.generators) != 1:
            raise VarietyFileError("mahler oracle needs 'data' unless there is exactly one generator")
        f = V.generators[0]
    else:
        f = parse_polynomial(str(data), V.num_vars)
    return mahler_measure(f, tol)


CSV_COLUMNS = [
    "D", "H_geom", "l", "m", "finite_log", "arch_lo", "arch_hi",
    "hnorm_lo", "hnorm_hi", "harith_1", "harith_inf", "norm_lo", "norm_hi",
]


def samples_to_csv(samples: Sequence[HilbertSample], normalized=None) -> str:
    extra = sorted(
        {k for s in samples for k in s.harith if k not in ("1", "inf")}, key=int
    )
    cols = CSV_COLUMNS[:11] + [f"harith_{k}" for k in extra] + CSV_COLUMNS[11:]
    norm = {v.D: v for v in (normalized or [])}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for s in samples:
        row = [s.D, s.h_geom, s.l, s.m, repr(s.finite_log), repr(s.arch.lower), repr(s.arch.upper),
               repr(s.hnorm_lo), repr(s.hnorm_hi)]
        for k in ["1", "inf"] + extra:
            row.append(repr(s.harith[k]) if k in s.harith else "")
        v = norm.get(s.D)
        row += [repr(v.lo), repr(v.hi)] if v else ["", ""]
        w.writerow(row)
    return buf.getvalue()


def report_to_json(report: HeightReport | dict, timestamp: str | None = None) -> str:
    doc = report.to_dict() if isinstance(report, HeightReport) else dict(report)
    if timestamp is not None:
        doc["timestamp"] = timestamp
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"

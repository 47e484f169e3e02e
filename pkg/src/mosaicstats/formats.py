"""Plain-text formats: point sets, PCF curves and spectra.

Every file starts with a ``#`` line holding a JSON object, followed by one
whitespace-separated pair of decimal numbers per line.
"""
from __future__ import annotations

import json
import math
import os
from typing import Any, Iterable, Tuple

import numpy as np

from .errors import ParseError
from .geometry import Domain, PointSet2D

__all__ = [
    "format_number",
    "dumps_columns",
    "parse_columns",
    "read_columns",
    "write_point_set",
    "read_point_set",
    "write_curve",
    "write_spectrum",
]


def format_number(x: float) -> str:
    """Shortest round-tripping positional decimal (never exponent notation)."""
    return np.format_float_positional(float(x), unique=True, trim="-")


def dumps_columns(header: dict, rows: Iterable[Tuple[float, float]]) -> str:
    lines = ["# " + json.dumps(header, sort_keys=True)]
    lines.extend(f"{format_number(a)} {format_number(b)}" for a, b in rows)
    return "\n".join(lines) + "\n"


def _write(path, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def parse_columns(data) -> Tuple[dict, np.ndarray, np.ndarray]:
    """Parse the two-column format from ``bytes`` or ``str``.

    Returns ``(header, values, line_numbers)``: the header dict (empty when
    the file has none), an ``(m, 2)`` float array and the 1-based source line
    of every row. Blank lines are skipped. Anything else raises
    :class:`ParseError`.
    """
    if isinstance(data, (bytes, bytearray)):
        try:
            data = bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"file is not valid UTF-8 text ({exc.reason})") from None
    header: dict = {}
    rows, linenos = [], []
    for lineno, line in enumerate(data.splitlines(), start=1):
        text = line.strip()
        if not text:
            continue
        if text.startswith("#"):
            if lineno != 1 or rows:
                raise ParseError("'#' header is only allowed on the first line", lineno)
            body = text[1:].strip()
            try:
                header = json.loads(body) if body else {}
            except ValueError as exc:
                raise ParseError(f"header is not valid JSON: {exc}", lineno) from None
            if not isinstance(header, dict):
                raise ParseError("header JSON must be an object", lineno)
            continue
        fields = text.split()
        if len(fields) != 2:
            raise ParseError(f"expected 2 numbers, found {len(fields)} fields", lineno)
        try:
            a, b = float(fields[0]), float(fields[1])
        except ValueError:
            raise ParseError(f"not a decimal number pair: {text[:60]!r}", lineno) from None
        if not (math.isfinite(a) and math.isfinite(b)):
            raise ParseError("coordinates must be finite", lineno)
        rows.append((a, b))
        linenos.append(lineno)
    values = np.array(rows, dtype=float).reshape(-1, 2)
    return header, values, np.array(linenos, dtype=int)


def read_columns(path):
    with open(path, "rb") as fh:
        return parse_columns(fh.read())


def write_point_set(path, ps: PointSet2D, extra: dict = None) -> None:
    """Write a point set with its label, domain and provenance in the header."""
    header = {k: _jsonable(v) for k, v in ps.metadata.items()}
    header.update(label=ps.label, n=len(ps), domain=ps.domain.to_dict())
    if extra:
        header.update(extra)
    _write(path, dumps_columns(header, ps.points.tolist()))


def read_point_set(path) -> PointSet2D:
    """Read a file carrying a ``domain`` header (as written by :func:`write_point_set`)."""
    header, values, _ = read_columns(path)
    if "domain" not in header:
        raise ParseError("header has no 'domain' entry; load it with ingest.load_points")
    try:
        domain = Domain.from_dict(header["domain"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"invalid domain in header: {exc}", 1) from None
    meta = {k: v for k, v in header.items() if k not in ("label", "domain")}
    label = str(header.get("label", os.path.splitext(os.path.basename(str(path)))[0]))
    return PointSet2D(values, domain, label=label, metadata=meta)


def write_curve(path, curve) -> None:
    """Two-column ``r value`` export of a :class:`~mosaicstats.analysis.PcfCurve`."""
    _write(path, dumps_columns(curve.metadata, zip(curve.radii.tolist(), curve.values.tolist())))


def write_spectrum(path, spectrum) -> None:
    """Two-column ``freq power`` export of a :class:`~mosaicstats.analysis.RadialSpectrum`."""
    rows = zip(spectrum.freqs.tolist(), spectrum.power.tolist())
    _write(path, dumps_columns(spectrum.metadata, rows))


def _jsonable(v: Any):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v

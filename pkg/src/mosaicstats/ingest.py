"""Loading digitized cone coordinates and preparing them for analysis.

Raw files use the two-column text format of :mod:`mosaicstats.formats`.
The optional header may declare ``{"label": ..., "window": [w, h],
"unit": ...}``; the window is given in raw file units.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import DomainError, DuplicatePointError, InsufficientPointsError, ParseError
from .formats import parse_columns
from .geometry import Domain, PointSet2D, Topology, Unit

__all__ = [
    "MICROMETERS_PER_DEGREE",
    "MosaicRecord",
    "degrees_to_micrometers",
    "load_points",
    "parse_points",
    "crop",
    "normalize",
    "to_native",
]

MICROMETERS_PER_DEGREE = 288.0

MIN_CROP_POINTS = 10


def degrees_to_micrometers(deg: float) -> float:
    """Retinal distance for a visual angle, at 288 um per degree."""
    deg = float(deg)
    if not math.isfinite(deg) or deg < 0:
        raise ValueError(f"visual angle must be a nonnegative number, got {deg}")
    return deg * MICROMETERS_PER_DEGREE


@dataclass(frozen=True)
class MosaicRecord:
    """A loaded mosaic in physical units on a bounded window.

    ``offset`` is the raw-space position (after scaling) of the window's
    origin, so ``pointset.points + offset`` recovers the scaled file
    coordinates.
    """

    pointset: PointSet2D
    source_label: str
    scale_factor: float
    crop: Optional[Tuple[float, float, float, float]] = None
    offset: Tuple[float, float] = (0.0, 0.0)


def _above(x: float) -> float:
    return float(np.nextafter(x, np.inf))


def parse_points(data, scale_factor: float = 1.0, unit: Unit = Unit.MICROMETERS,
                 label: str = "") -> MosaicRecord:
    """Build a :class:`MosaicRecord` from file contents (``bytes`` or ``str``)."""
    scale_factor = float(scale_factor)
    if not (scale_factor > 0 and math.isfinite(scale_factor)):
        raise ValueError(f"scale_factor must be positive, got {scale_factor}")
    header, raw, linenos = parse_columns(data)
    if len(raw) < 2:
        raise InsufficientPointsError(f"need at least 2 points, file has {len(raw)}")

    order = np.lexsort((raw[:, 1], raw[:, 0]))
    same = np.all(raw[order][1:] == raw[order][:-1], axis=1)
    if same.any():
        k = int(np.flatnonzero(same)[0])
        a, b = sorted((int(linenos[order[k]]), int(linenos[order[k + 1]])))
        raise DuplicatePointError(f"duplicate coordinate {tuple(raw[order[k]])} on lines {a} and {b}")

    pts = raw * scale_factor
    window = header.get("window")
    offset = (0.0, 0.0)
    if window is not None:
        try:
            w, h = (float(v) * scale_factor for v in window)
        except (TypeError, ValueError):
            raise ParseError("header 'window' must be a pair of numbers", 1) from None
        if pts.min() < 0:
            raise DomainError("coordinates must be nonnegative when a window is declared")
        width = max(w, _above(pts[:, 0].max()))
        height = max(h, _above(pts[:, 1].max()))
    else:
        lo = pts.min(axis=0)
        offset = (float(lo[0]), float(lo[1]))
        pts = pts - lo
        width = _above(pts[:, 0].max())
        height = _above(pts[:, 1].max())
        # collinear input has zero extent along one axis
        width = width if width > 0 else 1.0
        height = height if height > 0 else 1.0
    label = str(header.get("label", label))
    domain = Domain(width, height, Topology.BOUNDED, Unit(unit))
    ps = PointSet2D(pts, domain, label=label,
                    metadata={"scale_factor": scale_factor, "source_unit": header.get("unit")})
    return MosaicRecord(ps, label, scale_factor, None, offset)


def load_points(path, scale_factor: float = 1.0,
                unit: Unit = Unit.MICROMETERS) -> MosaicRecord:
    """Read digitized coordinates and multiply them by ``scale_factor``.

    The domain is the header's window (in raw units, scaled) grown to cover
    every point, or the tight bounding box of the points when no window is
    declared.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    stem = os.path.splitext(os.path.basename(str(path)))[0]
    return parse_points(data, scale_factor, unit, label=stem)


def crop(rec: MosaicRecord, rect) -> MosaicRecord:
    """Keep the points in the half-open rectangle ``[x0, x1) x [y0, y1)``.

    The rectangle is in the record's current coordinates; it becomes the new
    domain, with its lower-left corner as origin.
    """
    x0, y0, x1, y1 = (float(v) for v in rect)
    if not (x0 < x1 and y0 < y1):
        raise DomainError(f"crop rectangle {rect} is empty")
    dom = rec.pointset.domain
    if x1 <= 0 or y1 <= 0 or x0 >= dom.width or y0 >= dom.height:
        raise DomainError(f"crop rectangle {rect} does not intersect the domain")
    p = rec.pointset.points
    keep = (p[:, 0] >= x0) & (p[:, 0] < x1) & (p[:, 1] >= y0) & (p[:, 1] < y1)
    if np.count_nonzero(keep) < MIN_CROP_POINTS:
        raise InsufficientPointsError(
            f"crop keeps {np.count_nonzero(keep)} points, need at least {MIN_CROP_POINTS}"
        )
    shifted = p[keep] - np.array([x0, y0])
    # a shift can round x - x0 up to the new width
    shifted = np.minimum(shifted, np.nextafter([x1 - x0, y1 - y0], 0.0))
    shifted = np.maximum(shifted, 0.0)
    domain = Domain(x1 - x0, y1 - y0, Topology.BOUNDED, dom.unit)
    ps = rec.pointset.with_points(shifted, domain=domain)
    offset = (rec.offset[0] + x0, rec.offset[1] + y0)
    return MosaicRecord(ps, rec.source_label, rec.scale_factor, (x0, y0, x1, y1), offset)


def normalize(rec: MosaicRecord) -> PointSet2D:
    """Rescale so the longer window side becomes 1, keeping the aspect ratio.

    The result is a bounded, normalized set whose ``metadata["length_scale"]``
    holds the native length of one normalized unit (see :func:`to_native`).
    """
    dom = rec.pointset.domain
    scale = max(dom.width, dom.height)
    w, h = dom.width / scale, dom.height / scale
    p = rec.pointset.points / scale
    p = np.minimum(p, np.nextafter([w, h], 0.0))
    meta = dict(rec.pointset.metadata)
    meta.update(length_scale=scale, native_unit=dom.unit.value)
    return PointSet2D(p, Domain(w, h, Topology.BOUNDED, Unit.NORMALIZED),
                      label=rec.pointset.label, metadata=meta)


def to_native(value: float, ps: PointSet2D) -> float:
    """Convert a normalized length (e.g. a mean NN distance) back to native units."""
    return value * ps.metadata.get("length_scale", 1.0)

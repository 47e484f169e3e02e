"""Point sets, rectangular domains and nearest-neighbor search.

Every point set lives in a half-open window ``[0, width) x [0, height)``.
The window is either *toroidal* (distances wrap around, as for synthetic
samplers on the unit torus) or *bounded* (plain Euclidean distances, as for
tissue patches that have real edges).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Mapping

import numpy as np
from scipy.spatial import cKDTree

from .errors import DomainError, DuplicatePointError, InsufficientPointsError

__all__ = [
    "Topology",
    "Unit",
    "Domain",
    "PointSet2D",
    "NeighborIndex",
    "UNIT_TORUS",
    "distance",
    "nearest_neighbor_distances",
    "brute_force_nn_distances",
    "max_min_distance",
]


class Topology(str, enum.Enum):
    TOROIDAL = "toroidal"
    BOUNDED = "bounded"


class Unit(str, enum.Enum):
    NORMALIZED = "normalized"
    MICROMETERS = "um"


@dataclass(frozen=True)
class Domain:
    """Rectangular window ``[0, width) x [0, height)``."""

    width: float
    height: float
    topology: Topology = Topology.TOROIDAL
    unit: Unit = Unit.NORMALIZED

    def __post_init__(self):
        w, h = float(self.width), float(self.height)
        if not (math.isfinite(w) and math.isfinite(h)) or w <= 0 or h <= 0:
            raise DomainError(f"domain extents must be positive, got {w} x {h}")
        object.__setattr__(self, "width", w)
        object.__setattr__(self, "height", h)
        object.__setattr__(self, "topology", Topology(self.topology))
        object.__setattr__(self, "unit", Unit(self.unit))

    @property
    def extent(self) -> np.ndarray:
        return np.array([self.width, self.height])

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def toroidal(self) -> bool:
        return self.topology is Topology.TOROIDAL

    def contains(self, points) -> np.ndarray:
        """Boolean mask of the rows of ``points`` that lie inside the window."""
        p = np.atleast_2d(np.asarray(points, dtype=float))
        return (
            (p[:, 0] >= 0) & (p[:, 0] < self.width)
            & (p[:, 1] >= 0) & (p[:, 1] < self.height)
        )

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "topology": self.topology.value,
            "unit": self.unit.value,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "Domain":
        return cls(d["width"], d["height"], Topology(d["topology"]), Unit(d["unit"]))


UNIT_TORUS = Domain(1.0, 1.0, Topology.TOROIDAL, Unit.NORMALIZED)


@dataclass(frozen=True)
class PointSet2D:
    """An ordered, duplicate-free set of 2-D points inside a domain.

    ``points`` is stored as a read-only ``(n, 2)`` float array. ``metadata``
    carries free-form provenance (sampler kind, seed, length scale, ...).
    """

    points: np.ndarray
    domain: Domain = UNIT_TORUS
    label: str = ""
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        p = np.array(self.points, dtype=float, copy=True).reshape(-1, 2)
        if not np.all(np.isfinite(p)):
            raise DomainError("point coordinates must be finite")
        outside = np.flatnonzero(~self.domain.contains(p)) if len(p) else []
        if len(outside):
            i = int(outside[0])
            raise DomainError(
                f"point {i} at ({p[i, 0]!r}, {p[i, 1]!r}) lies outside the "
                f"{self.domain.width} x {self.domain.height} domain"
            )
        dup = _first_duplicate(p)
        if dup is not None:
            i, j = dup
            raise DuplicatePointError(f"points {i} and {j} are identical: {tuple(p[i])}")
        p.flags.writeable = False
        object.__setattr__(self, "points", p)
        object.__setattr__(self, "metadata", MappingProxyType(dict(self.metadata)))

    def __len__(self) -> int:
        return len(self.points)

    def with_points(self, points, **changes) -> "PointSet2D":
        """Copy of this set with new coordinates (and optionally other fields)."""
        kw = dict(domain=self.domain, label=self.label, metadata=dict(self.metadata))
        kw.update(changes)
        return PointSet2D(points, **kw)


def _first_duplicate(p: np.ndarray):
    if len(p) < 2:
        return None
    order = np.lexsort((p[:, 1], p[:, 0]))
    s = p[order]
    same = np.all(s[1:] == s[:-1], axis=1)
    if not same.any():
        return None
    k = int(np.flatnonzero(same)[0])
    i, j = sorted((int(order[k]), int(order[k + 1])))
    return i, j


def _require(ps: PointSet2D, minimum: int):
    if len(ps) < minimum:
        raise InsufficientPointsError(
            f"need at least {minimum} points, got {len(ps)}"
        )


def _wrap(delta: np.ndarray, domain: Domain) -> np.ndarray:
    """Absolute per-axis offsets, wrapped to at most half the extent on a torus."""
    delta = np.abs(delta)
    if domain.toroidal:
        delta = np.minimum(delta, domain.extent - delta)
    return delta


def distance(a, b, domain: Domain) -> float:
    """Euclidean distance between two points under the domain's topology."""
    pts = np.array([a, b], dtype=float)
    if pts.shape != (2, 2):
        raise ValueError("distance expects two 2-D points")
    inside = domain.contains(pts)
    if not inside.all():
        bad = pts[int(np.flatnonzero(~inside)[0])]
        raise DomainError(f"point {tuple(bad)} lies outside the domain")
    dx, dy = _wrap(pts[0] - pts[1], domain)
    return math.hypot(dx, dy)


def brute_force_nn_distances(ps: PointSet2D) -> np.ndarray:
    """O(n^2) nearest-neighbor distances; the reference the index is checked against."""
    _require(ps, 2)
    p = ps.points
    n = len(p)
    out = np.empty(n)
    for i in range(n):
        d = _wrap(p - p[i], ps.domain)
        r = np.hypot(d[:, 0], d[:, 1])
        r[i] = np.inf
        out[i] = r.min()
    return out


class NeighborIndex:
    """k-d tree over a point set, periodic when the domain is toroidal."""

    def __init__(self, ps: PointSet2D):
        self.pointset = ps
        boxsize = ps.domain.extent if ps.domain.toroidal else None
        self.tree = cKDTree(ps.points, boxsize=boxsize)

    def nearest_neighbor_distances(self) -> np.ndarray:
        _require(self.pointset, 2)
        d, _ = self.tree.query(self.pointset.points, k=2)
        return d[:, 1]

    def pairs_within(self, radius: float):
        """Unordered index pairs ``(i, j)``, ``i < j``, with distance <= radius.

        Returns the ``(m, 2)`` index array and the matching distances,
        recomputed with :func:`_wrap` so they agree exactly with
        :func:`distance`.
        """
        pairs = self.tree.query_pairs(radius, output_type="ndarray")
        p = self.pointset.points
        d = _wrap(p[pairs[:, 0]] - p[pairs[:, 1]], self.pointset.domain)
        return pairs, np.hypot(d[:, 0], d[:, 1])


def nearest_neighbor_distances(ps: PointSet2D) -> np.ndarray:
    """Distance from each point to its nearest other point, in input order."""
    _require(ps, 2)
    return NeighborIndex(ps).nearest_neighbor_distances()


def max_min_distance(n: int) -> float:
    """Minimal pairwise distance of a hexagonal lattice of ``n`` points on a unit-area torus.

    This is the largest achievable nearest-neighbor spacing for ``n`` points
    and is the unit in which pair-correlation radii are expressed.
    """
    if isinstance(n, bool) or int(n) != n or n < 2:
        raise ValueError(f"max_min_distance needs an integer n >= 2, got {n!r}")
    return math.sqrt(2.0 / (math.sqrt(3.0) * int(n)))

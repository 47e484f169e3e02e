"""Spatial statistics of 2-D point sets.

Nearest-neighbor statistics and the regularity index, local density,
a kernel-smoothed pair correlation function (PCF) with an l-infinity
distance between curves, and a radially averaged periodogram.

PCF radii are expressed in units of ``max_min_distance(n)`` so that curves
of sets with different sizes are directly comparable.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DegenerateDistributionError,
    DomainError,
    IncompatibleCurvesError,
    InsufficientPointsError,
    MosaicError,
)
from .geometry import (
    Domain,
    NeighborIndex,
    PointSet2D,
    _require,
    _wrap,
    max_min_distance,
    nearest_neighbor_distances,
)

__all__ = [
    "NnStats",
    "PcfMode",
    "PcfParams",
    "PcfCurve",
    "RadialSpectrum",
    "ReportRow",
    "regularity_index",
    "nn_stats",
    "local_density",
    "disk_area_in_domain",
    "gaussian_kernel",
    "pcf",
    "pcf_distance",
    "periodogram",
    "radial_spectrum",
    "regularity_report",
    "format_report",
]

MIN_STATS_POINTS = 10

# kernel terms beyond this many bandwidths are below 1e-27 and are skipped
_KERNEL_CUTOFF = 8.0

_DEGENERATE_SPREAD = 1e-12


def regularity_index(mu: float, sigma: float) -> float:
    """Mean nearest-neighbor distance over its standard deviation."""
    if not sigma > 0:
        raise DegenerateDistributionError(
            f"standard deviation must be positive, got {sigma}"
        )
    return mu / sigma


@dataclass(frozen=True)
class NnStats:
    distances: np.ndarray
    mu: float
    sigma: float
    ri: float
    bin_edges: np.ndarray
    counts: np.ndarray

    @classmethod
    def from_distances(cls, distances) -> "NnStats":
        d = np.asarray(distances, dtype=float)
        if len(d) < MIN_STATS_POINTS:
            raise InsufficientPointsError(
                f"nearest-neighbor statistics need at least {MIN_STATS_POINTS} "
                f"points, got {len(d)}"
            )
        mu = float(d.mean())
        sigma = float(d.std())
        # a lattice's spread is pure rounding noise, not a distribution
        if not sigma > _DEGENERATE_SPREAD * abs(mu):
            raise DegenerateDistributionError(
                "all nearest-neighbor distances are equal; regularity index is infinite"
            )
        nbins = math.ceil(math.sqrt(len(d)))
        counts, edges = np.histogram(d, bins=nbins, range=(d.min(), d.max()))
        return cls(d, mu, sigma, regularity_index(mu, sigma), edges, counts)


def nn_stats(ps: PointSet2D) -> NnStats:
    """Nearest-neighbor mean, population deviation, RI and histogram of a set.

    Distances are in the set's native units.
    """
    _require(ps, MIN_STATS_POINTS)
    return NnStats.from_distances(nearest_neighbor_distances(ps))


def _quadrant_area(r: float, a: float, b: float) -> float:
    # area of the disk of radius r centred at the origin inside [0, a] x [0, b]
    a = min(a, r)
    if a <= 0 or b <= 0:
        return 0.0
    xc = math.sqrt(max(r * r - b * b, 0.0))

    def prim(x):
        return 0.5 * (x * math.sqrt(max(r * r - x * x, 0.0)) + r * r * math.asin(min(x / r, 1.0)))

    split = min(a, xc)
    return b * split + prim(a) - prim(split)


def disk_area_in_domain(center, radius: float, domain: Domain) -> float:
    """Area of the set of domain points within ``radius`` of ``center``.

    On a torus this is the disk clipped to the half-extent box around the
    centre; on a bounded window it is the disk clipped to the window.
    """
    cx, cy = center
    if domain.toroidal:
        left = right = domain.width / 2.0
        down = up = domain.height / 2.0
    else:
        left, right = cx, domain.width - cx
        down, up = cy, domain.height - cy
    return (
        _quadrant_area(radius, right, up) + _quadrant_area(radius, left, up)
        + _quadrant_area(radius, right, down) + _quadrant_area(radius, left, down)
    )


def local_density(ps: PointSet2D, center, radius: float) -> float:
    """Points per unit area inside the disk ``B(center, radius)``."""
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    c = np.asarray(center, dtype=float)
    if c.shape != (2,) or not ps.domain.contains(c).all():
        raise DomainError(f"center {tuple(c)} lies outside the domain")
    if len(ps) == 0:
        return 0.0
    d = _wrap(ps.points - c, ps.domain)
    count = int(np.count_nonzero(np.hypot(d[:, 0], d[:, 1]) <= radius))
    if count == 0:
        return 0.0
    return count / disk_area_in_domain(c, radius, ps.domain)


class PcfMode(str, enum.Enum):
    PAPER_RAW = "raw"
    CALIBRATED = "calibrated"


@dataclass(frozen=True)
class PcfParams:
    """Radius window, resolution and smoothing bandwidth of a PCF estimate.

    All lengths are in units of ``max_min_distance(n)``.
    """

    r_min: float = 0.5
    r_max: float = 4.0
    bins: int = 200
    sigma_smooth: float = 0.25
    mode: PcfMode = PcfMode.CALIBRATED

    def __post_init__(self):
        object.__setattr__(self, "mode", PcfMode(self.mode))
        if not (math.isfinite(self.r_min) and math.isfinite(self.r_max)):
            raise ValueError("r_min and r_max must be finite")
        if self.r_min < 0 or not self.r_min < self.r_max:
            raise ValueError(f"need 0 <= r_min < r_max, got {self.r_min}, {self.r_max}")
        if isinstance(self.bins, bool) or int(self.bins) != self.bins or self.bins < 16:
            raise ValueError(f"bins must be an integer >= 16, got {self.bins!r}")
        if not (self.sigma_smooth > 0 and math.isfinite(self.sigma_smooth)):
            raise ValueError(f"sigma_smooth must be positive, got {self.sigma_smooth}")

    def radii(self) -> np.ndarray:
        step = (self.r_max - self.r_min) / self.bins
        return self.r_min + (np.arange(self.bins) + 0.5) * step

    def to_dict(self) -> dict:
        return {
            "r_min": self.r_min,
            "r_max": self.r_max,
            "bins": int(self.bins),
            "sigma_smooth": self.sigma_smooth,
            "mode": self.mode.value,
        }


@dataclass(frozen=True)
class PcfCurve:
    radii: np.ndarray
    values: np.ndarray
    params: PcfParams
    n: int
    label: str = ""
    unreliable: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.unreliable is None:
            object.__setattr__(
                self, "unreliable", self.radii < self.params.sigma_smooth / 2.0
            )

    @property
    def metadata(self) -> dict:
        return {
            "label": self.label,
            "n": int(self.n),
            "params": self.params.to_dict(),
            "mode": self.params.mode.value,
            "kernel": "gaussian exp(-t^2/s^2)/(s*sqrt(pi)), unit integral",
            "radius_unit": "max_min_distance(n)",
            "unreliable_below": self.params.sigma_smooth / 2.0,
        }


def gaussian_kernel(t, sigma: float):
    """Gaussian smoothing kernel with unit integral over the real line."""
    t = np.asarray(t, dtype=float)
    return np.exp(-(t / sigma) ** 2) / (sigma * math.sqrt(math.pi))


def calibration_factor(n: int) -> float:
    """Raw-estimator value of a Poisson process: ``2 pi max_min_distance(n)^2``."""
    return 2.0 * math.pi * max_min_distance(n) ** 2


def pcf(ps: PointSet2D, params: Optional[PcfParams] = None,
        chunk: int = 16384) -> PcfCurve:
    """Kernel-smoothed pair correlation function of a point set.

    For every bin centre ``r``::

        raw(r) = 1 / (n^2 r) * sum_{i != j} k(r - d_ij / d_hex)

    with ``d_hex = max_min_distance(n)`` and ``k`` a unit-integral Gaussian.
    Ordered pairs are counted, so each unordered pair contributes twice.
    Calibrated mode divides by ``calibration_factor(n)`` so a Poisson process
    sits at 1.
    """
    params = params or PcfParams()
    _require(ps, MIN_STATS_POINTS)
    n = len(ps)
    h = max_min_distance(n)
    s = params.sigma_smooth
    radii = params.radii()
    reach = (params.r_max + _KERNEL_CUTOFF * s) * h
    _, dist = NeighborIndex(ps).pairs_within(reach)
    u = np.sort(dist / h)
    cut = _KERNEL_CUTOFF * s
    acc = np.zeros(len(radii))
    # a few bins at a time, against only the pairs inside their kernel window
    for b0 in range(0, len(radii), 8):
        r = radii[b0:b0 + 8]
        lo, hi = np.searchsorted(u, [r[0] - cut, r[-1] + cut])
        for start in range(lo, hi, chunk):
            block = u[start:min(start + chunk, hi)]
            acc[b0:b0 + 8] += gaussian_kernel(r[:, None] - block[None, :], s).sum(axis=1)
    values = 2.0 * acc / (n * n * radii)
    if params.mode is PcfMode.CALIBRATED:
        values = values / calibration_factor(n)
    return PcfCurve(radii, values, params, n, label=ps.label)


def pcf_distance(a: PcfCurve, b: PcfCurve) -> float:
    """l-infinity distance ``max_r |a(r) - b(r)|`` between two curves on one grid.

    Bins flagged unreliable (``r < sigma_smooth / 2``) only count when both
    curves carry the same flag for them.
    """
    if a.params != b.params or not np.array_equal(a.radii, b.radii):
        raise IncompatibleCurvesError(
            "curves were estimated with different radius grids or parameters; "
            "recompute them with shared PcfParams"
        )
    use = a.unreliable == b.unreliable
    if not use.any():
        return 0.0
    return float(np.max(np.abs(a.values[use] - b.values[use])))


@dataclass(frozen=True)
class RadialSpectrum:
    freqs: np.ndarray
    power: np.ndarray
    n: int
    label: str = ""

    @property
    def metadata(self) -> dict:
        return {"label": self.label, "n": int(self.n),
                "max_freq": int(self.freqs[-1]),
                "annulus": "|f| in [k - 0.5, k + 0.5)"}


def periodogram(points, max_freq: int):
    """Point-set periodogram ``|sum_j exp(-2 pi i f.x_j)|^2 / n`` on the integer lattice.

    Returns ``(fx, fy, power)`` with ``fx``/``fy`` the frequency axes
    ``-max_freq..max_freq`` and ``power[a, b]`` the value at ``(fx[a], fy[b])``.
    """
    p = np.atleast_2d(np.asarray(points, dtype=float))
    n = len(p)
    if n == 0:
        raise InsufficientPointsError("periodogram of an empty point set")
    f = np.arange(-max_freq, max_freq + 1)
    ex = np.exp(-2j * math.pi * np.outer(f, p[:, 0]))
    ey = np.exp(-2j * math.pi * np.outer(f, p[:, 1]))
    s = ex @ ey.T
    return f, f, (s.real ** 2 + s.imag ** 2) / n


def radial_spectrum(ps: PointSet2D, max_freq: int) -> RadialSpectrum:
    """Periodogram averaged over unit-width annuli ``k - 0.5 <= |f| < k + 0.5``.

    ``k`` runs over ``1..max_freq``; the DC term is excluded.
    """
    if isinstance(max_freq, bool) or int(max_freq) != max_freq or max_freq < 2:
        raise ValueError(f"max_freq must be an integer >= 2, got {max_freq!r}")
    max_freq = int(max_freq)
    if not (ps.domain.toroidal and ps.domain.width == 1.0 and ps.domain.height == 1.0):
        raise DomainError("radial_spectrum needs a point set on the unit torus")
    _require(ps, 2)
    fx, fy, power = periodogram(ps.points, max_freq)
    radius = np.hypot(fx[:, None], fy[None, :])
    ring = np.floor(radius + 0.5).astype(int)
    keep = (ring >= 1) & (ring <= max_freq)
    sums = np.bincount(ring[keep], weights=power[keep], minlength=max_freq + 1)
    counts = np.bincount(ring[keep], minlength=max_freq + 1)
    freqs = np.arange(1, max_freq + 1)
    return RadialSpectrum(freqs.astype(float), sums[1:] / counts[1:], len(ps), ps.label)


@dataclass(frozen=True)
class ReportRow:
    label: str
    n: int
    mu: float = math.nan
    sigma: float = math.nan
    ri: float = math.nan
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


def regularity_report(sets: Sequence[PointSet2D]) -> list:
    """One ``ReportRow`` per set, sorted by ascending RI.

    A set whose statistics cannot be computed yields a failed row (listed
    after the successful ones) instead of aborting the table.
    """
    good, bad = [], []
    for ps in sets:
        try:
            st = nn_stats(ps)
        except MosaicError as exc:
            bad.append(ReportRow(ps.label, len(ps), error=str(exc)))
        else:
            good.append(ReportRow(ps.label, len(ps), st.mu, st.sigma, st.ri))
    good.sort(key=lambda row: row.ri)
    return good + bad


def format_report(rows) -> str:
    """Tab-separated table with a header line; parseable by any TSV reader."""
    lines = ["label\tn\tmu\tsigma\tri\tstatus"]
    for row in rows:
        if row.ok:
            lines.append(f"{row.label}\t{row.n}\t{row.mu:.8f}\t{row.sigma:.8f}\t{row.ri:.6f}\tok")
        else:
            msg = " ".join(str(row.error).split())
            lines.append(f"{row.label}\t{row.n}\tnan\tnan\tnan\tfailed: {msg}")
    return "\n".join(lines) + "\n"

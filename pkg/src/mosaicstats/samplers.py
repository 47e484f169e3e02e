"""Seeded point-set generators on the unit torus.

All samplers draw from ``numpy.random.Generator(PCG64(seed))``, so a config
(kind, n, seed, parameters) always produces the same points bit for bit.
The generator name is written into every output's metadata.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial import Voronoi, cKDTree

from .errors import GenerationError
from .geometry import UNIT_TORUS, PointSet2D, max_min_distance

__all__ = [
    "RNG_ALGORITHM",
    "SamplerKind",
    "SamplerConfig",
    "generate",
    "sample_white",
    "sample_jittered",
    "sample_dart_throwing",
    "sample_fast_poisson_disk",
    "sample_blue_noise_opt",
    "lloyd_step",
]

RNG_ALGORITHM = "numpy.random.PCG64"

_BELOW_ONE = np.nextafter(1.0, 0.0)


class SamplerKind(str, enum.Enum):
    WHITE = "white"
    JITTERED = "jittered"
    DART = "dart"
    POISSON = "poisson"
    BLUE = "blue"


def _rng(seed: int) -> np.random.Generator:
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= int(seed) < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return np.random.Generator(np.random.PCG64(int(seed)))


def _check_n(n, minimum=2):
    if isinstance(n, bool) or int(n) != n or n < minimum:
        raise ValueError(f"n must be an integer >= {minimum}, got {n!r}")
    return int(n)


def _check_min_dist(n: int, min_dist) -> float:
    if min_dist is None:
        raise ValueError("Poisson-disk samplers require min_dist")
    min_dist = float(min_dist)
    if not min_dist > 0:
        raise ValueError(f"min_dist must be positive, got {min_dist}")
    limit = max_min_distance(n)
    if min_dist > limit:
        raise ValueError(
            f"min_dist={min_dist} exceeds the hexagonal packing limit "
            f"{limit:.7f} for n={n}; generation would be infeasible"
        )
    return min_dist


def _pointset(points, kind: SamplerKind, seed: int, **meta) -> PointSet2D:
    metadata = {"kind": kind.value, "seed": int(seed), "rng": RNG_ALGORITHM}
    metadata.update(meta)
    label = f"{kind.value}_{len(points)}_s{seed}"
    return PointSet2D(points, UNIT_TORUS, label=label, metadata=metadata)


def sample_white(n: int, seed: int) -> PointSet2D:
    """``n`` independent uniform points on the unit torus."""
    n = _check_n(n)
    pts = _rng(seed).random((n, 2))
    return _pointset(pts, SamplerKind.WHITE, seed, n=n)


def sample_jittered(n: int, seed: int, round_up: bool = False) -> PointSet2D:
    """One uniform point in each cell of a sqrt(n) x sqrt(n) grid.

    A non-square ``n`` is rejected unless ``round_up`` is set, in which case
    the next perfect square is used and reported in ``metadata["n"]``.
    """
    n = _check_n(n, minimum=1)
    m = math.isqrt(n)
    if m * m != n:
        if not round_up:
            raise ValueError(f"jittered sampling needs a perfect square n, got {n}")
        m += 1
    rng = _rng(seed)
    i, j = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    cells = np.column_stack([i.ravel(), j.ravel()]).astype(float)
    pts = (cells + rng.random((m * m, 2))) / m
    # (m-1 + u)/m can round up to 1.0 for non power-of-two m
    pts = np.minimum(pts, _BELOW_ONE)
    return _pointset(pts, SamplerKind.JITTERED, seed, n=m * m, requested_n=n)


class _TorusGrid:
    """Background grid for hard-core tests on the unit torus.

    Cell side is at most ``r / sqrt(2)`` so each cell holds at most one point.
    """

    def __init__(self, r: float):
        self.r2 = r * r
        self.g = max(1, math.ceil(math.sqrt(2.0) / r))
        reach = math.ceil(r * self.g)
        span = range(-reach, reach + 1)
        self.offsets = [(a, b) for a in span for b in span]
        self.cells = {}
        self.points = []

    def _cell(self, x, y):
        return int(x * self.g) % self.g, int(y * self.g) % self.g

    def fits(self, x: float, y: float) -> bool:
        cx, cy = self._cell(x, y)
        g = self.g
        for a, b in self.offsets:
            k = self.cells.get(((cx + a) % g, (cy + b) % g))
            if k is None:
                continue
            px, py = self.points[k]
            dx = abs(x - px)
            dy = abs(y - py)
            dx = min(dx, 1.0 - dx)
            dy = min(dy, 1.0 - dy)
            if dx * dx + dy * dy < self.r2:
                return False
        return True

    def add(self, x: float, y: float):
        self.cells[self._cell(x, y)] = len(self.points)
        self.points.append((x, y))


def _finish_poisson(points, n, kind, seed, min_dist, **meta) -> PointSet2D:
    count = len(points)
    if count < n / 2:
        raise GenerationError(
            f"{kind.value} sampler saturated at {count} points, below half of "
            f"the requested {n} (min_dist={min_dist})"
        )
    return _pointset(
        np.array(points, dtype=float).reshape(-1, 2), kind, seed,
        n=count, requested_n=n, min_dist=min_dist, saturated=count < n, **meta,
    )


def sample_dart_throwing(n: int, min_dist: float, seed: int,
                         max_attempts: int = 10**6) -> PointSet2D:
    """Classic dart throwing: uniform candidates, rejected if closer than ``min_dist``.

    Stops at ``n`` points, or after ``max_attempts`` consecutive rejections
    (``metadata["saturated"]`` is then true).
    """
    n = _check_n(n)
    min_dist = _check_min_dist(n, min_dist)
    if max_attempts < 1:
        raise ValueError("max_attempts must be positive")
    rng = _rng(seed)
    grid = _TorusGrid(min_dist)
    misses = 0
    batch = 4096
    while len(grid.points) < n and misses < max_attempts:
        for x, y in rng.random((batch, 2)).tolist():
            if grid.fits(x, y):
                grid.add(x, y)
                misses = 0
                if len(grid.points) == n:
                    break
            else:
                misses += 1
                if misses >= max_attempts:
                    break
    return _finish_poisson(grid.points, n, SamplerKind.DART, seed, min_dist,
                           max_attempts=int(max_attempts))


def sample_fast_poisson_disk(n: int, min_dist: float, seed: int,
                             k: int = 30) -> PointSet2D:
    """Active-list Poisson-disk sampling on the torus, ``k`` candidates per frontier point.

    The process runs until the frontier is empty (a near-maximal packing).
    If that yields more than ``n`` points, a seeded random subset of ``n`` is
    kept so the result still covers the whole torus; fewer than ``n`` is
    flagged as saturated.
    """
    n = _check_n(n)
    min_dist = _check_min_dist(n, min_dist)
    rng = _rng(seed)
    grid = _TorusGrid(min_dist)
    x0, y0 = rng.random(2).tolist()
    grid.add(x0, y0)
    active = [0]
    two_pi = 2.0 * math.pi
    while active:
        slot = int(rng.integers(len(active)))
        px, py = grid.points[active[slot]]
        u = rng.random((k, 2))
        # uniform by area in the annulus [r, 2r]
        rad = min_dist * np.sqrt(1.0 + 3.0 * u[:, 0])
        ang = two_pi * u[:, 1]
        cand = np.column_stack([px + rad * np.cos(ang), py + rad * np.sin(ang)]) % 1.0
        found = False
        for x, y in cand.tolist():
            if x >= 1.0:
                x = 0.0
            if y >= 1.0:
                y = 0.0
            if grid.fits(x, y):
                grid.add(x, y)
                active.append(len(grid.points) - 1)
                found = True
        if not found:
            active[slot] = active[-1]
            active.pop()
    points = grid.points
    produced = len(points)
    if produced > n:
        keep = np.sort(rng.choice(produced, size=n, replace=False))
        points = [points[i] for i in keep]
    return _finish_poisson(points, n, SamplerKind.POISSON, seed, min_dist,
                           k=int(k), produced=produced)


_TILES = np.array([(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1) if (a, b) != (0, 0)],
                  dtype=float)


def _periodic_voronoi(p: np.ndarray, margin: float):
    n = len(p)
    while True:
        blocks, src = [p], [np.arange(n)]
        for off in _TILES:
            q = p + off
            keep = np.all((q > -margin) & (q < 1.0 + margin), axis=1)
            blocks.append(q[keep])
            src.append(np.flatnonzero(keep))
        padded = np.vstack(blocks)
        vor = Voronoi(padded)
        rp = vor.ridge_points
        rv = np.asarray(vor.ridge_vertices)
        own = (rp[:, 0] < n) | (rp[:, 1] < n)
        rp, rv = rp[own], rv[own]
        if margin >= 1.0:
            return padded, vor.vertices, rp, rv
        if (rv >= 0).all():
            # a cell is exact when every vertex's empty circle fits in the padding
            gen = np.where(rp[:, 0] < n, rp[:, 0], rp[:, 1])
            v = vor.vertices[rv.ravel()]
            rad = np.linalg.norm(v - np.repeat(padded[gen], 2, axis=0), axis=1)
            if np.all(v - rad[:, None] > -margin) and np.all(v + rad[:, None] < 1.0 + margin):
                return padded, vor.vertices, rp, rv
        margin *= 2.0


def lloyd_step(points: np.ndarray, margin: Optional[float] = None) -> np.ndarray:
    """Move every point to the centroid of its Voronoi cell on the unit torus.

    Cells are integrated exactly: each Voronoi edge forms a triangle with the
    generator, and the cell centroid is the area-weighted mean of those
    triangle centroids.
    """
    p = np.asarray(points, dtype=float)
    n = len(p)
    if margin is None:
        margin = min(0.5, 3.0 / math.sqrt(n))
    padded, verts, rp, rv = _periodic_voronoi(p, margin)
    area = np.zeros(n)
    moment = np.zeros((n, 2))
    for side in (0, 1):
        mask = rp[:, side] < n
        g = rp[mask, side]
        a = padded[g]
        e1 = verts[rv[mask, 0]] - a
        e2 = verts[rv[mask, 1]] - a
        tri = 0.5 * np.abs(e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])
        np.add.at(area, g, tri)
        np.add.at(moment, g, tri[:, None] * (a + (e1 + e2) / 3.0))
    c = (moment / area[:, None]) % 1.0
    c[c >= 1.0] = 0.0
    return c


def _separate_coincident(p: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    pairs = cKDTree(p, boxsize=1.0).query_pairs(1e-9, output_type="ndarray")
    if len(pairs) == 0:
        return p
    p = p.copy()
    for j in np.unique(pairs[:, 1]):
        ang = 2.0 * math.pi * rng.random()
        p[j] = (p[j] + 1e-6 * np.array([math.cos(ang), math.sin(ang)])) % 1.0
    p[p >= 1.0] = 0.0
    return p


def sample_blue_noise_opt(n: int, seed: int, iterations: int = 100,
                          tol: float = 1e-5) -> PointSet2D:
    """Blue noise by toroidal Lloyd relaxation of a white-noise start.

    Runs until ``iterations`` steps are done or no point moves more than
    ``tol``. ``iterations=0`` returns the white-noise start unchanged.
    """
    n = _check_n(n, minimum=16)
    if isinstance(iterations, bool) or int(iterations) != iterations or iterations < 0:
        raise ValueError(f"iterations must be a nonnegative integer, got {iterations!r}")
    rng = _rng(seed)
    p = rng.random((n, 2))
    done = 0
    for _ in range(int(iterations)):
        p = _separate_coincident(p, rng)
        q = lloyd_step(p)
        step = np.abs(q - p)
        step = np.minimum(step, 1.0 - step)
        p = q
        done += 1
        if np.hypot(step[:, 0], step[:, 1]).max() < tol:
            break
    return _pointset(p, SamplerKind.BLUE, seed, n=n, iterations=int(iterations),
                     iterations_run=done)


@dataclass(frozen=True)
class SamplerConfig:
    """Everything needed to reproduce one sampler run."""

    kind: SamplerKind
    n: int
    seed: int
    min_dist: Optional[float] = None
    iterations: int = 100
    max_attempts: int = 10**6
    round_up: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", SamplerKind(self.kind))
        _check_n(self.n, minimum=1)
        _rng(self.seed)
        if self.kind in (SamplerKind.DART, SamplerKind.POISSON):
            _check_min_dist(int(self.n), self.min_dist)
        if int(self.iterations) != self.iterations or self.iterations < 0:
            raise ValueError("iterations must be a nonnegative integer")


def generate(config: SamplerConfig) -> PointSet2D:
    kind = config.kind
    if kind is SamplerKind.WHITE:
        return sample_white(config.n, config.seed)
    if kind is SamplerKind.JITTERED:
        return sample_jittered(config.n, config.seed, round_up=config.round_up)
    if kind is SamplerKind.DART:
        return sample_dart_throwing(config.n, config.min_dist, config.seed,
                                    max_attempts=config.max_attempts)
    if kind is SamplerKind.POISSON:
        return sample_fast_poisson_disk(config.n, config.min_dist, config.seed)
    return sample_blue_noise_opt(config.n, config.seed, iterations=config.iterations)

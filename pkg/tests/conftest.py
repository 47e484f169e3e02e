import numpy as np
import pytest

from mosaicstats.geometry import Domain, PointSet2D, Topology, Unit


def min_pairwise_toroidal(points):
    """O(n^2) minimum pairwise distance on the unit torus."""
    p = np.asarray(points)
    d = np.abs(p[:, None, :] - p[None, :, :])
    d = np.minimum(d, 1.0 - d)
    r = np.hypot(d[..., 0], d[..., 1])
    np.fill_diagonal(r, np.inf)
    return r.min()


def bounded(w=1.0, h=1.0, unit=Unit.NORMALIZED):
    return Domain(w, h, Topology.BOUNDED, unit)


def pair_mosaic(mu, sigma, pairs=10, unit=Unit.MICROMETERS):
    """Isolated point pairs whose NN distances have mean ``mu`` and population std ``sigma``."""
    gaps = np.array([mu + sigma, mu - sigma] * (pairs // 2))
    spacing = 10.0 * (mu + sigma)
    pts = []
    for k, g in enumerate(gaps):
        x = spacing * (k + 1)
        pts += [(x, spacing), (x + g, spacing)]
    dom = Domain(spacing * (pairs + 2), 2 * spacing, Topology.BOUNDED, unit)
    return PointSet2D(pts, dom, label="pairs")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# filled by test_acceptance; echoed after the run so the lines show without -s
acceptance_results = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_results:
        terminalreporter.section("acceptance criteria")
        for line in sorted(acceptance_results, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)

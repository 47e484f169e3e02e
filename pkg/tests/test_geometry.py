import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mosaicstats.errors import DomainError, DuplicatePointError, InsufficientPointsError
from mosaicstats.geometry import (
    UNIT_TORUS,
    Domain,
    PointSet2D,
    Topology,
    brute_force_nn_distances,
    distance,
    max_min_distance,
    nearest_neighbor_distances,
)

from conftest import bounded

coord = st.floats(0.0, 1.0, exclude_max=True, allow_nan=False)
point = st.tuples(coord, coord)
topologies = st.sampled_from([Topology.TOROIDAL, Topology.BOUNDED])


def test_distance_wraps_on_torus():
    assert distance((0.1, 0.1), (0.9, 0.9), UNIT_TORUS) == pytest.approx(0.2828427, abs=1e-7)


def test_distance_plain_when_bounded():
    assert distance((0.1, 0.1), (0.9, 0.9), bounded()) == pytest.approx(1.1313708, abs=1e-7)


@pytest.mark.parametrize("domain", [UNIT_TORUS, bounded()])
def test_distance_identity(domain):
    assert distance((0.5, 0.5), (0.5, 0.5), domain) == 0.0


def test_distance_rejects_outside_point():
    with pytest.raises(DomainError):
        distance((0.5, 1.2), (0.1, 0.1), UNIT_TORUS)


@settings(max_examples=300, deadline=None)
@given(point, point, point, topologies)
def test_metric_axioms(a, b, c, topo):
    dom = Domain(1.0, 1.0, topo)
    ab, ba = distance(a, b, dom), distance(b, a, dom)
    assert ab >= 0
    assert ab == ba
    assert (ab == 0) == (a == b)
    assert distance(a, c, dom) <= ab + distance(b, c, dom) + 1e-12


@settings(max_examples=200, deadline=None)
@given(point, point, st.floats(0.1, 5.0), st.floats(0.1, 5.0))
def test_toroidal_distance_bounded_by_half_diagonal(a, b, w, h):
    dom = Domain(w, h, Topology.TOROIDAL)
    pa, pb = (a[0] * w, a[1] * h), (b[0] * w, b[1] * h)
    if not (dom.contains([pa, pb]).all()):
        return
    assert distance(pa, pb, dom) <= math.hypot(w / 2, h / 2) + 1e-12


def test_pointset_rejects_duplicates():
    with pytest.raises(DuplicatePointError):
        PointSet2D([(0.1, 0.2), (0.3, 0.3), (0.1, 0.2)])


def test_pointset_rejects_outside_points():
    with pytest.raises(DomainError):
        PointSet2D([(0.1, 0.2), (1.0, 0.3)])


def test_pointset_is_read_only():
    ps = PointSet2D([(0.1, 0.2), (0.3, 0.3)])
    with pytest.raises(ValueError):
        ps.points[0, 0] = 0.5


def test_domain_rejects_nonpositive_extent():
    with pytest.raises(DomainError):
        Domain(0.0, 1.0)


def test_nn_collinear_bounded():
    ps = PointSet2D([(0, 0), (0, 0.25), (0, 0.6)], bounded())
    np.testing.assert_allclose(nearest_neighbor_distances(ps), [0.25, 0.25, 0.35], rtol=1e-12)


def test_nn_wraps_on_torus():
    ps = PointSet2D([(0.05, 0.5), (0.95, 0.5)])
    np.testing.assert_allclose(nearest_neighbor_distances(ps), [0.1, 0.1], rtol=1e-12)


def test_nn_needs_two_points():
    with pytest.raises(InsufficientPointsError):
        nearest_neighbor_distances(PointSet2D([(0.5, 0.5)]))


@pytest.mark.parametrize("topo", list(Topology))
def test_nn_index_matches_brute_force(rng, topo):
    for _ in range(50):
        ps = PointSet2D(rng.random((64, 2)), Domain(1.0, 1.0, topo))
        np.testing.assert_allclose(
            nearest_neighbor_distances(ps), brute_force_nn_distances(ps), rtol=1e-12, atol=0
        )


def test_nn_index_on_rectangular_torus(rng):
    dom = Domain(3.0, 0.5, Topology.TOROIDAL)
    ps = PointSet2D(rng.random((200, 2)) * [3.0, 0.5], dom)
    np.testing.assert_allclose(nearest_neighbor_distances(ps), brute_force_nn_distances(ps), rtol=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0, 1), st.floats(0, 1))
def test_nn_translation_invariant_on_torus(seed, sx, sy):
    p = np.random.default_rng(seed).random((64, 2))
    q = (p + [sx, sy]) % 1.0
    q[q >= 1.0] = 0.0
    a = np.sort(nearest_neighbor_distances(PointSet2D(p)))
    b = np.sort(nearest_neighbor_distances(PointSet2D(q)))
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-14)


def test_max_min_distance_values():
    # sqrt(2 / (sqrt(3) * 1024)) evaluated independently
    assert max_min_distance(1024) == pytest.approx(0.03358031, abs=1e-8)
    assert max_min_distance(2) == pytest.approx(0.7598357, abs=1e-7)


@pytest.mark.parametrize("n", [2, 7, 100, 1050, 4096])
def test_max_min_distance_scaling(n):
    assert max_min_distance(4 * n) == pytest.approx(max_min_distance(n) / 2, rel=1e-15)


def test_max_min_distance_decreasing():
    v = [max_min_distance(n) for n in range(2, 500)]
    assert all(a > b for a, b in zip(v, v[1:]))


@pytest.mark.parametrize("n", [1, 0, -3, 2.5])
def test_max_min_distance_rejects_bad_n(n):
    with pytest.raises(ValueError):
        max_min_distance(n)

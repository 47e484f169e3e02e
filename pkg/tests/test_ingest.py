import os

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mosaicstats.analysis import nn_stats
from mosaicstats.errors import (
    DomainError,
    DuplicatePointError,
    InsufficientPointsError,
    MosaicError,
    ParseError,
)
from mosaicstats.formats import (
    format_number,
    parse_columns,
    read_columns,
    read_point_set,
    write_curve,
    write_point_set,
    write_spectrum,
)
from mosaicstats.analysis import pcf, radial_spectrum
from mosaicstats.geometry import Domain, PointSet2D, Topology, Unit, nearest_neighbor_distances
from mosaicstats.ingest import (
    MosaicRecord,
    crop,
    degrees_to_micrometers,
    load_points,
    normalize,
    parse_points,
    to_native,
)
from mosaicstats.samplers import sample_blue_noise_opt, sample_white

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def grid_record(m=10, side=10.0):
    g = (np.stack(np.meshgrid(np.arange(m), np.arange(m), indexing="ij"), -1).reshape(-1, 2) + 0.5)
    g = g * side / m
    ps = PointSet2D(g, Domain(side, side, Topology.BOUNDED, Unit.MICROMETERS), label="grid")
    return MosaicRecord(ps, "grid", 1.0)


def test_degrees_to_micrometers():
    assert degrees_to_micrometers(1.0) == 288.0
    assert degrees_to_micrometers(0) == 0
    assert degrees_to_micrometers(0.5) == 144.0


def test_degrees_rejects_negative():
    with pytest.raises(ValueError):
        degrees_to_micrometers(-0.1)


def test_load_scales_coordinates(tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("1.0 2.0\n3.0 4.0\n")
    rec = load_points(f, scale_factor=2.0)
    np.testing.assert_array_equal(rec.pointset.points + rec.offset, [(2, 4), (6, 8)])
    assert rec.scale_factor == 2.0
    assert rec.pointset.domain.topology is Topology.BOUNDED
    assert rec.pointset.domain.unit is Unit.MICROMETERS


def test_load_declared_window():
    rec = load_points(os.path.join(FIXTURES, "window_90um.txt"))
    d = rec.pointset.domain
    assert (d.width, d.height) == (90.0, 90.0)
    assert rec.pointset.label == "window-90"
    assert rec.offset == (0.0, 0.0)


def test_load_window_scaled(tmp_path):
    f = tmp_path / "w.txt"
    f.write_text('# {"window": [45, 30]}\n1 1\n2 3\n')
    d = load_points(f, scale_factor=2.0).pointset.domain
    assert (d.width, d.height) == (90.0, 60.0)


def test_load_window_grows_to_cover_points(tmp_path):
    f = tmp_path / "w.txt"
    f.write_text('# {"window": [10, 10]}\n1 1\n12 3\n')
    d = load_points(f).pointset.domain
    assert d.width > 12 and d.height == 10


def test_load_duplicate_names_lines(tmp_path):
    f = tmp_path / "dup.txt"
    f.write_text("# {}\n1 2\n3 4\n\n1 2\n")
    with pytest.raises(DuplicatePointError, match="lines 2 and 5"):
        load_points(f)


def test_load_malformed_line(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("1 2\n3 x\n")
    with pytest.raises(ParseError) as e:
        load_points(f)
    assert e.value.lineno == 2


def test_load_too_few_points(tmp_path):
    f = tmp_path / "one.txt"
    f.write_text("1 2\n")
    with pytest.raises(InsufficientPointsError):
        load_points(f)


def test_load_rejects_bad_scale(tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("1 2\n3 4\n")
    with pytest.raises(ValueError):
        load_points(f, scale_factor=0)


@pytest.mark.parametrize("text", [
    "1 2 3\n", "nan 1\n1 2\n", "1 inf\n2 2\n", "1 2\n# late header\n", '# [1, 2]\n1 2\n3 4\n',
    "# {not json\n1 2\n", '# {"window": "abc"}\n1 1\n2 2\n',
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_points(text)


@settings(max_examples=300, deadline=None)
@given(st.binary(max_size=300))
def test_arbitrary_bytes_never_crash(data):
    try:
        parse_points(data)
    except MosaicError:
        pass


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="0123456789 .-e#\n\t{}[]\":,", max_size=200))
def test_arbitrary_text_never_crashes(text):
    try:
        parse_points(text)
    except MosaicError:
        pass


def test_crop_left_half():
    rec = crop(grid_record(), (0, 0, 5, 10))
    assert len(rec.pointset) == 50
    d = rec.pointset.domain
    assert (d.width, d.height) == (5.0, 10.0)
    assert rec.crop == (0.0, 0.0, 5.0, 10.0)


def test_crop_half_open_edges():
    # grid points sit at 0.5, 1.5, ...; a rect edge through 4.5 keeps it on the min side only
    rec = crop(grid_record(), (4.5, 0, 9.5, 10))
    assert len(rec.pointset) == 50
    assert rec.pointset.points[:, 0].min() == 0.0


def test_crop_full_domain_is_identity():
    base = grid_record()
    rec = crop(base, (0, 0, 10, 10))
    a = base.pointset.points[np.lexsort(base.pointset.points.T)]
    b = rec.pointset.points[np.lexsort(rec.pointset.points.T)]
    np.testing.assert_array_equal(a, b)


def test_crop_excluding_all_points():
    with pytest.raises(InsufficientPointsError):
        crop(grid_record(), (0.6, 0.6, 1.4, 1.4))


def test_crop_outside_domain():
    with pytest.raises(DomainError):
        crop(grid_record(), (20, 20, 30, 30))


def test_normalize_square_window():
    ps = PointSet2D([(45, 45), (10, 80)], Domain(90, 90, Topology.BOUNDED, Unit.MICROMETERS))
    out = normalize(MosaicRecord(ps, "x", 1.0))
    np.testing.assert_allclose(out.points[0], (0.5, 0.5))
    assert out.domain.width == 1.0 and out.domain.unit is Unit.NORMALIZED
    assert out.domain.topology is Topology.BOUNDED


def test_normalize_keeps_aspect():
    ps = PointSet2D([(89.9, 44.9), (10, 20)], Domain(90, 45, Topology.BOUNDED, Unit.MICROMETERS))
    out = normalize(MosaicRecord(ps, "x", 1.0))
    assert out.domain.height == 0.5
    assert out.points[:, 1].max() < 0.5


def test_normalize_round_trip_mu():
    rec = load_points(os.path.join(FIXTURES, "synthetic_foveal.txt"))
    rec = crop(rec, (10, 10, 100, 90))
    native = nn_stats(rec.pointset).mu
    unit = normalize(rec)
    assert to_native(nn_stats(unit).mu, unit) == pytest.approx(native, rel=1e-9)


def test_ri_independent_of_scale_factor():
    path = os.path.join(FIXTURES, "window_90um.txt")
    a = nn_stats(load_points(path, 1.0).pointset).ri
    b = nn_stats(load_points(path, 0.37).pointset).ri
    assert b == pytest.approx(a, rel=1e-9)


def test_format_number_is_positional_and_exact():
    for x in (5e-05, 0.1, 123.456, 1e-12, 0.9999999999999999):
        s = format_number(x)
        assert "e" not in s and float(s) == x


def test_point_set_round_trip(tmp_path):
    ps = sample_blue_noise_opt(64, 3, iterations=3)
    path = tmp_path / "p.txt"
    write_point_set(path, ps)
    back = read_point_set(path)
    np.testing.assert_array_equal(back.points, ps.points)
    assert back.domain == ps.domain and back.label == ps.label
    assert back.metadata["seed"] == 3 and back.metadata["kind"] == "blue"


def test_read_point_set_requires_domain(tmp_path):
    path = tmp_path / "raw.txt"
    path.write_text("1 2\n3 4\n")
    with pytest.raises(ParseError):
        read_point_set(path)


def test_curve_and_spectrum_exports(tmp_path):
    ps = sample_white(200, 1)
    c = pcf(ps)
    write_curve(tmp_path / "c.txt", c)
    header, vals, _ = read_columns(tmp_path / "c.txt")
    assert header["mode"] == "calibrated" and header["n"] == 200
    assert header["params"]["bins"] == 200
    np.testing.assert_array_equal(vals[:, 0], c.radii)
    np.testing.assert_array_equal(vals[:, 1], c.values)
    s = radial_spectrum(ps, 8)
    write_spectrum(tmp_path / "s.txt", s)
    _, sv, _ = read_columns(tmp_path / "s.txt")
    np.testing.assert_array_equal(sv[:, 1], s.power)

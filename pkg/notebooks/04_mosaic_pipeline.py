"""
From digitized cone positions to regularity statistics
======================================================

Cone coordinates usually arrive in image units with a known scale. This
walks one file from raw load to statistics. The
input is a synthetic mosaic with roughly foveal spacing (about 4 um), built by
tests/fixtures/make_fixtures.py, since no measured coordinates ship with
the package.
"""
import os

from mosaicstats import nn_stats, pcf, pcf_distance, regularity_report
from mosaicstats.formats import format_number
from mosaicstats.analysis import format_report
from mosaicstats.ingest import crop, degrees_to_micrometers, load_points, normalize, to_native
from mosaicstats.samplers import sample_white

here = os.path.dirname(os.path.abspath(__file__))
path = os.path.join(here, "..", "tests", "fixtures", "synthetic_foveal.txt")

rec = load_points(path, scale_factor=1.0)  # already in micrometres
ps = rec.pointset
print(f"{ps.label}: {len(ps)} cones in a {ps.domain.width:g} x {ps.domain.height:g} um window")

# A 0.3 degree patch, taken from the middle of the window.
side = degrees_to_micrometers(0.3)
x0 = (ps.domain.width - side) / 2
patch = crop(rec, (x0, x0, x0 + side, x0 + side))
print(f"0.3 deg = {format_number(side)} um; the patch keeps {len(patch.pointset)} cones")

st = nn_stats(patch.pointset)
print(f"mean spacing {st.mu:.3f} um, sd {st.sigma:.3f} um, RI {st.ri:.2f}")

# Normalized coordinates are unitless; lengths convert back exactly.
unit = normalize(patch)
print("mu via normalized coordinates:", to_native(nn_stats(unit).mu, unit), "um")

# Compare against a random arrangement with the same cone count.
rand = sample_white(len(unit), seed=11)
print(f"PCF l-inf distance from white noise: {pcf_distance(pcf(unit), pcf(rand)):.2f}")

print()
print(format_report(regularity_report([patch.pointset, rand])), end="")

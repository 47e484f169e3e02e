"""
Sampling patterns and their regularity
======================================

Five ways to put n points on the unit torus, from no structure at all to a
relaxed, nearly crystalline arrangement. The regularity index (mean over
standard deviation of the nearest-neighbour distance) orders them.
"""
import time

import numpy as np

from mosaicstats import max_min_distance, nn_stats
from mosaicstats.samplers import (
    sample_blue_noise_opt,
    sample_dart_throwing,
    sample_fast_poisson_disk,
    sample_jittered,
    sample_white,
)

n = 1024
d_hex = max_min_distance(n)
print(f"n = {n}, hexagonal spacing d_hex = {d_hex:.6f}")

# Poisson-disk samplers need a minimum distance; 3/4 of the hexagonal
# spacing is dense but still fills quickly.
r = 0.75 * d_hex

runs = [
    ("white", lambda: sample_white(n, seed=1)),
    ("jittered", lambda: sample_jittered(n, seed=1)),
    ("dart", lambda: sample_dart_throwing(n, r, seed=1)),
    ("poisson", lambda: sample_fast_poisson_disk(n, r, seed=1)),
    ("blue", lambda: sample_blue_noise_opt(n, seed=1)),
]

print(f"{'kind':10s}{'points':>8s}{'mu/d_hex':>10s}{'RI':>8s}{'time':>8s}")
for name, make in runs:
    t0 = time.perf_counter()
    ps = make()
    dt = time.perf_counter() - t0
    st = nn_stats(ps)
    print(f"{name:10s}{len(ps):8d}{st.mu / d_hex:10.3f}{st.ri:8.2f}{dt:7.2f}s")

# The fast Poisson-disk sampler stops when its active list runs dry, so it
# may return fewer points than asked for. Metadata says so.
ps = sample_fast_poisson_disk(n, 0.95 * d_hex, seed=2)
print("\nfast Poisson at 0.95 d_hex:", len(ps), "points, saturated =", ps.metadata["saturated"])

# Lloyd relaxation converges: RI climbs with the iteration count.
for it in (0, 5, 20, 100):
    st = nn_stats(sample_blue_noise_opt(n, seed=3, iterations=it))
    print(f"lloyd iterations {it:3d}: RI {st.ri:6.2f}")

# Same seed, same points.
a, b = sample_white(n, 9), sample_white(n, 9)
assert np.array_equal(a.points, b.points)

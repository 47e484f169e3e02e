"""
Radially averaged power spectrum
================================

Blue noise has little power at low frequencies and a flat tail above a
cutoff near sqrt(n). White noise is flat everywhere.
"""
import math

import numpy as np

from mosaicstats import radial_spectrum
from mosaicstats.samplers import sample_blue_noise_opt, sample_white

n = 4096
top = int(2 * math.sqrt(n))
white = radial_spectrum(sample_white(n, 4), top)
blue = radial_spectrum(sample_blue_noise_opt(n, 4), top)

print(f"{'|f|':>5s}{'white':>8s}{'blue':>8s}")
for k in (1, 8, 16, 32, 48, 64, 80, 96, 112, 128):
    print(f"{k:5d}{white.power[k - 1]:8.3f}{blue.power[k - 1]:8.3f}")

low = blue.freqs < 0.5 * math.sqrt(n)
high = blue.freqs >= 1.5 * math.sqrt(n)
for name, s in (("white", white), ("blue", blue)):
    print(f"{name}: low/high power ratio {s.power[low].mean() / s.power[high].mean():.3f}")

# The lowest frequency with blue power above one half is a rough
# estimate of where the spectrum's low-frequency gap ends.
edge = blue.freqs[np.argmax(blue.power > 0.5)]
print(f"blue power first exceeds 0.5 at |f| = {edge} (sqrt(n) = {math.sqrt(n):.0f})")

"""
Gray-coded constellations
=========================

Every modulation order ships unit average energy and Gray labeling, so a
nearest-neighbour symbol error flips exactly one bit.
"""

import numpy as np

from irsmas import make_constellation

for name, order in [("BPSK", 2), ("QPSK", 4), ("16-QAM", 16), ("64-QAM", 64)]:
    const = make_constellation(order)
    energy = np.mean(np.abs(const.points) ** 2)
    print(f"{name}: {order} points, mean energy {energy:.12f}")

# The full BPSK and QPSK mappings fit on a couple of lines.
for order in (2, 4):
    const = make_constellation(order)
    for label, point in enumerate(const.points):
        print(f"  {label:0{const.bits_per_sym}b} -> {point:+.4f}")

# Walk the real axis of 16-QAM: adjacent labels differ in a single bit.
const = make_constellation(16)
reals = sorted({p.real for p in const.points})
row = [p for p in const.points if abs(p.imag - reals[0]) < 1e-12]
row.sort(key=lambda p: p.real)
labels = [const.index_of(p) for p in row]
print("16-QAM bottom row labels:", [f"{l:04b}" for l in labels])
for a, b in zip(labels, labels[1:]):
    assert bin(a ^ b).count("1") == 1
print("adjacent labels differ by one bit: ok")

"""
Reflector alignment
===================

Each selected receive antenna owns a dedicated block of reflectors whose
phases cancel the channel phase toward it, turning the block's contribution
into a sum of magnitudes.  This script measures how much that buys over an
unconfigured surface and shows the per-antenna signal decomposition.
"""

import numpy as np

from irsmas import (
    SystemConfig,
    decompose_received,
    reflector_phases,
    sample_channel,
    snr_aligned,
    snr_unaligned,
    trial_rng,
)

cfg = SystemConfig(noise_sigma=0.1)
sel = np.array([3, 7])  # pretend the index bits picked antennas 3 and 7

gains = []
for trial in range(2000):
    ch = sample_channel(cfg.n_rx, cfg.n_refl, trial_rng(42, trial))
    gains.append(snr_aligned(ch, sel, cfg) / snr_unaligned(ch, sel, cfg))
gains = np.array(gains)
print(f"alignment gain over {len(gains)} channels:")
print(f"  median {np.median(gains):8.1f}x")
print(f"  5th pct {np.percentile(gains, 5):8.1f}x")

ch = sample_channel(cfg.n_rx, cfg.n_refl, trial_rng(42, 0))
theta = reflector_phases(ch.h[sel - 1, :], cfg.delta)
x = 1.0 + 0.0j

print("\nper-slot decomposition of the noiseless received sample:")
for slot in (1, 2):
    c, nc, lo = decompose_received(ch, theta, x, sel, slot)
    total = ch.h[sel[slot - 1] - 1, :] @ theta * x
    print(
        f"  antenna {sel[slot - 1]:2d}: constructive {abs(c):7.3f}  "
        f"cross-block {abs(nc):6.3f}  leftover {abs(lo):.3f}  "
        f"(sum check {abs(c + nc + lo - total):.2e})"
    )

# The constructive part is real-positive by construction: the dedicated
# block contributes sum(|h|) rather than a random phasor walk.
block = slice(0, cfg.delta)
expected = np.sum(np.abs(ch.h[sel[0] - 1, block]))
c, _, _ = decompose_received(ch, theta, x, sel, 1)
print(f"\nslot 1 dedicated block: sum of magnitudes {expected:.3f}, got {c.real:.3f}")

"""
Receiver complexity accounting
==============================

Multiply-accumulate counts for the exhaustive detector versus the
candidate-list detector, and how the gap widens with modulation order.
The candidate detector's cost depends only on how many rows it decodes,
not on the constellation size, so its advantage grows exponentially.
"""

import dataclasses

from irsmas import SasScheme, SystemConfig, mac_ml, mac_ssd
from irsmas.baselines import sas_mac

cfg = SystemConfig()

print(f"{'modulation':<12}{'ml macs':>12}{'ssd macs':>12}{'ratio':>10}")
for name, order in [("bpsk", 2), ("qpsk", 4), ("16qam", 16)]:
    c = dataclasses.replace(cfg, mod_order=order)
    ml = mac_ml(c)
    # worst case: the fallback padded the list to 15 rows
    ssd = mac_ssd(c, 15)
    print(f"{name:<12}{ml:>12,}{ssd:>12,}{ssd / ml:>10.5f}")

print("\nssd cost vs decoded-candidate count (bpsk):")
for n_cand in (8, 10, 12, 15):
    print(f"  {n_cand:2d} candidates -> {mac_ssd(cfg, n_cand):,} macs")

print("\nsingle-antenna baselines (16 rx, exhaustive detection):")
for mode, order in [("ssk", 2), ("sm", 2), ("sm", 4)]:
    scheme = SasScheme(mode=mode, n_rx=16, mod_order=order)
    label = mode if mode == "ssk" else f"{mode}-{'bpsk' if order == 2 else 'qpsk'}"
    print(f"  {label:<8} {scheme.bits_per_tx} bits/tx, "
          f"{sas_mac(scheme, cfg.n_refl):,} macs")

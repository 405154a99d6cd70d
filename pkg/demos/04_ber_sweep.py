"""
BER sweep and CSV output
========================

Runs a short Monte Carlo sweep for both detectors, prints the waterfall,
writes the rows to demo_sweep.csv, and saves a log-scale plot when
matplotlib is importable.  Bump TRIALS for smoother curves.
"""

import csv

from irsmas import CSV_COLUMNS, SystemConfig, run_sweep

TRIALS = 2000

cfg = SystemConfig(n_trials=TRIALS, error_budget=None)
curves = {}
for detector in ("ssd", "ml"):
    rows = run_sweep(cfg, scheme="mas", detector=detector)
    curves[detector] = rows
    print(f"\n{detector} detector:")
    for r in rows:
        print(f"  {r.snr_db:6.1f} dB  ber {r.ber:.2e}  bler {r.bler:.2e}  "
              f"throughput {r.asbt_perbit:.3f} bits/tx")

with open("demo_sweep.csv", "w", newline="") as fh:
    writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
    writer.writeheader()
    for rows in curves.values():
        writer.writerows(r.as_dict() for r in rows)
print("\nwrote demo_sweep.csv")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not available, skipping plot")
else:
    fig, ax = plt.subplots()
    for detector, rows in curves.items():
        ax.semilogy([r.snr_db for r in rows], [max(r.ber, 1e-6) for r in rows],
                    marker="o", label=detector)
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("BER")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.savefig("demo_sweep.png", dpi=120)
    print("wrote demo_sweep.png")

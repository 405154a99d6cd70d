"""Single-antenna baseline schemes: all reflectors steer to one target antenna.

The index-only variant (ssk) carries log2(n_rx) bits in the antenna choice
alone and transmits the bare symbol energy; the modulated variant (sm)
appends one constellation symbol.  Both are detected with an exhaustive
search, which is affordable because the hypothesis count is small.
"""

from dataclasses import dataclass, field

import numpy as np

from .core import Constellation, make_constellation, bits_to_int, int_to_bits
from .transmitter import reflector_phases


@dataclass
class SasScheme:
    """Configuration for a single-target-antenna baseline."""

    mode: str = "ssk"        # "ssk" (index only) or "sm" (index + one symbol)
    n_rx: int = 16
    mod_order: int = 2       # ignored in ssk mode
    sym_energy: float = 1.0
    const: Constellation = field(init=False, repr=False)

    def __post_init__(self):
        if self.mode not in ("ssk", "sm"):
            raise ValueError(f"mode must be 'ssk' or 'sm', got {self.mode!r}")
        if self.n_rx < 2 or self.n_rx & (self.n_rx - 1):
            raise ValueError(f"n_rx must be a power of two >= 2, got {self.n_rx}")
        self.const = make_constellation(self.mod_order)

    @property
    def bits_per_sym(self) -> int:
        return self.const.order.bit_length() - 1

    @property
    def bits_per_tx(self) -> int:
        antenna_bits = self.n_rx.bit_length() - 1
        return antenna_bits + (self.bits_per_sym if self.mode == "sm" else 0)


def sas_encode(bits: np.ndarray, channel, scheme: SasScheme):
    """Map a bit block to (transmit scalar, reflector phases, target antenna).

    The leading bits pick the target antenna (1-based); every reflector is
    phase-aligned to that antenna's channel row.  In sm mode the remaining
    bits choose a constellation point.
    """
    if len(bits) != scheme.bits_per_tx:
        raise ValueError(f"expected {scheme.bits_per_tx} bits, got {len(bits)}")
    antenna_bits = scheme.n_rx.bit_length() - 1
    target = bits_to_int(bits[:antenna_bits]) + 1
    theta = reflector_phases(channel.h[target - 1 : target, :], channel.shape[1])
    if scheme.mode == "sm":
        label = bits_to_int(bits[antenna_bits:])
        x = scheme.sym_energy * scheme.const.points[label]
    else:
        x = complex(scheme.sym_energy)
    return x, theta, target


def sas_detect(y: np.ndarray, channel, scheme: SasScheme):
    """Exhaustive search over target antennas (and symbols in sm mode).

    Returns (bits, distance, mac_count).  Ties resolve to the lowest
    antenna, then the lowest symbol label.
    """
    n_refl = channel.shape[1]
    if scheme.mode == "sm":
        values = scheme.sym_energy * scheme.const.points
    else:
        values = np.array([scheme.sym_energy], dtype=complex)

    best = (np.inf, -1, -1)
    for target in range(1, scheme.n_rx + 1):
        theta = reflector_phases(channel.h[target - 1 : target, :], n_refl)
        g = channel.h @ theta
        d = np.sum(np.abs(y[:, None] - np.outer(g, values)) ** 2, axis=0)
        t = int(np.argmin(d))
        if d[t] < best[0]:
            best = (float(d[t]), target, t)

    distance, target, t = best
    antenna_bits = scheme.n_rx.bit_length() - 1
    parts = [int_to_bits(target - 1, antenna_bits)]
    if scheme.mode == "sm":
        parts.append(int_to_bits(t, scheme.bits_per_sym))
    bits = np.concatenate(parts)
    return bits, distance, sas_mac(scheme, n_refl)


def sas_mac(scheme: SasScheme, n_refl: int) -> int:
    """Multiply-accumulate count for one exhaustive baseline detection."""
    base = 8 * scheme.n_rx * n_refl + 10 * scheme.n_rx - 1
    return 2**scheme.bits_per_tx * base

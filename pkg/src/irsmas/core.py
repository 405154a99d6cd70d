"""Scenario configuration, Gray-coded constellations, and bit/integer helpers."""

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

# Modulation orders supported by make_constellation, keyed by CLI/config name.
MOD_ORDERS = {"bpsk": 2, "qpsk": 4, "qam16": 16, "qam64": 64}
MOD_NAMES = {order: name for name, order in MOD_ORDERS.items()}

ALPHA_SUM_TOL = 1e-12
ENERGY_TOL = 1e-12
# Minimum gap (relative to symbol energy) between any two superposed values.
SUPERPOSITION_GAP = 1e-9


class Constellation:
    """Gray-coded constellation with unit average energy.

    ``points[label]`` is the complex point for the big-endian integer value
    of the label's bit pattern, so the bit map is the array index itself.
    """

    def __init__(self, points: np.ndarray):
        self.points = np.asarray(points, dtype=complex)
        self.order = len(self.points)
        self.bits_per_sym = int(round(math.log2(self.order)))

    def index_of(self, point: complex) -> int:
        """Label of the nearest constellation point (first on exact ties)."""
        return int(np.argmin(np.abs(self.points - point)))

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Constellation(order={self.order})"


def _gray_levels(bits: int) -> np.ndarray:
    """Amplitude levels for one axis, indexed by the Gray-coded bit value.

    Level order runs from most positive to most negative so that a leading
    0 bit always selects the positive half-axis (BPSK: 0 -> +1, 1 -> -1).
    """
    n = 1 << bits
    levels = np.empty(n)
    for rank in range(n):
        gray = rank ^ (rank >> 1)
        levels[gray] = (n - 1) - 2 * rank
    return levels


def make_constellation(mod_order: int) -> Constellation:
    """Build the Gray-coded, unit-average-energy constellation for M-ary modulation.

    BPSK (M=2) lives on the real axis; 4/16/64-QAM are square grids with
    per-axis Gray labelling, first half of the bits on I, second half on Q.
    """
    if mod_order not in MOD_ORDERS.values():
        raise ValueError(
            f"mod_order: unsupported order {mod_order} (expected one of "
            f"{sorted(MOD_ORDERS.values())})"
        )
    mu = int(round(math.log2(mod_order)))
    if mod_order == 2:
        points = _gray_levels(1).astype(complex)
    else:
        i_bits = mu // 2
        q_bits = mu - i_bits
        i_levels = _gray_levels(i_bits)
        q_levels = _gray_levels(q_bits)
        points = np.empty(mod_order, dtype=complex)
        for label in range(mod_order):
            i_val = label >> q_bits
            q_val = label & ((1 << q_bits) - 1)
            points[label] = i_levels[i_val] + 1j * q_levels[q_val]
    points /= np.sqrt(np.mean(np.abs(points) ** 2))
    return Constellation(points)


def bits_to_int(bits) -> int:
    """Big-endian bit vector -> integer (first bit most significant)."""
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


def int_to_bits(value: int, width: int) -> np.ndarray:
    """Integer -> big-endian bit vector of the given width. Inverse of bits_to_int."""
    if not 0 <= value < (1 << width):
        raise ValueError(f"value {value} does not fit in {width} bits")
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.int64)


@dataclass(frozen=True)
class SystemConfig:
    """All scenario parameters. Immutable; derived quantities are properties.

    Defaults reproduce the headline scenario: 12 receive antennas, 2 selected,
    64 reflectors, BPSK, power split [0.2, 0.8], 6 candidate antennas and 8
    decoder iterations.
    """

    n_rx: int = 12
    n_sel: int = 2
    n_refl: int = 64
    mod_order: int = 2
    alpha: tuple = (0.2, 0.8)
    sym_energy: float = 1.0
    noise_sigma: float = 0.0
    n_cand_antennas: int = 6
    n_iters: int = 8
    snr_grid_db: tuple = (-20.0, -18.0, -16.0, -14.0, -12.0, -10.0, -8.0)
    n_trials: int = 100_000
    seed: int = 0
    # Subtract all previously decoded components instead of only the most
    # recent one during successive decoding (only differs for n_sel > 2).
    cumulative_sic: bool = False
    # Stop a sweep point once this many block errors accumulate (None = never).
    error_budget: int = 500
    # Refuse exhaustive ML search beyond this many (combination, symbol) pairs.
    ml_guard: int = 2**20

    @property
    def bits_per_sym(self) -> int:
        return int(round(math.log2(self.mod_order)))

    @property
    def l1(self) -> int:
        """Bits carried by the antenna-combination index."""
        return math.floor(math.log2(math.comb(self.n_rx, self.n_sel)))

    @property
    def l2(self) -> int:
        """Bits carried by the symbol-modulation part."""
        return self.n_sel * self.bits_per_sym

    @property
    def block_len(self) -> int:
        """Total bits per transmission."""
        return self.l1 + self.l2

    @property
    def delta(self) -> int:
        """Reflectors dedicated to each selected antenna."""
        return self.n_refl // self.n_sel

    @property
    def n_rac(self) -> int:
        """Number of legitimate receive-antenna combinations."""
        return 1 << self.l1


def _superposition_min_gap(cfg: SystemConfig, points: np.ndarray) -> float:
    """Smallest pairwise distance among all superposed transmit values."""
    scale = np.sqrt(np.asarray(cfg.alpha)) * cfg.sym_energy
    values = np.array(
        [np.dot(scale, [points[t] for t in tup]) for tup in product(range(len(points)), repeat=cfg.n_sel)]
    )
    gap = np.inf
    chunk = 512
    for lo in range(0, len(values), chunk):
        block = values[lo : lo + chunk]
        d = np.abs(block[:, None] - values[None, :])
        d[d == 0.0] = np.inf  # self-distances on the diagonal
        gap = min(gap, d.min())
    return float(gap)


def validate_config(cfg: SystemConfig) -> SystemConfig:
    """Check every invariant of a SystemConfig; raise ValueError naming each violation."""
    problems = []
    if cfg.n_rx < 1:
        problems.append("n_rx: must be a positive integer")
    if cfg.n_sel < 1:
        problems.append("n_sel: must be a positive integer")
    elif cfg.n_sel >= cfg.n_rx:
        problems.append(f"n_sel: must be smaller than n_rx ({cfg.n_sel} >= {cfg.n_rx})")
    if cfg.n_refl < 1:
        problems.append("n_refl: must be a positive integer")
    elif cfg.n_sel >= 1 and cfg.n_refl < cfg.n_sel:
        problems.append(
            f"n_refl: need at least one reflector per selected antenna "
            f"({cfg.n_refl} < {cfg.n_sel})"
        )
    if cfg.mod_order not in MOD_ORDERS.values():
        problems.append(f"mod_order: unsupported order {cfg.mod_order}")
    if len(cfg.alpha) != cfg.n_sel:
        problems.append(f"alpha: expected {cfg.n_sel} ratios, got {len(cfg.alpha)}")
    else:
        if any(a <= 0 for a in cfg.alpha):
            problems.append("alpha: ratios must be positive")
        if abs(sum(cfg.alpha) - 1.0) > ALPHA_SUM_TOL:
            problems.append(f"alpha: ratios must sum to 1 (got {sum(cfg.alpha)!r})")
        if any(a >= b for a, b in zip(cfg.alpha, cfg.alpha[1:])):
            problems.append("alpha: ratios must be strictly increasing")
    if cfg.sym_energy <= 0:
        problems.append("sym_energy: must be positive")
    if cfg.noise_sigma < 0:
        problems.append("noise_sigma: must be non-negative")
    if not cfg.n_sel <= cfg.n_cand_antennas <= cfg.n_rx:
        problems.append(
            f"n_cand_antennas: must satisfy n_sel <= n_c <= n_rx "
            f"(got {cfg.n_cand_antennas})"
        )
    if cfg.n_iters < 1:
        problems.append("n_iters: must be a positive integer")
    if cfg.n_trials < 1:
        problems.append("n_trials: must be a positive integer")
    if not 0 <= cfg.seed < 2**64:
        problems.append("seed: must fit in an unsigned 64-bit integer")

    # Superposed transmit values must be pairwise distinct or detection is
    # ill-posed; only checkable once alpha itself is well formed.
    if not problems and cfg.mod_order ** cfg.n_sel <= 4096:
        const = make_constellation(cfg.mod_order)
        gap = _superposition_min_gap(cfg, const.points)
        if gap <= SUPERPOSITION_GAP * cfg.sym_energy:
            problems.append(
                f"alpha: superposed transmit values collide (min gap {gap:.3e})"
            )

    if problems:
        raise ValueError("invalid configuration: " + "; ".join(problems))
    return cfg

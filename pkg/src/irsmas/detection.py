"""Receivers: the optimal exhaustive ML demodulator and the low-complexity
successive signal detection (SSD) receiver, plus their MAC-complexity models.

The SSD receiver first ranks antenna combinations by received power (the
candidate sorter), then for each of the top candidates re-derives the
reflector configuration, peels the superposed symbols off weakest-slot
first, rebuilds the transmit scalar, and keeps the candidate whose
reconstruction is closest to the observed vector.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .core import Constellation, SystemConfig, int_to_bits
from .rac import RacTable, rac_find, rac_row
from .transmitter import reflector_phases, sort_weights_asc, sort_weights_desc


@dataclass
class CandidateSet:
    """Ranked antenna-combination candidates for the SSD receiver."""

    rows: np.ndarray     # lambda x n_sel candidate antenna rows (1-based)
    scores: np.ndarray   # received-power score per candidate row
    order: np.ndarray    # positions into rows, best score first


@dataclass
class DetectionResult:
    """Decoder output: antenna-combination index, per-slot symbols, bits."""

    rac_index: int
    symbols: np.ndarray   # constellation point per slot
    bits: np.ndarray
    distance: float
    mac_count: int


def quantize(value: complex, ratio: float, sym_energy: float, const: Constellation) -> complex:
    """Nearest constellation point once scaled by sqrt(ratio)*E_s (first point on ties)."""
    scaled = np.sqrt(ratio) * sym_energy * const.points
    return complex(const.points[np.argmin(np.abs(value - scaled))])


def superposition_set(cfg: SystemConfig, const: Constellation):
    """All M^n_sel superposed transmit values with their symbol-label tuples.

    Tuples are enumerated lexicographically; tuple position i carries power
    ratio alpha[i].
    """
    labels = np.array(list(product(range(const.order), repeat=cfg.n_sel)), dtype=np.int64)
    scale = np.sqrt(np.asarray(cfg.alpha)) * cfg.sym_energy
    values = const.points[labels] @ scale.astype(complex)
    return values, labels


def rac_candidates(y: np.ndarray, table: RacTable, n_c: int, n_iters: int) -> CandidateSet:
    """Rank legitimate antenna rows by received power around the top-n_c antennas.

    A row qualifies outright when all of its antennas are among the n_c
    largest |y|^2.  If fewer than n_iters rows qualify, membership is
    relaxed one antenna at a time (rows with n_sel-1 antennas in the top
    set, then n_sel-2, ...) until enough rows exist or the table is
    exhausted.  Scores are the summed received powers of each row's
    antennas; the returned order sorts them descending.
    """
    power = np.abs(y) ** 2
    ranked = np.argsort(-power, kind="stable")  # antenna indices, 0-based
    top_mask = np.zeros(len(y), dtype=bool)
    top_mask[ranked[:n_c]] = True

    in_top = top_mask[table.rows - 1].sum(axis=1)
    n_sel = table.rows.shape[1]
    keep: list[np.ndarray] = []
    total = 0
    for misses in range(n_sel + 1):
        tier = np.flatnonzero(in_top == n_sel - misses)
        if tier.size:
            keep.append(tier)
            total += tier.size
        if total >= n_iters:
            break
    chosen = np.concatenate(keep) if keep else np.empty(0, dtype=np.int64)
    rows = table.rows[chosen]
    scores = power[rows - 1].sum(axis=1)
    order = np.argsort(-scores, kind="stable")
    return CandidateSet(rows=rows, scores=scores, order=order)


def ssd_candidate_decode(
    y: np.ndarray,
    channel,
    p_hat: int,
    cfg: SystemConfig,
    table: RacTable,
    const: Constellation,
):
    """Successively decode the superposed symbols assuming antenna row p_hat.

    Slots are visited weakest channel first; the first slot is quantized
    against the largest power ratio directly, later slots after subtracting
    the previously decoded component.  Returns (per-slot symbols,
    reconstructed transmit scalar, squared distance over all antennas).
    A zero effective gain on any visited slot disqualifies the candidate
    with an infinite distance.
    """
    sel = rac_row(table, p_hat)
    sel_channel = channel.h[sel - 1, :]
    weights = np.linalg.norm(sel_channel, axis=1)
    order = sort_weights_asc(weights)
    theta = reflector_phases(sel_channel, cfg.delta)
    gains = sel_channel @ theta  # per-slot effective gain, slot j at gains[j-1]

    n_sel = cfg.n_sel
    e_s = cfg.sym_energy
    symbols = np.zeros(n_sel, dtype=complex)
    for i in range(1, n_sel + 1):
        slot = order[i - 1]
        gain = gains[slot - 1]
        if gain == 0:
            return symbols, 0j, np.inf
        v = y[sel[slot - 1] - 1] / gain
        if i > 1:
            if cfg.cumulative_sic:
                for j in range(1, i):
                    prev = order[j - 1]
                    v -= np.sqrt(cfg.alpha[n_sel - j]) * e_s * symbols[prev - 1]
            else:
                prev = order[i - 2]
                v -= np.sqrt(cfg.alpha[n_sel - i + 1]) * e_s * symbols[prev - 1]
        symbols[slot - 1] = quantize(v, cfg.alpha[n_sel - i], e_s, const)

    x_hat = 0j
    for i in range(1, n_sel + 1):
        x_hat += np.sqrt(cfg.alpha[n_sel - i]) * e_s * symbols[order[i - 1] - 1]
    distance = float(np.sum(np.abs(y - channel.h @ theta * x_hat) ** 2))
    return symbols, complex(x_hat), distance


def ssd_detect(
    y: np.ndarray,
    channel,
    cfg: SystemConfig,
    table: RacTable,
    const: Constellation,
) -> DetectionResult:
    """Full SSD receiver: rank candidates, decode the best n_iters, keep the closest."""
    cands = rac_candidates(y, table, cfg.n_cand_antennas, cfg.n_iters)
    n_cand = len(cands.rows)
    best_d = np.inf
    best_p = None
    best_symbols = None
    for v in range(min(cfg.n_iters, n_cand)):
        p_hat = rac_find(table, cands.rows[cands.order[v]])
        symbols, _, d = ssd_candidate_decode(y, channel, p_hat, cfg, table, const)
        if d < best_d:
            best_d = d
            best_p = p_hat
            best_symbols = symbols
    if best_p is None:  # every candidate had a degenerate zero gain
        best_p = rac_find(table, cands.rows[cands.order[0]])
        best_symbols = np.full(cfg.n_sel, const.points[0])
    bits = detection_to_bits(best_p, best_symbols, cfg, table, const)
    return DetectionResult(
        rac_index=best_p,
        symbols=best_symbols,
        bits=bits,
        distance=best_d,
        mac_count=mac_ssd(cfg, n_cand),
    )


def ml_detect(
    y: np.ndarray,
    channel,
    cfg: SystemConfig,
    table: RacTable,
    const: Constellation,
) -> DetectionResult:
    """Jointly optimal exhaustive search over antenna rows and superposed values.

    Minimizes ||y - H theta_p x||^2 over every legitimate row p and every
    value x in the superposition set.  Ties resolve to the smaller p, then
    the lexicographically earlier symbol tuple.
    """
    n_hyp = table.row_count * const.order**cfg.n_sel
    if n_hyp > cfg.ml_guard:
        raise ValueError(
            f"ML search space {n_hyp} exceeds guard {cfg.ml_guard}; use the SSD detector"
        )
    values, labels = superposition_set(cfg, const)

    # One reflector configuration per row, built column-wise for all rows.
    n_refl = channel.shape[1]
    delta = cfg.delta
    theta_all = np.empty((n_refl, table.row_count), dtype=complex)
    for i in range(cfg.n_sel):
        block = slice(i * delta, (i + 1) * delta)
        theta_all[block, :] = np.exp(-1j * np.angle(channel.h[table.rows[:, i] - 1, block])).T
    tail = slice(cfg.n_sel * delta, n_refl)
    theta_all[tail, :] = np.exp(-1j * np.angle(channel.h[table.rows[:, 0] - 1, tail])).T
    gains = channel.h @ theta_all  # n_rx x C

    best = (np.inf, -1, -1)
    chunk = max(1, 2**14 // len(values))
    for lo in range(0, table.row_count, chunk):
        g = gains[:, lo : lo + chunk]
        d = np.sum(
            np.abs(y[:, None, None] - g[:, :, None] * values[None, None, :]) ** 2,
            axis=0,
        )
        flat = int(np.argmin(d))
        p_off, t = divmod(flat, len(values))
        if d[p_off, t] < best[0]:
            best = (float(d[p_off, t]), lo + p_off, t)

    distance, p_hat, t_hat = best
    sel = rac_row(table, p_hat)
    order = sort_weights_desc(np.linalg.norm(channel.h[sel - 1, :], axis=1))
    symbols = np.zeros(cfg.n_sel, dtype=complex)
    for i, slot in enumerate(order):
        symbols[slot - 1] = const.points[labels[t_hat, i]]
    bits = detection_to_bits(p_hat, symbols, cfg, table, const)
    return DetectionResult(
        rac_index=p_hat,
        symbols=symbols,
        bits=bits,
        distance=distance,
        mac_count=mac_ml(cfg),
    )


def detection_to_bits(
    p_hat: int,
    symbols,
    cfg: SystemConfig,
    table: RacTable,
    const: Constellation,
) -> np.ndarray:
    """Recover the bit block from a detected row index and per-slot symbols."""
    parts = [int_to_bits(p_hat, cfg.l1)]
    for slot in range(1, cfg.n_sel + 1):
        label = const.index_of(symbols[slot - 1])
        parts.append(int_to_bits(label, cfg.bits_per_sym))
    return np.concatenate(parts)


def mac_ssd(cfg: SystemConfig, n_cand: int) -> int:
    """Multiply-accumulate count charged to one SSD detection with n_cand candidates."""
    base = 8 * cfg.n_rx * cfg.n_refl + 10 * cfg.n_rx - 1
    return cfg.n_iters * base + n_cand * (cfg.n_sel - 1) + 3 * cfg.n_rx


def mac_ml(cfg: SystemConfig) -> int:
    """Multiply-accumulate count charged to one exhaustive ML detection."""
    base = 8 * cfg.n_rx * cfg.n_refl + 10 * cfg.n_rx - 1
    return 2 ** (cfg.l1 + cfg.l2) * base

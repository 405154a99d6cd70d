"""Transmit-side processing: weight sorting, superposition coding, reflector phases.

A transmission targets the antenna set selected by the first l1 bits.  The
remaining bits modulate one symbol per selected antenna ("slot"); all slot
symbols are combined into a single complex scalar by superposition coding,
with the smallest power ratio assigned to the slot whose channel row is
strongest.  Each selected antenna also gets a dedicated block of reflectors
whose phases cancel that antenna's channel phases.
"""

from dataclasses import dataclass

import numpy as np

from .core import Constellation, SystemConfig, bits_to_int
from .rac import RacTable, rac_row


@dataclass
class TxOutput:
    """Everything the transmitter produces for one block of bits."""

    x: complex                # superposed transmit scalar
    theta: np.ndarray         # unit-modulus reflector phase vector, length n_refl
    sel: np.ndarray           # selected antennas (1-based)
    order_desc: np.ndarray    # slot permutation, strongest channel first (1-based)
    weights: np.ndarray       # per-slot channel row norms
    delta: int                # reflectors dedicated to each selected antenna


def sort_weights_desc(weights) -> np.ndarray:
    """Slot indices (1-based) ordered by descending weight, ties to the smaller slot."""
    w = np.asarray(weights, dtype=float)
    return np.argsort(-w, kind="stable") + 1


def sort_weights_asc(weights) -> np.ndarray:
    """Ascending slot order, defined as the exact reverse of the descending one.

    Reversing (rather than sorting again) keeps transmitter and receiver
    consistent even when two slots have equal weight.
    """
    return sort_weights_desc(weights)[::-1]


def superpose(symbols, order_desc, alpha, sym_energy: float = 1.0) -> complex:
    """Combine per-slot symbols into one scalar: x = sum_i sqrt(alpha_i) E_s s_{k_i}.

    ``symbols`` is indexed by slot; ``order_desc[i]`` names the slot whose
    symbol is scaled by ``alpha[i]``.  With alpha increasing, the strongest
    slot therefore receives the smallest share of the power.
    """
    symbols = np.asarray(symbols)
    x = 0j
    for i, slot in enumerate(order_desc):
        x += np.sqrt(alpha[i]) * sym_energy * symbols[slot - 1]
    return complex(x)


def reflector_phases(sel_channel: np.ndarray, delta: int) -> np.ndarray:
    """Unit-modulus phase vector aligning reflector block i to selected antenna i.

    Block i covers reflectors (i-1)*delta .. i*delta-1 and conjugates the
    phases of row i of the selected channel.  Reflectors beyond
    n_sel*delta (present only when n_sel does not divide n_refl) are
    aligned to row 0.
    """
    sel_channel = np.atleast_2d(sel_channel)
    n_sel, n_refl = sel_channel.shape
    theta = np.empty(n_refl, dtype=complex)
    for i in range(n_sel):
        block = slice(i * delta, (i + 1) * delta)
        theta[block] = np.exp(-1j * np.angle(sel_channel[i, block]))
    tail = slice(n_sel * delta, n_refl)
    theta[tail] = np.exp(-1j * np.angle(sel_channel[0, tail]))
    return theta


def encode(bits, channel, cfg: SystemConfig, table: RacTable, const: Constellation) -> TxOutput:
    """Map one block of bits to the transmit scalar and reflector configuration.

    The first l1 bits pick the antenna combination; bit block j (of
    bits_per_sym bits) modulates slot j's symbol.  Power ratio alpha[i] goes
    to the slot in descending-weight position i.
    """
    bits = np.asarray(bits)
    if len(bits) != cfg.block_len:
        raise ValueError(f"expected {cfg.block_len} bits, got {len(bits)}")
    mu = cfg.bits_per_sym
    p = bits_to_int(bits[: cfg.l1])
    sel = rac_row(table, p)
    sel_channel = channel.h[sel - 1, :]
    weights = np.linalg.norm(sel_channel, axis=1)
    order = sort_weights_desc(weights)

    x = 0j
    for i, slot in enumerate(order):
        start = cfg.l1 + (slot - 1) * mu
        label = bits_to_int(bits[start : start + mu])
        x += np.sqrt(cfg.alpha[i]) * cfg.sym_energy * const.points[label]

    theta = reflector_phases(sel_channel, cfg.delta)
    return TxOutput(
        x=complex(x),
        theta=theta,
        sel=sel,
        order_desc=order,
        weights=weights,
        delta=cfg.delta,
    )

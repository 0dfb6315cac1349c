"""Single-chirp schemes: one activated frequency shift per symbol.

Bit layout is MSB-first with the frequency-shift field first, followed by
the scheme's extra fields in the order listed in each modulator docstring.
Coherent detectors maximize the real part of de-chirped DFT bins,
non-coherent ones the magnitude.  Ties break toward the lowest bin index /
lowest hypothesis number (argmax returns the first maximum).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..core import (
    COHERENT,
    SchemeConfig,
    bits_to_int,
    chirp,
    dechirp_spectrum,
    fs_tone,
    int_to_bits,
)


@lru_cache(maxsize=32)
def _interleave_perm(M: int) -> np.ndarray:
    q = M // 4
    perm = np.concatenate([
        np.arange(0, q),
        np.arange(2 * q, 3 * q),
        np.arange(q, 2 * q),
        np.arange(3 * q, 4 * q),
    ])
    perm.flags.writeable = False
    return perm


def interleave(frame: np.ndarray) -> np.ndarray:
    """Swap the 2nd and 3rd quarters of a frame; an involution."""
    frame = np.asarray(frame)
    M = frame.shape[0]
    if M % 4:
        raise ValueError(f"interleaving needs M divisible by 4, got {M}")
    return frame[_interleave_perm(M)]


def bin_metric(R: np.ndarray, mode: str) -> np.ndarray:
    return R.real if mode == COHERENT else np.abs(R)


# ---------------------------------------------------------------------------
# LoRa
# ---------------------------------------------------------------------------

def modulate_lora(config: SchemeConfig, bits: np.ndarray) -> np.ndarray:
    """Layout: [k]."""
    k = bits_to_int(bits)
    return fs_tone(config.M, k) * chirp(config.M, 1)


def detect_lora(config: SchemeConfig, frame: np.ndarray, mode: str) -> np.ndarray:
    metric = bin_metric(dechirp_spectrum(frame, 1), mode)
    return int_to_bits(int(np.argmax(metric)), config.sf)


# ---------------------------------------------------------------------------
# ICS-LoRa: optionally interleave the chirped symbol
# ---------------------------------------------------------------------------

def modulate_ics_lora(config: SchemeConfig, bits: np.ndarray) -> np.ndarray:
    """Layout: [k][interleave flag]."""
    s = modulate_lora(config, bits[: config.sf])
    return interleave(s) if bits[config.sf] else s


def detect_ics_lora(config: SchemeConfig, frame: np.ndarray, mode: str) -> np.ndarray:
    m_plain = bin_metric(dechirp_spectrum(frame, 1), mode)
    m_inter = bin_metric(dechirp_spectrum(interleave(frame), 1), mode)
    flag = 0 if m_plain.max() >= m_inter.max() else 1
    metric = m_plain if flag == 0 else m_inter
    k = int(np.argmax(metric))
    return np.concatenate([int_to_bits(k, config.sf), [flag]]).astype(np.uint8)


# ---------------------------------------------------------------------------
# E-LoRa: information on the in-phase or the quadrature component
# ---------------------------------------------------------------------------

def modulate_e_lora(config: SchemeConfig, bits: np.ndarray) -> np.ndarray:
    """Layout: [k][I/Q flag]."""
    f = fs_tone(config.M, bits_to_int(bits[: config.sf]))
    if bits[config.sf]:
        f = 1j * f
    return f * chirp(config.M, 1)


def detect_e_lora(config: SchemeConfig, frame: np.ndarray, mode: str) -> np.ndarray:
    R = dechirp_spectrum(frame, 1)
    flag = 0 if R.real.max() >= R.imag.max() else 1
    part = R.real if flag == 0 else R.imag
    k = int(np.argmax(part))
    return np.concatenate([int_to_bits(k, config.sf), [flag]]).astype(np.uint8)


# ---------------------------------------------------------------------------
# PSK-LoRa: extra bits in a phase shift on the un-chirped symbol
# ---------------------------------------------------------------------------

def psk_points(cardinality: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(cardinality) / cardinality)


def nearest_psk(angle: float, cardinality: int) -> int:
    # Half-up rounding keeps the decision deterministic on boundary angles.
    return int(np.floor(angle * cardinality / (2.0 * np.pi) + 0.5)) % cardinality


def modulate_psk_lora(config: SchemeConfig, bits: np.ndarray) -> np.ndarray:
    """Layout: [k][p]; the phase is exp(j 2 pi p / cardinality)."""
    k = bits_to_int(bits[: config.sf])
    p = bits_to_int(bits[config.sf :])
    phi = np.exp(2j * np.pi * p / config.psk_cardinality)
    return fs_tone(config.M, k) * phi * chirp(config.M, 1)


def detect_psk_lora(config: SchemeConfig, frame: np.ndarray, mode: str) -> np.ndarray:
    R = dechirp_spectrum(frame, 1)
    card = config.psk_cardinality
    ps_bits = card.bit_length() - 1
    if mode == COHERENT:
        # Joint ML over the full (k, p) grid.
        scores = np.real(R[:, None] * np.conj(psk_points(card))[None, :])
        flat = int(np.argmax(scores))
        k, p = divmod(flat, card)
    else:
        k = int(np.argmax(np.abs(R)))
        p = nearest_psk(float(np.angle(R[k])), card)
    return np.concatenate([int_to_bits(k, config.sf), int_to_bits(p, ps_bits)]).astype(np.uint8)


# ---------------------------------------------------------------------------
# SSK-LoRa: up-chirp or down-chirp spreading
# ---------------------------------------------------------------------------

def modulate_ssk_lora(config: SchemeConfig, bits: np.ndarray) -> np.ndarray:
    """Layout: [k][slope flag]; flag 0 spreads with the up-chirp."""
    rate = 1 if bits[config.sf] == 0 else -1
    return fs_tone(config.M, bits_to_int(bits[: config.sf])) * chirp(config.M, rate)


def detect_ssk_lora(config: SchemeConfig, frame: np.ndarray, mode: str) -> np.ndarray:
    m_up = bin_metric(dechirp_spectrum(frame, 1), mode)
    m_down = bin_metric(dechirp_spectrum(frame, -1), mode)
    flag = 0 if m_up.max() >= m_down.max() else 1
    metric = m_up if flag == 0 else m_down
    k = int(np.argmax(metric))
    return np.concatenate([int_to_bits(k, config.sf), [flag]]).astype(np.uint8)


# ---------------------------------------------------------------------------
# DCRK-LoRa: one of cr_count distinct chirp rates
# ---------------------------------------------------------------------------

def dcrk_rate(index: int, cr_count: int) -> int:
    """Map a rate index in [0, cr_count) onto the nonzero rates
    -cr_count/2 .. -1, 1 .. cr_count/2 monotonically."""
    if not 0 <= index < cr_count:
        raise ValueError(f"rate index {index} outside [0, {cr_count})")
    half = cr_count // 2
    return index - half if index < half else index - half + 1


def modulate_dcrk_lora(config: SchemeConfig, bits: np.ndarray) -> np.ndarray:
    """Layout: [k][rate index]."""
    k = bits_to_int(bits[: config.sf])
    idx = bits_to_int(bits[config.sf :])
    return fs_tone(config.M, k) * chirp(config.M, dcrk_rate(idx, config.cr_count))


def detect_dcrk_lora(config: SchemeConfig, frame: np.ndarray, mode: str) -> np.ndarray:
    best = None
    for idx in range(config.cr_count):
        metric = bin_metric(dechirp_spectrum(frame, dcrk_rate(idx, config.cr_count)), mode)
        k = int(np.argmax(metric))
        peak = metric[k]
        if best is None or peak > best[0]:
            best = (peak, idx, k)
    _, idx, k = best
    rate_bits = config.cr_count.bit_length() - 1
    return np.concatenate([int_to_bits(k, config.sf), int_to_bits(idx, rate_bits)]).astype(np.uint8)


# ---------------------------------------------------------------------------
# SSK-ICS-LoRa: slope keying combined with optional interleaving
# ---------------------------------------------------------------------------

def modulate_ssk_ics_lora(config: SchemeConfig, bits: np.ndarray) -> np.ndarray:
    """Layout: [k][slope flag][interleave flag]."""
    s = modulate_ssk_lora(config, bits[: config.sf + 1])
    return interleave(s) if bits[config.sf + 1] else s


def detect_ssk_ics_lora(config: SchemeConfig, frame: np.ndarray, mode: str) -> np.ndarray:
    deint = interleave(frame)
    metrics = (
        bin_metric(dechirp_spectrum(frame, 1), mode),    # up, plain
        bin_metric(dechirp_spectrum(frame, -1), mode),   # down, plain
        bin_metric(dechirp_spectrum(deint, 1), mode),    # up, interleaved
        bin_metric(dechirp_spectrum(deint, -1), mode),   # down, interleaved
    )
    peaks = [m.max() for m in metrics]
    slope = 0 if max(peaks[0], peaks[2]) >= max(peaks[1], peaks[3]) else 1
    inter = 0 if max(peaks[0], peaks[1]) >= max(peaks[2], peaks[3]) else 1
    metric = metrics[slope + 2 * inter]
    k = int(np.argmax(metric))
    return np.concatenate([int_to_bits(k, config.sf), [slope, inter]]).astype(np.uint8)

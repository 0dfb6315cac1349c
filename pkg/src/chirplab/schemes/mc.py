"""Multi-chirp schemes: several frequency shifts activated per symbol.

Even/odd or group index maps use lowest-index-first integer mappings:
even shift 2*m, odd shift 2*m+1, group g shift g*(M/G)+m.
"""

from __future__ import annotations

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
from .sc import bin_metric, nearest_psk, psk_points


# ---------------------------------------------------------------------------
# DO-CSS: one even and one odd frequency shift, both up-chirped
# ---------------------------------------------------------------------------

def modulate_do_css(config: SchemeConfig, bits: np.ndarray) -> np.ndarray:
    """Layout: [even index m_e][odd index m_o]; shifts 2*m_e and 2*m_o+1."""
    half = config.sf - 1
    k_even = 2 * bits_to_int(bits[:half])
    k_odd = 2 * bits_to_int(bits[half:]) + 1
    f = fs_tone(config.M, k_even) + fs_tone(config.M, k_odd)
    return f * chirp(config.M, 1)


def detect_do_css(config: SchemeConfig, frame: np.ndarray, mode: str) -> np.ndarray:
    metric = bin_metric(dechirp_spectrum(frame, 1), mode)
    half = config.sf - 1
    m_even = int(np.argmax(metric[0::2]))
    m_odd = int(np.argmax(metric[1::2]))
    return np.concatenate([int_to_bits(m_even, half), int_to_bits(m_odd, half)]).astype(np.uint8)


# ---------------------------------------------------------------------------
# IQ-CSS: one shift on the in-phase rail, one on the quadrature rail
# ---------------------------------------------------------------------------

def modulate_iq_css(config: SchemeConfig, bits: np.ndarray) -> np.ndarray:
    """Layout: [k_i][k_q]."""
    k_i = bits_to_int(bits[: config.sf])
    k_q = bits_to_int(bits[config.sf :])
    f = fs_tone(config.M, k_i) + 1j * fs_tone(config.M, k_q)
    return f * chirp(config.M, 1)


def detect_iq_css(config: SchemeConfig, frame: np.ndarray, mode: str) -> np.ndarray:
    R = dechirp_spectrum(frame, 1)
    if mode == COHERENT:
        k_i = int(np.argmax(R.real))
        k_q = int(np.argmax(R.imag))
    else:
        # Two-peak search with a ratio test; equal magnitudes keep the
        # lower-index bin as the primary peak.
        mag = np.abs(R)
        order = np.argsort(-mag, kind="stable")
        k1, k2 = int(order[0]), int(order[1])
        if mag[k2] == 0.0 or mag[k1] / mag[k2] >= config.ratio_threshold:
            k_i = k_q = k1
        else:
            theta = float(np.angle(np.conj(R[k1]) * R[k2]))
            k_i, k_q = (k1, k2) if 0.0 <= theta < np.pi else (k2, k1)
    return np.concatenate(
        [int_to_bits(k_i, config.sf), int_to_bits(k_q, config.sf)]
    ).astype(np.uint8)


# ---------------------------------------------------------------------------
# ePSK-CSS: a fundamental frequency plus its harmonics, each phase-keyed
# ---------------------------------------------------------------------------

def modulate_epsk_css(config: SchemeConfig, bits: np.ndarray) -> np.ndarray:
    """Layout: [fundamental k][p_0]..[p_{Nb-1}]; band l activates k + l*M/Nb."""
    n_b = config.subbands
    spacing = config.M // n_b
    fs_bits = spacing.bit_length() - 1
    ps_bits = config.psk_bits_per_band
    k = bits_to_int(bits[:fs_bits])
    f = np.zeros(config.M, dtype=complex)
    for l in range(n_b):
        p = bits_to_int(bits[fs_bits + l * ps_bits : fs_bits + (l + 1) * ps_bits])
        phi = np.exp(2j * np.pi * p / (1 << ps_bits))
        f += phi * fs_tone(config.M, k + l * spacing)
    return f * chirp(config.M, 1)


def detect_epsk_css(config: SchemeConfig, frame: np.ndarray, mode: str) -> np.ndarray:
    n_b = config.subbands
    spacing = config.M // n_b
    fs_bits = spacing.bit_length() - 1
    ps_bits = config.psk_bits_per_band
    card = 1 << ps_bits
    R = dechirp_spectrum(frame, 1)
    harmonics = R.reshape(n_b, spacing)  # harmonics[l, k] = R(k + l*spacing)
    if mode == COHERENT:
        # Full hypothesis grid over the fundamental and every phase tuple;
        # band scores add, leading band is the most significant digit.
        scores = np.real(harmonics.T[:, :, None] * np.conj(psk_points(card))[None, None, :])
        joint = np.zeros((spacing, 1))
        for l in range(n_b):
            joint = (joint[:, :, None] + scores[:, l, None, :]).reshape(spacing, -1)
        flat = int(np.argmax(joint))
        k, code = divmod(flat, card**n_b)
        ps = []
        for l in range(n_b):
            p, code = divmod(code, card ** (n_b - 1 - l))
            ps.append(p)
    else:
        k = int(np.argmax(np.abs(harmonics.sum(axis=0))))
        ps = [nearest_psk(float(np.angle(harmonics[l, k])), card) for l in range(n_b)]
    out = [int_to_bits(k, fs_bits)] + [int_to_bits(p, ps_bits) for p in ps]
    return np.concatenate(out).astype(np.uint8)


# ---------------------------------------------------------------------------
# GCSS: one frequency shift per group of M/G consecutive bins
# ---------------------------------------------------------------------------

def modulate_gcss(config: SchemeConfig, bits: np.ndarray) -> np.ndarray:
    """Layout: [m_1]..[m_G]; group g activates shift g*(M/G) + m_g."""
    width = config.M // config.groups
    field = width.bit_length() - 1
    f = np.zeros(config.M, dtype=complex)
    for g in range(config.groups):
        m = bits_to_int(bits[g * field : (g + 1) * field])
        f += fs_tone(config.M, g * width + m)
    return f * chirp(config.M, 1)


def detect_gcss(config: SchemeConfig, frame: np.ndarray, mode: str) -> np.ndarray:
    width = config.M // config.groups
    field = width.bit_length() - 1
    mag = np.abs(dechirp_spectrum(frame, 1))
    out = []
    for g in range(config.groups):
        m = int(np.argmax(mag[g * width : (g + 1) * width]))
        out.append(int_to_bits(m, field))
    return np.concatenate(out).astype(np.uint8)


# ---------------------------------------------------------------------------
# TDM-CSS: an up-chirped and a down-chirped symbol summed in time
# ---------------------------------------------------------------------------

def modulate_tdm_css(config: SchemeConfig, bits: np.ndarray) -> np.ndarray:
    """Layout: [k_1 up-stream][k_2 down-stream]."""
    k1 = bits_to_int(bits[: config.sf])
    k2 = bits_to_int(bits[config.sf :])
    return fs_tone(config.M, k1) * chirp(config.M, 1) + fs_tone(config.M, k2) * chirp(config.M, -1)


def detect_tdm_css(config: SchemeConfig, frame: np.ndarray, mode: str) -> np.ndarray:
    k1 = int(np.argmax(bin_metric(dechirp_spectrum(frame, 1), mode)))
    k2 = int(np.argmax(bin_metric(dechirp_spectrum(frame, -1), mode)))
    return np.concatenate([int_to_bits(k1, config.sf), int_to_bits(k2, config.sf)]).astype(np.uint8)


# ---------------------------------------------------------------------------
# IQ-TDM-CSS: two IQ-CSS symbols multiplexed on opposite chirp slopes
# ---------------------------------------------------------------------------

def modulate_iq_tdm_css(config: SchemeConfig, bits: np.ndarray) -> np.ndarray:
    """Layout: [k_i][k_q][k_i down][k_q down]."""
    sf, M = config.sf, config.M
    k = [bits_to_int(bits[i * sf : (i + 1) * sf]) for i in range(4)]
    up = fs_tone(M, k[0]) + 1j * fs_tone(M, k[1])
    down = fs_tone(M, k[2]) + 1j * fs_tone(M, k[3])
    return up * chirp(M, 1) + down * chirp(M, -1)


def detect_iq_tdm_css(config: SchemeConfig, frame: np.ndarray, mode: str) -> np.ndarray:
    up = dechirp_spectrum(frame, 1)
    down = dechirp_spectrum(frame, -1)
    ks = (np.argmax(up.real), np.argmax(up.imag), np.argmax(down.real), np.argmax(down.imag))
    return np.concatenate([int_to_bits(int(k), config.sf) for k in ks]).astype(np.uint8)


# ---------------------------------------------------------------------------
# DM-CSS: even and odd shifts with binary phases, on either chirp slope
# ---------------------------------------------------------------------------

def modulate_dm_css(config: SchemeConfig, bits: np.ndarray) -> np.ndarray:
    """Layout: [m_e][m_o][phase_e][phase_o][slope]; phase bit 1 means -1."""
    half = config.sf - 1
    k_even = 2 * bits_to_int(bits[:half])
    k_odd = 2 * bits_to_int(bits[half : 2 * half]) + 1
    a_even = -1.0 if bits[2 * half] else 1.0
    a_odd = -1.0 if bits[2 * half + 1] else 1.0
    rate = -1 if bits[2 * half + 2] else 1
    f = a_even * fs_tone(config.M, k_even) + a_odd * fs_tone(config.M, k_odd)
    return f * chirp(config.M, rate)


def detect_dm_css(config: SchemeConfig, frame: np.ndarray, mode: str) -> np.ndarray:
    R_up = dechirp_spectrum(frame, 1)
    R_down = dechirp_spectrum(frame, -1)
    if mode == COHERENT:
        # Slope metric is the best signed real peak; a plain max of the real
        # part would miss symbols whose two phases are both negative.
        peak_up, peak_down = np.abs(R_up.real).max(), np.abs(R_down.real).max()
    else:
        peak_up, peak_down = np.abs(R_up).max(), np.abs(R_down).max()
    slope = 0 if peak_up >= peak_down else 1
    R = R_up if slope == 0 else R_down
    half = config.sf - 1
    out = []
    phases = []
    for parity in (0, 1):
        part = R[parity::2]
        strength = np.abs(part.real) if mode == COHERENT else np.abs(part)
        m = int(np.argmax(strength))
        out.append(int_to_bits(m, half))
        phases.append(0 if part.real[m] >= 0.0 else 1)
    out.append(np.array(phases + [slope], dtype=np.uint8))
    return np.concatenate(out).astype(np.uint8)

"""Index-modulation schemes: bits live in which frequency shifts are active.

The activation pattern is the lexicographic combinadic unranking of the bit
field; only the first 2**bits ranks are legal codewords.  A detected pattern
whose rank falls outside that range is clamped to the largest legal rank.
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
    index_bits,
    int_to_bits,
    subset_rank,
    subset_unrank,
)


def _pattern_tone_sum(M: int, pattern) -> np.ndarray:
    f = np.zeros(M, dtype=complex)
    for k in pattern:
        f += fs_tone(M, k)
    return f


def _top_indices(metric: np.ndarray, count: int) -> tuple[int, ...]:
    # Stable sort on the negated metric keeps lower bins first on ties.
    order = np.argsort(-metric, kind="stable")
    return tuple(sorted(int(i) for i in order[:count]))


def _pattern_to_bits(pattern, M: int, width: int) -> np.ndarray:
    rank = subset_rank(pattern, M)
    rank = min(rank, (1 << width) - 1)
    return int_to_bits(rank, width)


def modulate_fscss_im(config: SchemeConfig, bits: np.ndarray) -> np.ndarray:
    """Layout: [pattern rank]."""
    pattern = subset_unrank(bits_to_int(bits), config.M, config.active_count)
    return _pattern_tone_sum(config.M, pattern) * chirp(config.M, 1)


def detect_fscss_im(config: SchemeConfig, frame: np.ndarray, mode: str) -> np.ndarray:
    R = dechirp_spectrum(frame, 1)
    metric = R.real if mode == COHERENT else np.abs(R)
    pattern = _top_indices(metric, config.active_count)
    return _pattern_to_bits(pattern, config.M, index_bits(config.M, config.active_count))


def modulate_iq_cim(config: SchemeConfig, bits: np.ndarray) -> np.ndarray:
    """Layout: [in-phase pattern rank][quadrature pattern rank]."""
    width = index_bits(config.M, config.active_count)
    pat_i = subset_unrank(bits_to_int(bits[:width]), config.M, config.active_count)
    pat_q = subset_unrank(bits_to_int(bits[width:]), config.M, config.active_count)
    f = _pattern_tone_sum(config.M, pat_i) + 1j * _pattern_tone_sum(config.M, pat_q)
    return f * chirp(config.M, 1)


def detect_iq_cim(config: SchemeConfig, frame: np.ndarray, mode: str) -> np.ndarray:
    R = dechirp_spectrum(frame, 1)
    width = index_bits(config.M, config.active_count)
    pat_i = _top_indices(R.real, config.active_count)
    pat_q = _top_indices(R.imag, config.active_count)
    return np.concatenate([
        _pattern_to_bits(pat_i, config.M, width),
        _pattern_to_bits(pat_q, config.M, width),
    ]).astype(np.uint8)

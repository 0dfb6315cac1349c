"""Shared baseband primitives for chirp-spread-spectrum waveforms.

Conventions used throughout the package:

* normalized time: unit sample period, symbol duration ``M`` samples,
  unit bandwidth, so spectral efficiency is ``bits_per_symbol / M``;
* a frame is a length-``M`` complex vector (one symbol, critically sampled);
* the DFT is the plain unnormalized forward transform
  ``R(k) = sum_n r(n) exp(-j 2 pi k n / M)``;
* bit fields are MSB-first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

COHERENT = "coherent"
NONCOHERENT = "noncoherent"
SEMICOHERENT = "semicoherent"

MODES = (COHERENT, NONCOHERENT, SEMICOHERENT)


class Scheme(str, Enum):
    """The sixteen supported modulation schemes."""

    LORA = "lora"
    ICS_LORA = "ics-lora"
    E_LORA = "e-lora"
    PSK_LORA = "psk-lora"
    SSK_LORA = "ssk-lora"
    DCRK_LORA = "dcrk-lora"
    SSK_ICS_LORA = "ssk-ics-lora"
    DO_CSS = "do-css"
    IQ_CSS = "iq-css"
    EPSK_CSS = "epsk-css"
    GCSS = "gcss"
    TDM_CSS = "tdm-css"
    IQ_TDM_CSS = "iq-tdm-css"
    DM_CSS = "dm-css"
    FSCSS_IM = "fscss-im"
    IQ_CIM = "iq-cim"


#: Schemes that spread a single activated frequency shift.
SINGLE_CHIRP = (
    Scheme.LORA,
    Scheme.ICS_LORA,
    Scheme.E_LORA,
    Scheme.PSK_LORA,
    Scheme.SSK_LORA,
    Scheme.DCRK_LORA,
    Scheme.SSK_ICS_LORA,
)

#: Schemes that activate several frequency shifts at once.
MULTI_CHIRP = (
    Scheme.DO_CSS,
    Scheme.IQ_CSS,
    Scheme.EPSK_CSS,
    Scheme.GCSS,
    Scheme.TDM_CSS,
    Scheme.IQ_TDM_CSS,
    Scheme.DM_CSS,
)

#: Index-modulation schemes: the information lives in which shifts are active.
INDEX_MODULATION = (Scheme.FSCSS_IM, Scheme.IQ_CIM)

ALL_SCHEMES = SINGLE_CHIRP + MULTI_CHIRP + INDEX_MODULATION


class ConfigError(ValueError):
    """Raised for an invalid or inconsistent scheme configuration."""


class UnsupportedModeError(ValueError):
    """Raised when a detection mode is not defined for a scheme."""


@dataclass(frozen=True)
class SchemeConfig:
    """One scheme plus every knob it needs.

    Only the parameters a scheme actually uses are validated; the rest keep
    their defaults and are ignored.  Defaults pick the commonly studied
    variants: quaternary phase shifts, eight chirp rates, two sub-bands
    with 2-bit phases, two groups, two active indices.
    """

    scheme: Scheme
    sf: int
    psk_cardinality: int = 4
    cr_count: int = 8
    subbands: int = 2
    psk_bits_per_band: int = 2
    groups: int = 2
    active_count: int = 2
    ratio_threshold: float = 2.4

    @property
    def M(self) -> int:
        """Samples per symbol; also the number of frequency shifts."""
        return 1 << self.sf

    def __post_init__(self) -> None:
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        if not isinstance(self.sf, int) or self.sf < 2:
            raise ConfigError(f"spreading factor must be an integer >= 2, got {self.sf!r}")
        s, M = self.scheme, self.M
        if s in (Scheme.ICS_LORA, Scheme.SSK_ICS_LORA) and M % 4:
            raise ConfigError(f"{s.value} needs M divisible by 4, got M={M}")
        if s is Scheme.PSK_LORA:
            c = self.psk_cardinality
            if c < 2 or c & (c - 1):
                raise ConfigError(f"psk_cardinality must be a power of two >= 2, got {c}")
        if s is Scheme.DCRK_LORA:
            c = self.cr_count
            if c < 2 or c % 2 or c & (c - 1):
                raise ConfigError(f"cr_count must be an even power of two >= 2, got {c}")
            if c > M:
                raise ConfigError(f"cr_count={c} exceeds M={M}; chirp rates would alias")
        if s is Scheme.EPSK_CSS:
            if self.subbands < 2 or M % self.subbands or self.subbands >= M:
                raise ConfigError(f"subbands must divide M and lie in [2, M), got {self.subbands}")
            if self.psk_bits_per_band < 1:
                raise ConfigError("psk_bits_per_band must be >= 1")
        if s is Scheme.GCSS:
            if self.groups < 2 or M % self.groups or self.groups >= M:
                raise ConfigError(f"groups must divide M and lie in [2, M), got {self.groups}")
        if s is Scheme.FSCSS_IM and not 1 <= self.active_count <= M:
            raise ConfigError(f"active_count must lie in [1, M], got {self.active_count}")
        if s is Scheme.IQ_CIM and not 1 <= self.active_count <= M // 2:
            raise ConfigError(f"active_count must lie in [1, M/2], got {self.active_count}")
        if s is Scheme.IQ_CSS and self.ratio_threshold <= 1.0:
            raise ConfigError(f"ratio_threshold must exceed 1, got {self.ratio_threshold}")
        if bits_per_symbol(self) < 1:
            raise ConfigError(f"configuration carries no bits: {self}")


def index_bits(M: int, active: int) -> int:
    """Bits carried by an activation pattern: floor(log2 C(M, active))."""
    return math.comb(M, active).bit_length() - 1


def bits_per_symbol(config: SchemeConfig) -> int:
    """Payload bits carried by one symbol of the configured scheme."""
    s, sf = config.scheme, config.sf
    if s is Scheme.LORA:
        return sf
    if s in (Scheme.ICS_LORA, Scheme.E_LORA, Scheme.SSK_LORA):
        return sf + 1
    if s is Scheme.PSK_LORA:
        return sf + (config.psk_cardinality.bit_length() - 1)
    if s is Scheme.DCRK_LORA:
        return sf + (config.cr_count.bit_length() - 1)
    if s is Scheme.SSK_ICS_LORA:
        return sf + 2
    if s is Scheme.DO_CSS:
        return 2 * sf - 2
    if s in (Scheme.IQ_CSS, Scheme.TDM_CSS):
        return 2 * sf
    if s is Scheme.EPSK_CSS:
        fs_bits = (config.M // config.subbands).bit_length() - 1
        return fs_bits + config.subbands * config.psk_bits_per_band
    if s is Scheme.GCSS:
        return config.groups * ((config.M // config.groups).bit_length() - 1)
    if s is Scheme.IQ_TDM_CSS:
        return 4 * sf
    if s is Scheme.DM_CSS:
        return 2 * sf + 1
    if s is Scheme.FSCSS_IM:
        return index_bits(config.M, config.active_count)
    if s is Scheme.IQ_CIM:
        return 2 * index_bits(config.M, config.active_count)
    raise ConfigError(f"unknown scheme {s!r}")


def symbol_energy(config: SchemeConfig) -> float:
    """Nominal per-sample average energy (1/M) sum |s(n)|^2 of a transmit frame.

    This is the constant the energy budget is calibrated against.  For the
    two time-multiplexed schemes it ignores the up/down cross term, which
    averages out over the symbol alphabet.
    """
    s = config.scheme
    if s in SINGLE_CHIRP:
        return 1.0
    if s in (Scheme.DO_CSS, Scheme.IQ_CSS, Scheme.TDM_CSS, Scheme.DM_CSS):
        return 2.0
    if s is Scheme.EPSK_CSS:
        return float(config.subbands)
    if s is Scheme.GCSS:
        return float(config.groups)
    if s is Scheme.IQ_TDM_CSS:
        return 4.0
    if s is Scheme.FSCSS_IM:
        return float(config.active_count)
    if s is Scheme.IQ_CIM:
        return 2.0 * config.active_count
    raise ConfigError(f"unknown scheme {s!r}")


# ---------------------------------------------------------------------------
# chirps, tones, and de-chirped spectra
# ---------------------------------------------------------------------------

def _require_power_of_two(M: int) -> None:
    if M < 1 or M & (M - 1):
        raise ValueError(f"M must be a power of two, got {M}")


@lru_cache(maxsize=None)
def _chirp_table(M: int, rate: int) -> np.ndarray:
    n = np.arange(M, dtype=np.int64)
    # Reduce the quadratic phase mod 2M in integers so exp() sees small
    # arguments; naive rate*n*n/M loses ~1e-9 rad at M=4096.
    phase = np.pi * ((rate * n * n) % (2 * M)) / M
    c = np.exp(1j * phase)
    c.flags.writeable = False
    return c


def chirp(M: int, rate: int) -> np.ndarray:
    """Spreading waveform exp(j pi rate n^2 / M) for n = 0..M-1.

    ``rate=+1`` is the up-chirp, ``rate=-1`` the down-chirp.  The returned
    array is cached and read-only; copy before mutating.
    """
    _require_power_of_two(M)
    rate = int(rate)
    if rate == 0:
        raise ValueError("chirp rate 0 performs no spreading")
    if abs(rate) > max(1, M // 2):
        raise ValueError(f"chirp rate {rate} aliases at M={M}")
    return _chirp_table(M, rate)


@lru_cache(maxsize=None)
def _tone_base(M: int) -> np.ndarray:
    base = np.exp(2j * np.pi * np.arange(M) / M)
    base.flags.writeable = False
    return base


@lru_cache(maxsize=32)
def _sample_index(M: int) -> np.ndarray:
    n = np.arange(M, dtype=np.int64)
    n.flags.writeable = False
    return n


def fs_tone(M: int, k: int) -> np.ndarray:
    """Un-chirped symbol exp(j 2 pi k n / M) activating frequency shift k."""
    _require_power_of_two(M)
    if not 0 <= k < M:
        raise ValueError(f"frequency shift {k} outside [0, {M})")
    return _tone_base(M)[(k * _sample_index(M)) % M]


def dechirp_spectrum(frame: np.ndarray, rate: int) -> np.ndarray:
    """Multiply by the conjugate chirp of the given rate and take the DFT."""
    frame = np.asarray(frame)
    if frame.ndim != 1:
        raise ValueError("frame must be one-dimensional")
    M = frame.shape[0]
    return np.fft.fft(frame * chirp(M, -int(rate)))


# ---------------------------------------------------------------------------
# bit packing
# ---------------------------------------------------------------------------

def bits_to_int(bits) -> int:
    """MSB-first bits -> integer."""
    v = 0
    for b in bits:
        v = (v << 1) | (1 if b else 0)
    return v


def int_to_bits(value: int, width: int) -> np.ndarray:
    """Integer -> MSB-first bit vector of the given width."""
    if width < 1:
        raise ValueError("width must be >= 1")
    if not 0 <= value < (1 << width):
        raise ValueError(f"value {value} does not fit in {width} bits")
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


# ---------------------------------------------------------------------------
# combinadic subset ranking (lexicographic)
# ---------------------------------------------------------------------------

def subset_unrank(rank: int, M: int, count: int) -> tuple[int, ...]:
    """The ``rank``-th sorted ``count``-subset of [0, M) in lexicographic order."""
    total = math.comb(M, count)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} outside [0, C({M},{count})={total})")
    out = []
    x = 0
    remaining = count
    while remaining:
        here = math.comb(M - x - 1, remaining - 1)
        if rank < here:
            out.append(x)
            remaining -= 1
        else:
            rank -= here
        x += 1
    return tuple(out)


def subset_rank(indices, M: int) -> int:
    """Inverse of :func:`subset_unrank` for a sorted tuple of distinct indices."""
    indices = tuple(indices)
    rank = 0
    prev = -1
    remaining = len(indices)
    for a in indices:
        if a <= prev or a >= M:
            raise ValueError(f"indices must be sorted, distinct, and < {M}")
        for x in range(prev + 1, a):
            rank += math.comb(M - x - 1, remaining - 1)
        prev = a
        remaining -= 1
    return rank

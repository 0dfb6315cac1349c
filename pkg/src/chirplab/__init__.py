"""chirplab: a chirp-spread-spectrum waveform laboratory.

Sixteen LPWAN modulation schemes with their documented coherent,
non-coherent, and semi-coherent detectors, an AWGN channel with phase and
frequency offsets, and a deterministic Monte-Carlo harness for BER and
energy-efficiency studies.
"""

__version__ = "0.1.0"

from .channel import ChannelSpec, apply_channel, noise_variance, substream, trial_rng
from .core import (
    ALL_SCHEMES,
    COHERENT,
    INDEX_MODULATION,
    MULTI_CHIRP,
    NONCOHERENT,
    SEMICOHERENT,
    SINGLE_CHIRP,
    ConfigError,
    Scheme,
    SchemeConfig,
    UnsupportedModeError,
    bits_per_symbol,
    bits_to_int,
    chirp,
    dechirp_spectrum,
    fs_tone,
    int_to_bits,
    subset_rank,
    subset_unrank,
    symbol_energy,
)
from .harness import (
    BerPoint,
    EeResult,
    UnbracketedTargetError,
    ber_point,
    ber_point_adaptive,
    check_monotonic,
    ee_required_ebn0,
    group_of,
    se_of,
)
from .runio import BER_COLUMNS, EE_COLUMNS, RunSummary, run_experiment, write_ber_csv
from .schemes import detect, interleave, modulate, supported_modes

__all__ = [
    "ALL_SCHEMES",
    "BER_COLUMNS",
    "BerPoint",
    "COHERENT",
    "ChannelSpec",
    "ConfigError",
    "EE_COLUMNS",
    "EeResult",
    "INDEX_MODULATION",
    "MULTI_CHIRP",
    "NONCOHERENT",
    "RunSummary",
    "SEMICOHERENT",
    "SINGLE_CHIRP",
    "Scheme",
    "SchemeConfig",
    "UnbracketedTargetError",
    "UnsupportedModeError",
    "apply_channel",
    "ber_point",
    "ber_point_adaptive",
    "bits_per_symbol",
    "bits_to_int",
    "check_monotonic",
    "chirp",
    "dechirp_spectrum",
    "detect",
    "ee_required_ebn0",
    "fs_tone",
    "group_of",
    "int_to_bits",
    "interleave",
    "modulate",
    "noise_variance",
    "run_experiment",
    "se_of",
    "subset_rank",
    "subset_unrank",
    "substream",
    "supported_modes",
    "symbol_energy",
    "trial_rng",
    "write_ber_csv",
]

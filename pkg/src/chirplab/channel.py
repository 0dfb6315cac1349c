"""AWGN channel with optional phase and frequency offsets.

Noise is calibrated from Eb/N0 using the whole-symbol energy budget
``M * symbol_energy`` divided by the bits the symbol carries, so schemes
that transmit more energy per symbol pay for it.  Randomness is drawn from
counter-style substreams keyed by (seed, trial), which makes every trial
reproducible independently of how trials are partitioned across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import SchemeConfig, bits_per_symbol, symbol_energy


@dataclass(frozen=True)
class ChannelSpec:
    """Channel operating point: Eb/N0 in dB plus static offsets.

    ``ebn0_db=math.inf`` means noiseless.  ``psi`` is a phase offset in
    radians; ``delta_f`` a residual frequency offset in cycles per symbol
    of M samples.
    """

    ebn0_db: float
    psi: float = 0.0
    delta_f: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if math.isnan(self.ebn0_db):
            raise ValueError("ebn0_db must not be NaN")
        if not (math.isfinite(self.psi) and math.isfinite(self.delta_f)):
            raise ValueError("psi and delta_f must be finite")


def noise_variance(spec: ChannelSpec, config: SchemeConfig) -> float:
    """Total variance of one complex noise sample (half per real dimension)."""
    if math.isinf(spec.ebn0_db):
        if spec.ebn0_db > 0:
            return 0.0
        raise ValueError("ebn0_db = -inf is not a valid operating point")
    es = symbol_energy(config)
    b = bits_per_symbol(config)
    return config.M * es / (b * 10.0 ** (spec.ebn0_db / 10.0))


@lru_cache(maxsize=256)
def _ramp_table(psi: float, delta_f: float, M: int) -> np.ndarray:
    n = np.arange(M)
    ramp = np.exp(1j * (psi + 2.0 * np.pi * delta_f * n / M))
    ramp.flags.writeable = False
    return ramp


def phase_ramp(spec: ChannelSpec, M: int) -> np.ndarray | None:
    """Deterministic impairment exp(j psi) exp(j 2 pi delta_f n / M), or None if trivial."""
    if spec.psi == 0.0 and spec.delta_f == 0.0:
        return None
    return _ramp_table(spec.psi, spec.delta_f, M)


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for the given (seed, key...) coordinates."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Noise substream for one Monte-Carlo trial."""
    return substream(seed, trial)


def complex_noise(rng: np.random.Generator, n: int, variance: float) -> np.ndarray:
    """Circularly-symmetric complex Gaussian samples of the given total variance."""
    z = rng.standard_normal((n, 2))
    return (z[:, 0] + 1j * z[:, 1]) * math.sqrt(variance / 2.0)


def apply_channel(
    frame: np.ndarray,
    spec: ChannelSpec,
    config: SchemeConfig,
    rng: np.random.Generator,
) -> np.ndarray:
    """y(n) = exp(j psi) exp(j 2 pi delta_f n / M) s(n) + w(n)."""
    frame = np.asarray(frame)
    if frame.shape != (config.M,):
        raise ValueError(f"frame length {frame.shape} does not match M={config.M}")
    ramp = phase_ramp(spec, config.M)
    y = frame if ramp is None else frame * ramp
    var = noise_variance(spec, config)
    if var > 0.0:
        y = y + complex_noise(rng, config.M, var)
    elif ramp is None:
        y = y.copy()
    return y

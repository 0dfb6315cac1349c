"""Modulator/detector dispatch for all sixteen schemes."""

from __future__ import annotations

import numpy as np

from ..core import (
    COHERENT,
    NONCOHERENT,
    SEMICOHERENT,
    Scheme,
    SchemeConfig,
    UnsupportedModeError,
    bits_per_symbol,
)
from . import im, mc, sc
from .sc import interleave

__all__ = ["modulate", "detect", "supported_modes", "interleave"]

_MODULATORS = {
    Scheme.LORA: sc.modulate_lora,
    Scheme.ICS_LORA: sc.modulate_ics_lora,
    Scheme.E_LORA: sc.modulate_e_lora,
    Scheme.PSK_LORA: sc.modulate_psk_lora,
    Scheme.SSK_LORA: sc.modulate_ssk_lora,
    Scheme.DCRK_LORA: sc.modulate_dcrk_lora,
    Scheme.SSK_ICS_LORA: sc.modulate_ssk_ics_lora,
    Scheme.DO_CSS: mc.modulate_do_css,
    Scheme.IQ_CSS: mc.modulate_iq_css,
    Scheme.EPSK_CSS: mc.modulate_epsk_css,
    Scheme.GCSS: mc.modulate_gcss,
    Scheme.TDM_CSS: mc.modulate_tdm_css,
    Scheme.IQ_TDM_CSS: mc.modulate_iq_tdm_css,
    Scheme.DM_CSS: mc.modulate_dm_css,
    Scheme.FSCSS_IM: im.modulate_fscss_im,
    Scheme.IQ_CIM: im.modulate_iq_cim,
}

_DETECTORS = {
    Scheme.LORA: sc.detect_lora,
    Scheme.ICS_LORA: sc.detect_ics_lora,
    Scheme.E_LORA: sc.detect_e_lora,
    Scheme.PSK_LORA: sc.detect_psk_lora,
    Scheme.SSK_LORA: sc.detect_ssk_lora,
    Scheme.DCRK_LORA: sc.detect_dcrk_lora,
    Scheme.SSK_ICS_LORA: sc.detect_ssk_ics_lora,
    Scheme.DO_CSS: mc.detect_do_css,
    Scheme.IQ_CSS: mc.detect_iq_css,
    Scheme.EPSK_CSS: mc.detect_epsk_css,
    Scheme.GCSS: mc.detect_gcss,
    Scheme.TDM_CSS: mc.detect_tdm_css,
    Scheme.IQ_TDM_CSS: mc.detect_iq_tdm_css,
    Scheme.DM_CSS: mc.detect_dm_css,
    Scheme.FSCSS_IM: im.detect_fscss_im,
    Scheme.IQ_CIM: im.detect_iq_cim,
}

#: Detection modes each scheme documents.  Phase-keyed and I/Q schemes lose
#: their information under a pure magnitude rule, hence the restrictions.
MODE_SUPPORT: dict[Scheme, tuple[str, ...]] = {
    Scheme.LORA: (COHERENT, NONCOHERENT),
    Scheme.ICS_LORA: (COHERENT, NONCOHERENT),
    Scheme.E_LORA: (COHERENT,),
    Scheme.PSK_LORA: (COHERENT, SEMICOHERENT),
    Scheme.SSK_LORA: (COHERENT, NONCOHERENT),
    Scheme.DCRK_LORA: (COHERENT, NONCOHERENT),
    Scheme.SSK_ICS_LORA: (COHERENT, NONCOHERENT),
    Scheme.DO_CSS: (COHERENT, NONCOHERENT),
    Scheme.IQ_CSS: (COHERENT, NONCOHERENT),
    Scheme.EPSK_CSS: (COHERENT, SEMICOHERENT),
    Scheme.GCSS: (NONCOHERENT,),
    Scheme.TDM_CSS: (COHERENT, NONCOHERENT),
    Scheme.IQ_TDM_CSS: (COHERENT,),
    Scheme.DM_CSS: (COHERENT, NONCOHERENT),
    Scheme.FSCSS_IM: (COHERENT, NONCOHERENT),
    Scheme.IQ_CIM: (COHERENT,),
}


def supported_modes(scheme: Scheme) -> tuple[str, ...]:
    """Detection modes documented for the scheme."""
    return MODE_SUPPORT[Scheme(scheme)]


def modulate(config: SchemeConfig, bits) -> np.ndarray:
    """Map one symbol's payload bits onto a length-M complex frame."""
    bits = np.asarray(bits, dtype=np.uint8)
    b = bits_per_symbol(config)
    if bits.shape != (b,):
        raise ValueError(f"{config.scheme.value} expects {b} bits, got shape {bits.shape}")
    if bits.max(initial=0) > 1:
        raise ValueError("bits must be 0 or 1")
    return _MODULATORS[config.scheme](config, bits)


def detect(config: SchemeConfig, frame: np.ndarray, mode: str) -> np.ndarray:
    """Recover the payload bits from a received frame."""
    if mode not in supported_modes(config.scheme):
        raise UnsupportedModeError(
            f"{config.scheme.value} supports {supported_modes(config.scheme)}, not {mode!r}"
        )
    frame = np.asarray(frame)
    if frame.shape != (config.M,):
        raise ValueError(f"frame shape {frame.shape} does not match M={config.M}")
    return _DETECTORS[config.scheme](config, frame, mode)

"""Index-modulation scheme tests."""

import numpy as np
import pytest

from chirplab import (
    COHERENT,
    NONCOHERENT,
    Scheme,
    SchemeConfig,
    UnsupportedModeError,
    bits_per_symbol,
    bits_to_int,
    chirp,
    detect,
    fs_tone,
    int_to_bits,
    modulate,
    subset_rank,
)

from conftest import roundtrip_exhaustive


class TestModulators:
    def test_rank_zero_pattern(self):
        cfg = SchemeConfig(Scheme.FSCSS_IM, 3, active_count=2)
        b = bits_per_symbol(cfg)  # floor(log2 C(8,2)) = 4
        frame = modulate(cfg, int_to_bits(0, b))
        expected = (fs_tone(8, 0) + fs_tone(8, 1)) * chirp(8, 1)
        np.testing.assert_allclose(frame, expected, atol=1e-15)
        assert np.mean(np.abs(frame) ** 2) == pytest.approx(2.0, rel=1e-12)

    def test_energy_is_active_count(self):
        cfg = SchemeConfig(Scheme.FSCSS_IM, 6, active_count=3)
        b = bits_per_symbol(cfg)
        rng = np.random.default_rng(2)
        for _ in range(20):
            frame = modulate(cfg, rng.integers(0, 2, b, dtype=np.uint8))
            assert np.mean(np.abs(frame) ** 2) == pytest.approx(3.0, rel=1e-12)

    def test_iq_cim_energy(self):
        cfg = SchemeConfig(Scheme.IQ_CIM, 5, active_count=2)
        b = bits_per_symbol(cfg)
        rng = np.random.default_rng(3)
        for _ in range(20):
            frame = modulate(cfg, rng.integers(0, 2, b, dtype=np.uint8))
            assert np.mean(np.abs(frame) ** 2) == pytest.approx(4.0, rel=1e-12)

    def test_single_active_reduces_to_lora(self):
        # With one active shift the pattern rank equals the shift index, so
        # frames coincide with LoRa for every value (C(M,1) = M).
        im = SchemeConfig(Scheme.FSCSS_IM, 4, active_count=1)
        lora = SchemeConfig(Scheme.LORA, 4)
        assert bits_per_symbol(im) == 4
        for k in range(16):
            np.testing.assert_allclose(
                modulate(im, int_to_bits(k, 4)),
                modulate(lora, int_to_bits(k, 4)),
                atol=1e-15,
            )


class TestDetectors:
    def test_roundtrip_all_legal_ranks_m16(self):
        cfg = SchemeConfig(Scheme.FSCSS_IM, 4, active_count=2)
        assert roundtrip_exhaustive(cfg) == []

    def test_iq_cim_shared_bins(self):
        # Identical in-phase and quadrature patterns put (1+j)M on each
        # active bin; the real/imaginary split still recovers both.
        cfg = SchemeConfig(Scheme.IQ_CIM, 4, active_count=2)
        width = bits_per_symbol(cfg) // 2
        for rank in (0, 5, (1 << width) - 1):
            bits = np.concatenate([int_to_bits(rank, width)] * 2).astype(np.uint8)
            out = detect(cfg, modulate(cfg, bits), COHERENT)
            np.testing.assert_array_equal(out, bits)

    def test_out_of_range_pattern_clamps(self):
        # M=8, two active: C(8,2)=28 patterns but only 16 legal ranks.  A
        # received pattern ranking past the legal range clamps to the top
        # legal codeword instead of failing.
        cfg = SchemeConfig(Scheme.FSCSS_IM, 3, active_count=2)
        b = bits_per_symbol(cfg)
        frame = (fs_tone(8, 6) + fs_tone(8, 7)) * chirp(8, 1)
        assert subset_rank((6, 7), 8) == 27
        out = detect(cfg, frame, NONCOHERENT)
        assert bits_to_int(out) == (1 << b) - 1

    def test_top_selection_returns_distinct_indices(self):
        cfg = SchemeConfig(Scheme.FSCSS_IM, 4, active_count=3)
        rng = np.random.default_rng(5)
        for mode in (COHERENT, NONCOHERENT):
            for _ in range(20):
                frame = rng.standard_normal(16) + 1j * rng.standard_normal(16)
                out = detect(cfg, frame, mode)
                assert out.shape == (bits_per_symbol(cfg),)

    def test_noncoherent_phase_invariance(self):
        cfg = SchemeConfig(Scheme.FSCSS_IM, 4, active_count=2)
        rng = np.random.default_rng(6)
        for _ in range(20):
            frame = rng.standard_normal(16) + 1j * rng.standard_normal(16)
            base = detect(cfg, frame, NONCOHERENT)
            rot = detect(cfg, frame * np.exp(1j * 0.9), NONCOHERENT)
            np.testing.assert_array_equal(base, rot)

    def test_iq_cim_coherent_only(self):
        with pytest.raises(UnsupportedModeError):
            detect(SchemeConfig(Scheme.IQ_CIM, 4), np.ones(16, complex), NONCOHERENT)

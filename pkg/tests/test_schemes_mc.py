"""Multi-chirp scheme tests."""

import numpy as np
import pytest

from chirplab import (
    COHERENT,
    MULTI_CHIRP,
    NONCOHERENT,
    Scheme,
    SchemeConfig,
    UnsupportedModeError,
    bits_per_symbol,
    chirp,
    dechirp_spectrum,
    detect,
    fs_tone,
    int_to_bits,
    modulate,
    symbol_energy,
)

from conftest import roundtrip_exhaustive, roundtrip_random


def _bits(*fields):
    return np.concatenate([np.atleast_1d(f) for f in fields]).astype(np.uint8)


class TestModulators:
    def test_do_css_zero_bits(self):
        cfg = SchemeConfig(Scheme.DO_CSS, 3)
        frame = modulate(cfg, [0, 0, 0, 0])
        expected = (fs_tone(8, 0) + fs_tone(8, 1)) * chirp(8, 1)
        np.testing.assert_allclose(frame, expected, atol=1e-15)
        assert np.mean(np.abs(frame) ** 2) == pytest.approx(2.0, rel=1e-12)

    def test_dm_css_zero_bits(self):
        cfg = SchemeConfig(Scheme.DM_CSS, 3)
        frame = modulate(cfg, np.zeros(7, dtype=np.uint8))
        expected = (fs_tone(8, 0) + fs_tone(8, 1)) * chirp(8, 1)
        np.testing.assert_allclose(frame, expected, atol=1e-15)

    def test_epsk_harmonic_bins(self):
        cfg = SchemeConfig(Scheme.EPSK_CSS, 3, subbands=2, psk_bits_per_band=2)
        # fundamental k=1 with zero phases: active bins {1, 1 + 8/2} = {1, 5}
        bits = _bits(int_to_bits(1, 2), [0, 0], [0, 0])
        R = dechirp_spectrum(modulate(cfg, bits), 1)
        active = {i for i in range(8) if abs(R[i]) > 1e-6}
        assert active == {1, 5}

    def test_energy_constants(self):
        # DO/IQ/DM are exactly 2, ePSK N_b, GCSS G; the TDM pair carries an
        # up/down cross term and is checked against its nominal constant in
        # the acceptance suite instead.
        rng = np.random.default_rng(1)
        exact = {
            Scheme.DO_CSS: SchemeConfig(Scheme.DO_CSS, 5),
            Scheme.IQ_CSS: SchemeConfig(Scheme.IQ_CSS, 5),
            Scheme.DM_CSS: SchemeConfig(Scheme.DM_CSS, 5),
            Scheme.EPSK_CSS: SchemeConfig(Scheme.EPSK_CSS, 5, subbands=4),
            Scheme.GCSS: SchemeConfig(Scheme.GCSS, 5, groups=4),
        }
        for scheme, cfg in exact.items():
            b = bits_per_symbol(cfg)
            for _ in range(20):
                frame = modulate(cfg, rng.integers(0, 2, b, dtype=np.uint8))
                es = np.mean(np.abs(frame) ** 2)
                assert es == pytest.approx(symbol_energy(cfg), rel=1e-12), scheme

    def test_gcss_matches_do_css_on_matched_index_pairs(self):
        # Both transmit f_a + f_b under an up-chirp; with G=2 the group mapping
        # (a in [0,M/2), b in [M/2,M)) and the even/odd mapping agree whenever
        # the activated sets coincide.
        M = 16
        do = SchemeConfig(Scheme.DO_CSS, 4)
        gc = SchemeConfig(Scheme.GCSS, 4, groups=2)
        for a, b in [(2, 9), (0, 15), (6, 11)]:
            assert a % 2 == 0 and b % 2 == 1 and a < M // 2 <= b
            do_bits = _bits(int_to_bits(a // 2, 3), int_to_bits((b - 1) // 2, 3))
            gc_bits = _bits(int_to_bits(a, 3), int_to_bits(b - M // 2, 3))
            np.testing.assert_allclose(modulate(do, do_bits), modulate(gc, gc_bits), atol=1e-12)


class TestRoundTrips:
    @pytest.mark.parametrize("scheme", [s for s in MULTI_CHIRP if s is not Scheme.IQ_TDM_CSS])
    def test_exhaustive_m8(self, scheme):
        cfg = SchemeConfig(scheme, 3)
        assert roundtrip_exhaustive(cfg) == []

    @pytest.mark.parametrize("scheme", list(MULTI_CHIRP))
    def test_random_m256(self, scheme):
        # IQ-TDM-CSS needs a large M: its two streams are only
        # quasi-orthogonal, so small-M cross leakage can flip bits noiselessly.
        cfg = SchemeConfig(scheme, 8)
        assert roundtrip_random(cfg, 50) == []

    def test_dm_css_all_negative_phases_coherent(self):
        # Both binary phases at -1 must survive the coherent slope decision.
        cfg = SchemeConfig(Scheme.DM_CSS, 4)
        for slope in (0, 1):
            bits = _bits(int_to_bits(3, 3), int_to_bits(5, 3), [1, 1, slope])
            out = detect(cfg, modulate(cfg, bits), COHERENT)
            np.testing.assert_array_equal(out, bits)

    def test_unsupported_modes(self):
        with pytest.raises(UnsupportedModeError):
            detect(SchemeConfig(Scheme.GCSS, 4), np.ones(16, complex), COHERENT)
        with pytest.raises(UnsupportedModeError):
            detect(SchemeConfig(Scheme.IQ_TDM_CSS, 4), np.ones(16, complex), NONCOHERENT)


class TestIqCssNoncoherent:
    def test_coincident_shifts_fire_ratio_test(self):
        cfg = SchemeConfig(Scheme.IQ_CSS, 4)
        bits = _bits(int_to_bits(3, 4), int_to_bits(3, 4))
        frame = modulate(cfg, bits)
        R = dechirp_spectrum(frame, 1)
        assert abs(R[3]) == pytest.approx(np.sqrt(2) * 16, rel=1e-9)
        out = detect(cfg, frame, NONCOHERENT)
        np.testing.assert_array_equal(out, bits)

    def test_distinct_shifts_resolved_by_phase_difference(self):
        cfg = SchemeConfig(Scheme.IQ_CSS, 4)
        bits = _bits(int_to_bits(1, 4), int_to_bits(2, 4))
        frame = modulate(cfg, bits)
        R = dechirp_spectrum(frame, 1)
        assert R[1] == pytest.approx(16 + 0j, abs=1e-9)
        assert R[2] == pytest.approx(16j, abs=1e-9)
        theta = np.angle(np.conj(R[1]) * R[2])
        assert theta == pytest.approx(np.pi / 2, abs=1e-9)
        np.testing.assert_array_equal(detect(cfg, frame, NONCOHERENT), bits)

    def test_swapped_assignment_for_negative_phase_difference(self):
        cfg = SchemeConfig(Scheme.IQ_CSS, 4)
        bits = _bits(int_to_bits(2, 4), int_to_bits(1, 4))
        np.testing.assert_array_equal(detect(cfg, modulate(cfg, bits), NONCOHERENT), bits)


class TestDmCss:
    def test_noncoherent_all_patterns_m16(self):
        cfg = SchemeConfig(Scheme.DM_CSS, 4)
        assert roundtrip_exhaustive(cfg, modes=(NONCOHERENT,)) == []

    def test_phase_bits_flip_at_pi_rotation(self):
        # The polarity rule breaks down past pi/2; at psi = pi both phase
        # bits flip while the shift fields still decode.
        cfg = SchemeConfig(Scheme.DM_CSS, 4)
        bits = _bits(int_to_bits(2, 3), int_to_bits(6, 3), [0, 0, 0])
        frame = modulate(cfg, bits) * np.exp(1j * np.pi)
        out = detect(cfg, frame, NONCOHERENT)
        np.testing.assert_array_equal(out[:6], bits[:6])
        assert out[6] == 1 and out[7] == 1
        assert out[8] == bits[8]

    def test_detected_shifts_keep_parity(self):
        # Even/odd separation holds even on pure-noise input by construction.
        cfg = SchemeConfig(Scheme.DM_CSS, 4)
        rng = np.random.default_rng(7)
        for mode in (COHERENT, NONCOHERENT):
            for _ in range(20):
                frame = rng.standard_normal(16) + 1j * rng.standard_normal(16)
                out = detect(cfg, frame, mode)
                assert out.shape == (bits_per_symbol(cfg),)


class TestTdm:
    def test_cross_stream_leakage_strict_m64(self):
        # The wrong-rate spectrum of one up-chirped component never reaches a
        # full-height peak.
        M = 64
        for k in range(M):
            frame = fs_tone(M, k) * chirp(M, 1)
            peak = np.abs(dechirp_spectrum(frame, -1)).max()
            assert peak < M - 1e-6

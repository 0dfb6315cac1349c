import numpy as np

from chirplab import bits_per_symbol, detect, int_to_bits, modulate, supported_modes


def roundtrip_exhaustive(config, modes=None):
    """Noiseless modulate -> detect over every bit pattern; returns failures."""
    b = bits_per_symbol(config)
    modes = supported_modes(config.scheme) if modes is None else modes
    failures = []
    for value in range(1 << b):
        bits = int_to_bits(value, b)
        frame = modulate(config, bits)
        for mode in modes:
            out = detect(config, frame, mode)
            if not np.array_equal(out, bits):
                failures.append((value, mode, out))
    return failures


def roundtrip_random(config, patterns, seed=0, modes=None):
    """Noiseless round trip over random bit patterns; returns failures."""
    b = bits_per_symbol(config)
    modes = supported_modes(config.scheme) if modes is None else modes
    rng = np.random.default_rng(seed)
    failures = []
    for _ in range(patterns):
        bits = rng.integers(0, 2, b, dtype=np.uint8)
        frame = modulate(config, bits)
        for mode in modes:
            out = detect(config, frame, mode)
            if not np.array_equal(out, bits):
                failures.append((bits.tolist(), mode, out.tolist()))
    return failures

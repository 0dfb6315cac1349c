"""Chirp basics: spreading, de-chirping, and bin orthogonality.

Generates an up-chirp, spreads a few frequency shifts with it, and shows
that de-chirping plus a DFT collapses each symbol onto a single bin.
Saves a spectrum plot next to this script.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from chirplab import chirp, dechirp_spectrum, fs_tone

OUT = pathlib.Path(__file__).with_suffix("").parent / "output"
OUT.mkdir(exist_ok=True)

M = 64
up = chirp(M, 1)
print(f"up-chirp: M={M}, |c(n)|=1 everywhere:", np.allclose(np.abs(up), 1.0))

fig, axes = plt.subplots(1, 2, figsize=(10, 3.5))
axes[0].plot(np.real(up), label="Re")
axes[0].plot(np.imag(up), label="Im", alpha=0.7)
axes[0].set_title("up-chirp, time domain")
axes[0].set_xlabel("n")
axes[0].legend()

for k in (5, 20, 47):
    frame = fs_tone(M, k) * up
    spectrum = np.abs(dechirp_spectrum(frame, 1))
    axes[1].plot(spectrum, label=f"k={k}")
    peak = int(np.argmax(spectrum))
    leak = np.delete(spectrum, peak).max()
    print(f"shift {k:2d}: peak at bin {peak}, |R|={spectrum[peak]:.1f}, "
          f"worst other bin {leak:.2e}")

axes[1].set_title("de-chirped DFT magnitudes")
axes[1].set_xlabel("bin")
axes[1].legend()
fig.tight_layout()
fig.savefig(OUT / "chirp_spectra.png", dpi=120)
print(f"wrote {OUT / 'chirp_spectra.png'}")

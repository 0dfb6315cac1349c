"""BER waterfalls over AWGN for a few representative schemes.

Runs a small Monte-Carlo sweep (a minute or so) and saves the classic
waterfall plot.  Increase TRIALS for smoother curves.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from chirplab import ChannelSpec, Scheme, SchemeConfig, ber_point

OUT = pathlib.Path(__file__).with_suffix("").parent / "output"
OUT.mkdir(exist_ok=True)

SF = 7
TRIALS = 20000
GRID = np.arange(0.0, 8.5, 0.5)
CASES = [
    (Scheme.LORA, "noncoherent"),
    (Scheme.LORA, "coherent"),
    (Scheme.SSK_LORA, "coherent"),
    (Scheme.DM_CSS, "noncoherent"),
]

plt.figure(figsize=(6.5, 4.5))
for scheme, mode in CASES:
    cfg = SchemeConfig(scheme, SF)
    bers = []
    for x in GRID:
        pt = ber_point(cfg, mode, ChannelSpec(x, seed=7), TRIALS, workers=2)
        bers.append(max(pt.ber, 1e-7))
    plt.semilogy(GRID, bers, marker="o", ms=3, label=f"{scheme.value} / {mode}")
    print(f"{scheme.value}/{mode}: BER at {GRID[-1]} dB = {bers[-1]:.2e}")

plt.xlabel("Eb/N0 (dB)")
plt.ylabel("BER")
plt.title(f"AWGN waterfalls, SF={SF}")
plt.grid(True, which="both", alpha=0.4)
plt.legend()
plt.tight_layout()
plt.savefig(OUT / "ber_waterfall.png", dpi=120)
print(f"wrote {OUT / 'ber_waterfall.png'}")

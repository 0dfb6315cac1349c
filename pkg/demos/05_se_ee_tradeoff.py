"""Spectral efficiency vs energy efficiency at desk scale.

For a handful of schemes, finds the Eb/N0 needed to reach BER 1e-3 across
spreading factors and plots SE against that requirement: the classic
efficiency trade-off view.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from chirplab import Scheme, SchemeConfig, ee_required_ebn0, se_of

OUT = pathlib.Path(__file__).with_suffix("").parent / "output"
OUT.mkdir(exist_ok=True)

CASES = [
    (Scheme.LORA, "noncoherent"),
    (Scheme.SSK_LORA, "coherent"),
    (Scheme.DM_CSS, "noncoherent"),
    (Scheme.FSCSS_IM, "noncoherent"),
]
SFS = (6, 7, 8)

plt.figure(figsize=(6.5, 4.5))
for scheme, mode in CASES:
    xs, ys = [], []
    for sf in SFS:
        cfg = SchemeConfig(scheme, sf)
        res = ee_required_ebn0(
            cfg, mode, target_ber=1e-3, scan_lo_db=0.0, scan_hi_db=14.0,
            step_db=0.25, trials_per_point=40000, seed=11, workers=2,
        )
        xs.append(res.required_ebn0_db)
        ys.append(se_of(cfg))
        print(f"{scheme.value}/{mode} sf={sf}: requires {res.required_ebn0_db:.2f} dB "
              f"at SE={se_of(cfg):.5f}")
    plt.semilogy(xs, ys, marker="o", label=f"{scheme.value} / {mode}")

plt.xlabel("required Eb/N0 for BER 1e-3 (dB)")
plt.ylabel("SE (bits/s/Hz)")
plt.title("SE vs EE, SF 6..8")
plt.grid(True, which="both", alpha=0.4)
plt.legend()
plt.tight_layout()
plt.savefig(OUT / "se_ee_tradeoff.png", dpi=120)
print(f"wrote {OUT / 'se_ee_tradeoff.png'}")

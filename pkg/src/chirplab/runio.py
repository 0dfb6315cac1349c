"""Sweep configuration files, CSV output, and the run driver.

A run is declared in a YAML document::

    seed: 42
    trials: 20000        # trial cap per point (auto-extension stops here)
    min_trials: 2048     # optional: floor before early stopping (default 2048)
    min_errors: 100      # optional: early-stop error budget (default 100)
    workers: 2           # optional
    out: results         # output stem; <stem>.csv, <stem>_ee.csv, <stem>.manifest.json
    sweeps:
      - schemes: [lora, ssk-lora]
        lambda: [7, 8]
        modes: [coherent, noncoherent]
        ebn0_db: "0:10:1"          # range string lo:hi:step, or a list
        psi: [0.0]                 # optional phase offsets, radians
        delta_f: [0.0]             # optional frequency offsets, cycles/symbol
        params: {psk_cardinality: 4}   # optional extra SchemeConfig fields
      - kind: ee
        schemes: [dm-css]
        lambda: [6]
        modes: [noncoherent]
        target_ber: 1.0e-3
        scan: "4:14:0.25"
        floor_ok: true

BER rows land in ``<stem>.csv`` with the fixed column order
``scheme,lambda,mode,ebn0_db,psi_rad,delta_f,trials,bit_errors,ber,ci_half_width,seed``;
``kind: ee`` sweeps land in ``<stem>_ee.csv``.  The manifest echoes the
config text verbatim and lists every skipped (unsupported) combination.
Identical config + seed give byte-identical outputs for any worker count.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import yaml

from . import __version__
from .channel import ChannelSpec
from .core import ConfigError, Scheme, SchemeConfig
from .harness import (
    BerPoint,
    EeResult,
    UnbracketedTargetError,
    ber_point_adaptive,
    ee_required_ebn0,
)
from .schemes import supported_modes

BER_COLUMNS = (
    "scheme",
    "lambda",
    "mode",
    "ebn0_db",
    "psi_rad",
    "delta_f",
    "trials",
    "bit_errors",
    "ber",
    "ci_half_width",
    "seed",
)

EE_COLUMNS = (
    "scheme",
    "lambda",
    "mode",
    "target_ber",
    "psi_rad",
    "delta_f",
    "required_ebn0_db",
    "floor_ber",
    "se",
    "seed",
)

_CONFIG_FIELDS = {f.name for f in fields(SchemeConfig)} - {"scheme", "sf"}


def fmt(value) -> str:
    """Fixed float formatting so regenerated CSVs are byte-identical."""
    if isinstance(value, str):
        return value
    if value is None:
        return ""
    f = float(value)
    if math.isinf(f):
        return "inf" if f > 0 else "-inf"
    if f == int(f) and abs(f) < 1e15:
        return str(int(f))
    return format(f, ".12g")


def ber_row(point: BerPoint) -> str:
    c = point.channel
    return ",".join([
        point.config.scheme.value,
        str(point.config.sf),
        point.mode,
        fmt(c.ebn0_db),
        fmt(c.psi),
        fmt(c.delta_f),
        str(point.trials),
        str(point.bit_errors),
        fmt(point.ber),
        fmt(point.half_width),
        str(c.seed),
    ])


def ee_row(result: EeResult, psi: float, delta_f: float, seed: int) -> str:
    return ",".join([
        result.config.scheme.value,
        str(result.config.sf),
        result.mode,
        fmt(result.target_ber),
        fmt(psi),
        fmt(delta_f),
        fmt(result.required_ebn0_db),
        fmt(result.floor_ber),
        fmt(result.se),
        str(seed),
    ])


def write_ber_csv(path, points) -> None:
    Path(path).write_text(
        "\n".join([",".join(BER_COLUMNS)] + [ber_row(p) for p in points]) + "\n"
    )


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------

def parse_ebn0_range(text: str) -> list[float]:
    """Parse a lo:hi:step range string into an inclusive grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"range must look like lo:hi:step, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"range {text!r}: {exc}") from None
    if step <= 0 or hi < lo:
        raise ConfigError(f"range {text!r} must have hi >= lo and step > 0")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [lo + i * step for i in range(n)]


def _as_list(value, where: str) -> list:
    if value is None:
        raise ConfigError(f"{where}: missing")
    if isinstance(value, str):
        return parse_ebn0_range(value) if ":" in value else [value]
    if isinstance(value, (int, float)):
        return [value]
    if isinstance(value, list):
        return value
    raise ConfigError(f"{where}: expected scalar, list, or range string, got {value!r}")


def _sweep_field(sweep: dict, where: str, *names, default=None, required=False):
    for name in names:
        if name in sweep:
            return sweep[name]
    if required:
        raise ConfigError(f"{where}.{names[0]}: required")
    return default


@dataclass
class RunSummary:
    csv_path: Path
    ee_csv_path: Path | None
    manifest_path: Path
    rows: int
    ee_rows: int
    skipped: list[str]


def run_experiment(config_path, out: str | None = None, workers: int | None = None) -> RunSummary:
    """Execute the sweep matrix declared in a config file.

    Returns the written paths.  Unsupported scheme/mode combinations are
    skipped with a warning record in the manifest (and on stderr), never
    silently.
    """
    config_path = Path(config_path)
    text = config_path.read_text()
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{config_path}: {exc}") from None
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ConfigError(f"{config_path}: top level must be a mapping")

    seed = int(doc.get("seed", 0))
    trials = int(doc.get("trials", 10000))
    if trials < 1:
        raise ConfigError("trials: must be >= 1")
    min_trials = int(doc.get("min_trials", 2048))
    min_errors = int(doc.get("min_errors", 100))
    n_workers = int(workers if workers is not None else doc.get("workers", 1))
    stem = Path(out if out is not None else doc.get("out", "results"))

    ber_lines: list[str] = []
    ee_lines: list[str] = []
    skipped: list[str] = []

    sweeps = doc.get("sweeps", [])
    if not isinstance(sweeps, list):
        raise ConfigError("sweeps: expected a list")
    for i, sweep in enumerate(sweeps):
        where = f"sweeps[{i}]"
        if not isinstance(sweep, dict):
            raise ConfigError(f"{where}: expected a mapping")
        kind = sweep.get("kind", "ber")
        if kind not in ("ber", "ee"):
            raise ConfigError(f"{where}.kind: must be 'ber' or 'ee', got {kind!r}")
        schemes = _as_list(_sweep_field(sweep, where, "schemes", "scheme", required=True), where)
        sfs = _as_list(_sweep_field(sweep, where, "lambda", "sf", required=True), where)
        modes = _as_list(_sweep_field(sweep, where, "modes", "mode", required=True), where)
        psis = [float(p) for p in _as_list(sweep.get("psi", [0.0]), where)]
        dfs = [float(d) for d in _as_list(sweep.get("delta_f", [0.0]), where)]
        params = sweep.get("params", {})
        if not isinstance(params, dict):
            raise ConfigError(f"{where}.params: expected a mapping")
        unknown = set(params) - _CONFIG_FIELDS
        if unknown:
            raise ConfigError(f"{where}.params: unknown fields {sorted(unknown)}")

        if kind == "ber":
            grid = [float(x) for x in _as_list(
                _sweep_field(sweep, where, "ebn0_db", "ebn0", required=True), where)]
        else:
            target = _sweep_field(sweep, where, "target_ber", required=True)
            scan = _as_list(_sweep_field(sweep, where, "scan", required=True), where)
            if len(scan) < 2:
                raise ConfigError(f"{where}.scan: need at least two grid points")
            floor_ok = bool(sweep.get("floor_ok", False))

        for name in schemes:
            try:
                scheme = Scheme(name)
            except ValueError:
                raise ConfigError(f"{where}: unknown scheme {name!r}") from None
            for sf in sfs:
                try:
                    cfg = SchemeConfig(scheme, int(sf), **params)
                except ConfigError as exc:
                    raise ConfigError(f"{where}: {exc}") from None
                for mode in modes:
                    if mode not in supported_modes(scheme):
                        msg = f"{where}: {scheme.value} has no {mode} detector; skipped"
                        skipped.append(msg)
                        print(f"warning: {msg}", file=sys.stderr)
                        continue
                    for psi in psis:
                        for df in dfs:
                            if kind == "ber":
                                for x in grid:
                                    spec = ChannelSpec(x, psi, df, seed)
                                    pt = ber_point_adaptive(
                                        cfg, mode, spec, trials, seed, n_workers,
                                        min_errors, min_trials,
                                    )
                                    ber_lines.append(ber_row(pt))
                            else:
                                step = scan[1] - scan[0]
                                try:
                                    res = ee_required_ebn0(
                                        cfg, mode, float(target), scan[0], scan[-1],
                                        step, trials, seed, psi, df, n_workers,
                                        min_errors, floor_ok=floor_ok,
                                    )
                                except UnbracketedTargetError as exc:
                                    msg = f"{where}: {exc}; skipped"
                                    skipped.append(msg)
                                    print(f"warning: {msg}", file=sys.stderr)
                                    continue
                                ee_lines.append(ee_row(res, psi, df, seed))

    csv_path = stem.with_suffix(".csv")
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    csv_path.write_text("\n".join([",".join(BER_COLUMNS)] + ber_lines) + "\n")
    ee_csv_path = None
    if ee_lines:
        ee_csv_path = stem.parent / (stem.name + "_ee.csv")
        ee_csv_path.write_text("\n".join([",".join(EE_COLUMNS)] + ee_lines) + "\n")

    manifest_path = stem.parent / (stem.name + ".manifest.json")
    manifest = {
        "version": __version__,
        "seed": seed,
        "config_file": config_path.name,
        "config_text": text,
        "rows": len(ber_lines),
        "ee_rows": len(ee_lines),
        "skipped": skipped,
    }
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return RunSummary(csv_path, ee_csv_path, manifest_path, len(ber_lines), len(ee_lines), skipped)

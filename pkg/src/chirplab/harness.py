"""Monte-Carlo BER estimation and energy-efficiency scans.

Trials are numbered globally and grouped into fixed blocks of
:data:`TRIAL_BLOCK` trials.  Each block draws its payload bits from the
substream (seed, block, 0) and its noise from (seed, block, 1), so results
are identical no matter how trials are partitioned across workers, and runs
with the same seed see the same noise realizations regardless of scheme or
mode (paired-seed comparisons).
"""

from __future__ import annotations

import atexit
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelSpec, noise_variance, phase_ramp, substream
from .core import Scheme, SchemeConfig, bits_per_symbol
from .schemes import detect, modulate, supported_modes

TRIAL_BLOCK = 512

#: Groups of schemes with comparable spectral efficiency; like-for-like
#: comparisons stay within a group.
_GROUPS = {
    Scheme.LORA: 1,
    Scheme.ICS_LORA: 1,
    Scheme.E_LORA: 1,
    Scheme.SSK_LORA: 1,
    Scheme.PSK_LORA: 2,
    Scheme.SSK_ICS_LORA: 2,
    Scheme.EPSK_CSS: 3,
    Scheme.DCRK_LORA: 3,
    Scheme.DO_CSS: 4,
    Scheme.GCSS: 4,
    Scheme.IQ_CSS: 5,
    Scheme.TDM_CSS: 5,
    Scheme.IQ_TDM_CSS: 5,
    Scheme.DM_CSS: 5,
    Scheme.FSCSS_IM: 6,
    Scheme.IQ_CIM: 6,
}


def se_of(config: SchemeConfig) -> float:
    """Spectral efficiency in bits/s/Hz; exact because M is a power of two."""
    return bits_per_symbol(config) / config.M


def group_of(scheme: Scheme) -> int:
    """Spectral-efficiency group (1..6) the scheme belongs to."""
    return _GROUPS[Scheme(scheme)]


class UnbracketedTargetError(RuntimeError):
    """The BER never crossed the target within the scanned Eb/N0 range."""


@dataclass(frozen=True)
class BerPoint:
    """One Monte-Carlo BER estimate with a 95% normal-approximation CI."""

    config: SchemeConfig
    mode: str
    channel: ChannelSpec
    trials: int
    bit_errors: int
    ber: float
    half_width: float


@dataclass(frozen=True)
class EeResult:
    """Eb/N0 required to reach a target BER, or +inf with the observed floor."""

    config: SchemeConfig
    mode: str
    target_ber: float
    required_ebn0_db: float
    se: float
    floor_ber: float | None = None
    points: tuple[BerPoint, ...] = field(default=(), repr=False)


# ---------------------------------------------------------------------------
# trial execution
# ---------------------------------------------------------------------------

def _block_errors(config, mode, channel, seed, block, lo, hi) -> int:
    """Bit errors over absolute trial indices [lo, hi) within one block."""
    M = config.M
    b = bits_per_symbol(config)
    first = block * TRIAL_BLOCK
    rows = hi - first  # draw from the block start so trial offsets stay aligned
    bits = substream(seed, block, 0).integers(0, 2, size=(rows, b), dtype=np.uint8)
    var = noise_variance(channel, config)
    if var > 0.0:
        z = substream(seed, block, 1).standard_normal((rows, M, 2))
        noise = (z[..., 0] + 1j * z[..., 1]) * math.sqrt(var / 2.0)
    else:
        noise = None
    ramp = phase_ramp(channel, M)
    errors = 0
    for row in range(lo - first, rows):
        tx = bits[row]
        frame = modulate(config, tx)
        if ramp is not None:
            frame = frame * ramp
        if noise is not None:
            frame = frame + noise[row]
        rx = detect(config, frame, mode)
        errors += int(np.count_nonzero(tx != rx))
    return errors


def _range_errors(args) -> int:
    config, mode, channel, seed, start, stop = args
    errors = 0
    t = start
    while t < stop:
        block = t // TRIAL_BLOCK
        block_end = min(stop, (block + 1) * TRIAL_BLOCK)
        errors += _block_errors(config, mode, channel, seed, block, t, block_end)
        t = block_end
    return errors


_POOL: ProcessPoolExecutor | None = None
_POOL_SIZE = 0


def _pool(workers: int) -> ProcessPoolExecutor:
    global _POOL, _POOL_SIZE
    if _POOL is None or _POOL_SIZE != workers:
        if _POOL is not None:
            _POOL.shutdown()
        _POOL = ProcessPoolExecutor(max_workers=workers)
        _POOL_SIZE = workers
    return _POOL


@atexit.register
def _shutdown_pool() -> None:
    global _POOL
    if _POOL is not None:
        _POOL.shutdown()
        _POOL = None


def _count_errors(config, mode, channel, seed, start, stop, workers) -> int:
    if workers <= 1 or stop - start <= TRIAL_BLOCK:
        return _range_errors((config, mode, channel, seed, start, stop))
    bounds = np.linspace(start, stop, workers + 1, dtype=int)
    tasks = [
        (config, mode, channel, seed, int(a), int(b))
        for a, b in zip(bounds[:-1], bounds[1:])
        if b > a
    ]
    return sum(_pool(workers).map(_range_errors, tasks))


def _make_point(config, mode, channel, trials, errors) -> BerPoint:
    n_bits = trials * bits_per_symbol(config)
    ber = errors / n_bits
    half_width = 1.96 * math.sqrt(max(ber * (1.0 - ber), 0.0) / n_bits)
    return BerPoint(config, mode, channel, trials, errors, ber, half_width)


# ---------------------------------------------------------------------------
# BER estimation
# ---------------------------------------------------------------------------

def ber_point(
    config: SchemeConfig,
    mode: str,
    channel: ChannelSpec,
    trials: int,
    seed: int | None = None,
    workers: int = 1,
) -> BerPoint:
    """Estimate BER over exactly ``trials`` random symbols.

    Deterministic for fixed (seed, trials) regardless of ``workers``.  The
    seed defaults to ``channel.seed``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if mode not in supported_modes(config.scheme):
        raise ValueError(f"{config.scheme.value} does not support mode {mode!r}")
    seed = channel.seed if seed is None else seed
    errors = _count_errors(config, mode, channel, seed, 0, trials, workers)
    return _make_point(config, mode, channel, trials, errors)


def ber_point_adaptive(
    config: SchemeConfig,
    mode: str,
    channel: ChannelSpec,
    max_trials: int,
    seed: int | None = None,
    workers: int = 1,
    min_errors: int = 100,
    min_trials: int = 2048,
) -> BerPoint:
    """BER with the trial count grown geometrically until ``min_errors`` bit
    errors are collected (or ``max_trials`` is reached).

    Trial indices only ever extend, so the first n trials coincide with any
    shorter run of the same seed; the result is deterministic and
    worker-count invariant.  The achieved trial count is recorded in the
    returned point.
    """
    if mode not in supported_modes(config.scheme):
        raise ValueError(f"{config.scheme.value} does not support mode {mode!r}")
    seed = channel.seed if seed is None else seed
    min_trials = max(1, min(min_trials, max_trials))
    done = 0
    errors = 0
    batch = min_trials
    while True:
        errors += _count_errors(config, mode, channel, seed, done, done + batch, workers)
        done += batch
        if done >= max_trials or errors >= min_errors:
            return _make_point(config, mode, channel, done, errors)
        batch = min(done, max_trials - done)  # doubling, capped


# ---------------------------------------------------------------------------
# energy efficiency: required Eb/N0 at a target BER
# ---------------------------------------------------------------------------

def ee_required_ebn0(
    config: SchemeConfig,
    mode: str,
    target_ber: float,
    scan_lo_db: float,
    scan_hi_db: float,
    step_db: float,
    trials_per_point: int,
    seed: int,
    psi: float = 0.0,
    delta_f: float = 0.0,
    workers: int = 1,
    min_errors: int = 100,
    floor_ok: bool = False,
) -> EeResult:
    """Scan Eb/N0 upward and log-linearly interpolate the target-BER crossing.

    Points well above the target stop early once ``min_errors`` bit errors
    accumulate; points near the crossing run the full ``trials_per_point``.
    If the BER stays above the target through ``scan_hi_db``, raises
    :class:`UnbracketedTargetError` unless ``floor_ok`` is set, in which case
    the result carries ``required_ebn0_db=inf`` and the observed floor.
    """
    if not 0.0 < target_ber < 1.0:
        raise ValueError("target_ber must lie in (0, 1)")
    if step_db <= 0.0 or step_db > 0.25 + 1e-12:
        raise ValueError("step_db must lie in (0, 0.25]")
    if scan_hi_db < scan_lo_db:
        raise ValueError("scan_hi_db must be >= scan_lo_db")
    points: list[BerPoint] = []
    prev: BerPoint | None = None
    n_steps = int(math.floor((scan_hi_db - scan_lo_db) / step_db + 1e-9)) + 1
    for i in range(n_steps):
        x = scan_lo_db + i * step_db
        spec = ChannelSpec(ebn0_db=x, psi=psi, delta_f=delta_f, seed=seed)
        pt = ber_point_adaptive(
            config, mode, spec, trials_per_point, seed, workers, min_errors
        )
        points.append(pt)
        if pt.ber < target_ber:
            if prev is None:
                # Saturated start: the crossing is at or below the scan floor.
                required = scan_lo_db
            else:
                required = _log_interp(prev, pt, target_ber)
            return EeResult(config, mode, target_ber, required, se_of(config), None, tuple(points))
        prev = pt
    floor = min(pt.ber for pt in points)
    if floor_ok:
        return EeResult(config, mode, target_ber, math.inf, se_of(config), floor, tuple(points))
    raise UnbracketedTargetError(
        f"{config.scheme.value}/{mode}: BER stayed above {target_ber:g} "
        f"up to {scan_hi_db} dB (floor {floor:.3g})"
    )


def _log_interp(above: BerPoint, below: BerPoint, target: float) -> float:
    x0, x1 = above.channel.ebn0_db, below.channel.ebn0_db
    b0 = above.ber
    # A zero-error point has no log-BER; half an error is the usual surrogate.
    b1 = max(below.ber, 0.5 / (below.trials * bits_per_symbol(below.config)))
    if b0 <= target:
        return x0
    if b1 >= target:
        return x1
    lg0, lg1, lgt = math.log10(b0), math.log10(b1), math.log10(target)
    return x0 + (x1 - x0) * (lg0 - lgt) / (lg0 - lg1)


def check_monotonic(
    points: list[BerPoint], tolerance_sigmas: float = 3.0
) -> list[tuple[BerPoint, BerPoint]]:
    """Pairs of consecutive points where BER rises with Eb/N0 beyond CI noise."""
    ordered = sorted(points, key=lambda p: p.channel.ebn0_db)
    bad = []
    for a, b in zip(ordered[:-1], ordered[1:]):
        slack = tolerance_sigmas * math.hypot(a.half_width, b.half_width) / 1.96
        if b.ber > a.ber + slack:
            bad.append((a, b))
    return bad

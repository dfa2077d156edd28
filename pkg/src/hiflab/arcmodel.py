"""Anti-parallel DC-source arc model with controlled series resistances.

The arc conducts only while the driving phase voltage is outside the band
[-vn, +vp] (vn stored as a positive magnitude); inside the band the current
is exactly zero, which reproduces the arc-extinction interval around every
current zero. Both DC levels and both resistances re-randomize every
`update_interval` seconds. Each resistance additionally passes through a
moisture integrator (a bounded unit integrator that scales the drawn value)
and a first-order lag that shapes the response to the randomizer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DataError
from .utils import make_rng


@dataclass(frozen=True)
class HifModelParams:
    """Arc-model settings. Defaults give 10-100 A faults on a 25 kV feeder."""

    vp_range: tuple = (5000.0, 6000.0)
    vn_range: tuple = (7000.0, 8000.0)
    rp_range: tuple = (200.0, 1500.0)
    rn_range: tuple = (200.0, 1500.0)
    update_interval: float = 1e-4
    moisture_rate: float = 0.1
    response_tau: float = 5e-3
    # Sign switch for the moisture effect: True means wetting lowers the
    # effective resistance (rising current envelope), False the opposite.
    moisture_lowers_resistance: bool = True

    def __post_init__(self):
        for name in ("vp_range", "vn_range", "rp_range", "rn_range"):
            lo, hi = getattr(self, name)
            # equality allowed as a degenerate collapse for deterministic tests
            if not (0 < lo <= hi):
                raise ConfigError(f"{name} must satisfy 0 < low <= high, got ({lo}, {hi})")
        if self.update_interval <= 0:
            raise ConfigError("update_interval must be positive")
        if self.response_tau <= 0:
            raise ConfigError("response_tau must be positive")


@dataclass
class HifModelState:
    """Mutable arc state; one instance per fault branch, never shared."""

    params: HifModelParams
    vp: float
    vn: float
    rp: float
    rn: float
    rp_filtered: float
    rn_filtered: float
    moisture: float
    rng: np.random.Generator
    t: float = 0.0
    t_last_update: float = 0.0


def hif_init(params: HifModelParams, seed: int) -> HifModelState:
    rng = make_rng(seed)
    vp = rng.uniform(*params.vp_range)
    vn = rng.uniform(*params.vn_range)
    rp = rng.uniform(*params.rp_range)
    rn = rng.uniform(*params.rn_range)
    return HifModelState(
        params=params, vp=vp, vn=vn, rp=rp, rn=rn,
        rp_filtered=rp, rn_filtered=rn, moisture=0.0, rng=rng,
    )


def first_order_step(current: float, target: float, dt: float, tau: float) -> float:
    """Exact discretization of a first-order lag over one step of length dt."""
    return target + (current - target) * math.exp(-dt / tau)


def resistance_update(state: HifModelState, params: HifModelParams, dt: float) -> HifModelState:
    """Advance moisture, redraw raw resistance targets, apply the lag and clamp.

    Draw order per update is fixed (rp then rn) so runs are reproducible.
    Mutates and returns `state`.
    """
    if dt <= 0:
        raise DataError("dt must be positive")
    state.moisture = min(1.0, max(0.0, state.moisture + params.moisture_rate * dt))
    scale = 1.0 - state.moisture if params.moisture_lowers_resistance else 1.0 + state.moisture
    state.rp = state.rng.uniform(*params.rp_range)
    state.rn = state.rng.uniform(*params.rn_range)
    rp_f = first_order_step(state.rp_filtered, state.rp * scale, dt, params.response_tau)
    rn_f = first_order_step(state.rn_filtered, state.rn * scale, dt, params.response_tau)
    state.rp_filtered = min(params.rp_range[1], max(params.rp_range[0], rp_f))
    state.rn_filtered = min(params.rn_range[1], max(params.rn_range[0], rn_f))
    return state


def conduction_current(vp: float, vn: float, rp: float, rn: float, v_ph: float) -> float:
    """Piecewise arc law: zero inside the extinction band, resistive outside."""
    if v_ph > vp:
        return (v_ph - vp) / rp
    if v_ph < -vn:
        return (v_ph + vn) / rn
    return 0.0


def hif_advance(state: HifModelState, dt: float) -> HifModelState:
    """Advance time; re-randomize sources and resistances on each
    update_interval boundary crossing (one redraw per step regardless of
    how many boundaries a coarse step spans)."""
    if dt <= 0:
        raise DataError("dt must be positive")
    t_new = state.t + dt
    interval = state.params.update_interval
    if math.floor(t_new / interval + 1e-12) > math.floor(state.t / interval + 1e-12):
        state.vp = state.rng.uniform(*state.params.vp_range)
        state.vn = state.rng.uniform(*state.params.vn_range)
        resistance_update(state, state.params, dt)
        state.t_last_update = t_new
    state.t = t_new
    return state


def hif_step(state: HifModelState, v_ph: float, dt: float) -> tuple[float, HifModelState]:
    """Advance the arc one step and emit the fault current at the new time.

    Mutates and returns `state`; the current uses the post-update sources
    and resistances.
    """
    if not np.isfinite(v_ph):
        raise DataError("non-finite phase voltage rejected by hif_step")
    hif_advance(state, dt)
    i = conduction_current(state.vp, state.vn, state.rp_filtered, state.rn_filtered, v_ph)
    return i, state

"""Kalman-filter harmonic coefficient tracking.

State vector per channel: [a1, b1, a2, b2, ..., a6, b6, dc] where a_n is the
in-phase (cos) and b_n the in-quadrature (sin) coefficient of harmonic order
n. The state model is a random walk (transition = identity, process noise
q*I); the observation row at time t is

    h(t) = [cos(wt), sin(wt), cos(2wt), sin(2wt), ..., cos(6wt), sin(6wt), 1]

Because the filter is linear, the covariance/gain sequence depends only on
(n_steps, dt, t0, frequency, q, r, p0) and never on the data, so batch runs
reuse a cached gain table and propagate states with cheap rank-1 updates.
kf_run is numerically identical to folding kf_step sample by sample.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from .errors import DataError

#: Harmonic orders tracked by default (integer orders only).
N_HARMONICS = 6

#: Measured on the reference configuration (q=1e-4, r=1e-2, 1920 Hz, 60 Hz):
#: a mid-stream step in one harmonic coefficient reaches 90% of its final
#: value within this many fundamental cycles.
CONVERGENCE_HORIZON_CYCLES = 6.0


@dataclass(frozen=True)
class KfConfig:
    n_harmonics: int = N_HARMONICS
    include_dc: bool = True
    q: float = 1e-4
    r: float = 1e-2
    p0: float = 1.0

    @property
    def dim(self) -> int:
        return 2 * self.n_harmonics + (1 if self.include_dc else 0)


@dataclass
class KfState:
    x: np.ndarray
    P: np.ndarray
    q: float
    r: float
    t: float = 0.0
    n_harmonics: int = N_HARMONICS
    include_dc: bool = True


def kf_init(config: KfConfig = KfConfig(), t: float = 0.0) -> KfState:
    dim = config.dim
    return KfState(
        x=np.zeros(dim),
        P=np.eye(dim) * config.p0,
        q=config.q,
        r=config.r,
        t=t,
        n_harmonics=config.n_harmonics,
        include_dc=config.include_dc,
    )


def observation_row(t: float, nominal_freq: float, n_harmonics: int = N_HARMONICS,
                    include_dc: bool = True) -> np.ndarray:
    w = 2.0 * np.pi * nominal_freq
    orders = np.arange(1, n_harmonics + 1)
    row = np.empty(2 * n_harmonics + (1 if include_dc else 0))
    row[0:2 * n_harmonics:2] = np.cos(orders * w * t)
    row[1:2 * n_harmonics:2] = np.sin(orders * w * t)
    if include_dc:
        row[-1] = 1.0
    return row


def observation_matrix(t: np.ndarray, nominal_freq: float, n_harmonics: int = N_HARMONICS,
                       include_dc: bool = True) -> np.ndarray:
    """Stacked observation rows for a time vector, shape (len(t), dim)."""
    t = np.asarray(t, dtype=float)
    w = 2.0 * np.pi * nominal_freq
    orders = np.arange(1, n_harmonics + 1)
    arg = np.outer(t, orders) * w
    mat = np.empty((len(t), 2 * n_harmonics + (1 if include_dc else 0)))
    mat[:, 0:2 * n_harmonics:2] = np.cos(arg)
    mat[:, 1:2 * n_harmonics:2] = np.sin(arg)
    if include_dc:
        mat[:, -1] = 1.0
    return mat


def kf_step(state: KfState, sample: float, t: float, nominal_freq: float) -> KfState:
    """One predict/update cycle; returns a new state, input state untouched."""
    if not np.isfinite(sample):
        raise DataError("non-finite sample rejected by kf_step")
    h = observation_row(t, nominal_freq, state.n_harmonics, state.include_dc)
    p_pred = state.P + state.q * np.eye(len(state.x))
    ph = p_pred @ h
    s = float(h @ ph) + state.r
    k = ph / s
    innov = sample - float(h @ state.x)
    x_new = state.x + k * innov
    a = np.eye(len(state.x)) - np.outer(k, h)
    p_new = a @ p_pred @ a.T + state.r * np.outer(k, k)
    p_new = 0.5 * (p_new + p_new.T)
    return replace(state, x=x_new, P=p_new, t=t)


@lru_cache(maxsize=32)
def _gain_table(n_steps: int, dt: float, t0: float, nominal_freq: float,
                q: float, r: float, p0: float, n_harmonics: int,
                include_dc: bool) -> tuple[np.ndarray, np.ndarray]:
    """Precomputed (gains, observation rows) for a fixed run geometry.

    Replays exactly the covariance arithmetic of kf_step so that gain-table
    runs and step-by-step runs agree bit for bit.
    """
    dim = 2 * n_harmonics + (1 if include_dc else 0)
    t = t0 + np.arange(n_steps) * dt
    hmat = observation_matrix(t, nominal_freq, n_harmonics, include_dc)
    p = np.eye(dim) * p0
    eye = np.eye(dim)
    gains = np.empty((n_steps, dim))
    for idx in range(n_steps):
        h = hmat[idx]
        p_pred = p + q * eye
        ph = p_pred @ h
        s = float(h @ ph) + r
        k = ph / s
        gains[idx] = k
        a = eye - np.outer(k, h)
        p = a @ p_pred @ a.T + r * np.outer(k, k)
        p = 0.5 * (p + p.T)
    return gains, hmat


def kf_run(samples: np.ndarray, dt: float, nominal_freq: float,
           config: KfConfig = KfConfig(), t0: float = 0.0) -> np.ndarray:
    """Filter a multi-channel sample block with shared gains.

    samples: shape (n_steps,) or (n_steps, n_channels).
    Returns coefficient trajectories, shape (n_steps, dim) or
    (n_steps, dim, n_channels).
    """
    samples = np.asarray(samples, dtype=float)
    if not np.all(np.isfinite(samples)):
        raise DataError("non-finite sample rejected by kf_run")
    squeeze = samples.ndim == 1
    block = samples[:, None] if squeeze else samples
    n_steps, n_channels = block.shape
    gains, hmat = _gain_table(n_steps, float(dt), float(t0), float(nominal_freq),
                              config.q, config.r, config.p0,
                              config.n_harmonics, config.include_dc)
    x = np.zeros((config.dim, n_channels))
    out = np.empty((n_steps, config.dim, n_channels))
    for idx in range(n_steps):
        h = hmat[idx]
        innov = block[idx] - h @ x
        x = x + gains[idx][:, None] * innov[None, :]
        out[idx] = x
    return out[:, :, 0] if squeeze else out


def coefficient_index(order: int, component: str, n_harmonics: int = N_HARMONICS) -> int:
    """Index of a coefficient in the state vector; component in {cos, sin, dc}."""
    if component == "dc":
        return 2 * n_harmonics
    if not 1 <= order <= n_harmonics:
        raise DataError(f"harmonic order {order} outside 1..{n_harmonics}")
    base = 2 * (order - 1)
    if component == "cos":
        return base
    if component == "sin":
        return base + 1
    raise DataError(f"unknown coefficient component {component!r}")

"""Full-cycle DFT phasor estimation and phasor-derived quantities.

The estimator follows relay practice: one fundamental cycle per window,
harmonic orders 1..6. The order-n coefficient of a window x[0..N-1] is

    C_n = (2/N) * sum_k x[k] * exp(-j*2*pi*n*k/N)

so a pure cos(n*w*t) window yields magnitude 1 at angle 0 and a pure
sin(n*w*t) window yields angle -pi/2. Angles are referenced to the window
start sample.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .utils import wrap_angle


@dataclass(frozen=True)
class Phasor:
    """Polar phasor with magnitude >= 0 and angle in (-pi, pi]."""

    magnitude: float
    angle: float

    def __post_init__(self):
        if self.magnitude < 0:
            object.__setattr__(self, "magnitude", -self.magnitude)
            object.__setattr__(self, "angle", wrap_angle(self.angle + np.pi))
        object.__setattr__(self, "angle", wrap_angle(self.angle))

    @classmethod
    def from_complex(cls, z: complex) -> "Phasor":
        return cls(abs(z), float(np.angle(z)))

    @property
    def complex(self) -> complex:
        return self.magnitude * np.exp(1j * self.angle)


@dataclass(frozen=True)
class SequenceTriple:
    """Zero/positive/negative symmetrical components as complex phasors."""

    zero: complex
    positive: complex
    negative: complex


#: 1 /_ 120 degrees, the symmetrical-components rotation operator.
ALPHA = np.exp(2j * np.pi / 3.0)

_SEQ_FORWARD = np.array(
    [
        [1.0, 1.0, 1.0],
        [1.0, ALPHA, ALPHA**2],
        [1.0, ALPHA**2, ALPHA],
    ],
    dtype=complex,
) / 3.0

_SEQ_INVERSE = np.array(
    [
        [1.0, 1.0, 1.0],
        [1.0, ALPHA**2, ALPHA],
        [1.0, ALPHA, ALPHA**2],
    ],
    dtype=complex,
)


def samples_per_cycle(nominal_freq: float, sample_rate: float) -> int:
    """Integer analysis-grid length for one fundamental cycle."""
    if nominal_freq <= 0 or sample_rate <= 0:
        raise DataError("nominal_freq and sample_rate must be positive")
    n = int(round(sample_rate / nominal_freq))
    if n < 4:
        raise DataError(f"sample rate {sample_rate} Hz resolves fewer than 4 samples per cycle")
    return n


def dft_kernel(n_grid: int, orders) -> np.ndarray:
    """Complex kernel K (n_grid x len(orders)): window @ K gives the coefficients."""
    k = np.arange(n_grid)[:, None]
    n = np.asarray(orders)[None, :]
    return (2.0 / n_grid) * np.exp(-2j * np.pi * n * k / n_grid)


def resample_cycle(window: np.ndarray, nominal_freq: float, sample_rate: float) -> np.ndarray:
    """Map one raw cycle onto the integer analysis grid.

    When sample_rate/nominal_freq is an integer the window is returned as-is
    (exact mode). Otherwise the trailing one-cycle span is linearly
    interpolated onto n_grid uniform points ending at the window's last
    sample (fractional-cycle mode).
    """
    window = np.asarray(window, dtype=float)
    period_samples = sample_rate / nominal_freq
    n_grid = samples_per_cycle(nominal_freq, sample_rate)
    if abs(period_samples - n_grid) < 1e-9:
        if len(window) < n_grid:
            raise DataError(f"window of {len(window)} samples is shorter than one cycle ({n_grid})")
        return window[-n_grid:]
    needed = int(np.ceil(period_samples)) + 1
    if len(window) < needed:
        raise DataError(f"window of {len(window)} samples is shorter than one cycle ({needed})")
    t_raw = np.arange(len(window)) / sample_rate
    t_end = t_raw[-1]
    t_grid = t_end - (1.0 / nominal_freq) + (np.arange(1, n_grid + 1) / nominal_freq / n_grid)
    return np.interp(t_grid, t_raw, window)


def full_cycle_dft(window, order: int, nominal_freq: float, sample_rate: float) -> Phasor:
    """Order-n Fourier coefficient of a one-cycle window, as a phasor.

    Linear in the input; angle referenced to the window start.
    """
    if order < 1:
        raise DataError("harmonic order must be >= 1")
    grid = resample_cycle(np.asarray(window, dtype=float), nominal_freq, sample_rate)
    if not np.all(np.isfinite(grid)):
        raise DataError("window contains non-finite samples")
    coeff = grid @ dft_kernel(len(grid), [order])[:, 0]
    return Phasor.from_complex(coeff)


def sequence_components(pa, pb, pc) -> SequenceTriple:
    """Symmetrical components of a three-phase phasor set (a, b, c order)."""
    phases = np.array([_as_complex(pa), _as_complex(pb), _as_complex(pc)])
    zero, positive, negative = _SEQ_FORWARD @ phases
    return SequenceTriple(zero=complex(zero), positive=complex(positive), negative=complex(negative))


def inverse_sequence(triple: SequenceTriple) -> tuple[complex, complex, complex]:
    """Reconstruct the (a, b, c) phasors from a sequence triple."""
    seq = np.array([triple.zero, triple.positive, triple.negative])
    a, b, c = _SEQ_INVERSE @ seq
    return complex(a), complex(b), complex(c)


def power_quantities(v, i) -> dict:
    """Single-phase P, Q, power factor and power angle from fundamental phasors.

    phi = angle(v) - angle(i), so a lagging (inductive) current gives
    phi > 0 and Q > 0.
    """
    vz, iz = _as_complex(v), _as_complex(i)
    vm, im = abs(vz), abs(iz)
    if vm * im == 0.0:
        raise DataError("power factor undefined for a zero-magnitude phasor")
    phi = wrap_angle(np.angle(vz) - np.angle(iz))
    return {
        "P": vm * im * np.cos(phi),
        "Q": vm * im * np.sin(phi),
        "pf": float(np.cos(phi)),
        "phi": float(phi),
    }


def rate_of_change(series, window_dt: float) -> np.ndarray:
    """First-difference quotient aligned to the later point.

    The first element has no predecessor and is marked absent (NaN);
    callers drop or mask it.
    """
    series = np.asarray(series, dtype=float)
    if series.size < 2:
        raise DataError("rate_of_change needs at least 2 points")
    if window_dt <= 0:
        raise DataError("window_dt must be positive")
    out = np.empty_like(series)
    out[0] = np.nan
    out[1:] = np.diff(series) / window_dt
    return out


def composite_rate(numerator, denominator, deadband: float = 1e-6) -> np.ndarray:
    """Delta-numerator over delta-denominator with a denominator deadband.

    Windows where |delta denominator| < deadband emit 0 instead of a
    division blow-up. First element is absent (NaN).
    """
    num = np.asarray(numerator, dtype=float)
    den = np.asarray(denominator, dtype=float)
    if num.shape != den.shape:
        raise DataError("numerator and denominator series must have the same shape")
    if num.size < 2:
        raise DataError("composite_rate needs at least 2 points")
    dnum = np.diff(num)
    dden = np.diff(den)
    out = np.empty_like(num)
    out[0] = np.nan
    small = np.abs(dden) < deadband
    out[1:] = np.where(small, 0.0, dnum / np.where(small, 1.0, dden))
    return out


def _as_complex(p) -> complex:
    if isinstance(p, Phasor):
        return p.complex
    return complex(p)

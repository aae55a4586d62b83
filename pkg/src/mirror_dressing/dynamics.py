"""Second-order dressing dynamics from the bare vacuum on a discrete cavity basis.

The interaction is switched on at t = 0 with field and mirror in their bare
ground state.  Only vacuum expectation values are needed, and every one of
them is a weighted sum over mode pairs of ``1 - cos[(w0 + w_k + w_j) t]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import ModeBasis, PhysicalParams, pair_weights
from .stationary import pair_prefactor
from .summation import neumaier_rows

# rows x columns per vectorised block
_BLOCK_ELEMENTS = 2_000_000


@dataclass(frozen=True)
class TimeGrid:
    times: np.ndarray

    def __post_init__(self):
        t = np.array(self.times, dtype=float).reshape(-1)
        if t.size == 0:
            raise ValueError("time grid is empty")
        if not np.all(np.isfinite(t)) or t[0] < 0:
            raise ValueError("times must be finite and non-negative")
        if np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        t.setflags(write=False)
        object.__setattr__(self, "times", t)

    @classmethod
    def uniform(cls, t_max: float, points: int) -> "TimeGrid":
        if not t_max > 0:
            raise ValueError(f"t_max must be positive, got {t_max!r}")
        if points < 2:
            raise ValueError(f"need at least 2 points, got {points!r}")
        return cls(np.linspace(0.0, t_max, int(points)))

    def __len__(self):
        return len(self.times)


@dataclass(frozen=True)
class DynamicBreakdown:
    t: float
    E_local: float
    E_field: float
    E_mirror: float
    E_interaction: float

    @property
    def conservation_residual(self) -> float:
        """(E_field + E_mirror + E_interaction) / (E_field + E_mirror), 0 when both vanish."""
        scale = self.E_field + self.E_mirror
        if scale == 0:
            return 0.0
        return (self.E_field + self.E_mirror + self.E_interaction) / scale


def _check_times(t) -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ValueError("dressing dynamics is defined for finite t >= 0 only")
    return arr


def f_kernel(omega, t):
    """(exp(i omega t) - 1) / (i omega), equal to t at omega = 0."""
    t = _check_times(t)
    x = np.asarray(omega, dtype=float) * t
    # sin(x)/omega + i (1 - cos x)/omega, written through sinc to survive omega -> 0
    re = t * np.sinc(x / np.pi)
    im = t * np.sin(x / 2) * np.sinc(x / (2 * np.pi))
    out = re + 1j * im
    return out[()] if out.ndim == 0 else out


def one_minus_cos(phase):
    """1 - cos(phase) without cancellation near multiples of 2 pi."""
    half = np.sin(0.5 * np.asarray(phase))
    return 2.0 * half * half


class PairTable:
    """Per-(params, basis) weights of the three dynamical sums over n = k + j.

    Built once and reused for every time point.  Columns are ordered by
    increasing pair frequency; the summation kernel runs them largest first.
    """

    def __init__(self, params: PhysicalParams, basis: ModeBasis):
        self.params = params
        self.basis = basis
        n, c = pair_weights(basis)
        w0 = params.omega0
        A = pair_prefactor(params)
        s = basis.spacing**2 * c
        nu = n * basis.spacing
        d = w0 + nu
        self.frequency = d
        self.w_local = -A * s / (w0 * d)
        self.w_field = 2.0 * A * nu * s / (w0 * d * d)
        self.w_mirror = 2.0 * A * s / (d * d)

    @property
    def is_empty(self) -> bool:
        return self.frequency.size == 0

    def _reduce(self, times: np.ndarray, kernel) -> np.ndarray:
        """Return an array (3, T): local, field, mirror sums against ``kernel(d, t)``."""
        T = times.size
        out = np.zeros((3, T))
        if self.is_empty or T == 0:
            return out
        step = max(1, _BLOCK_ELEMENTS // self.frequency.size)
        for start in range(0, T, step):
            block = times[start:start + step]
            psi = kernel(self.frequency, block)
            for row, weights in enumerate((self.w_local, self.w_field, self.w_mirror)):
                out[row, start:start + step] = neumaier_rows(psi * weights)
        return out

    def evaluate(self, times) -> np.ndarray:
        times = _check_times(np.atleast_1d(times))
        return self._reduce(times, lambda d, t: one_minus_cos(np.multiply.outer(t, d)))

    def window_average(self, t_start: float, t_end: float) -> np.ndarray:
        """Exact time averages over [t_start, t_end] of the three sums."""
        _check_times([t_start, t_end])
        if not t_end > t_start:
            raise ValueError("window must have t_end > t_start")
        span = t_end - t_start

        def averaged(d, _):
            # mean of 1 - cos(d t): 1 - [sin(d t2) - sin(d t1)] / (d span)
            diff = 2.0 * np.cos(0.5 * d * (t_end + t_start)) * np.sin(0.5 * d * span)
            return (1.0 - diff / (d * span))[None, :]

        return self._reduce(np.zeros(1), averaged)[:, 0]

    @cached_property
    def stationary_limit(self) -> np.ndarray:
        """Sums with 1 - cos replaced by its long-time mean 1."""
        return self._reduce(np.zeros(1), lambda d, _: np.ones((1, d.size)))[:, 0]


def _scalar_or_array(values, t):
    return float(values[0]) if np.ndim(t) == 0 else values


def local_interaction_energy(params: PhysicalParams, basis: ModeBasis, t):
    """Local dynamical interaction energy <H_i(t)>/2 at second order [J]."""
    return _scalar_or_array(PairTable(params, basis).evaluate(t)[0], t)


def field_energy_shift(params: PhysicalParams, basis: ModeBasis, t):
    """Second-order growth of <H_f>(t) from the bare vacuum [J]."""
    return _scalar_or_array(PairTable(params, basis).evaluate(t)[1], t)


def mirror_energy_shift(params: PhysicalParams, basis: ModeBasis, t):
    """Second-order growth of <H_m>(t) from the bare vacuum [J]."""
    return _scalar_or_array(PairTable(params, basis).evaluate(t)[2], t)


def breakdowns_from_sums(times: np.ndarray, sums: np.ndarray) -> list[DynamicBreakdown]:
    local, fld, mir = sums
    return [
        DynamicBreakdown(float(t), float(e), float(f), float(m), 2.0 * float(e))
        for t, e, f, m in zip(times, local, fld, mir)
    ]


def dynamic_breakdown(params: PhysicalParams, basis: ModeBasis, grid: TimeGrid) -> list[DynamicBreakdown]:
    return breakdowns_from_sums(grid.times, PairTable(params, basis).evaluate(grid.times))


def window_average(params: PhysicalParams, basis: ModeBasis, t_start: float, t_end: float):
    """Time averages (E_local, E_field, E_mirror) over [t_start, t_end]."""
    return tuple(float(v) for v in PairTable(params, basis).window_average(t_start, t_end))


def round_trip_time(params: PhysicalParams) -> float:
    """Photon round trip 2 L0 / c across the cavity."""
    return 2.0 * params.L0 / params.c

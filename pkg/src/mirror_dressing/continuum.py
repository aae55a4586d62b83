"""Continuum limit (L0 -> infinity) of the dressing energies.

With x = c k / w0 and tau = w0 t every quantity becomes a double integral over
the square [0, X]^2, X = omega_cut / omega0, whose kernel depends on x' only
through x + x'.  Integrating along the anti-diagonals u = x + x' gives the
exact convolution weight

    W(u) = int x (u - x) dx = (b - a) (u^2/6 + a b/3),
    a = max(0, u - X),  b = min(X, u),

(u^3/6 below u = X) and leaves a one-dimensional integral over u in [0, 2X],
oscillatory in u with period 2 pi / tau.

Normalisation follows the continuum replacement sum_kj -> L0^2/(2 pi)^2 int dk dk'.
The Riemann-sum limit of the Dirichlet cavity sums (mode spacing pi / L0) is
larger by :data:`DIRICHLET_DENSITY_FACTOR`.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .core import PhysicalParams
from .quadrature import QuadratureError, integrate

#: (L0/pi)^2 / (L0/(2 pi))^2, discrete Dirichlet mode density over the
#: continuum normalisation used here.
DIRICHLET_DENSITY_FACTOR = 4.0

THREADS_ENV = "MIRROR_DRESSING_THREADS"

__all__ = [
    "ContinuumConfig",
    "QuadratureError",
    "DIRICHLET_DENSITY_FACTOR",
    "pair_weight",
    "continuum_local_energy",
    "continuum_field_mirror",
    "continuum_breakdown",
    "continuum_window_average",
    "stationary_continuum",
]


@dataclass(frozen=True)
class ContinuumConfig:
    """Dimensionless cutoff ``X``, dimensionless time ``tau`` and the energy scale [J]."""

    X: float
    tau: float
    energy_scale: float
    quad_tol: float = 1e-9
    panels_per_period: int = 8

    def __post_init__(self):
        if not (math.isfinite(self.X) and self.X > 0):
            raise ValueError(f"X must be positive, got {self.X!r}")
        if not (math.isfinite(self.tau) and self.tau >= 0):
            raise ValueError(f"tau must be non-negative, got {self.tau!r}")
        if not (math.isfinite(self.energy_scale) and self.energy_scale > 0):
            raise ValueError(f"energy_scale must be positive, got {self.energy_scale!r}")
        if not 0 < self.quad_tol <= 1e-2:
            raise ValueError(f"quad_tol must lie in (0, 1e-2], got {self.quad_tol!r}")
        if self.panels_per_period < 1:
            raise ValueError("panels_per_period must be >= 1")

    @classmethod
    def from_params(cls, params: PhysicalParams, t: float = 0.0, **kwargs) -> "ContinuumConfig":
        return cls(params.omega_cut / params.omega0, params.omega0 * t, params.energy_scale, **kwargs)

    def at(self, tau: float) -> "ContinuumConfig":
        return replace(self, tau=tau)


def pair_weight(u, X: float, power: int = 1):
    """Integral of x^power (u - x) over the admissible x-range of the square [0, X]^2.

    power = 1 gives W(u); power = 2 gives u W(u) / 2 by the x <-> u - x symmetry.
    Written in factored form so there is no cancellation near u = 2X.
    """
    u = np.asarray(u, dtype=float)
    a = np.clip(u - X, 0.0, None)
    b = np.minimum(X, u)
    width = np.clip(b - a, 0.0, None)
    w1 = width * (u * u / 6.0 + a * b / 3.0)
    if power == 1:
        return w1
    if power == 2:
        return 0.5 * u * w1
    raise ValueError("power must be 1 or 2")


def _kernels(X: float):
    """Non-oscillatory parts of the (local, field, mirror) integrands."""

    def base(u):
        w = pair_weight(u, X)
        s = 1.0 + u
        return np.stack([w / s, u * w / (s * s), w / (s * s)])

    return base


def _prefactors(energy_scale: float) -> np.ndarray:
    return energy_scale * np.array([
        -1.0 / (16 * math.pi**2),
        1.0 / (8 * math.pi**2),
        1.0 / (8 * math.pi**2),
    ])


def _integrate(cfg: ContinuumConfig, modulation, frequency: float):
    base = _kernels(cfg.X)
    max_width = None
    if frequency > 0:
        max_width = 2 * math.pi / (frequency * cfg.panels_per_period)
    try:
        result = integrate(
            lambda u: base(u) * modulation(u),
            [0.0, cfg.X, 2.0 * cfg.X],
            rtol=cfg.quad_tol,
            max_width=max_width,
        )
    except QuadratureError as exc:
        raise QuadratureError(
            f"continuum integral at tau={cfg.tau!r}, X={cfg.X!r}: {exc}",
            value=exc.value, achieved=exc.achieved, requested=exc.requested,
        ) from None
    return _prefactors(cfg.energy_scale) * result.value


def continuum_breakdown(cfg: ContinuumConfig) -> tuple[float, float, float]:
    """(E_local, E_field, E_mirror) at dimensionless time ``cfg.tau`` [J]."""
    if cfg.tau == 0:
        return 0.0, 0.0, 0.0
    tau = cfg.tau

    def modulation(u):
        half = np.sin(0.5 * (1.0 + u) * tau)
        return 2.0 * half * half

    return tuple(float(v) for v in _integrate(cfg, modulation, tau))


def continuum_local_energy(cfg: ContinuumConfig) -> float:
    return continuum_breakdown(cfg)[0]


def continuum_field_mirror(cfg: ContinuumConfig) -> tuple[float, float]:
    _, field, mirror = continuum_breakdown(cfg)
    return field, mirror


def stationary_continuum(cfg: ContinuumConfig) -> tuple[float, float, float, float]:
    """(E_total, E_field, E_mirror, E_interaction) of the fully dressed continuum state."""
    local, field2, mirror2 = _integrate(cfg, lambda u: 1.0, 0.0)
    # the dynamical field/mirror integrals carry twice the stationary prefactor
    return float(local), float(field2 / 2), float(mirror2 / 2), float(2 * local)


def continuum_window_average(cfg: ContinuumConfig, tau_start: float, tau_end: float):
    """Exact averages of (E_local, E_field, E_mirror) over tau in [tau_start, tau_end]."""
    if not (0 <= tau_start < tau_end):
        raise ValueError("need 0 <= tau_start < tau_end")
    span = tau_end - tau_start

    def modulation(u):
        s = 1.0 + u
        diff = 2.0 * np.cos(0.5 * s * (tau_end + tau_start)) * np.sin(0.5 * s * span)
        return 1.0 - diff / (s * span)

    return tuple(float(v) for v in _integrate(cfg, modulation, tau_end))


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
    n = int(raw)
    if n < 0:
        raise ValueError(f"{THREADS_ENV} must be >= 0")
    return n or (os.cpu_count() or 1)


def continuum_curve(cfg: ContinuumConfig, taus) -> np.ndarray:
    """Breakdowns at many tau; rows (E_local, E_field, E_mirror), order-preserving."""
    taus = [float(t) for t in np.asarray(taus, dtype=float)]
    workers = min(thread_count(), max(1, len(taus)))
    if workers == 1:
        rows = [continuum_breakdown(cfg.at(t)) for t in taus]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda t: continuum_breakdown(cfg.at(t)), taus))
    return np.array(rows, dtype=float).reshape(len(taus), 3)

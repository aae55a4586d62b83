"""Dressed ground state and second-order stationary energy shifts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ModeBasis, PhysicalParams, pair_weights
from .summation import exact_sum


@dataclass(frozen=True)
class DressedAmplitudes:
    """Amplitudes D[j, k] of the two-photon one-phonon admixtures (ordered-pair convention)."""

    D: np.ndarray

    def __getitem__(self, item):
        return self.D[item]


@dataclass(frozen=True)
class StationaryShifts:
    E_total: float
    E_field: float
    E_mirror: float
    E_interaction: float

    @property
    def sum_rule_residual(self) -> float:
        """(E_field + E_mirror + E_total) / |E_total|; zero up to rounding."""
        return (self.E_field + self.E_mirror + self.E_total) / abs(self.E_total)


def _require_modes(basis: ModeBasis):
    if basis.is_empty:
        raise ValueError("mode basis is empty: omega_cut is below the lowest cavity mode")


def dressed_amplitudes(params: PhysicalParams, basis: ModeBasis) -> DressedAmplitudes:
    _require_modes(basis)
    k = basis.indices
    w = basis.frequencies
    parity = np.where((k[:, None] + k[None, :]) % 2 == 0, 1.0, -1.0)
    root = np.sqrt(w) * basis.damping
    numer = np.sqrt(params.hbar / (8.0 * params.M * params.omega0)) * np.multiply.outer(root, root)
    denom = params.omega0 + np.add.outer(w, w)
    D = parity * numer / denom / params.L0
    D.setflags(write=False)
    return DressedAmplitudes(D)


def pair_prefactor(params: PhysicalParams) -> float:
    """hbar^2 / (4 L0^2 M)."""
    return params.hbar**2 / (4.0 * params.L0**2 * params.M)


def stationary_shifts(params: PhysicalParams, basis: ModeBasis) -> StationaryShifts:
    """Second-order shift of the ground energy and its split over H_f, H_m and H_i.

    The mode-pair double sums are collapsed onto n = k + j (see
    :func:`~mirror_dressing.core.pair_weights`) and accumulated with exact
    rounding, so the identity E_field + E_mirror = -E_total holds to a few ulp.
    """
    _require_modes(basis)
    n, c = pair_weights(basis)
    w0 = params.omega0
    spacing = basis.spacing
    A = pair_prefactor(params)
    s = spacing**2 * c  # sum of w_k w_j over pairs with k + j = n
    nu = n * spacing  # w_k + w_j
    d = w0 + nu

    E_total = -A * exact_sum(s / (w0 * d))
    E_field = A * exact_sum(nu * s / (w0 * d * d))
    E_mirror = A * exact_sum(s / (d * d))
    return StationaryShifts(E_total, E_field, E_mirror, 2.0 * E_total)

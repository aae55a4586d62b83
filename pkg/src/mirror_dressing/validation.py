"""Perturbative-versus-exact comparison on identical truncated mode sets."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PhysicalParams, build_mode_basis
from .dynamics import local_interaction_energy
from .oracle import Truncation, build_hamiltonian, evolve_expectations, exact_ground_shift
from .stationary import stationary_shifts


@dataclass(frozen=True)
class ComparisonRow:
    coupling_scale: float
    mass: float
    perturbative_shift: float
    exact_shift: float
    stationary_gap: float
    dynamic_deviation: float
    stationary_ratio: float  # gap at the previous (stronger) coupling over this gap
    dynamic_ratio: float
    stationary_exponent: float  # local power of the coupling, ideally 4
    dynamic_exponent: float

    @property
    def relative_gap(self) -> float:
        return self.stationary_gap / abs(self.exact_shift)


def compare_with_oracle(
    params: PhysicalParams,
    truncation: Truncation,
    scales=(1.0, 0.5, 0.25),
    times=None,
    points: int = 100,
) -> list[ComparisonRow]:
    """Scale the coupling by each ``scale`` (through M -> M / scale^2) and compare.

    ``times`` defaults to ``points`` samples over one mirror period.
    """
    if times is None:
        times = np.linspace(0.0, 2 * math.pi / params.omega0, points)
    times = np.asarray(times, dtype=float)
    rows: list[ComparisonRow] = []
    prev = None
    for scale in scales:
        p = params.with_mass(params.M / scale**2)
        basis = build_mode_basis(p).truncate(truncation.n_modes)
        H = build_hamiltonian(p, truncation)
        exact = exact_ground_shift(H)
        pert = stationary_shifts(p, basis).E_total
        gap = abs(pert - exact)
        samples = evolve_expectations(H, times)
        exact_local = np.array([s.interaction / 2 for s in samples])
        deviation = float(np.max(np.abs(local_interaction_energy(p, basis, times) - exact_local)))
        if prev is None:
            s_ratio = d_ratio = s_exp = d_exp = math.nan
        else:
            step = math.log(prev[0] / scale)
            s_ratio = prev[1] / gap
            d_ratio = prev[2] / deviation
            s_exp = math.log(s_ratio) / step
            d_exp = math.log(d_ratio) / step
        rows.append(ComparisonRow(scale, p.M, pert, exact, gap, deviation, s_ratio, d_ratio, s_exp, d_exp))
        prev = (scale, gap, deviation)
    return rows

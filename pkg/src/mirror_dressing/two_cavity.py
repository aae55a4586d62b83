"""One movable mirror shared by two cavities.

The mirror couples to the left cavity with C^1_kj and to the right one with
C^2_kj = -C_kj (the displacement enters with opposite sign on the two sides).
At second order the couplings appear only squared, so each cavity contributes
its own single-cavity sums; cross-cavity correlations start at fourth order
and are not modelled.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import ModeBasis, PhysicalConstants, PhysicalParams, build_coupling_matrix, build_mode_basis
from .dynamics import DynamicBreakdown, PairTable, TimeGrid, breakdowns_from_sums


@dataclass(frozen=True)
class TwoCavityParams:
    M: float
    omega0: float
    L0_1: float
    omega_cut_1: float
    L0_2: float
    omega_cut_2: float
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    cutoff: str = "sharp"
    signs: tuple[int, int] = (1, -1)

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs) or len(self.signs) != 2:
            raise ValueError(f"signs must be a pair of +/-1, got {self.signs!r}")
        # validates the positive fields
        self.cavities()

    def cavity(self, index: int) -> PhysicalParams:
        L0, cut = ((self.L0_1, self.omega_cut_1), (self.L0_2, self.omega_cut_2))[index]
        return PhysicalParams(self.M, self.omega0, L0, cut, self.constants, self.cutoff)

    def cavities(self) -> tuple[PhysicalParams, PhysicalParams]:
        return self.cavity(0), self.cavity(1)


def cavity_bases(p: TwoCavityParams) -> tuple[ModeBasis, ModeBasis]:
    return tuple(build_mode_basis(c) for c in p.cavities())


def signed_couplings(p: TwoCavityParams):
    """Coupling matrices of both cavities with their side signs."""
    return tuple(
        build_coupling_matrix(c, b, sign)
        for c, b, sign in zip(p.cavities(), cavity_bases(p), p.signs)
    )


def _tables(p: TwoCavityParams):
    return [PairTable(c, b) for c, b in zip(p.cavities(), cavity_bases(p))]


def per_cavity_sums(p: TwoCavityParams, times) -> np.ndarray:
    """Array (2, 3, T): per cavity, the (local, field, mirror) sums."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    return np.stack([table.evaluate(times) for table in _tables(p)])


def two_cavity_local_energy(p: TwoCavityParams, t):
    """Local dynamical energy of the mirror dressed by both cavity fields [J]."""
    sums = per_cavity_sums(p, t)[:, 0, :]
    total = sums[0] + sums[1]
    return float(total[0]) if np.ndim(t) == 0 else total


def two_cavity_breakdown(p: TwoCavityParams, grid: TimeGrid) -> list[DynamicBreakdown]:
    sums = per_cavity_sums(p, grid.times)
    return breakdowns_from_sums(grid.times, sums[0] + sums[1])

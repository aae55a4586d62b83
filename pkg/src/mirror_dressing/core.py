"""Physical parameters, cavity mode grids and the field-mirror coupling.

All public quantities are SI.  A cavity of equilibrium length ``L0`` with
Dirichlet walls supports modes ``omega_k = c k pi / L0`` for ``k = 1, 2, ...``;
modes above the cutoff frequency are dropped (sharp cutoff) or exponentially
suppressed (smooth cutoff, a sensitivity knob only).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

HBAR_SI = 1.054571817e-34
C_SI = 2.99792458e8

#: number of cutoff frequencies retained by the exponential cutoff; the
#: squared-coupling suppression there is exp(-36) ~ 2e-16.
EXPONENTIAL_CUTOFF_EXTENT = 36.0

CUTOFF_KINDS = ("sharp", "exponential")


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = HBAR_SI
    c: float = C_SI

    def __post_init__(self):
        for name in ("hbar", "c"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and positive, got {value!r}")


@dataclass(frozen=True)
class PhysicalParams:
    """Mirror and cavity parameters.

    Attributes
    ----------
    M : float
        Mirror mass [kg].
    omega0 : float
        Mirror trap frequency [rad/s].
    L0 : float
        Equilibrium cavity length [m].
    omega_cut : float
        Ultraviolet cutoff frequency [rad/s].
    constants : PhysicalConstants
        hbar and c; CODATA by default.
    cutoff : str
        ``"sharp"`` (default) or ``"exponential"``.
    """

    M: float
    omega0: float
    L0: float
    omega_cut: float
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    cutoff: str = "sharp"

    def __post_init__(self):
        for name in ("M", "omega0", "L0", "omega_cut"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and positive, got {value!r}")
        if self.cutoff not in CUTOFF_KINDS:
            raise ValueError(f"cutoff must be one of {CUTOFF_KINDS}, got {self.cutoff!r}")

    @property
    def hbar(self) -> float:
        return self.constants.hbar

    @property
    def c(self) -> float:
        return self.constants.c

    @property
    def mode_spacing(self) -> float:
        """Spacing c*pi/L0 of the cavity mode frequencies."""
        return self.c * math.pi / self.L0

    @property
    def energy_scale(self) -> float:
        """hbar^2 omega0^2 / (M c^2), the natural scale of the continuum shifts."""
        return self.hbar**2 * self.omega0**2 / (self.M * self.c**2)

    def with_mass(self, M: float) -> "PhysicalParams":
        return PhysicalParams(M, self.omega0, self.L0, self.omega_cut, self.constants, self.cutoff)


@dataclass(frozen=True)
class ModeBasis:
    """Cavity modes ``omega_k = k * spacing`` for ``k = 1..K``.

    ``damping`` holds a per-mode amplitude factor applied to the coupling
    (all ones for the sharp cutoff).
    """

    spacing: float
    frequencies: np.ndarray
    damping: np.ndarray

    @property
    def K(self) -> int:
        return len(self.frequencies)

    @property
    def is_empty(self) -> bool:
        return self.K == 0

    @property
    def is_sharp(self) -> bool:
        return bool(np.all(self.damping == 1.0))

    @property
    def indices(self) -> np.ndarray:
        return np.arange(1, self.K + 1)

    def truncate(self, n_modes: int) -> "ModeBasis":
        """Keep only the lowest ``n_modes`` modes."""
        n = max(0, min(int(n_modes), self.K))
        return ModeBasis(self.spacing, _frozen(self.frequencies[:n]), _frozen(self.damping[:n]))


@dataclass(frozen=True)
class CouplingMatrix:
    entries: np.ndarray
    sign: int

    def __getitem__(self, item):
        return self.entries[item]


def mode_count(params: PhysicalParams) -> int:
    """Number of modes with omega_k <= omega_cut, i.e. floor(omega_cut L0 / (c pi))."""
    spacing = params.mode_spacing
    K = math.floor(params.omega_cut / spacing)
    # settle rounding of the quotient against the frequencies actually built
    while (K + 1) * spacing <= params.omega_cut:
        K += 1
    while K > 0 and K * spacing > params.omega_cut:
        K -= 1
    return K


def build_mode_basis(params: PhysicalParams) -> ModeBasis:
    """All cavity modes below the cutoff.  An empty basis (K = 0) is legal."""
    spacing = params.mode_spacing
    if params.cutoff == "sharp":
        K = mode_count(params)
        k = np.arange(1, K + 1, dtype=float)
        return ModeBasis(spacing, _frozen(k * spacing), _frozen(np.ones(K)))
    K = math.floor(EXPONENTIAL_CUTOFF_EXTENT * params.omega_cut / spacing)
    omega = np.arange(1, K + 1, dtype=float) * spacing
    return ModeBasis(spacing, _frozen(omega), _frozen(np.exp(-omega / (2.0 * params.omega_cut))))


def coupling_magnitude(params: PhysicalParams) -> float:
    """(hbar/2)^{3/2} / (L0 sqrt(M)), the frequency-independent part of C_kj."""
    return (params.hbar / 2.0) ** 1.5 / (params.L0 * math.sqrt(params.M))


def build_coupling_matrix(params: PhysicalParams, basis: ModeBasis, sign: int = 1) -> CouplingMatrix:
    """Coupling constants C_kj = sign (-1)^{k+j} (hbar/2)^{3/2} sqrt(w_k w_j / w0) / (L0 sqrt(M))."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    k = basis.indices
    parity = np.where((k[:, None] + k[None, :]) % 2 == 0, 1.0, -1.0)
    root = np.sqrt(basis.frequencies) * basis.damping
    # outer product of per-mode factors: symmetric bit-for-bit
    scale = sign * coupling_magnitude(params) / np.sqrt(params.omega0)
    entries = scale * parity * np.multiply.outer(root, root)
    entries.setflags(write=False)
    return CouplingMatrix(entries, sign)


def static_casimir_energy(params: PhysicalParams) -> float:
    """Static Casimir energy -pi hbar c / (24 L0) of the two walls."""
    return -math.pi * params.hbar * params.c / (24.0 * params.L0)


def pair_weights(basis: ModeBasis) -> tuple[np.ndarray, np.ndarray]:
    """Collapse mode-pair sums onto the total index n = k + j.

    Every second-order double sum has summands of the form
    ``w_k w_j g_k^2 g_j^2 f(w_k + w_j)``; grouping pairs with equal ``k + j``
    gives ``sum_n c_n f(n * spacing)`` with ``c_n = sum_{k+j=n} k j g_k^2 g_j^2``.

    Returns ``(n, c_n)`` for ``n = 2..2K`` (empty arrays for an empty basis).
    """
    K = basis.K
    if K == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0)
    n = np.arange(2, 2 * K + 1, dtype=np.int64)
    if basis.is_sharp:
        if K <= 1_000_000:
            a = np.maximum(1, n - K)
            b = np.minimum(K, n - 1)
            s1 = (a + b) * (b - a + 1) // 2
            s2 = (b * (b + 1) * (2 * b + 1) - (a - 1) * a * (2 * a - 1)) // 6
            c = (n * s1 - s2).astype(float)
        else:
            nf, af, bf = n.astype(float), np.maximum(1, n - K).astype(float), np.minimum(K, n - 1).astype(float)
            s1 = (af + bf) * (bf - af + 1) / 2
            s2 = (bf * (bf + 1) * (2 * bf + 1) - (af - 1) * af * (2 * af - 1)) / 6
            c = nf * s1 - s2
        return n, c
    weighted = basis.indices * basis.damping**2
    return n, np.convolve(weighted, weighted)

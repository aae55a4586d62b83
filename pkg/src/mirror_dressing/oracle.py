"""Exact reference on a truncated Fock space.

The full field-mirror Hamiltonian is assembled on occupation-number states
|n_1, ..., n_K; m> with a bounded total photon number and a bounded phonon
number, diagonalised densely, and used to (a) find the exact ground-state
shift, (b) evolve the bare vacuum exactly, and (c) read off the dressed-state
amplitudes.  Nothing here is shared with the perturbative modules beyond the
parameter and mode-grid types, so agreement between the two is a real check.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg, sparse

from .core import ModeBasis, PhysicalParams, build_mode_basis

MAX_DIMENSION = 20_000
MAX_MODES = 4
MAX_QUANTA = 6


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class Truncation:
    n_modes: int = 2
    max_photons_total: int = 4
    max_phonons: int = 4

    def __post_init__(self):
        if not 1 <= self.n_modes <= MAX_MODES:
            raise ValueError(f"n_modes must be in [1, {MAX_MODES}], got {self.n_modes}")
        for name in ("max_photons_total", "max_phonons"):
            value = getattr(self, name)
            if not 0 <= value <= MAX_QUANTA:
                raise ValueError(f"{name} must be in [0, {MAX_QUANTA}], got {value}")


@dataclass(frozen=True)
class Cavity:
    """Modes of one cavity as seen by the oracle: frequencies and signed couplings."""

    frequencies: np.ndarray
    coupling: np.ndarray


class FockBasis:
    """Enumerated states (n_1, ..., n_K, m); index 0 is the bare vacuum."""

    def __init__(self, n_modes: int, max_photons_total: int, max_phonons: int):
        photon_sets = [
            occ for occ in itertools.product(range(max_photons_total + 1), repeat=n_modes)
            if sum(occ) <= max_photons_total
        ]
        states = [occ + (m,) for occ in photon_sets for m in range(max_phonons + 1)]
        states.sort(key=lambda s: (sum(s), s))
        self.n_modes = n_modes
        self.max_photons_total = max_photons_total
        self.max_phonons = max_phonons
        self.states = states
        self.index = {s: i for i, s in enumerate(states)}

    def __len__(self):
        return len(self.states)

    def __contains__(self, state):
        return state in self.index

    @staticmethod
    def dimension(n_modes: int, max_photons_total: int, max_phonons: int) -> int:
        return math.comb(max_photons_total + n_modes, n_modes) * (max_phonons + 1)


@dataclass
class HamiltonianMatrix:
    """H = H_f + H_m + H_i on a FockBasis, in joules.

    ``field_diag`` and ``mirror_diag`` are the diagonal unperturbed blocks
    (zero-point energies dropped); ``interaction`` is the dense H_i block.
    """

    basis: FockBasis
    hbar: float
    field_diag: np.ndarray
    mirror_diag: np.ndarray
    interaction: np.ndarray
    cavities: tuple

    @property
    def unperturbed_diag(self) -> np.ndarray:
        return self.field_diag + self.mirror_diag

    @property
    def matrix(self) -> np.ndarray:
        return self.interaction + np.diag(self.unperturbed_diag)

    @property
    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.interaction - self.interaction.T), initial=0.0))

    def eigh(self):
        cache = getattr(self, "_eig", None)
        if cache is None:
            try:
                cache = linalg.eigh(self.matrix)
            except linalg.LinAlgError as exc:
                raise OracleError(f"eigensolver failed: {exc}") from exc
            self._eig = cache
        return cache


def oracle_cavity(params: PhysicalParams, n_modes: int, sign: int = 1, coupling_scale: float = 1.0) -> Cavity:
    """Lowest ``n_modes`` modes of ``params`` and their couplings, computed from scratch."""
    basis: ModeBasis = build_mode_basis(params).truncate(n_modes)
    w = np.array(basis.frequencies)
    g = np.array(basis.damping)
    K = len(w)
    C = np.zeros((K, K))
    pref = (params.hbar / 2.0) ** 1.5 / (params.L0 * math.sqrt(params.M))
    for k in range(K):
        for j in range(K):
            # modes are labelled from 1, so the parity of (k+1)+(j+1) is that of k+j
            parity = -1.0 if (k + j) % 2 else 1.0
            C[k, j] = sign * coupling_scale * parity * pref * math.sqrt(w[k] * w[j] / params.omega0) * g[k] * g[j]
    return Cavity(w, C)


def _lower(occ: list, mode: int):
    n = occ[mode]
    if n == 0:
        return 0.0
    occ[mode] = n - 1
    return math.sqrt(n)


def _raise(occ: list, mode: int):
    occ[mode] += 1
    return math.sqrt(occ[mode])


def _bilinears(k: int, j: int):
    """a_k a_j, a_j^+ a_k, a_k^+ a_j, a_k^+ a_j^+ as operator strings, rightmost first."""
    return (
        ((_lower, j), (_lower, k)),
        ((_lower, k), (_raise, j)),
        ((_lower, j), (_raise, k)),
        ((_raise, j), (_raise, k)),
    )


def build_hamiltonian(
    params,
    truncation: Truncation,
    coupling_scale: float = 1.0,
) -> HamiltonianMatrix:
    """Assemble the truncated Hamiltonian.

    ``params`` is a :class:`PhysicalParams` (one cavity) or a
    :class:`~mirror_dressing.two_cavity.TwoCavityParams`; in the latter case
    ``truncation.n_modes`` modes are kept in each cavity.  ``coupling_scale=0``
    switches the interaction off.
    """
    if hasattr(params, "cavities"):
        cavities = tuple(
            oracle_cavity(c, truncation.n_modes, sign, coupling_scale)
            for c, sign in zip(params.cavities(), params.signs)
        )
        constants = params.constants
        omega0 = params.omega0
    else:
        cavities = (oracle_cavity(params, truncation.n_modes, 1, coupling_scale),)
        constants = params.constants
        omega0 = params.omega0

    n_total = sum(len(cav.frequencies) for cav in cavities)
    if n_total == 0:
        raise OracleError("no cavity modes below the cutoff")
    dim = FockBasis.dimension(n_total, truncation.max_photons_total, truncation.max_phonons)
    if dim > MAX_DIMENSION:
        raise OracleError(f"basis dimension {dim} exceeds the dense budget {MAX_DIMENSION}")
    basis = FockBasis(n_total, truncation.max_photons_total, truncation.max_phonons)
    hbar = constants.hbar

    freqs = np.concatenate([cav.frequencies for cav in cavities])
    occupations = np.array(basis.states, dtype=float)
    field_diag = hbar * occupations[:, :-1] @ freqs
    mirror_diag = hbar * omega0 * occupations[:, -1]

    rows, cols, vals = [], [], []
    offset = 0
    for cav in cavities:
        K = len(cav.frequencies)
        for col, state in enumerate(basis.states):
            m = state[-1]
            for k, j in itertools.product(range(K), repeat=2):
                coupling = cav.coupling[k, j]
                if coupling == 0.0:
                    continue
                for ops in _bilinears(offset + k, offset + j):
                    occ = list(state[:-1])
                    amp = 1.0
                    for op, mode in ops:
                        amp *= op(occ, mode)
                        if amp == 0.0:
                            break
                    if amp == 0.0:
                        continue
                    # (b + b^+) on the phonon
                    for new_m, ph in ((m - 1, math.sqrt(m)), (m + 1, math.sqrt(m + 1))):
                        target = basis.index.get(tuple(occ) + (new_m,))
                        if target is None or ph == 0.0:
                            continue
                        rows.append(target)
                        cols.append(col)
                        vals.append(-coupling * amp * ph)
        offset += K

    interaction = sparse.coo_matrix((vals, (rows, cols)), shape=(dim, dim)).toarray()
    interaction = 0.5 * (interaction + interaction.T)
    return HamiltonianMatrix(basis, hbar, field_diag, mirror_diag, interaction, cavities)


def exact_ground_shift(H: HamiltonianMatrix) -> float:
    """Lowest eigenvalue of H minus that of its unperturbed diagonal [J]."""
    energies, _ = H.eigh()
    return float(energies[0] - np.min(H.unperturbed_diag))


@dataclass(frozen=True)
class OracleSample:
    t: float
    field: float
    mirror: float
    interaction: float
    norm: float

    @property
    def total(self) -> float:
        return self.field + self.mirror + self.interaction


def evolve_expectations(H: HamiltonianMatrix, times) -> list[OracleSample]:
    """Exact <H_f>, <H_m>, <H_i> at each time, starting from the bare vacuum."""
    times = np.atleast_1d(np.asarray(getattr(times, "times", times), dtype=float))
    energies, vectors = H.eigh()
    # bare vacuum is basis state 0
    weights = vectors[0, :].astype(complex)
    # shift by the ground energy: a global phase, keeps the exponents small
    phases = np.exp(-1j * np.multiply.outer(energies - energies[0], times) / H.hbar)
    psi = vectors @ (weights[:, None] * phases)
    prob = np.abs(psi) ** 2
    field = H.field_diag @ prob
    mirror = H.mirror_diag @ prob
    interaction = np.real(np.einsum("it,it->t", psi.conj(), H.interaction @ psi))
    norm = np.sqrt(prob.sum(axis=0))
    return [
        OracleSample(float(t), float(f), float(m), float(i), float(n))
        for t, f, m, i, n in zip(times, field, mirror, interaction, norm)
    ]


def dressed_overlap(H: HamiltonianMatrix, cavity: int = 0) -> np.ndarray:
    """Ground-state amplitudes on |1_j 1_k; 1> and |2_k; 1>, vacuum component set to 1.

    Returned in the ordered-pair convention of the dressed amplitudes: the
    amplitude of |1_j 1_k; 1> (j != k) is shared between (j, k) and (k, j),
    and a_k^+ a_k^+ |0> = sqrt(2) |2_k>, so off-diagonal entries are halved and
    diagonal ones divided by sqrt(2).
    """
    _, vectors = H.eigh()
    ground = vectors[:, 0]
    if ground[0] == 0:
        raise OracleError("ground state has no vacuum component")
    ground = ground / ground[0]
    offset = sum(len(c.frequencies) for c in H.cavities[:cavity])
    K = len(H.cavities[cavity].frequencies)
    n_total = H.basis.n_modes
    out = np.zeros((K, K))
    for j in range(K):
        for k in range(K):
            occ = [0] * n_total
            occ[offset + j] += 1
            occ[offset + k] += 1
            idx = H.basis.index.get(tuple(occ) + (1,))
            if idx is None:
                continue
            out[j, k] = ground[idx] / (math.sqrt(2.0) if j == k else 2.0)
    return out

import math

import numpy as np
import pytest

from mirror_dressing import (
    PhysicalConstants,
    PhysicalParams,
    TimeGrid,
    TwoCavityParams,
    build_mode_basis,
    local_interaction_energy,
    round_trip_time,
    two_cavity_breakdown,
    two_cavity_local_energy,
)
from mirror_dressing.oracle import Truncation, build_hamiltonian, exact_ground_shift
from mirror_dressing.two_cavity import signed_couplings

from conftest import REFERENCE, ORACLE, UNIT


def _two(L0_2=None, cut_2=None, signs=(1, -1)):
    return TwoCavityParams(
        REFERENCE["M"], REFERENCE["omega0"], REFERENCE["L0"], REFERENCE["omega_cut"],
        L0_2 or REFERENCE["L0"], cut_2 or REFERENCE["omega_cut"], signs=signs,
    )


def _from_couplings(p: TwoCavityParams, t):
    """E_local(t) = -sum_cavities sum_kj 2 C_kj^2 (1 - cos d t) / (hbar d), from the signed matrices."""
    total = 0.0
    for cav, C in zip(p.cavities(), signed_couplings(p)):
        w = build_mode_basis(cav).frequencies
        d = cav.omega0 + np.add.outer(w, w)
        total += -np.sum(2 * C.entries**2 * (1 - np.cos(d * t)) / (cav.hbar * d))
    return total


def test_equal_cavities_double(ref_params):
    ts = np.linspace(0, 2e-13, 97)
    single = local_interaction_energy(ref_params, build_mode_basis(ref_params), ts)
    double = two_cavity_local_energy(_two(), ts)
    np.testing.assert_allclose(double, 2 * single, rtol=1e-14, atol=0)


def test_signs_enter_squared():
    ts = np.array([1e-14, 4e-14, 1.3e-13])
    for signs in ((1, -1), (1, 1), (-1, 1), (-1, -1)):
        p = _two(L0_2=2.5e-5, signs=signs)
        C1, C2 = signed_couplings(p)
        assert C1.sign == signs[0] and C2.sign == signs[1]
        for t in ts:
            assert two_cavity_local_energy(p, t) == pytest.approx(_from_couplings(p, t), rel=1e-11, abs=0)
    reference = two_cavity_local_energy(_two(L0_2=2.5e-5), ts)
    assert np.array_equal(two_cavity_local_energy(_two(L0_2=2.5e-5, signs=(1, 1)), ts), reference)


def test_additivity_and_empty_cavity(ref_params):
    ts = np.linspace(0, 1e-13, 31)
    p = _two(L0_2=2.5e-5)
    a = local_interaction_energy(ref_params, build_mode_basis(ref_params), ts)
    second = p.cavity(1)
    b = local_interaction_energy(second, build_mode_basis(second), ts)
    np.testing.assert_allclose(two_cavity_local_energy(p, ts), a + b, rtol=1e-14)
    # second cavity cut off below its lowest mode: single-cavity result
    empty = _two(cut_2=1e13)
    np.testing.assert_allclose(two_cavity_local_energy(empty, ts), a, rtol=1e-15)


def test_breakdown_conservation_and_revivals():
    p = _two(L0_2=2.5e-5)
    t1, t2 = round_trip_time(p.cavity(0)), round_trip_time(p.cavity(1))
    grid = TimeGrid.uniform(5 * t1, 600)
    rows = two_cavity_breakdown(p, grid)
    for b in rows:
        assert abs(b.conservation_residual) <= 1e-13
    scale = max(abs(b.E_local) for b in rows)
    # t2 = 2.5 t1, so both cavities revive together at 5 t1 = 2 t2
    assert abs(two_cavity_local_energy(p, 5 * t1)) <= 1e-12 * scale
    # at t2 alone only the long cavity revives; the short one is mid-cycle
    single_1 = local_interaction_energy(p.cavity(0), build_mode_basis(p.cavity(0)), t2)
    assert two_cavity_local_energy(p, t2) == pytest.approx(single_1, rel=1e-9, abs=0)


def test_invalid_signs():
    with pytest.raises(ValueError):
        _two(signs=(1, 0))


def test_oracle_two_cavities_equal_double_to_second_order():
    """Exact diagonalisation with two identical one-mode cavities: shift ~ twice the single one."""
    single = PhysicalParams(**ORACLE, constants=UNIT)
    trunc = Truncation(n_modes=1, max_photons_total=4, max_phonons=4)
    one = exact_ground_shift(build_hamiltonian(single, trunc))
    shifts = {}
    for signs in ((1, -1), (1, 1)):
        p = TwoCavityParams(single.M, single.omega0, math.pi, 1.5, math.pi, 1.5, UNIT, signs=signs)
        shifts[signs] = exact_ground_shift(build_hamiltonian(p, trunc))
    # relative corrections are fourth order in the coupling
    assert shifts[(1, -1)] == pytest.approx(2 * one, rel=1e-3, abs=0)
    # sign dependence enters only through mixed terms of higher order still
    assert abs(shifts[(1, -1)] - shifts[(1, 1)]) <= 1e-6 * abs(shifts[(1, 1)])

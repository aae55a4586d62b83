import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mirror_dressing import PhysicalConstants, PhysicalParams, build_mode_basis, dressed_amplitudes, stationary_shifts

# 40-digit mpmath brute-force double sums at the reference parameters (K = 106)
E_TOTAL = -6.4702008726113859e-30
E_FIELD = 6.4702008726052975e-30
E_MIRROR = 6.0884221869541983e-42


def test_reference_golden(ref_params):
    s = stationary_shifts(ref_params, build_mode_basis(ref_params))
    assert s.E_total == pytest.approx(E_TOTAL, rel=1e-13, abs=0)
    assert s.E_field == pytest.approx(E_FIELD, rel=1e-13, abs=0)
    assert s.E_mirror == pytest.approx(E_MIRROR, rel=1e-12, abs=0)
    assert s.E_interaction == 2 * s.E_total
    assert abs(s.sum_rule_residual) < 1e-14


def _brute(params, basis):
    w, w0 = basis.frequencies, params.omega0
    A = params.hbar**2 / (4 * params.L0**2 * params.M)
    wk, wj = np.meshgrid(w, w, indexing="ij")
    d = w0 + wk + wj
    return (
        -A * np.sum(wk * wj / (w0 * d)),
        A * np.sum((wk + wj) * wk * wj / (w0 * d * d)),
        A * np.sum(wk * wj / (d * d)),
    )


def test_single_mode_closed_form():
    p = PhysicalParams(2.0, 0.7, math.pi, 1.5, PhysicalConstants(1.0, 1.0))
    s = stationary_shifts(p, build_mode_basis(p))
    A = 1 / (4 * math.pi**2 * 2.0)
    d = 2.7
    assert s.E_total == pytest.approx(-A / (0.7 * d), rel=1e-15, abs=0)
    assert s.E_field == pytest.approx(A * 2 / (0.7 * d * d), rel=1e-15, abs=0)
    assert s.E_mirror == pytest.approx(A / (d * d), rel=1e-15, abs=0)


def test_exponential_cutoff_matches_brute_force():
    p = PhysicalParams(1.0, 0.5, math.pi, 2.0, PhysicalConstants(1.0, 1.0), cutoff="exponential")
    basis = build_mode_basis(p)
    w, g, w0 = basis.frequencies, basis.damping, p.omega0
    A = 1 / (4 * math.pi**2)
    wk, wj = np.meshgrid(w * g * g, w * g * g, indexing="ij")
    d = w0 + np.add.outer(w, w)
    s = stationary_shifts(p, basis)
    assert s.E_total == pytest.approx(-A * np.sum(wk * wj / (w0 * d)), rel=1e-12, abs=0)
    assert abs(s.sum_rule_residual) < 1e-13


def test_inverse_mass_scaling(ref_params):
    basis = build_mode_basis(ref_params)
    a = stationary_shifts(ref_params, basis)
    b = stationary_shifts(ref_params.with_mass(10 * ref_params.M), basis)
    for x, y in zip((a.E_total, a.E_field, a.E_mirror), (b.E_total, b.E_field, b.E_mirror)):
        assert y == pytest.approx(x / 10, rel=1e-14, abs=0)


def test_monotone_in_cutoff():
    shifts = [
        stationary_shifts(p, build_mode_basis(p)).E_total
        for p in (PhysicalParams(1e-14, 1e4, 1e-5, wc) for wc in (1e15, 3e15, 1e16))
    ]
    assert shifts[0] > shifts[1] > shifts[2]


def test_empty_basis_raises():
    p = PhysicalParams(1e-14, 1e4, 1e-5, 1e13)
    with pytest.raises(ValueError, match="empty"):
        stationary_shifts(p, build_mode_basis(p))


def test_dressed_amplitudes_form(ref_params):
    basis = build_mode_basis(ref_params)
    D = dressed_amplitudes(ref_params, basis).D
    assert D.shape == (106, 106)
    assert np.array_equal(D, D.T)
    p = ref_params
    w = basis.frequencies
    expected = math.sqrt(p.hbar / (8 * p.M * p.omega0)) * w[0] / (p.omega0 + 2 * w[0]) / p.L0
    assert D[0, 0] == pytest.approx(expected, rel=1e-14, abs=0)
    assert D[0, 1] < 0 < D[1, 1]


@settings(max_examples=40, deadline=None)
@given(
    M=st.floats(1e-16, 1e-10),
    omega0=st.floats(1e3, 1e6),
    L0=st.floats(1e-6, 1e-3),
    K=st.integers(1, 60),
)
def test_property_matches_brute_force_and_sum_rule(M, omega0, L0, K):
    p = PhysicalParams(M, omega0, L0, (K + 0.5) * math.pi * 2.99792458e8 / L0)
    basis = build_mode_basis(p)
    assert basis.K == K
    s = stationary_shifts(p, basis)
    brute = _brute(p, basis)
    assert s.E_total == pytest.approx(brute[0], rel=1e-12, abs=0)
    assert s.E_field == pytest.approx(brute[1], rel=1e-12, abs=0)
    assert s.E_mirror == pytest.approx(brute[2], rel=1e-12, abs=0)
    assert s.E_total < 0 < s.E_mirror < s.E_field
    assert abs(s.sum_rule_residual) <= 1e-13

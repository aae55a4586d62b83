import math

import numpy as np
import pytest

from mirror_dressing.quadrature import GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, QuadratureError, integrate


def test_rule_weights():
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert np.count_nonzero(GAUSS_WEIGHTS) == 7
    assert np.allclose(NODES, -NODES[::-1])


@pytest.mark.parametrize("degree", [0, 5, 13, 22])
def test_polynomial_exactness(degree):
    # G7 is exact to degree 13, K15 to degree 22: a single panel suffices
    res = integrate(lambda x: x**degree, [0.0, 2.0], rtol=1e-14)
    assert res.value[0] == pytest.approx(2.0 ** (degree + 1) / (degree + 1), rel=1e-14, abs=0)
    if degree <= 13:
        assert res.panels == 1


def test_stacked_integrands_and_breakpoints():
    res = integrate(lambda x: np.stack([np.sqrt(x), np.abs(x - 1.0)]), [0.0, 1.0, 3.0], rtol=1e-12)
    np.testing.assert_allclose(res.value, [2 / 3 * 3**1.5, 0.5 + 2.0], rtol=1e-11)


def test_oscillatory_with_width_cap():
    w = 400.0
    res = integrate(lambda x: np.cos(w * x) * np.exp(-x), [0.0, 5.0], rtol=1e-10, max_width=2 * math.pi / (8 * w))
    exact = (1 + math.exp(-5) * (w * math.sin(5 * w) - math.cos(5 * w))) / (1 + w * w)
    assert res.value[0] == pytest.approx(exact, rel=1e-10, abs=0)


def test_budget_exceeded_raises():
    with pytest.raises(QuadratureError) as info:
        integrate(lambda x: 1.0 / np.sqrt(np.abs(x - 0.3)), [0.0, 1.0], rtol=1e-14, max_panels=50)
    assert info.value.requested == 1e-14
    assert info.value.achieved > 1e-14


def test_width_cap_beyond_budget_raises_before_allocating():
    with pytest.raises(QuadratureError, match="initial panels"):
        integrate(lambda x: x, [0.0, 1.0], max_width=1e-12)


def test_bad_breakpoints():
    with pytest.raises(ValueError):
        integrate(lambda x: x, [1.0, 0.0])

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import gamma as G

from startri.errors import NoConvergence, TailTooFat
from startri.quadrature import (
    IntegrationResult,
    QuadratureSpec,
    SumResult,
    SumSpec,
    bilateral_sum,
    half_line_weighted_sum,
    integrate_real_line,
    integrate_unit_circle,
)


def test_gaussian():
    res = integrate_real_line(lambda x: np.exp(-x * x))
    assert abs(res.value - np.sqrt(np.pi)) < 1e-13
    assert res.err < 1e-10
    value, err = res
    assert value == res.value


def test_sech_and_oscillation():
    # int sech(x) e^{ikx} dx = pi sech(pi k / 2)
    k = 1.7
    res = integrate_real_line(lambda x: np.exp(1j * k * x) / np.cosh(x))
    assert abs(res.value - np.pi / np.cosh(np.pi * k / 2)) < 1e-12


def test_algebraic_decay():
    # int (1 + x^2)^-2 dx = pi/2, needs the window extension
    res = integrate_real_line(lambda x: (1 + x * x) ** -2.0)
    assert abs(res.value - np.pi / 2) < 1e-10


def test_beta_type_integral():
    # int |Gamma(a + ix)|^2 dx = 2 pi Gamma(2a) / 2^{2a}
    from startri.special_fn import log_gamma

    a = 0.35
    res = integrate_real_line(lambda x: np.exp(log_gamma(a + 1j * x) + log_gamma(a - 1j * x)))
    assert abs(res.value / (2 * np.pi * G(2 * a) / 2 ** (2 * a)) - 1) < 1e-11


def test_fat_tail_raises():
    with pytest.raises(TailTooFat):
        integrate_real_line(lambda x: 1 / (1 + np.abs(x)) ** 0.5)


def test_no_convergence_budget():
    spec = QuadratureSpec(max_refinements=1, rel_tol=1e-15, abs_tol=1e-300)
    with pytest.raises(NoConvergence):
        integrate_real_line(lambda x: np.cos(40 * x) * np.exp(-x * x / 50), spec)


@given(st.floats(-3, 3), st.floats(0.3, 3.0))
def test_shifted_gaussians(mu, s):
    res = integrate_real_line(lambda x: np.exp(-((x - mu) / s) ** 2))
    assert abs(res.value / (s * np.sqrt(np.pi)) - 1) < 1e-11


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(rel_tol=0)
    with pytest.raises(ValueError):
        QuadratureSpec(cutoff=10, max_cutoff=5)
    with pytest.raises(ValueError):
        SumSpec(initial_halfwidth=0)
    t = QuadratureSpec().tightened(0.1)
    assert t.rel_tol == pytest.approx(1e-12)


# -- unit circle -------------------------------------------------------------

@pytest.mark.parametrize("k", [-3, -1, 0, 2, 5])
def test_unit_circle_monomials(k):
    res = integrate_unit_circle(lambda z: z ** k)
    assert abs(res.value - (1.0 if k == 0 else 0.0)) < 1e-14


def test_unit_circle_cauchy():
    # 1/(2 pi i) oint dz/(z (1 - a/z)(1 - b z)) = 1/(1 - a b)
    a, b = 0.4 + 0.2j, -0.5j
    res = integrate_unit_circle(lambda z: 1 / ((1 - a / z) * (1 - b * z)))
    assert abs(res.value - 1 / (1 - a * b)) < 1e-13


def test_unit_circle_high_laurent_power():
    # z^64 aliases onto the constant term of a 64-node grid
    f = lambda z: 1 + z ** 64  # noqa: E731
    coarse = integrate_unit_circle(f, QuadratureSpec(min_nodes=8, max_refinements=1))
    fine = integrate_unit_circle(f, min_nodes=256)
    assert abs(fine.value - 1) < 1e-14
    assert isinstance(coarse, IntegrationResult)
    assert abs(coarse.value - 2) < 1e-14


# -- sums --------------------------------------------------------------------

def test_bilateral_geometric():
    value, err = bilateral_sum(lambda m: 0.5 ** abs(m))
    assert abs(value - 3.0) < 1e-11


def test_bilateral_algebraic():
    # cubic algebraic decay against a brute-force partial sum
    a = 0.7
    res = bilateral_sum(lambda m: 1 / (m * m + a * a) ** 3,
                        SumSpec(tail_tol=1e-12, max_halfwidth=400))
    assert isinstance(res, SumResult)
    direct = sum(1 / (m * m + a * a) ** 3 for m in range(-20000, 20001))
    assert abs(res.value - direct) < 1e-10 * abs(direct)
    assert res.halfwidth >= 4


def test_bilateral_term_errors_propagate():
    res = bilateral_sum(lambda m: (0.1 ** abs(m), 1e-9))
    assert res.term_err > 0 and res.err >= res.term_err


def test_bilateral_budget():
    with pytest.raises(NoConvergence):
        bilateral_sum(lambda m: 1 / (1 + abs(m)), SumSpec(max_halfwidth=20))


def test_half_line():
    assert half_line_weighted_sum(lambda m: 1.0, cap=2).value == 5
    # epsilon-weighted half line of an even sequence equals the bilateral sum
    f = lambda m: np.exp(-0.3 * m * m)  # noqa: E731
    a = half_line_weighted_sum(f).value
    b = bilateral_sum(f).value
    assert abs(a - b) < 1e-13

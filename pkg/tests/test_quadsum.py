import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cusp_spectra.quadsum import (
    HypothesisError,
    QuadratureError,
    integrate,
    integrate_gauss,
    ramanujan_hypotheses_check,
    ramanujan_sum,
    vertical_integral,
)
from cusp_spectra.zetadet import arctan_integral

# mpmath quad at 30 digits of int_0^inf 2 arctan(t) / (e^(2 pi t) - 1) dt
ARCTAN_ALPHA0 = 0.08106146679532725822


def test_exponential_on_half_line():
    r = integrate(lambda u: np.exp(-u), 0.0, math.inf)
    assert abs(r.value - 1.0) < 1e-12
    assert r.error_estimate >= 0 and r.evaluations > 0


def test_endpoint_singularity():
    r = integrate(lambda t: t**-0.5, 0.0, 1.0)
    assert abs(r.value - 2.0) < 1e-12


def test_algebraic_decay_on_half_line():
    r = integrate(lambda u: (u + 2.0) ** -1.5, 0.0, math.inf)
    assert abs(r.value - 2.0 / math.sqrt(2.0)) < 1e-11


def test_two_schemes_agree_on_arctan_kernel():
    def f(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = 2.0 * np.arctan(t) / np.expm1(2.0 * np.pi * t)
        return np.where(t > 0, out, 1.0 / np.pi)

    de = integrate(f, 0.0, math.inf, tol=1e-13).value
    gl = integrate_gauss(f, 0.0, math.inf, tol=1e-13).value
    assert abs(de - gl) < 1e-10
    assert abs(de - ARCTAN_ALPHA0) < 1e-12
    assert abs(arctan_integral(0.0) - ARCTAN_ALPHA0) < 1e-12


def test_complex_integrand():
    r = integrate(lambda t: np.exp(1j * t), 0.0, math.pi)
    assert abs(r.value - 2j) < 1e-12


def test_reversed_and_empty_ranges():
    assert integrate(np.cos, 1.0, 1.0).value == 0.0
    assert integrate(np.cos, 1.0, 0.0).value == pytest.approx(-math.sin(1.0), abs=1e-14)


def test_nan_is_an_integrand_error():
    with pytest.raises(QuadratureError):
        integrate(lambda t: np.full_like(t, np.nan), 0.0, 1.0)


def test_nonconvergence_reported():
    with pytest.raises(QuadratureError):
        integrate(lambda t: np.sin(1.0 / t) / t, 1e-8, 1.0, max_level=2)


@settings(max_examples=20, deadline=None)
@given(st.floats(0.5, 30.0), st.floats(0.1, 3.0))
def test_doubling_nodes_does_not_raise_estimate(p, b):
    # smooth integrand with closed form: int_0^b cos(p x) dx
    f = lambda x: np.cos(p * x)  # noqa: E731
    coarse = integrate_gauss(f, 0.0, b, tol=1e-6)
    fine = integrate_gauss(f, 0.0, b, tol=1e-12)
    assert fine.evaluations >= coarse.evaluations
    assert fine.error_estimate <= coarse.error_estimate
    assert fine.value == pytest.approx(math.sin(p * b) / p, abs=1e-11)


@settings(max_examples=20, deadline=None)
@given(st.floats(0.2, 5.0), st.floats(-2.0, 2.0), st.floats(0.1, 4.0))
def test_schemes_agree_on_gaussians(scale, lo, width):
    f = lambda x: np.exp(-scale * x * x)  # noqa: E731
    a = integrate(f, lo, lo + width, tol=1e-13).value
    b = integrate_gauss(f, lo, lo + width, tol=1e-13).value
    exact = math.sqrt(math.pi / scale) / 2 * (math.erf(math.sqrt(scale) * (lo + width)) - math.erf(math.sqrt(scale) * lo))
    assert abs(a - exact) < 1e-12 and abs(b - exact) < 1e-12


# --- Ramanujan summation ----------------------------------------------------------

def test_inverse_square_partition():
    r = ramanujan_sum(lambda z: z**-2)
    assert abs(r.value - (math.pi**2 / 6 - 1)) < 1e-8
    assert r.hypotheses_satisfied


def test_zero_function():
    assert ramanujan_sum(lambda z: 0 * z, check=False).value == 0


def test_exponential_partition():
    r = ramanujan_sum(lambda z: np.exp(-z))
    assert abs(r.value - (1 / (math.e - 1) - math.exp(-1))) < 1e-8


def test_partition_on_a_third_function():
    # sum 1/(k(k+1)) = 1 and int_1^inf 1/(x(x+1)) = log 2
    r = ramanujan_sum(lambda z: 1 / (z * (z + 1)))
    assert abs(r.value - (1 - math.log(2))) < 1e-8


def test_tail_integral_is_the_vertical_line_integral():
    f = lambda z: z**-2  # noqa: E731
    r = ramanujan_sum(f)
    assert r.tail_integral == pytest.approx(vertical_integral(f, 1.0), abs=1e-14)


def test_hypotheses():
    assert ramanujan_hypotheses_check(lambda z: z**-2)
    rep = ramanujan_hypotheses_check(lambda z: 1 + 0 * z)
    assert not rep
    assert rep.decay_exponent_terms == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(HypothesisError):
        ramanujan_sum(lambda z: 1 + 0 * z)


def test_hypotheses_on_the_mode_series_function():
    s, j, a, alpha, mu, delta = 1.2, 0, 1.0, 0.3, 1.0, 0.15

    def f(z):
        z = complex(z)
        lp = cmath.sqrt(4 * math.pi**2 * (z + alpha) ** 2 * a * a + 0.25 + mu)
        lm = cmath.sqrt(4 * math.pi**2 * (z - alpha) ** 2 * a * a + 0.25 + mu)
        return z ** (-2 * delta * (s + j)) * cmath.log(lp + lm)

    assert ramanujan_hypotheses_check(f)


def test_evaluation_failure_names_abscissa():
    def f(z):
        if complex(z).real >= 4:
            raise ZeroDivisionError("boom")
        return 1 / complex(z) ** 2

    with pytest.raises(QuadratureError, match="abscissa 4"):
        ramanujan_hypotheses_check(f)

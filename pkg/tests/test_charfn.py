import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cusp_spectra import charfn
from cusp_spectra.charfn import (
    BundleError,
    CuspBundle,
    PoleProximityError,
    Regularizer,
    anchor,
    char_det_direct,
    char_f,
    char_f0,
    char_g,
    g_large_argument,
    g_order_derivative,
    h_reg,
    H_reg,
    log_abs_g_asymptotic,
    log_abs_g_expansion,
    split_point,
    validate_delta,
)
from cusp_spectra.quadsum import integrate
from cusp_spectra.specfun import ComplexOrder, ExpansionValidityError, bessel_k, logderiv_uniform

# mpmath at 30 digits: f_1 at spectral parameter 2.5 for (alpha, a) = (0.3, 1)
F1_AT_25 = -2.4646583887571164853e-6

B = CuspBundle(0.3, 1.0)
bundles = st.tuples(st.one_of(st.just(0.0), st.floats(1e-3, 0.95)), st.floats(0.1, 3.0)).map(lambda p: CuspBundle(*p))


def imag(r):
    return ComplexOrder.imaginary(r)


# --- bundle ----------------------------------------------------------------------

def test_bundle_validation():
    with pytest.raises(BundleError):
        CuspBundle(1.0, 1.0)
    with pytest.raises(BundleError):
        CuspBundle(0.3, 0.0)
    with pytest.raises(BundleError):
        CuspBundle(0.3, 1.0, delta=0.25)
    with pytest.raises(BundleError):
        validate_delta(0.125)  # 1/(2 delta) = 4


def test_localization_flag():
    assert CuspBundle(0.3, 1.0).localization_guaranteed
    assert not CuspBundle(0.3, 0.1).localization_guaranteed


def test_trivial_character_excludes_mode_zero():
    b = CuspBundle(0.0, 1.0)
    assert not b.has_mode(0)
    with pytest.raises(BundleError):
        b.mode(0)
    with pytest.raises(BundleError):
        char_f0(0.5j, b)


@settings(max_examples=40, deadline=None)
@given(bundles, st.integers(-20, 20))
def test_mode_arguments(b, k):
    if not b.has_mode(k):
        return
    m = b.mode(k)
    assert m.x_plus > 0 and m.x_minus > 0
    if b.alpha > 0:
        assert (m.x_plus == m.x_minus) == (k == 0)
    else:
        # without holonomy the two arguments always coincide
        assert m.x_plus == m.x_minus


# --- g and f ---------------------------------------------------------------------

@settings(max_examples=20, deadline=None)
@given(st.floats(0.0, 15.0), st.floats(0.5, 20.0), st.floats(0.5, 20.0))
def test_g_symmetric(r, x, y):
    try:
        assert char_g(imag(r), x, y, B) == char_g(imag(r), y, x, B)
    except PoleProximityError:
        pass


def test_g_large_real_order():
    t, x = 40.0, 10.0
    lead = logderiv_uniform(t, x)
    assert abs(char_g(t, x, x, B).real - (B.coupling + 2 * lead.value)) <= 2 * lead.remainder_bound


def test_factorized_form():
    nu, x, y = 3.0, 5.0, 7.0
    prod = bessel_k(nu, x) * bessel_k(nu, y) * char_g(nu, x, y, B)
    assert abs(char_f(nu, x, y, B) - prod) <= 1e-10 * abs(prod)


def test_det_against_mpmath():
    v = char_det_direct(1, imag(2.5), B)
    assert abs(v.real - F1_AT_25) <= 1e-10 * abs(F1_AT_25)
    m = B.mode(1)
    assert abs(char_f(imag(2.5), m.x_plus, m.x_minus, B) - v) <= 1e-10 * abs(v)


@settings(max_examples=20, deadline=None)
@given(bundles, st.integers(1, 6), st.floats(0.0, 25.0))
def test_det_real_and_even_in_k(b, k, r):
    v = char_det_direct(k, imag(r), b)
    assert abs(v.imag) <= 1e-12 * abs(v)
    assert char_det_direct(-k, imag(r), b) == v


def test_anchor_at_kernel_point_is_refused():
    with pytest.raises(PoleProximityError):
        Regularizer(0, 0.0, B)


def test_pole_proximity():
    # first real zero of K_{ir}(x) at x = 1
    r0 = 3.2
    grid = np.linspace(2.5, 4.0, 300)
    vals = [bessel_k(imag(r), 1.0).real for r in grid]
    i = next(i for i in range(len(vals) - 1) if vals[i] * vals[i + 1] < 0)
    lo, hi = grid[i], grid[i + 1]
    for _ in range(60):
        r0 = 0.5 * (lo + hi)
        if bessel_k(imag(r0), 1.0).real * vals[i] > 0:
            lo = r0
        else:
            hi = r0
    with pytest.raises(PoleProximityError):
        char_g(imag(r0), 1.0, 2.0, B)


# --- mode 0 ----------------------------------------------------------------------

def test_kernel_zero():
    scale = charfn.kernel_factor(0.0, 2 * math.pi * 0.3) ** 2 + 1.0
    assert abs(char_f0(0.5j, B)) <= 1e-8 * scale


def test_f0_zero_free_imaginary_segment():
    ts = np.linspace(0.2, 0.45, 200)
    vals = np.array([char_f0(-1j * t, B).real for t in ts])
    assert np.all(np.sign(vals) == np.sign(vals[0]))


def test_f0_matches_det_at_mode_zero():
    assert char_f0(3.1, B) == char_det_direct(0, imag(3.1), B)


# --- order derivative -------------------------------------------------------------

def test_order_derivative_at_first_zero():
    from cusp_spectra.spectrum import find_mode_zeros

    r1 = find_mode_zeros(1, 10.0, B)[0]
    m = B.mode(1)
    h = 1e-5
    g = lambda r: char_g(imag(r), m.x_plus, m.x_minus, B).real  # noqa: E731
    fd = (g(r1 + h) - g(r1 - h)) / (2 * h)
    assert abs(g_order_derivative(1, r1, B) - fd) <= 1e-6 * abs(fd)


# --- regularizer ------------------------------------------------------------------

def test_primitive_vanishes_at_anchor():
    for k in (0, 1, 5):
        assert H_reg(k, anchor(1.0), 1.0, B) == 0.0


def test_primitive_of_h():
    k, mu = 1, 1.0
    t0 = anchor(mu)
    reg = Regularizer(k, mu, B)
    val = integrate(lambda ts: np.array([reg.h(t) for t in np.atleast_1d(ts)]), t0, 2 * t0, tol=1e-12).value
    assert abs(val - reg.H(2 * t0)) < 1e-10


@settings(max_examples=15, deadline=None)
@given(st.integers(-4, 4), st.floats(0.1, 6.0), st.floats(0.0, 5.0))
def test_h_odd(k, t, mu):
    if k == 0 and mu < 1e-3:
        return  # g_0 vanishes at the kernel point t = 1/2, the anchor for mu = 0
    reg = Regularizer(k, mu, B)
    assert reg.h(-t) == -reg.h(t)


def test_h_reg_function_matches_class():
    assert h_reg(2, 1.7, 1.0, B) == Regularizer(2, 1.0, B).h(1.7)


def test_split_point():
    assert split_point(0, 1.0) == 2 * anchor(1.0)
    assert split_point(3, 1.0) == pytest.approx(2 * 3**0.15 * anchor(1.0))
    s = Regularizer(3, 1.0, B).sample(2.0)
    assert s.split_point == split_point(3, 1.0) and s.mode.k == 3


def test_h_tilde_bound_decays_in_k():
    mu, delta = 1.0, B.delta
    t0 = anchor(mu)
    sups = []
    for k in (2, 4, 8):
        reg = Regularizer(k, mu, B)
        ts = np.linspace(t0 * (1 + 1e-4), split_point(k, mu), 200)
        sups.append(max(abs(reg.H_tilde(t)) for t in ts))
    scaled = [s / k ** (-3 + 6 * delta) for s, k in zip(sups, (2, 4, 8))]
    assert scaled[0] >= scaled[1] >= scaled[2]


# --- expansions --------------------------------------------------------------------

def test_log_g_expansion_k0():
    r = log_abs_g_asymptotic(0, 50.0, B)
    assert abs(math.log(abs(charfn.G(0, 50.0, B))) - r.value) <= r.remainder_bound


def _log_g_errors(k, ts):
    return [abs(math.log(abs(charfn.G(k, t, B))) - log_abs_g_expansion(k, t, B)) for t in ts]


@pytest.mark.xfail(strict=True, reason="at k = 3 the window t <= 200 is pre-asymptotic; the fitted slope is -1.88")
def test_log_g_expansion_slope_k3_short_window():
    ts = np.array([50.0, 100.0, 200.0])
    slope = np.polyfit(np.log(ts), np.log(_log_g_errors(3, ts)), 1)[0]
    assert abs(slope + 2) < 0.1


def test_log_g_expansion_slope_k3():
    ts = np.array([50.0, 100.0, 200.0, 400.0])
    slope = np.polyfit(np.log(ts), np.log(_log_g_errors(3, ts)), 1)[0]
    assert abs(slope + 2) < 0.1
    # local slopes approach -2
    e = _log_g_errors(3, [200.0, 400.0, 800.0])
    assert abs(math.log2(e[2] / e[1]) + 2) < abs(math.log2(e[1] / e[0]) + 2) < 0.02


def test_log_g_leading_term():
    t = 1e4
    m = B.mode(2)
    lead = math.log(math.hypot(m.x_plus, t) + math.hypot(m.x_minus, t))
    assert abs(lead - math.log(2 * t)) < 1e-6


def test_log_g_validity():
    with pytest.raises(ExpansionValidityError):
        log_abs_g_asymptotic(1, 2.0, B)


def test_g_large_argument_trivial_character():
    b = CuspBundle(0.0, 50.0)
    r = g_large_argument(1, 0.5, b)
    m = b.mode(1)
    exact = char_g(imag(0.5), m.x_plus, m.x_minus, b).real
    assert abs(r.value - exact) <= r.remainder_bound
    assert abs(r.value - (-4 * math.pi * 50.0)) < 2e-3


def test_g_large_argument_relative_error():
    b = CuspBundle(0.3, 100.0)
    r = g_large_argument(2, 0.5, b)
    m = b.mode(2)
    exact = char_g(imag(0.5), m.x_plus, m.x_minus, b).real
    assert abs(r.value - exact) <= 1e-3 * abs(exact)


def test_g_large_argument_even_in_k():
    b = CuspBundle(0.3, 50.0)
    assert g_large_argument(3, 1.5, b) == g_large_argument(-3, 1.5, b)


# --- interlacing --------------------------------------------------------------------

@pytest.mark.parametrize("alpha, a, k", [(0.3, 1.0, 1), (0.0, 1.0, 2), (0.3, 1.0, 2)])
def test_sign_change_between_dirichlet_zeros(alpha, a, k):
    b = CuspBundle(alpha, a)
    m = b.mode(k)
    rs = np.arange(0.05, 25.0, 0.01)
    kp = np.array([bessel_k(imag(r), m.x_plus).real for r in rs])
    f = np.array([char_det_direct(k, imag(r), b).real for r in rs])
    zk = np.flatnonzero(np.sign(kp[1:]) != np.sign(kp[:-1]))
    zf = np.flatnonzero(np.sign(f[1:]) != np.sign(f[:-1]))
    assert len(zk) >= 2
    for i, j in zip(zk, zk[1:]):
        assert np.any((zf >= i) & (zf < j))

"""Characteristic functions of the Alvarez-Wentworth eigenvalue problem.

Mode k of the cusp of height a with holonomy alpha couples the Bessel
arguments x_pm = 2 pi |k +- alpha| a.  Eigenvalues lambda = 1/4 + r^2 of mode k
are the real zeros r of f_k(r), where, with K = K_{i r},

    f_k = (1 + 4 pi alpha a) K(x_+) K(x_-) + x_- K(x_+) K'(x_-) + x_+ K(x_-) K'(x_+)
    g_k = f_k / (K(x_+) K(x_-)).

Functions named ``char_*`` take the Bessel order itself (a ComplexOrder or a
number), so the imaginary order i r is passed as ``ComplexOrder(0, r)``.  The
mode-0 function ``char_f0`` and the helpers ``G``, ``F`` follow the spectral
parameter conventions instead, as documented on each.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadsum import integrate
from .specfun import (
    ORDER_CAP,
    ORDER_THRESHOLD,
    ExpansionValidityError,
    ExpansionWithBound,
    as_order,
    bessel_k,
    olver_float_tables,
    scaled_moments,
)

DEFAULT_DELTA = 0.15
POLE_THRESHOLD = 1e-12

# calibrated envelope constants; measured errors use at most 50% of each envelope on the test grid
LOG_G_ENVELOPE = 1.0
LOG_G_THRESHOLD = 10.0
G_LARGE_ARG_ENVELOPE = 0.25
G_LARGE_ARG_THRESHOLD = 10.0

# real orders need no contour lift; the quadrature was checked against 30-digit
# references up to order 1000, so the real-order helpers use a wider cap
REAL_ORDER_CAP = 2000.0

_PAIRS = ((0, 0), (1, 0), (0, 1), (1, 1))


class PoleProximityError(ArithmeticError):
    """A Bessel factor in a denominator is numerically zero."""


class BundleError(ValueError):
    """Invalid cusp or bundle parameters."""


def validate_delta(delta: float) -> float:
    delta = float(delta)
    if not (0.0 < delta < 1.0 / 6.0):
        raise BundleError(f"delta must lie in (0, 1/6), got {delta}")
    inv = 1.0 / (2.0 * delta)
    if abs(inv - round(inv)) < 1e-9:
        raise BundleError(f"1/(2 delta) = {inv} must not be an integer")
    return delta


@dataclass(frozen=True)
class ModeChar:
    k: int
    x_plus: float
    x_minus: float


@dataclass(frozen=True)
class CuspBundle:
    """Holonomy alpha in [0, 1) and cusp height a > 0."""

    alpha: float
    a: float
    delta: float = DEFAULT_DELTA

    def __post_init__(self):
        if not (0.0 <= self.alpha < 1.0):
            raise BundleError(f"alpha must lie in [0, 1), got {self.alpha}")
        if not (self.a > 0.0) or not math.isfinite(self.a):
            raise BundleError(f"a must be positive, got {self.a}")
        validate_delta(self.delta)

    @property
    def localization_guaranteed(self) -> bool:
        return self.a > 1.0 / (4.0 * math.pi * (1.0 - self.alpha))

    @property
    def coupling(self) -> float:
        """1 + 4 pi alpha a."""
        return 1.0 + 4.0 * math.pi * self.alpha * self.a

    def has_mode(self, k: int) -> bool:
        return not (k == 0 and self.alpha == 0.0)

    def mode(self, k: int) -> ModeChar:
        k = int(k)
        if not self.has_mode(k):
            raise BundleError("mode k = 0 is excluded for the trivial character (alpha = 0)")
        two_pi_a = 2.0 * math.pi * self.a
        return ModeChar(k, two_pi_a * abs(k + self.alpha), two_pi_a * abs(k - self.alpha))


# --- Bessel data on one argument ---------------------------------------------

@dataclass(frozen=True)
class _Side:
    """K, K', dK/dorder, dK'/dorder at one argument, all scaled by exp(-log_scale)."""

    x: float
    k0: complex
    k1: complex
    d0: complex
    d1: complex
    log_scale: float
    magnitude: float

    @property
    def logderiv(self) -> complex:
        return self.x * self.k1 / self.k0

    @property
    def logderiv_dorder(self) -> complex:
        # d/d(order) of x K'/K
        return self.x * (self.d1 * self.k0 - self.k1 * self.d0) / (self.k0 * self.k0)

    def check_pole(self):
        if abs(self.k0) < POLE_THRESHOLD * self.magnitude:
            raise PoleProximityError(f"K vanishes numerically at x = {self.x}")


def _side(order: complex, x: float, tol: float, cap: float = ORDER_CAP) -> _Side:
    sm = scaled_moments(order, x, _PAIRS, tol, order_cap=cap)
    v = sm.values
    return _Side(x, complex(v[0]), complex(v[1]), complex(v[2]), complex(v[3]), sm.log_scale, float(sm.magnitude[0]))


def _sides(order: complex, x: float, y: float, tol: float, cap: float = ORDER_CAP):
    sx = _side(order, x, tol, cap)
    sy = sx if y == x else _side(order, y, tol, cap)
    return sx, sy


def _real_if(order: complex, val: complex):
    return complex(val.real, 0.0) if order.imag == 0.0 or order.real == 0.0 else val


# --- g, f --------------------------------------------------------------------

def char_g(nu, x: float, y: float, bundle: CuspBundle, tol: float = 1e-13) -> complex:
    """1 + 4 pi alpha a + x K_nu'(x)/K_nu(x) + y K_nu'(y)/K_nu(y)."""
    order = as_order(nu)
    x, y = sorted((float(x), float(y)))  # bitwise symmetric in (x, y)
    sx, sy = _sides(order, x, y, tol)
    sx.check_pole()
    sy.check_pole()
    return _real_if(order, bundle.coupling + (sx.logderiv + sy.logderiv))


def _expanded(c: float, sx: _Side, sy: _Side) -> complex:
    return c * sx.k0 * sy.k0 + sy.x * sx.k0 * sy.k1 + sx.x * sy.k0 * sx.k1


def _expanded_dorder(c: float, sx: _Side, sy: _Side) -> complex:
    return (
        c * (sx.d0 * sy.k0 + sx.k0 * sy.d0)
        + sy.x * (sx.d0 * sy.k1 + sx.k0 * sy.d1)
        + sx.x * (sy.d0 * sx.k1 + sy.k0 * sx.d1)
    )


def char_f(nu, x: float, y: float, bundle: CuspBundle, tol: float = 1e-13) -> complex:
    """K_nu(x) K_nu(y) g(nu, x, y) in the product-free expanded form."""
    order = as_order(nu)
    x, y = sorted((float(x), float(y)))
    sx, sy = _sides(order, x, y, tol)
    val = _expanded(bundle.coupling, sx, sy) * math.exp(sx.log_scale + sy.log_scale)
    return _real_if(order, val)


def char_det_direct(k: int, nu, bundle: CuspBundle, tol: float = 1e-13) -> complex:
    """The boundary determinant of mode k at Bessel order nu (s - 1/2 = nu)."""
    m = bundle.mode(abs(k))
    return char_f(nu, m.x_plus, m.x_minus, bundle, tol)


@dataclass(frozen=True)
class ScaledValue:
    """value * exp(log_scale), with the order derivative on the same scale."""

    value: complex
    dorder: complex
    log_scale: float

    @property
    def logderiv(self) -> complex:
        return self.dorder / self.value


def char_det_scaled(k: int, nu, bundle: CuspBundle, tol: float = 1e-13) -> ScaledValue:
    """f_k at Bessel order nu and its order derivative, on a common scale."""
    m = bundle.mode(k)
    order = as_order(nu)
    sx, sy = _sides(order, m.x_plus, m.x_minus, tol)
    c = bundle.coupling
    return ScaledValue(_expanded(c, sx, sy), _expanded_dorder(c, sx, sy), sx.log_scale + sy.log_scale)


def char_f0(nu, bundle: CuspBundle, tol: float = 1e-13) -> complex:
    """Mode-0 function at spectral parameter nu, i.e. Bessel order i nu.

    (1 + 4 pi alpha a) K_{i nu}(2 pi alpha a)^2 + 4 pi alpha a K'_{i nu} K_{i nu}.
    """
    if bundle.alpha == 0.0:
        raise BundleError("f_0 requires a nontrivial character (alpha != 0)")
    return char_det_direct(0, 1j * complex(as_order(nu)), bundle, tol)


def kernel_factor(t: float, x: float, tol: float = 1e-13) -> float:
    """(1 + 2x) K_t(x) + 2x K_t'(x), the second factor of f_0 at real order t."""
    sm = scaled_moments(complex(t), float(x), ((0, 0), (1, 0)), tol)
    k0, k1 = sm.unscaled()
    return float(((1.0 + 2.0 * x) * k0 + 2.0 * x * k1).real)


# --- real-order data used by the zeta representations ------------------------

@dataclass(frozen=True)
class RealOrderData:
    """Mode data at real Bessel order t (spectral parameter i t).

    G = g_k(i t) is real.  ``dlog_G`` is d/dt log G; ``log_F`` and ``dlog_F``
    refer to F = K_t(x_+) K_t(x_-) G.
    """

    G: float
    dlog_G: float
    log_abs_F: float
    dlog_F: float


def real_order_data(k: int, t: float, bundle: CuspBundle, tol: float = 1e-13) -> RealOrderData:
    m = bundle.mode(k)
    sx, sy = _sides(complex(float(t)), m.x_plus, m.x_minus, tol, REAL_ORDER_CAP)
    G = (bundle.coupling + sx.logderiv + sy.logderiv).real
    dG = (sx.logderiv_dorder + sy.logderiv_dorder).real
    log_abs_F = (
        math.log(abs(sx.k0.real)) + sx.log_scale + math.log(abs(sy.k0.real)) + sy.log_scale + math.log(abs(G))
    )
    dlog_k = (sx.d0 / sx.k0).real + (sy.d0 / sy.k0).real
    return RealOrderData(G=G, dlog_G=dG / G, log_abs_F=log_abs_F, dlog_F=dlog_k + dG / G)


def _horner(coef, x: float) -> float:
    acc = 0.0
    for c in coef:
        acc = acc * x + c
    return acc


def _debye_side(t: float, x: float, n_terms: int):
    """d/dt log K_t(x) and x K_t'(x)/K_t(x) with its t-derivative, from the uniform expansion."""
    tables = olver_float_tables(n_terms)
    w = math.hypot(t, x)
    p = t / w
    xw2 = (x / w) ** 2
    dp = xw2 / w
    su = sv = dsu = dsv = 0.0
    inv = 1.0 / t
    ij = 1.0
    for j in range(n_terms + 1):
        u, v, du, dv = tables[j]
        sgn = -1.0 if j % 2 else 1.0
        uj = _horner(u, p)
        vj = _horner(v, p)
        su += sgn * uj * ij
        sv += sgn * vj * ij
        dsu += sgn * (_horner(du, p) * dp - j * uj * inv) * ij
        dsv += sgn * (_horner(dv, p) * dp - j * vj * inv) * ij
        ij *= inv
    dlog_k = -0.5 / t + xw2 / (2.0 * t) + math.asinh(t / x) + dsu / su
    ratio = sv / su
    dratio = (dsv * su - sv * dsu) / (su * su)
    return dlog_k, -w * ratio, -(p * ratio + w * dratio)


def dlog_F_asymptotic(k: int, t: float, bundle: CuspBundle, n_terms: int = 5) -> float:
    """d/dt log|F| at large real order t from the uniform expansion of both Bessel factors.

    Agrees with ``real_order_data(...).dlog_F`` to about t^-(n_terms+1).
    """
    t = float(t)
    if t < ORDER_THRESHOLD:
        raise ExpansionValidityError(f"order {t} below threshold {ORDER_THRESHOLD}")
    m = bundle.mode(k)
    dp, lp, dlp = _debye_side(t, m.x_plus, n_terms)
    dm, lm, dlm = _debye_side(t, m.x_minus, n_terms)
    G = bundle.coupling + lp + lm
    return dp + dm + (dlp + dlm) / G


def G(k: int, t: float, bundle: CuspBundle) -> float:
    """g_k(i t) for real t: the characteristic function at real Bessel order t."""
    return real_order_data(k, t, bundle).G


def dlog_G(k: int, t: float, bundle: CuspBundle) -> float:
    return real_order_data(k, t, bundle).dlog_G


# --- regularizer --------------------------------------------------------------

def anchor(mu: float) -> float:
    """sqrt(1/4 + mu), the point where the regularizer is anchored."""
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    return math.sqrt(0.25 + mu)


def split_point(k: int, mu: float, delta: float = DEFAULT_DELTA) -> float:
    t0 = anchor(mu)
    return 2.0 * t0 if k == 0 else 2.0 * abs(k) ** delta * t0


@dataclass(frozen=True)
class RegularizerSample:
    mode: ModeChar
    mu: float
    t: float
    h_value: complex
    H_value: complex
    split_point: float


class Regularizer:
    """h_{mu,k} and its primitive H_{mu,k} for one mode and shift, with the anchor cached.

    h(t) = (log G)'(t) - (t / T0) (log G)'(T0) and
    H(t) = log|G(t)| - log|G(T0)| - (t^2 - T0^2) / (2 T0) (log G)'(T0),
    T0 = sqrt(1/4 + mu), G(t) = g_k(i t).
    """

    def __init__(self, k: int, mu: float, bundle: CuspBundle):
        self.k = int(k)
        self.mu = float(mu)
        self.bundle = bundle
        self.t0 = anchor(mu)
        d = real_order_data(self.k, self.t0, bundle)
        self.G0 = d.G
        self.slope0 = d.dlog_G
        if abs(self.G0) < POLE_THRESHOLD:
            raise PoleProximityError("g_k vanishes at the anchor point")

    def h(self, t: float) -> float:
        d = real_order_data(self.k, abs(t), self.bundle)
        sign = 1.0 if t >= 0 else -1.0
        return sign * d.dlog_G - t / self.t0 * self.slope0

    def H(self, t: float) -> float:
        if t == self.t0:
            return 0.0
        d = real_order_data(self.k, abs(t), self.bundle)
        return (
            math.log(abs(d.G)) - math.log(abs(self.G0))
            - (t * t - self.t0 * self.t0) / (2.0 * self.t0) * self.slope0
        )

    def H_tilde(self, t: float) -> float:
        return self.H(t) / (0.25 + self.mu - t * t) ** 2

    def sample(self, t: float) -> RegularizerSample:
        return RegularizerSample(
            mode=self.bundle.mode(self.k), mu=self.mu, t=float(t), h_value=self.h(t), H_value=self.H(t),
            split_point=split_point(self.k, self.mu, self.bundle.delta),
        )


def h_reg(k: int, t: float, mu: float, bundle: CuspBundle) -> float:
    return Regularizer(k, mu, bundle).h(t)


def H_reg(k: int, t: float, mu: float, bundle: CuspBundle) -> float:
    return Regularizer(k, mu, bundle).H(t)


# --- expansions ---------------------------------------------------------------

def log_abs_g_expansion(k: int, t: float, bundle: CuspBundle) -> float:
    """Two-correction large-order expansion of log|g_k(i t)|."""
    m = bundle.mode(k)
    sp = math.hypot(m.x_plus, t)
    sm = math.hypot(m.x_minus, t)
    s = sp + sm
    four_pi_alpha_a = bundle.coupling - 1.0
    return (
        math.log(s) - four_pi_alpha_a / s
        - 0.5 * t * t / s * (1.0 / sp**2 + 1.0 / sm**2)
    )


def log_abs_g_asymptotic(k: int, t: float, bundle: CuspBundle) -> ExpansionWithBound:
    """Large-order expansion of log|g_k(i t)| with envelope C / (x_min^2 + t^2).

    x_min = 2 pi |k| (1 - alpha) a for k != 0 and 2 pi alpha a for k = 0, and
    C = LOG_G_ENVELOPE (1 + 4 pi alpha a)^2, the square of the first neglected
    logarithm term.
    """
    t = float(t)
    if t < LOG_G_THRESHOLD:
        raise ExpansionValidityError(f"t = {t} below validity threshold {LOG_G_THRESHOLD}")
    if k == 0:
        x_min = 2.0 * math.pi * bundle.alpha * bundle.a
    else:
        x_min = 2.0 * math.pi * abs(k) * (1.0 - bundle.alpha) * bundle.a
    c = LOG_G_ENVELOPE * bundle.coupling**2
    return ExpansionWithBound(log_abs_g_expansion(k, t, bundle), c / (x_min**2 + t * t), 2)


def g_large_argument(k: int, nu, bundle: CuspBundle) -> ExpansionWithBound:
    """Large-argument form of g_k(nu) (Bessel order i nu).

    4 pi alpha a - 2 pi (|k+alpha| + |k-alpha|) a + (4 nu^2 + 1)/(16 pi a) (1/|k+alpha| + 1/|k-alpha|),
    valid once min(x_+, x_-) >= threshold (1 + |nu|^2); the envelope is
    C (1 + |4 nu^2 + 1|) (1/x_+^2 + 1/x_-^2), twice the first neglected term.
    """
    m = bundle.mode(k)
    nu = complex(as_order(nu))
    x_min = min(m.x_plus, m.x_minus)
    if x_min < G_LARGE_ARG_THRESHOLD * (1.0 + abs(nu) ** 2):
        raise ExpansionValidityError(f"argument {x_min} too small for the large-argument form")
    a, al = bundle.a, bundle.alpha
    val = (
        4.0 * math.pi * al * a - 2.0 * math.pi * (abs(k + al) + abs(k - al)) * a
        + (4.0 * nu * nu + 1.0) / (16.0 * math.pi * a) * (1.0 / abs(k + al) + 1.0 / abs(k - al))
    )
    env = G_LARGE_ARG_ENVELOPE * (1.0 + abs(4.0 * nu * nu + 1.0)) * (1.0 / m.x_plus**2 + 1.0 / m.x_minus**2)
    if nu.imag == 0.0:
        val = complex(val.real, 0.0)
    return ExpansionWithBound(val, env, 2)


# --- order derivative of g_k through the squared-modulus integral ------------

def modulus_integral_tail(nu_spectral: float, u: float, tol: float = 1e-11) -> float:
    """int_u^inf |K_{i nu}(v)|^2 / v dv for real nu by quadrature."""
    order = complex(0.0, float(nu_spectral))

    def f(v):
        return abs(bessel_k(order, float(v))) ** 2 / v

    def fv(vs):
        return np.array([f(v) for v in np.atleast_1d(vs)])

    # |K|^2 decays like exp(-2v) / v, so [u, u + 40] carries all digits
    return float(integrate(fv, float(u), float(u) + 40.0, tol).value)


def g_order_derivative(k: int, nu: float, bundle: CuspBundle) -> float:
    """d/d nu of g_k(nu) at real nu from the squared-modulus integrals.

    g_k'(nu) = 2 nu sum_pm int_{x_pm}^inf |K_{i nu}(v)|^2 / v dv / K_{i nu}(x_pm)^2.
    """
    m = bundle.mode(k)
    order = complex(0.0, float(nu))
    total = 0.0
    for x in (m.x_plus, m.x_minus):
        kx = bessel_k(order, x).real
        total += modulus_integral_tail(nu, x) / (kx * kx)
    return 2.0 * float(nu) * total

"""Modified Bessel function K of complex order by contour quadrature.

All values come from one representation,

    K_b(x) = 1/2 * integral over the real line of exp(-x cosh t + b t) dt,

integrated along the horizontal line Im t = v.  For real order v = 0 and this
is the familiar integral of exp(-x cosh u) cosh(b u).  For orders with a large
imaginary part the real-line integrand is of size one while the result is of
size exp(-pi |Im b| / 2), so the line is lifted towards the saddle point of the
integrand, where the cancellation disappears.

Derivatives in the argument and in the order are moments of the same
integrand: d^m/dx^m d^n/db^n K_b(x) = 1/2 * integral of (-cosh t)^m t^n e^phi.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

ORDER_CAP = 50.0
ARG_FLOOR = 1e-6
MAX_LEVEL = 16  # at most 2**16 trapezoid panels

_DEBUG_NODES = {"enabled": False, "last": 0}


class BesselDomainError(ValueError):
    """Argument or order outside the supported region."""


class BesselAccuracyError(ArithmeticError):
    """Requested tolerance not reached at the configured quadrature depth."""


def set_node_debug(flag: bool) -> None:
    """Record the number of quadrature nodes used by the last evaluation."""
    _DEBUG_NODES["enabled"] = bool(flag)


def last_node_count() -> int:
    return int(_DEBUG_NODES["last"])


@dataclass(frozen=True)
class ComplexOrder:
    """Bessel order re + i im.  The imaginary order i nu is ComplexOrder(0, nu)."""

    re: float
    im: float = 0.0

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def imaginary(cls, nu: float) -> "ComplexOrder":
        return cls(0.0, float(nu))


@dataclass(frozen=True)
class ScaledMoments:
    """Moments scaled by exp(-log_scale); ``values[i]`` matches ``pairs[i]``.

    ``magnitude[i]`` is 1/2 the integral of the modulus of the i-th integrand on
    the same scale, the size the value would have without cancellation.
    """

    pairs: tuple
    values: np.ndarray
    log_scale: float
    magnitude: np.ndarray

    def unscaled(self) -> np.ndarray:
        return self.values * math.exp(self.log_scale)

    def ratio(self, num, den) -> complex:
        i = self.pairs.index(num)
        j = self.pairs.index(den)
        return complex(self.values[i] / self.values[j])


def _check(order: complex, x: float, order_cap: float = ORDER_CAP) -> None:
    if not (x > 0) or not math.isfinite(x):
        raise BesselDomainError(f"argument must be positive, got {x!r}")
    if x < ARG_FLOOR:
        raise BesselDomainError(f"argument {x!r} below floor {ARG_FLOOR}")
    if abs(order.real) > order_cap:
        raise BesselDomainError(f"|Re order| = {abs(order.real)} exceeds cap {order_cap}")


def _contour_height(order: complex, x: float) -> float:
    # saddle of -x cosh t + b t sits at sinh t = b / x
    if order.imag == 0.0:
        return 0.0
    v = cmath.asinh(order / x).imag
    eps = min(0.5, 8.0 / (1.0 + abs(order.imag)))
    lim = 0.5 * math.pi - eps
    return max(-lim, min(lim, v))


def _window(order: complex, x: float, v: float, drop: float):
    """Interval in u outside which |integrand| < exp(-drop) * peak."""
    p = order.real
    c = math.cos(v)
    xc = x * c
    u_star = math.asinh(p / xc)
    top = -xc * math.cosh(u_star) + p * u_star

    def excess(u):
        return -xc * math.cosh(u) + p * u - top + drop

    bounds = []
    for direction in (1.0, -1.0):
        step = max(1.0, math.acosh(1.0 + drop / xc))
        lo, hi = u_star, u_star + direction * step
        while excess(hi) > 0:
            lo, hi = hi, hi + direction * step
            step *= 2.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if excess(mid) > 0:
                lo = mid
            else:
                hi = mid
            if abs(hi - lo) < 1e-12 * (1.0 + abs(hi)):
                break
        bounds.append(hi)
    return bounds[1], bounds[0], top


def _integrand(u, order, x, v, pairs, shift):
    t = u + 1j * v
    ch = np.cosh(t)
    w = np.exp(-x * ch + order * t - shift)
    out = []
    for m, n in pairs:
        f = w
        if m:
            f = f * (-ch) ** m
        if n:
            f = f * t**n
        out.append(f)
    return np.array(out)


def scaled_moments(
    order, x: float, pairs=((0, 0),), tol: float = 1e-13, order_cap: float = ORDER_CAP
) -> ScaledMoments:
    """Evaluate d^m/dx^m d^n/db^n K_b(x) for each (m, n) in ``pairs``.

    Values are returned scaled by a common factor exp(-log_scale) so that
    ratios survive when K itself would overflow.  ``order_cap`` bounds
    |Re order|; raise it only where accuracy has been checked.
    """
    order = as_order(order)
    x = float(x)
    _check(order, x, order_cap)
    pairs = tuple((int(m), int(n)) for m, n in pairs)
    # evenness in the order: K_{-b} = K_b, so the n-th order derivative flips by (-1)^n
    flip = order.real < 0 or (order.real == 0 and order.imag < 0)
    if flip:
        order = -order
    v = _contour_height(order, x)
    qv = order.imag * v
    drop = 42.0 + 2.0 * max((m + n for m, n in pairs), default=0)
    lo, hi, top = _window(order, x, v, drop)
    shift = top - qv
    length = hi - lo

    n_pan = 32
    h = length / n_pan
    nodes = lo + h * np.arange(n_pan + 1)
    vals = _integrand(nodes, order, x, v, pairs, shift)
    total = h * (vals[:, 1:-1].sum(axis=1) + 0.5 * (vals[:, 0] + vals[:, -1]))
    mass = h * np.abs(vals).sum(axis=1)
    used = n_pan + 1
    ok = False
    for _ in range(MAX_LEVEL - 5):
        mids = lo + h * (np.arange(n_pan) + 0.5)
        mv = _integrand(mids, order, x, v, pairs, shift)
        used += n_pan
        new = 0.5 * total + 0.5 * h * mv.sum(axis=1)
        mass = 0.5 * mass + 0.5 * h * np.abs(mv).sum(axis=1)
        err = np.abs(new - total)
        total = new
        n_pan *= 2
        h *= 0.5
        floor = np.maximum(tol * np.abs(total), 4e-16 * mass)
        if np.all(err <= floor):
            ok = True
            break
    if _DEBUG_NODES["enabled"]:
        _DEBUG_NODES["last"] = used
    if not ok:
        raise BesselAccuracyError(
            f"K quadrature did not reach tol={tol} (order={order}, x={x})"
        )
    values = 0.5 * total
    if flip:
        signs = np.array([(-1.0) ** n for _, n in pairs])
        values = values * signs
    if order == 0:
        # odd order-derivatives of an even function vanish at order 0
        values = np.where([n % 2 == 1 for _, n in pairs], 0.0, values)
    return ScaledMoments(pairs=pairs, values=values, log_scale=shift, magnitude=0.5 * mass)


def as_order(nu) -> complex:
    """Accept a ComplexOrder, a number, or anything with re/im attributes."""
    if hasattr(nu, "re") and hasattr(nu, "im"):
        return complex(nu.re, nu.im)
    return complex(nu)


def _finish(val: complex, order: complex):
    if order.imag == 0.0:
        return complex(val.real, 0.0)
    return val


def bessel_k(nu, x: float, tol: float = 1e-13) -> complex:
    """K_nu(x) for complex order nu and positive argument x."""
    order = as_order(nu)
    sm = scaled_moments(order, x, ((0, 0),), tol)
    return _finish(complex(sm.unscaled()[0]), order)


def bessel_k_dx(nu, x: float, tol: float = 1e-13) -> complex:
    """Derivative of K_nu(x) in the argument."""
    order = as_order(nu)
    sm = scaled_moments(order, x, ((1, 0),), tol)
    return _finish(complex(sm.unscaled()[0]), order)


def bessel_k_dorder(nu, x: float, tol: float = 1e-13) -> complex:
    """Derivative of K_nu(x) in the order."""
    order = as_order(nu)
    sm = scaled_moments(order, x, ((0, 1),), tol)
    return _finish(complex(sm.unscaled()[0]), order)


def bessel_k_all(nu, x: float, pairs, tol: float = 1e-13) -> np.ndarray:
    """Several argument/order derivatives in one quadrature pass."""
    order = as_order(nu)
    sm = scaled_moments(order, x, pairs, tol)
    out = sm.unscaled()
    if order.imag == 0.0:
        out = out.real.astype(complex)
    return out

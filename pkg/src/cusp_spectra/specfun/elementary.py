"""Exponential integral, Gamma family and the Riemann/Hurwitz zeta functions."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from scipy import special as _sp


class SpecialDomainError(ValueError):
    """Argument outside the function's domain (including poles)."""


EULER_GAMMA = 0.57721566490153286061


def exp_integral_e1(x: float) -> float:
    """E1(x) = integral from x to infinity of exp(-u)/u, for x > 0."""
    x = float(x)
    if not (x > 0):
        raise SpecialDomainError(f"E1 needs x > 0, got {x!r}")
    return float(_sp.exp1(x))


def exp_integral_e1_scaled(x: float) -> float:
    """exp(x) E1(x), finite for large x."""
    x = float(x)
    if not (x > 0):
        raise SpecialDomainError(f"E1 needs x > 0, got {x!r}")
    if x < 600.0:
        return float(_sp.exp1(x) * math.exp(x))
    return _e1_scaled_asym(x)


def _e1_scaled_asym(x: float) -> float:
    total, term = 1.0, 1.0
    for n in range(1, 40):
        term *= -n / x
        if abs(term) < 1e-17:
            break
        total += term
    return total / x


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    x = float(x)
    if not (x > 0):
        raise SpecialDomainError(f"log_gamma needs x > 0, got {x!r}")
    return float(_sp.gammaln(x))


def gamma(x: float) -> float:
    """Gamma(x) for real x that is not a nonpositive integer."""
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise SpecialDomainError(f"Gamma has a pole at {x!r}")
    return float(_sp.gamma(x))


def digamma(x: float) -> float:
    """psi(x) = Gamma'(x)/Gamma(x), real x not a nonpositive integer."""
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise SpecialDomainError(f"digamma has a pole at {x!r}")
    return float(_sp.digamma(x))


@lru_cache(maxsize=None)
def _bernoulli_even(n_max: int) -> tuple:
    """B_2, B_4, ..., B_{2 n_max} as exact fractions (Akiyama-Tanigawa)."""
    m = 2 * n_max
    a = [Fraction(0)] * (m + 1)
    out = []
    for i in range(m + 1):
        a[i] = Fraction(1, i + 1)
        for j in range(i, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        if i >= 2 and i % 2 == 0:
            out.append(a[0])
    return tuple(out)


_EM_TERMS = 14
_B2K = _bernoulli_even(_EM_TERMS)
# B_{2j} / (2j)!
_EM_COEF = tuple(float(b / math.factorial(2 * (j + 1))) for j, b in enumerate(_B2K))


def zeta_hurwitz(q: float, s) -> complex | float:
    """Hurwitz zeta sum over n >= 0 of (n + q)^(-s), continued to s != 1.

    Euler-Maclaurin summation after shifting the base point beyond 30 + 1.5|s|.
    Accepts complex s; returns a float when s is real.
    """
    q = float(q)
    if not (q > 0):
        raise SpecialDomainError(f"Hurwitz zeta needs q > 0, got {q!r}")
    real_input = not isinstance(s, complex) or s.imag == 0.0
    s = complex(s)
    if s == 1:
        raise SpecialDomainError("zeta has a pole at s = 1")
    n = max(0, int(math.ceil(30.0 + 1.5 * abs(s) - q)))
    head = sum(cmath.exp(-s * math.log(k + q)) for k in range(n))
    x = n + q
    lx = math.log(x)
    xs = cmath.exp(-s * lx)
    tail = x * xs / (s - 1.0) + 0.5 * xs
    rising = s  # s (s+1) ... (s + 2j - 2)
    power = xs / x
    for j, c in enumerate(_EM_COEF):
        term = c * rising * power
        tail += term
        if abs(term) < 1e-18 * abs(tail):
            break
        rising *= (s + 2 * j + 1) * (s + 2 * j + 2)
        power /= x * x
    val = head + tail
    return val.real if real_input else val


def zeta_riemann(s) -> complex | float:
    """Riemann zeta function, continued to s != 1."""
    return zeta_hurwitz(1.0, s)


def zeta_hurwitz_ds(q: float, s, h: float = 1e-4) -> complex | float:
    """d/ds of the Hurwitz zeta by a symmetric five-point rule on the analytic function."""
    s = complex(s)
    real_input = s.imag == 0.0
    val = (
        -zeta_hurwitz(q, s + 2 * h) + 8 * zeta_hurwitz(q, s + h)
        - 8 * zeta_hurwitz(q, s - h) + zeta_hurwitz(q, s - 2 * h)
    ) / (12 * h)
    return val.real if real_input else val

"""Gauss hypergeometric function F(a, b; c; t) on 0 <= t < 1.

Route selection follows conditioning: the power series for t <= 1/2, the
Euler integral for t > 1/2 when both endpoint exponents b - 1 and c - b - 1 are
at least -1/2 (the double exponential rule loses digits on stronger
singularities), the t -> 1 - t connection formula when c - a - b is not an
integer, and the series again as a last resort.
"""

from __future__ import annotations

import math

from ..quadsum import integrate
from .elementary import SpecialDomainError, gamma, log_gamma


class HypergeometricParameterError(SpecialDomainError):
    """Parameters at which the requested representation is undefined."""


def _is_nonpos_int(v: float) -> bool:
    return v <= 0 and v == math.floor(v)


def _series(a, b, c, t, max_terms=5000):
    total, term = 1.0, 1.0
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * t
        total += term
        if abs(term) <= 1e-17 * abs(total):
            return total
    raise ArithmeticError(f"hypergeometric series did not converge at t={t}")


def _euler(a, b, c, t):
    # Gamma(c) / (Gamma(b) Gamma(c-b)) * int_0^1 x^(b-1) (1-x)^(c-b-1) (1-tx)^(-a) dx,
    # split at 1/2 so that both endpoint distances are carried exactly
    def left(x):
        return x ** (b - 1.0) * (1.0 - x) ** (c - b - 1.0) * (1.0 - t * x) ** (-a)

    def right(y):
        return y ** (c - b - 1.0) * (1.0 - y) ** (b - 1.0) * (1.0 - t + t * y) ** (-a)

    lead = math.exp(log_gamma(c) - log_gamma(b) - log_gamma(c - b))
    body = integrate(left, 0.0, 0.5, tol=1e-15).value + integrate(right, 0.0, 0.5, tol=1e-15).value
    return lead * body


def _connection(a, b, c, t):
    d = c - a - b
    if d == math.floor(d):
        raise HypergeometricParameterError("connection formula degenerate for integer c - a - b")
    u = 1.0 - t
    first = gamma(c) * gamma(d) / (gamma(c - a) * gamma(c - b)) * _series(a, b, 1.0 - d, u)
    second = u**d * gamma(c) * gamma(-d) / (gamma(a) * gamma(b)) * _series(c - a, c - b, 1.0 + d, u)
    return first + second


def hyp2f1(a: float, b: float, c: float, t: float) -> float:
    """F(a, b; c; t) for real parameters and 0 <= t < 1."""
    a, b, c, t = float(a), float(b), float(c), float(t)
    if not (0.0 <= t < 1.0):
        raise SpecialDomainError(f"hyp2f1 needs 0 <= t < 1, got {t!r}")
    if _is_nonpos_int(c):
        raise HypergeometricParameterError(f"c = {c} is a nonpositive integer")
    if t == 0.0 or a == 0.0 or b == 0.0:
        return 1.0
    if t <= 0.5 or _is_nonpos_int(a) or _is_nonpos_int(b):
        return _series(a, b, c, t)
    if min(b, c - b) >= 0.5:
        return _euler(a, b, c, t)
    if min(a, c - a) >= 0.5:
        return _euler(b, a, c, t)
    d = c - a - b
    if d != math.floor(d):
        return _connection(a, b, c, t)
    return _series(a, b, c, t, max_terms=200000)


def hyp2f1_reflect_terms(n: int, c: float, t: float) -> tuple[float, float]:
    """The two pieces of the t <-> 1 - t reflection of F(n, 1; c; t).

    F(n, 1; c; t) = Gamma(c) Gamma(n+1-c) / Gamma(n) (1-t)^(c-n-1) t^(1-c)
                    + (c-1)/(c-n-1) F(n, 1; 2+n-c; 1-t).
    """
    n = int(n)
    c = float(c)
    t = float(t)
    if n < 1:
        raise HypergeometricParameterError("n must be a positive integer")
    if not (0.0 < t < 1.0):
        raise SpecialDomainError(f"reflection needs 0 < t < 1, got {t!r}")
    if _is_nonpos_int(n + 1.0 - c) or _is_nonpos_int(2.0 + n - c):
        raise HypergeometricParameterError(f"c - n - 1 = {c - n - 1} is a nonnegative integer")
    singular = gamma(c) * gamma(n + 1.0 - c) / gamma(n) * (1.0 - t) ** (c - n - 1.0) * t ** (1.0 - c)
    regular = (c - 1.0) / (c - n - 1.0) * hyp2f1(n, 1.0, 2.0 + n - c, 1.0 - t)
    return singular, regular


def hyp2f1_reflect(n: int, c: float, t: float) -> float:
    """F(n, 1; c; t) through the reflection identity."""
    singular, regular = hyp2f1_reflect_terms(n, c, t)
    return singular + regular

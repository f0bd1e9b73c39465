"""Quadrature on finite and half-infinite intervals, and Ramanujan summation.

Two independent integrators are provided.  ``integrate`` is a double
exponential rule (tanh-sinh on finite intervals, exp-sinh on [a, inf)) and
tolerates integrable endpoint singularities.  ``integrate_gauss`` is a
composite Gauss-Legendre rule with panel doubling, used as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class QuadratureError(ArithmeticError):
    """Quadrature did not converge, or the integrand produced NaN."""


class HypothesisError(ValueError):
    """Ramanujan summation requested for a function failing its hypotheses."""


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error_estimate: float
    evaluations: int


@dataclass(frozen=True)
class RamanujanSum:
    value: complex
    tail_integral: complex
    hypotheses_satisfied: bool


@dataclass(frozen=True)
class HypothesisReport:
    ok: bool
    decay_exponent_terms: float
    decay_exponent_vertical: float
    diagnostics: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def _eval(f, x):
    """Evaluate f on an array, falling back to a scalar loop."""
    try:
        y = f(x)
        y = np.asarray(y)
        if y.shape == x.shape:
            return y.astype(complex) if np.iscomplexobj(y) else y.astype(float)
    except (TypeError, ValueError):
        pass
    return np.array([f(float(xi)) for xi in x])


def _de_nodes(a, b, h, tmax, offset):
    """tanh-sinh nodes with distances to the endpoints computed without rounding."""
    tau = offset + h * np.arange(-math.ceil(tmax / h) - 1, math.ceil(tmax / h) + 2)
    tau = tau[np.abs(tau) <= tmax]
    u = 0.5 * math.pi * np.sinh(tau)
    width = b - a
    with np.errstate(over="ignore"):
        e = np.exp(-2.0 * np.abs(u))
        near = width * e / (1.0 + e)  # distance to the closer endpoint
        w = width * 0.5 * math.pi * np.cosh(tau) * 2.0 * e / (1.0 + e) ** 2
    x = np.where(u < 0, a + near, b - near)
    keep = (near > 0) & (w > 0)
    return x[keep], w[keep]


def _es_nodes(a, h, tmax, offset):
    tau = offset + h * np.arange(-math.ceil(tmax / h) - 1, math.ceil(tmax / h) + 2)
    tau = tau[np.abs(tau) <= tmax]
    with np.errstate(over="ignore"):
        g = np.exp(0.5 * math.pi * np.sinh(tau))
        w = 0.5 * math.pi * np.cosh(tau) * g
    keep = np.isfinite(g) & (g > 0) & np.isfinite(w)
    return a + g[keep], w[keep]


def integrate(f, a: float, b: float, tol: float = 1e-12, max_level: int = 9) -> QuadResult:
    """Double exponential quadrature of f over [a, b], b may be +inf.

    The integrand may be complex valued and may have integrable singularities
    at finite endpoints.  Each level halves the step and reuses the previous
    nodes; the error estimate is the change between the last two levels.
    """
    if not (tol > 0):
        raise ValueError("tol must be positive")
    a = float(a)
    b = float(b)
    if a == b:
        return QuadResult(0.0, 0.0, 0)
    if b < a:
        r = integrate(f, b, a, tol, max_level)
        return QuadResult(-r.value, r.error_estimate, r.evaluations)
    infinite = math.isinf(b)
    # on [a, inf) the last node sits near e^116, enough for algebraic decay like x^(-3/2)
    tmax = 4.5 if not infinite else 5.0

    def level(h, offset):
        if infinite:
            x, w = _es_nodes(a, h, tmax, offset)
        else:
            x, w = _de_nodes(a, b, h, tmax, offset)
        y = _eval(f, x)
        if np.any(np.isnan(y)):
            raise QuadratureError("integrand returned NaN")
        return h * np.sum(w * y), len(x)

    h = 0.5
    total, n = level(h, 0.0)
    evals = n
    prev = total
    err = math.inf
    for _ in range(max_level):
        # midpoints of the current grid
        mid, n = level(h, 0.5 * h)
        evals += n
        total = 0.5 * (prev + mid)
        h *= 0.5
        err = abs(total - prev)
        if err <= tol * max(abs(total), 1e-300) or err == 0.0:
            break
        prev = total
    else:
        if err > 1e3 * tol * max(abs(total), 1.0):
            raise QuadratureError(f"no convergence on [{a}, {b}]: estimate {err:.3e}")
    val = complex(total) if np.iscomplexobj(total) else float(total)
    return QuadResult(val, float(err), evals)


_GL_X, _GL_W = np.polynomial.legendre.leggauss(20)


def integrate_gauss(f, a: float, b: float, tol: float = 1e-12, max_panels: int = 4096) -> QuadResult:
    """Composite 20-point Gauss-Legendre rule with panel doubling.

    A half-infinite range is mapped to [0, 1) by x = a + u / (1 - u).
    Intended for smooth integrands; it shares nothing with ``integrate``.
    """
    a = float(a)
    b = float(b)
    if math.isinf(b):
        def g(u):
            return f(a + u / (1.0 - u)) / (1.0 - u) ** 2
        lo, hi = 0.0, 1.0
    else:
        g = f
        lo, hi = a, b

    def rule(npan):
        edges = np.linspace(lo, hi, npan + 1)
        half = 0.5 * np.diff(edges)
        mids = 0.5 * (edges[1:] + edges[:-1])
        x = (mids[:, None] + half[:, None] * _GL_X[None, :]).ravel()
        w = (half[:, None] * _GL_W[None, :]).ravel()
        y = _eval(g, x)
        if np.any(np.isnan(y)):
            raise QuadratureError("integrand returned NaN")
        return np.sum(w * y), len(x)

    npan = 4
    prev, evals = rule(npan)
    while npan < max_panels:
        npan *= 2
        cur, n = rule(npan)
        evals += n
        err = abs(cur - prev)
        if err <= tol * max(abs(cur), 1e-300):
            val = complex(cur) if np.iscomplexobj(cur) else float(cur)
            return QuadResult(val, float(err), evals)
        prev = cur
    raise QuadratureError(f"Gauss-Legendre did not converge on [{a}, {b}]")


# --- Ramanujan summation -----------------------------------------------------

def _vertical_cutoff(f, x0: float, ratio: float = 1e18) -> float:
    """Height T beyond which (e^{2 pi t} - 1) exceeds ratio * |f(x0 +- it)|."""
    t = 0.5
    while t < 200.0:
        mag = max(abs(f(complex(x0, t))), abs(f(complex(x0, -t))), 1e-300)
        if math.expm1(2.0 * math.pi * t) > ratio * mag:
            return t
        t += 0.5
    return t


def vertical_integral(f, x0: float, tol: float = 1e-12) -> complex:
    """Integral over t > 0 of (f(x0 + it) - f(x0 - it)) / (e^{2 pi t} - 1)."""
    top = _vertical_cutoff(f, x0)

    def integrand(t):
        t = np.atleast_1d(t)
        out = np.empty(t.shape, dtype=complex)
        for i, ti in enumerate(t):
            out[i] = (f(complex(x0, ti)) - f(complex(x0, -ti))) / math.expm1(2.0 * math.pi * ti)
        return out

    return complex(integrate(integrand, 0.0, top, tol).value)


def _decay_exponent(ks, vals):
    """Local power-law decay exponent -d log|v| / d log k from the last two probes."""
    v = np.abs(np.asarray(vals, dtype=complex))
    if v[-1] < 1e-250:
        return math.inf
    if v[-2] < 1e-250:
        return -math.inf
    return -math.log(v[-1] / v[-2]) / math.log(ks[-1] / ks[-2])


def ramanujan_hypotheses_check(f, probe_k_max: int = 64, min_exponent: float = 0.05) -> HypothesisReport:
    """Probe f(k) -> 0 and the vertical-line integral at abscissa k -> 0.

    Both sequences are sampled at k = 1, 2, 4, ..., probe_k_max.  A hypothesis
    is taken to hold when the sequence decays like k^(-p) with p above
    ``min_exponent`` at the end of the probe, or has underflowed.
    """
    ks = []
    k = 1
    while k <= probe_k_max:
        ks.append(k)
        k *= 2
    if len(ks) < 3:
        raise ValueError("probe_k_max must be at least 4")
    terms, verts = [], []
    for k in ks:
        try:
            terms.append(complex(f(complex(k, 0.0))))
            verts.append(vertical_integral(f, float(k), tol=1e-10))
        except Exception as exc:  # surface the failing abscissa
            raise QuadratureError(f"evaluation failed at abscissa {k}: {exc}") from exc
    p_terms = _decay_exponent(ks, terms)
    p_vert = _decay_exponent(ks, verts)
    ok = p_terms > min_exponent and p_vert > min_exponent
    diag = {"abscissae": ks, "terms": terms, "vertical": verts}
    return HypothesisReport(bool(ok), float(p_terms), float(p_vert), diag)


def ramanujan_sum(f, tol: float = 1e-12, check: bool = True, probe_k_max: int = 64) -> RamanujanSum:
    """Ramanujan sum of f(k) over k >= 1.

    With the Abel-Plana formula, sum f(k) = int_1^inf f + f(1)/2
    + i int_0^inf (f(1+it) - f(1-it)) / (e^{2 pi t} - 1) dt,
    so the regularized value is everything except the integral over [1, inf).
    ``tail_integral`` holds the vertical-line integral itself.
    """
    ok = True
    if check:
        ok = bool(ramanujan_hypotheses_check(f, probe_k_max))
        if not ok:
            raise HypothesisError("f fails the Ramanujan summation hypotheses")
    vert = vertical_integral(f, 1.0, tol)
    value = 0.5 * complex(f(complex(1.0, 0.0))) + 1j * vert
    return RamanujanSum(value=value, tail_integral=vert, hypotheses_satisfied=ok)


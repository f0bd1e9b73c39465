"""Eigenvalues of the pseudo-Laplacian as real zeros of the mode determinants.

Mode k contributes lambda = 1/4 + r^2 for each real zero r > 0 of
r -> f_k(r) (Bessel order i r).  Zeros are bracketed by sign changes on a
scan grid and refined to a bracket of width tol.  Counts are cross-checked by
the argument principle on rectangles of the spectral plane.  Modes k and -k
have identical spectra and are computed once.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .charfn import CuspBundle, char_det_scaled, char_f0

RESIDUAL_TOL = 1e-6
MAX_REFINE_DEPTH = 8
K_HARD_LIMIT = 400


class ScanResolutionError(ArithmeticError):
    """Sign structure could not be resolved on the scan grid."""


class ContourError(ArithmeticError):
    """Argument-principle integral is unreliable (zero near the contour, or no integer)."""


class CutoffError(RuntimeError):
    """Mode cutoff could not be verified below the hard limit."""


class RangeError(ValueError):
    """Request outside the computed slice."""


@dataclass(frozen=True)
class EigenRecord:
    k: int
    j: int
    r: float
    lam: float
    residual: float

    @property
    def lambda_(self) -> float:
        return self.lam

    def as_dict(self) -> dict:
        return {"k": self.k, "j": self.j, "r": self.r, "lambda": self.lam, "residual": self.residual}


@dataclass(frozen=True)
class SpectrumSlice:
    bundle: CuspBundle
    lambda_max: float
    records: tuple
    kernel_present: bool
    k_cutoff_used: int
    tol: float = 1e-10
    warnings: tuple = field(default_factory=tuple)

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([rec.lam for rec in self.records])


# --- mode evaluation ------------------------------------------------------------

def _mode_value(k: int, r: float, bundle: CuspBundle):
    """f_k(r) up to a positive scale factor; only its sign and zeros are used."""
    return char_det_scaled(k, complex(0.0, r), bundle).value.real


def _residual(k: int, r: float, bundle: CuspBundle) -> float:
    """Newton step |f / f'| at r: the distance to the zero to first order.

    Term-relative measures fail for k = 0, where every term carries the
    factor K_{ir}(2 pi alpha a) and some zeros are zeros of that factor.
    """
    sv = char_det_scaled(k, complex(0.0, r), bundle)
    if sv.value == 0:
        return 0.0
    return float(abs(sv.value / sv.dorder))


def scan_step(k: int, bundle: CuspBundle) -> float:
    m = bundle.mode(k)
    return min(0.05, math.pi / (4.0 * max(m.x_plus, m.x_minus)))


def _refine(fun, lo: float, hi: float, flo: float, fhi: float, tol: float) -> float:
    """Bisect a sign-change bracket down to width <= tol; returns the midpoint."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = fun(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _sign_changes(fun, grid: np.ndarray, vals: np.ndarray, depth: int = 0):
    """Brackets of sign changes; cells with a suspicious modulus dip are subdivided."""
    out = []
    n = len(grid)
    for i in range(n - 1):
        a, b = grid[i], grid[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            out.append((a - 1e-15, a + 1e-15, fa, fa))
            continue
        if (fa < 0) != (fb < 0):
            out.append((a, b, fa, fb))
    if depth >= MAX_REFINE_DEPTH:
        return out
    # local minima of |f| without a sign change may hide a pair of close zeros
    extra = []
    for i in range(1, n - 1):
        fi = abs(vals[i])
        if fi < abs(vals[i - 1]) and fi < abs(vals[i + 1]) and (vals[i - 1] < 0) == (vals[i] < 0) == (vals[i + 1] < 0):
            # quadratic through the three points: does its extremum cross zero?
            y0, y1, y2 = vals[i - 1], vals[i], vals[i + 1]
            curv = y0 - 2 * y1 + y2
            if curv != 0.0:
                peak = y1 - (y2 - y0) ** 2 / (8.0 * curv)
                if (peak < 0) != (y1 < 0) or abs(peak) < 0.05 * abs(y1):
                    extra.append(i)
    for i in extra:
        sub = np.linspace(grid[i - 1], grid[i + 1], 9)
        sv = np.array([fun(x) for x in sub])
        found = _sign_changes(fun, sub, sv, depth + 1)
        out.extend(found)
    # deduplicate brackets produced twice
    out.sort(key=lambda t: t[0])
    merged = []
    for br in out:
        if merged and br[0] < merged[-1][1] - 1e-15 and br[1] > merged[-1][0]:
            prev = merged[-1]
            if br[1] - br[0] < prev[1] - prev[0]:
                merged[-1] = br
            continue
        merged.append(br)
    return merged


def _zeros_of(fun, r_max: float, step: float, tol: float, r_min: float = 0.0):
    n = max(2, int(math.ceil((r_max - r_min) / step)) + 1)
    grid = np.linspace(r_min, r_max, n)
    grid[0] = max(grid[0], 1e-9)
    vals = np.array([fun(x) for x in grid])
    brackets = _sign_changes(fun, grid, vals)
    zeros = [float(_refine(fun, a, b, fa, fb, tol)) for a, b, fa, fb in brackets]
    zeros.sort()
    out = []
    for z in zeros:
        if out and z - out[-1] <= 2.0 * tol:
            continue
        out.append(z)
    return out


def find_mode_zeros(k: int, r_max: float, bundle: CuspBundle, tol: float = 1e-10) -> list:
    """Real zeros of r -> f_k(r) on (0, r_max], ascending."""
    if not bundle.has_mode(k):
        raise ValueError("mode k = 0 is excluded for alpha = 0")
    if not bundle.localization_guaranteed:
        warnings.warn("a <= 1/(4 pi (1 - alpha)): zeros are not guaranteed real", RuntimeWarning)
    if r_max <= 0:
        return []
    return _zeros_of(lambda r: _mode_value(k, r, bundle), r_max, scan_step(k, bundle), tol)


def kernel_scale(bundle: CuspBundle) -> float:
    """Size of the two terms of f_0 at the kernel point: (1 + 4 pi alpha a) K_{1/2}(2 pi alpha a)^2."""
    c = 2.0 * math.pi * bundle.alpha * bundle.a
    k_half = math.sqrt(math.pi / (2.0 * c)) * math.exp(-c)
    return bundle.coupling * k_half * k_half


def mode0_zero_structure(bundle: CuspBundle, r_max: float, tol: float = 1e-10):
    """(kernel, zeros): kernel is True when |f_0(i/2)| <= 1e-8 of its scale."""
    if bundle.alpha == 0.0:
        raise ValueError("mode 0 requires alpha != 0")
    kernel = abs(char_f0(0.5j, bundle)) <= 1e-8 * kernel_scale(bundle)
    return kernel, find_mode_zeros(0, r_max, bundle, tol)


# --- argument principle -----------------------------------------------------------

_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)


def _log_derivative(k: int, nu: complex, bundle: CuspBundle) -> tuple:
    """F'/F for F(nu) = f_k at Bessel order i nu, and |F| relative to its terms."""
    sv = char_det_scaled(k, 1j * nu, bundle)
    if sv.value == 0:
        raise ContourError(f"f_k vanishes on the contour at nu = {nu}")
    return 1j * sv.logderiv, abs(sv.value)


def argument_principle_count(k: int, rect, bundle: CuspBundle, max_panels: int = 512) -> int:
    """Number of zeros of nu -> f_k(nu) inside rect = (re_lo, re_hi, im_lo, im_hi).

    Composite Gauss-Legendre on each edge with panel doubling until two
    successive estimates round to the same integer and lie within 0.1 of it.
    """
    re_lo, re_hi, im_lo, im_hi = map(float, rect)
    if im_hi - im_lo > 1.0 + 1e-12:
        raise ValueError("rectangle height must be at most 1")
    corners = [complex(re_lo, im_lo), complex(re_hi, im_lo), complex(re_hi, im_hi), complex(re_lo, im_hi)]
    edges = list(zip(corners, corners[1:] + corners[:1]))
    cache = {}

    def integrand(z):
        key = (z.real, z.imag)
        if key not in cache:
            cache[key] = _log_derivative(k, z, bundle)
        return cache[key]

    def total(npan_per_unit):
        acc = 0.0j
        for a, b in edges:
            length = abs(b - a)
            npan = max(2, int(math.ceil(length * npan_per_unit)))
            ts = np.linspace(0.0, 1.0, npan + 1)
            for t0, t1 in zip(ts[:-1], ts[1:]):
                half = 0.5 * (t1 - t0)
                mid = 0.5 * (t1 + t0)
                for xg, wg in zip(_GL_X, _GL_W):
                    z = a + (b - a) * (mid + half * xg)
                    val, _ = integrand(z)
                    acc += wg * half * val * (b - a)
        return acc / (2j * math.pi)

    # boundary proximity probe: relative size of f against a local scale
    probe = [integrand(a + (b - a) * s)[0] for a, b in edges for s in np.linspace(0.0, 1.0, 9)]
    if any(not np.isfinite(p) or abs(p) > 1e6 for p in probe):
        raise ContourError("zero of f_k on or near the contour")

    density = 4.0
    prev = total(density)
    while density < max_panels:
        density *= 2.0
        cur = total(density)
        n = round(cur.real)
        if round(prev.real) == n and abs(cur - n) < 0.1 and abs(prev - n) < 0.1:
            return int(n)
        prev = cur
    raise ContourError(f"argument principle did not settle: last value {prev}")


# --- assembling the spectrum -------------------------------------------------------

def initial_cutoff(bundle: CuspBundle, lambda_max: float) -> int:
    """Smallest K with 2 pi (K - alpha) a > sqrt(lambda_max) + 2."""
    target = math.sqrt(max(lambda_max, 0.0)) + 2.0
    return max(1, int(math.floor(target / (2.0 * math.pi * bundle.a) + bundle.alpha)) + 1)


def _mode_records(args):
    k, r_max, bundle, tol = args
    zs = find_mode_zeros(k, r_max, bundle, tol)
    return k, [(r, _residual(k, r, bundle)) for r in zs]


def enumerate_eigenvalues(
    bundle: CuspBundle, lambda_max: float, tol: float = 1e-10, residual_tol: float = RESIDUAL_TOL,
    workers: int = 1, verify_cutoff: bool = True, k_cutoff: int | None = None,
) -> SpectrumSlice:
    """All eigenvalues <= lambda_max, sorted by (lambda, k, j).

    The mode cutoff starts at ``initial_cutoff`` (or ``k_cutoff`` when given)
    and grows while an argument-principle probe finds zeros in the first
    excluded mode.  Records for k != 0 appear twice, once for each sign of k.
    """
    lambda_max = float(lambda_max)
    notes = []
    kernel = bundle.alpha != 0.0 and lambda_max >= 0.0
    records = []
    if kernel:
        if abs(char_f0(0.5j, bundle)) > 1e-8 * kernel_scale(bundle):
            raise ArithmeticError("f_0(i/2) does not vanish")
        records.append(EigenRecord(0, 0, 0.0, 0.0, 0.0))
    if lambda_max <= 0.25:
        return SpectrumSlice(bundle, lambda_max, tuple(records), kernel, 0, tol, tuple(notes))
    r_max = math.sqrt(lambda_max - 0.25)
    K = initial_cutoff(bundle, lambda_max) if k_cutoff is None else int(k_cutoff)
    if verify_cutoff:
        while True:
            if K > K_HARD_LIMIT:
                raise CutoffError("cutoff verification exceeded the hard limit")
            try:
                probe = argument_principle_count(K + 1, (0.0, r_max, -0.5, 0.5), bundle)
            except ContourError:
                probe = len(find_mode_zeros(K + 1, r_max, bundle, tol))
            if probe == 0:
                break
            K += 1
    modes = [k for k in range(0, K + 1) if bundle.has_mode(k)]
    jobs = [(k, r_max, bundle, tol) for k in modes]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_mode_records, jobs))
    else:
        results = [_mode_records(j) for j in jobs]
    results.sort(key=lambda kr: kr[0])
    for k, zs in results:
        for j, (r, res) in enumerate(zs, start=1):
            if res > residual_tol:
                raise ArithmeticError(f"residual {res:.2e} above tolerance at k={k}, r={r}")
            lam = 0.25 + r * r
            records.append(EigenRecord(k, j, r, lam, res))
            if k != 0:
                records.append(EigenRecord(-k, j, r, lam, res))
    records.sort(key=lambda rec: (rec.lam, rec.k, rec.j))
    if not bundle.localization_guaranteed:
        notes.append("a <= 1/(4 pi (1 - alpha)): realness of zeros not guaranteed")
    return SpectrumSlice(bundle, lambda_max, tuple(records), kernel, K, tol, tuple(notes))


def counting_function(sl: SpectrumSlice, lam: float) -> int:
    """N(lambda) = number of eigenvalues <= lambda, with multiplicity."""
    if lam > sl.lambda_max:
        raise RangeError(f"lambda = {lam} beyond the slice maximum {sl.lambda_max}")
    return int(np.searchsorted(sl.eigenvalues, lam, side="right"))


def weyl_ratio(sl: SpectrumSlice, lam: float) -> float:
    return counting_function(sl, lam) / lam

"""Bessel functions of the first kind, their zeros, and Gauss-Legendre rules.

Everything downstream that touches a disk spectrum runs through this module,
so the tolerances here are fixed rather than configurable: ``bessel_j`` is
good to about 1e-13 absolute for x <= 200, n <= 120, and zeros are polished
to full double precision.

Evaluation strategy: ascending power series for small arguments, Miller's
downward recurrence with sum normalization otherwise.  Zeros are bracketed by
a McMahon expansion for order 0 and by zero interlacing
``j(n-1,k) < j(n,k) < j(n-1,k+1)`` for higher orders, then bisected and
Newton-polished; both stages are monotone, so no iterate can escape its
bracket.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

# Power series below this argument, Miller's algorithm above.  At x = 8 the
# largest series term is ~1e2, so cancellation costs at most ~2 digits.
_SERIES_CUTOFF = 8.0

# Extra downward-recurrence start margin beyond max(n, x).  40 + 2*sqrt keeps
# the Miller normalization error below ~1e-14 absolute up to x = 200.
_MILLER_MARGIN = 40


def _series_j(n: int, x: float) -> float:
    half = 0.5 * x
    if n > 0:
        lead = n * math.log(half) - math.lgamma(n + 1)
        if lead < -745.0:  # underflows double precision; J_n(x) ~ 0 here
            return 0.0
        term = math.exp(lead)
    else:
        term = 1.0
    total = term
    q = -(half * half)
    for k in range(1, 400):
        term *= q / (k * (n + k))
        total += term
        if abs(term) <= 1e-18 * max(abs(total), 1e-280):
            break
    return total


def _miller_j(n: int, x: float) -> float:
    top = max(n, x)
    m = int(top) + _MILLER_MARGIN + int(2.0 * math.sqrt(top))
    if m % 2 == 1:
        m += 1
    jp = 0.0
    jc = 1e-300
    target = 0.0
    norm = 0.0
    for k in range(m, 0, -1):
        jm = (2.0 * k / x) * jc - jp
        jp = jc
        jc = jm
        if k - 1 == n:
            target = jc
        if (k - 1) % 2 == 0:
            norm += jc if k - 1 == 0 else 2.0 * jc
        if abs(jc) > 1e250:  # rescale to dodge overflow; ratios are invariant
            jc *= 1e-250
            jp *= 1e-250
            target *= 1e-250
            norm *= 1e-250
    return target / norm


def _miller_j_array(n: int, x: np.ndarray) -> np.ndarray:
    top = max(n, float(x.max()))
    m = int(top) + _MILLER_MARGIN + int(2.0 * math.sqrt(top))
    if m % 2 == 1:
        m += 1
    jp = np.zeros_like(x)
    jc = np.full_like(x, 1e-300)
    target = np.zeros_like(x)
    norm = np.zeros_like(x)
    inv_x = 1.0 / x
    for k in range(m, 0, -1):
        jm = (2.0 * k) * inv_x * jc - jp
        jp = jc
        jc = jm
        if k - 1 == n:
            target = jc.copy()
        if (k - 1) % 2 == 0:
            norm += jc if k - 1 == 0 else 2.0 * jc
        big = np.abs(jc) > 1e250
        if big.any():
            scale = np.where(big, 1e-250, 1.0)
            jc = jc * scale
            jp = jp * scale
            target = target * scale
            norm = norm * scale
    return target / norm


def _bessel_j_scalar(n: int, x: float) -> float:
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    if x <= _SERIES_CUTOFF:
        return _series_j(n, x)
    return _miller_j(n, x)


def bessel_j(n: int, x):
    """J_n(x) for integer order n >= 0 and x >= 0 (scalar or array).

    Negative orders are reflected via J_{-n} = (-1)^n J_n so that internal
    derivative formulas can use them, but callers should pass n >= 0.
    """
    sign = 1.0
    if n < 0:
        n = -n
        sign = -1.0 if n % 2 else 1.0
    if np.isscalar(x):
        xf = float(x)
        if xf < 0.0:
            raise ValueError("bessel_j requires x >= 0")
        return sign * _bessel_j_scalar(n, xf)
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        return x.copy()
    if (x < 0.0).any():
        raise ValueError("bessel_j requires x >= 0")
    out = np.empty_like(x)
    small = x <= _SERIES_CUTOFF
    if small.any():
        out[small] = [_bessel_j_scalar(n, float(v)) for v in x[small]]
    if (~small).any():
        out[~small] = _miller_j_array(n, x[~small])
    return sign * out


def bessel_j_deriv(n: int, x):
    """J_n'(x) via the two-sided recurrence (J_{n-1} - J_{n+1}) / 2."""
    if n == 0:
        return -bessel_j(1, x)
    return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x))


def bessel_j_second_deriv(n: int, x):
    """J_n''(x) by applying the derivative recurrence twice.

    Deliberately avoids the Bessel ODE, so eigen-equation residual tests that
    use this are not tautological.
    """
    return 0.25 * (bessel_j(n - 2, x) - 2.0 * bessel_j(n, x) + bessel_j(n + 2, x))


# --- zeros ---------------------------------------------------------------

_zero_lock = threading.Lock()
_zero_table: dict[int, list[float]] = {}


def _mcmahon_j0(k: int) -> float:
    b = (k - 0.25) * math.pi
    return b + 1.0 / (8.0 * b) - 124.0 / (3.0 * (8.0 * b) ** 3)


def _refine_zero(n: int, lo: float, hi: float) -> float:
    flo = _bessel_j_scalar(n, lo)
    if flo == 0.0:
        return lo
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        fm = _bessel_j_scalar(n, mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    z = 0.5 * (lo + hi)
    for _ in range(4):
        f = _bessel_j_scalar(n, z)
        d = (-_bessel_j_scalar(1, z) if n == 0
             else 0.5 * (_bessel_j_scalar(n - 1, z) - _bessel_j_scalar(n + 1, z)))
        if d == 0.0:
            break
        z_new = z - f / d
        if not (lo <= z_new <= hi):
            break
        z = z_new
    return z


def _extend_zeros(n: int, count: int) -> None:
    zs = _zero_table.setdefault(n, [])
    while len(zs) < count:
        k = len(zs) + 1
        if n == 0:
            x0 = _mcmahon_j0(k)
            lo, hi = x0 - 0.4, x0 + 0.4
            while _bessel_j_scalar(0, max(lo, 1e-8)) * _bessel_j_scalar(0, hi) > 0.0:
                lo -= 0.2
                hi += 0.2
            zs.append(_refine_zero(0, max(lo, 1e-8), hi))
        else:
            _extend_zeros(n - 1, k + 1)
            prev = _zero_table[n - 1]
            zs.append(_refine_zero(n, prev[k - 1], prev[k]))


def bessel_zero(n: int, k: int) -> float:
    """k-th positive zero j_{n,k} of J_n (k >= 1), cached across calls."""
    if n < 0 or k < 1:
        raise ValueError("bessel_zero requires n >= 0 and k >= 1")
    with _zero_lock:
        _extend_zeros(n, k)
        return _zero_table[n][k - 1]


def bessel_zeros_below(n: int, xmax: float) -> list[float]:
    """All zeros of J_n in (0, xmax), ascending."""
    out = []
    k = 1
    while True:
        z = bessel_zero(n, k)
        if z >= xmax:
            return out
        out.append(z)
        k += 1


def all_zeros_below(xmax: float) -> list[tuple[float, int, int]]:
    """Every (j_{n,k}, n, k) with j_{n,k} < xmax, sorted by the zero value.

    Terminates because j_{n,1} > n.
    """
    rows = []
    n = 0
    while True:
        if bessel_zero(n, 1) >= xmax and n > 0:
            break
        ks = bessel_zeros_below(n, xmax)
        if not ks and n > 0:
            break
        rows.extend((z, n, k) for k, z in enumerate(ks, start=1))
        n += 1
    rows.sort()
    return rows


# --- quadrature ----------------------------------------------------------


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes/weights on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def mapped(self, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights transplanted to [a, b]."""
        half = 0.5 * (b - a)
        return a + half * (self.nodes + 1.0), half * self.weights


def gauss_legendre(m: int) -> QuadratureRule:
    """m-point Gauss-Legendre rule; exact for polynomials of degree 2m - 1."""
    if not 1 <= m <= 512:
        raise ValueError("gauss_legendre supports 1 <= m <= 512")
    nodes, weights = np.polynomial.legendre.leggauss(m)
    return QuadratureRule(nodes=nodes, weights=weights, order=m)

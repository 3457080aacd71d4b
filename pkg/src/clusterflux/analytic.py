"""Closed-form Dirichlet eigenpairs on disks and rectangles.

Disk modes are c * J_n(lambda r) * {cos, sin}(n theta) with lambda = j_{n,k}/R;
rectangle modes are products of sines.  Real cos/sin pairs keep all linear
algebra real, so every disk eigenvalue with n >= 1 carries multiplicity 2.  Normal-derivative traces are stored as a single Fourier
coefficient on circles and as per-side Gauss-node values on rectangles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Disk, DomainSpec, Rectangle, contains
from .specfun import (all_zeros_below, bessel_j, bessel_j_deriv,
                      bessel_j_second_deriv, gauss_legendre)

# Fixed per-domain quadrature defaults: chosen so orthonormality of the
# analytic modes holds to 1e-8 up to lambda = 60.
DISK_RADIAL_NODES = 128
DISK_ANGULAR_NODES = 256
RECT_NODES_PER_AXIS = 96
RECT_NODES_PER_SIDE = 96


@dataclass(frozen=True)
class EigenPair:
    """One L2-normalized Dirichlet eigenfunction.

    mode is (n, k, parity) on a disk (angular order, radial index,
    'cos' | 'sin') and (m, n) on a rectangle.
    """

    lam: float
    domain: DomainSpec
    mode: tuple
    norm_const: float

    @property
    def lam_sq(self) -> float:
        return self.lam * self.lam

    def sort_key(self):
        if isinstance(self.domain, Disk):
            n, k, parity = self.mode
            return (self.lam, n, k, 0 if parity == "cos" else 1)
        return (self.lam, *self.mode)


@dataclass(frozen=True)
class AnalyticSpectrum:
    """All eigenpairs with lam < cutoff, ascending."""

    domain: DomainSpec
    cutoff: float
    pairs: tuple[EigenPair, ...]

    def window(self, lam: float, s: float) -> list[EigenPair]:
        """Members with lam_j in the half-open band [lam, lam + s)."""
        if lam + s > self.cutoff + 1e-12:
            raise ValueError("window extends beyond the spectrum cutoff")
        return [p for p in self.pairs if lam <= p.lam < lam + s]

    def below(self, lam: float, inclusive: bool = True) -> list[EigenPair]:
        """Members of the projector window (0, lam] (or (0, lam) if not inclusive)."""
        if lam > self.cutoff + 1e-12:
            raise ValueError("requested range exceeds the spectrum cutoff")
        if inclusive:
            return [p for p in self.pairs if p.lam <= lam]
        return [p for p in self.pairs if p.lam < lam]


def disk_pair(spec: Disk, n: int, k: int, parity: str, zero: float | None = None) -> EigenPair:
    from .specfun import bessel_zero
    if parity not in ("cos", "sin"):
        raise ValueError("parity must be 'cos' or 'sin'")
    if parity == "sin" and n == 0:
        raise ValueError("sin parity requires n >= 1")
    j = bessel_zero(n, k) if zero is None else zero
    R = spec.radius
    # ||e||^2 = c^2 * (pi or 2pi) * R^2 * J_{n+1}(j)^2 / 2
    ang = 2.0 * math.pi if n == 0 else math.pi
    c = math.sqrt(2.0 / (ang * R * R)) / abs(bessel_j(n + 1, j))
    return EigenPair(lam=j / R, domain=spec, mode=(n, k, parity), norm_const=c)


def rect_pair(spec: Rectangle, m: int, n: int) -> EigenPair:
    lam = math.pi * math.sqrt((m / spec.a) ** 2 + (n / spec.b) ** 2)
    c = 2.0 / math.sqrt(spec.a * spec.b)
    return EigenPair(lam=lam, domain=spec, mode=(m, n), norm_const=c)


def eigenpairs_below(spec: DomainSpec, cutoff: float) -> list[EigenPair]:
    """All eigenpairs with lam_j < cutoff (strict), sorted ascending.

    Ties are broken by the lexicographic mode descriptor so that cluster
    membership is reproducible.
    """
    if isinstance(spec, Rectangle):
        pairs = []
        m = 1
        while math.pi * m / spec.a < cutoff:
            n = 1
            while True:
                p = rect_pair(spec, m, n)
                if p.lam >= cutoff:
                    break
                pairs.append(p)
                n += 1
            m += 1
    elif isinstance(spec, Disk):
        pairs = []
        for z, n, k in all_zeros_below(cutoff * spec.radius):
            pairs.append(disk_pair(spec, n, k, "cos", zero=z))
            if n >= 1:
                pairs.append(disk_pair(spec, n, k, "sin", zero=z))
    else:
        raise ValueError("analytic spectra exist only for disks and rectangles; "
                         "use the FEM solver for polygons")
    pairs.sort(key=lambda p: p.sort_key())
    return pairs


def build_spectrum(spec: DomainSpec, cutoff: float) -> AnalyticSpectrum:
    return AnalyticSpectrum(domain=spec, cutoff=cutoff,
                            pairs=tuple(eigenpairs_below(spec, cutoff)))


def weyl_count(spec: DomainSpec, lam: float) -> float:
    """Two-term Weyl prediction (area * lam^2 - perimeter * lam) / (4 pi)."""
    from .geometry import area, boundary_length
    return (area(spec) * lam * lam - boundary_length(spec) * lam) / (4.0 * math.pi)


# --- pointwise evaluation ---------------------------------------------------


def _disk_polar(spec: Disk, points: np.ndarray):
    d = points - np.asarray(spec.center)
    r = np.hypot(d[..., 0], d[..., 1])
    theta = np.arctan2(d[..., 1], d[..., 0])
    return r, theta


def _angular(n: int, parity: str, theta):
    if parity == "cos":
        return np.cos(n * theta) if n else np.ones_like(theta)
    return np.sin(n * theta)


def evaluate(pair: EigenPair, points) -> np.ndarray:
    """Eigenfunction values at points inside the closed domain."""
    pts = np.atleast_2d(np.asarray(points, float))
    if not contains(pair.domain, pts, tol=1e-10).all():
        raise ValueError("point outside domain")
    if isinstance(pair.domain, Disk):
        n, _, parity = pair.mode
        r, theta = _disk_polar(pair.domain, pts)
        vals = pair.norm_const * bessel_j(n, pair.lam * r) * _angular(n, parity, theta)
    else:
        m, n = pair.mode
        spec = pair.domain
        x = pts[:, 0] - spec.corner[0]
        y = pts[:, 1] - spec.corner[1]
        vals = pair.norm_const * np.sin(m * math.pi * x / spec.a) * np.sin(n * math.pi * y / spec.b)
    return vals if np.asarray(points).ndim > 1 else float(vals[0])


def gradient(pair: EigenPair, points) -> np.ndarray:
    """Cartesian gradient at interior points."""
    pts = np.atleast_2d(np.asarray(points, float))
    if not contains(pair.domain, pts, tol=1e-10).all():
        raise ValueError("point outside domain")
    if isinstance(pair.domain, Rectangle):
        m, n = pair.mode
        spec = pair.domain
        x = pts[:, 0] - spec.corner[0]
        y = pts[:, 1] - spec.corner[1]
        km, kn = m * math.pi / spec.a, n * math.pi / spec.b
        gx = pair.norm_const * km * np.cos(km * x) * np.sin(kn * y)
        gy = pair.norm_const * kn * np.sin(km * x) * np.cos(kn * y)
        return np.stack([gx, gy], axis=-1)
    n, _, parity = pair.mode
    r, theta = _disk_polar(pair.domain, pts)
    lam, c = pair.lam, pair.norm_const
    dr = c * lam * bessel_j_deriv(n, lam * r) * _angular(n, parity, theta)
    # (1/r) d/dtheta, with the removable singularity at r = 0 taken by limit
    ang_d = (-n * np.sin(n * theta)) if parity == "cos" else (n * np.cos(n * theta))
    with np.errstate(divide="ignore", invalid="ignore"):
        j_over_r = np.where(r > 1e-9, bessel_j(n, lam * r) / np.where(r > 1e-9, r, 1.0),
                            lam * 0.5 if n == 1 else 0.0)
    dt_over_r = c * j_over_r * ang_d
    er = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    et = np.stack([-np.sin(theta), np.cos(theta)], axis=-1)
    return dr[..., None] * er + dt_over_r[..., None] * et


def laplacian(pair: EigenPair, points) -> np.ndarray:
    """Laplacian by direct analytic differentiation (no eigen-equation shortcut)."""
    pts = np.atleast_2d(np.asarray(points, float))
    if isinstance(pair.domain, Rectangle):
        m, n = pair.mode
        spec = pair.domain
        km, kn = m * math.pi / spec.a, n * math.pi / spec.b
        return -(km * km + kn * kn) * evaluate(pair, pts)
    n, _, parity = pair.mode
    r, theta = _disk_polar(pair.domain, pts)
    if (r < 1e-6).any():
        raise ValueError("laplacian evaluation too close to the disk center")
    lam, c = pair.lam, pair.norm_const
    x = lam * r
    radial = lam * lam * bessel_j_second_deriv(n, x) + lam * bessel_j_deriv(n, x) / r \
        - (n * n / (r * r)) * bessel_j(n, x)
    return c * radial * _angular(n, parity, theta)


# --- boundary traces --------------------------------------------------------


@dataclass(frozen=True)
class BoundaryTrace:
    """Normal-derivative trace on the domain boundary.

    kind 'fourier' (circles): cos_coeffs[n] and sin_coeffs[n] index angular
    order n directly; the boundary measure is radius * dtheta.
    kind 'nodal' (polygonal boundaries): values at quadrature points with
    weights that already include the arc measure.
    """

    kind: str
    cos_coeffs: np.ndarray | None = None
    sin_coeffs: np.ndarray | None = None
    radius: float = 1.0
    points: np.ndarray | None = None
    normals: np.ndarray | None = None
    values: np.ndarray | None = None
    weights: np.ndarray | None = None


def normal_trace(pair: EigenPair, nodes_per_side: int = RECT_NODES_PER_SIDE) -> BoundaryTrace:
    """Exact outward normal-derivative trace of the eigenfunction."""
    if isinstance(pair.domain, Disk):
        n, k, parity = pair.mode
        j = pair.lam * pair.domain.radius
        amp = pair.norm_const * pair.lam * bessel_j_deriv(n, j)
        a = np.zeros(n + 1)
        b = np.zeros(n + 1)
        if parity == "cos":
            a[n] = amp
        else:
            b[n] = amp
        return BoundaryTrace(kind="fourier", cos_coeffs=a, sin_coeffs=b,
                             radius=pair.domain.radius)
    spec = pair.domain
    m, n = pair.mode
    km, kn = m * math.pi / spec.a, n * math.pi / spec.b
    c = pair.norm_const
    rule = gauss_legendre(nodes_per_side)
    pts, nrms, vals, wts = [], [], [], []
    x0, y0 = spec.corner

    def add_side(p0, p1, normal, func):
        t, w = rule.mapped(0.0, 1.0)
        p0 = np.asarray(p0)
        p1 = np.asarray(p1)
        xy = p0 + t[:, None] * (p1 - p0)
        length = np.linalg.norm(p1 - p0)
        pts.append(xy)
        nrms.append(np.tile(normal, (len(t), 1)))
        vals.append(func(xy))
        wts.append(w * length)

    # CCW: bottom, right, top, left; d_nu e = grad e . nu on each side
    add_side((x0, y0), (x0 + spec.a, y0), (0.0, -1.0),
             lambda xy: -c * kn * np.sin(km * (xy[:, 0] - x0)))
    add_side((x0 + spec.a, y0), (x0 + spec.a, y0 + spec.b), (1.0, 0.0),
             lambda xy: c * km * math.cos(m * math.pi) * np.sin(kn * (xy[:, 1] - y0)))
    add_side((x0 + spec.a, y0 + spec.b), (x0, y0 + spec.b), (0.0, 1.0),
             lambda xy: c * kn * math.cos(n * math.pi) * np.sin(km * (xy[:, 0] - x0)))
    add_side((x0, y0 + spec.b), (x0, y0), (-1.0, 0.0),
             lambda xy: -c * km * np.sin(kn * (xy[:, 1] - y0)))
    return BoundaryTrace(kind="nodal", points=np.vstack(pts), normals=np.vstack(nrms),
                         values=np.concatenate(vals), weights=np.concatenate(wts))


def combine_traces(traces: list[BoundaryTrace], coeffs: np.ndarray) -> BoundaryTrace:
    """Linear combination sum_j coeffs[j] * traces[j]."""
    if not traces:
        return BoundaryTrace(kind="fourier", cos_coeffs=np.zeros(1),
                             sin_coeffs=np.zeros(1), radius=1.0)
    if traces[0].kind == "fourier":
        nmax = max(len(t.cos_coeffs) for t in traces)
        a = np.zeros(nmax)
        b = np.zeros(nmax)
        for c, t in zip(coeffs, traces):
            a[:len(t.cos_coeffs)] += c * t.cos_coeffs
            b[:len(t.sin_coeffs)] += c * t.sin_coeffs
        return BoundaryTrace(kind="fourier", cos_coeffs=a, sin_coeffs=b,
                             radius=traces[0].radius)
    vals = sum(c * t.values for c, t in zip(coeffs, traces))
    t0 = traces[0]
    return BoundaryTrace(kind="nodal", points=t0.points, normals=t0.normals,
                         values=vals, weights=t0.weights)


def trace_l2(trace: BoundaryTrace) -> float:
    """L2(boundary) norm of the trace."""
    if trace.kind == "fourier":
        a, b = trace.cos_coeffs, trace.sin_coeffs
        total = 2.0 * math.pi * a[0] ** 2 + math.pi * float((a[1:] ** 2).sum() + (b[1:] ** 2).sum())
        return math.sqrt(trace.radius * total)
    return math.sqrt(float(trace.weights @ trace.values ** 2))


def trace_hk(trace: BoundaryTrace, k: float) -> float:
    """Sobolev H^k norm with weight (1 + n^2)^k per angular order (circles only)."""
    if trace.kind != "fourier":
        raise ValueError("H^k norms require the Fourier trace representation")
    a, b = trace.cos_coeffs, trace.sin_coeffs
    orders = np.arange(len(a))
    w = (1.0 + orders.astype(float) ** 2) ** k
    total = 2.0 * math.pi * w[0] * a[0] ** 2 \
        + math.pi * float((w[1:] * (a[1:] ** 2 + b[1:] ** 2)).sum())
    return math.sqrt(trace.radius * total)


def trace_at_angle(trace: BoundaryTrace, theta) -> np.ndarray:
    """Evaluate a Fourier trace at boundary angle(s) theta."""
    if trace.kind != "fourier":
        raise ValueError("pointwise angle evaluation requires a Fourier trace")
    th = np.atleast_1d(np.asarray(theta, float))
    orders = np.arange(len(trace.cos_coeffs))
    mat_c = np.cos(np.outer(th, orders))
    mat_s = np.sin(np.outer(th, orders))
    out = mat_c @ trace.cos_coeffs + mat_s @ trace.sin_coeffs
    return out if np.ndim(theta) else float(out[0])


def normal_deriv_at(pair: EigenPair, point) -> float:
    """d_nu e_j at a boundary point, evaluated from the closed form."""
    p = np.asarray(point, float)
    if isinstance(pair.domain, Disk):
        spec = pair.domain
        d = p - np.asarray(spec.center)
        r = float(np.hypot(d[0], d[1]))
        if abs(r - spec.radius) > 1e-10:
            raise ValueError("point is not on the disk boundary")
        n, _, parity = pair.mode
        j = pair.lam * spec.radius
        amp = pair.norm_const * pair.lam * bessel_j_deriv(n, j)
        theta = math.atan2(d[1], d[0])
        return amp * (math.cos(n * theta) if parity == "cos" else math.sin(n * theta))
    spec = pair.domain
    m, n = pair.mode
    x = float(p[0] - spec.corner[0])
    y = float(p[1] - spec.corner[1])
    km, kn = m * math.pi / spec.a, n * math.pi / spec.b
    c = pair.norm_const
    if abs(y) <= 1e-10:
        return -c * kn * math.sin(km * x)
    if abs(y - spec.b) <= 1e-10:
        return c * kn * math.cos(n * math.pi) * math.sin(km * x)
    if abs(x) <= 1e-10:
        return -c * km * math.sin(kn * y)
    if abs(x - spec.a) <= 1e-10:
        return c * km * math.cos(m * math.pi) * math.sin(kn * y)
    raise ValueError("point is not on the rectangle boundary")


def spectrum_csv_rows(pairs: list[EigenPair]) -> list[str]:
    """CSV body (no header) for the spectrum export."""
    rows = []
    for p in pairs:
        if isinstance(p.domain, Disk):
            n, k, parity = p.mode
            rows.append(f"{p.lam!r},{n},{k},{parity},{p.norm_const!r}")
        else:
            m, n = p.mode
            rows.append(f"{p.lam!r},{m},{n},,{p.norm_const!r}")
    return rows

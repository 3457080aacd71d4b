"""Tensor quadrature grids over disks and rectangles.

Shared by the cluster projector, the Rellich checks, and the test oracles.
Grids are structured (radial x angular, or x cross y) so eigenfunctions can
be evaluated factor-by-factor; the full weight arrays already contain the
area measure (r dr dtheta, dx dy).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import (DISK_ANGULAR_NODES, DISK_RADIAL_NODES,
                       RECT_NODES_PER_AXIS, EigenPair, _angular)
from .geometry import Disk, DomainSpec, Rectangle
from .specfun import bessel_j, bessel_j_deriv, gauss_legendre


@dataclass(frozen=True)
class DiskGrid:
    spec: Disk
    r: np.ndarray        # (nr,) radii in (0, R)
    theta: np.ndarray    # (nt,) uniform angles
    wr: np.ndarray       # (nr,) radial weights including the r factor
    wtheta: float        # uniform angular weight (2 pi / nt)

    @property
    def weights(self) -> np.ndarray:
        return np.outer(self.wr, np.full_like(self.theta, self.wtheta))

    def points(self) -> np.ndarray:
        cx, cy = self.spec.center
        X = cx + np.outer(self.r, np.cos(self.theta))
        Y = cy + np.outer(self.r, np.sin(self.theta))
        return np.stack([X, Y], axis=-1)


@dataclass(frozen=True)
class RectGrid:
    spec: Rectangle
    x: np.ndarray
    y: np.ndarray
    wx: np.ndarray
    wy: np.ndarray

    @property
    def weights(self) -> np.ndarray:
        return np.outer(self.wx, self.wy)

    def points(self) -> np.ndarray:
        X, Y = np.meshgrid(self.x, self.y, indexing="ij")
        return np.stack([X, Y], axis=-1)


def disk_grid(spec: Disk, nr: int = DISK_RADIAL_NODES,
              ntheta: int = DISK_ANGULAR_NODES) -> DiskGrid:
    rule = gauss_legendre(nr)
    r, w = rule.mapped(0.0, spec.radius)
    theta = 2.0 * math.pi * np.arange(ntheta) / ntheta
    return DiskGrid(spec=spec, r=r, theta=theta, wr=w * r, wtheta=2.0 * math.pi / ntheta)


def rect_grid(spec: Rectangle, nx: int = RECT_NODES_PER_AXIS,
              ny: int = RECT_NODES_PER_AXIS) -> RectGrid:
    rx = gauss_legendre(nx).mapped(spec.corner[0], spec.corner[0] + spec.a)
    ry = gauss_legendre(ny).mapped(spec.corner[1], spec.corner[1] + spec.b)
    return RectGrid(spec=spec, x=rx[0], y=ry[0], wx=rx[1], wy=ry[1])


def domain_grid(spec: DomainSpec, **kw):
    if isinstance(spec, Disk):
        return disk_grid(spec, **kw)
    if isinstance(spec, Rectangle):
        return rect_grid(spec, **kw)
    raise ValueError("tensor grids exist only for disks and rectangles")


def pair_on_grid(pair: EigenPair, grid) -> np.ndarray:
    """Eigenfunction values on the structured grid, shape (n1, n2)."""
    if isinstance(grid, DiskGrid):
        n, _, parity = pair.mode
        radial = pair.norm_const * bessel_j(n, pair.lam * grid.r)
        return np.outer(radial, _angular(n, parity, grid.theta))
    m, n = pair.mode
    spec = grid.spec
    fx = np.sin(m * math.pi * (grid.x - spec.corner[0]) / spec.a)
    fy = np.sin(n * math.pi * (grid.y - spec.corner[1]) / spec.b)
    return pair.norm_const * np.outer(fx, fy)


def pair_derivs_on_grid(pair: EigenPair, grid):
    """(values, first-direction derivative, second-direction derivative).

    Disk: (u, du/dr, (1/r) du/dtheta); rectangle: (u, du/dx, du/dy).
    """
    if isinstance(grid, DiskGrid):
        n, _, parity = pair.mode
        c, lam = pair.norm_const, pair.lam
        rad = c * bessel_j(n, lam * grid.r)
        rad_d = c * lam * bessel_j_deriv(n, lam * grid.r)
        ang = _angular(n, parity, grid.theta)
        ang_d = (-n * np.sin(n * grid.theta)) if parity == "cos" \
            else (n * np.cos(n * grid.theta))
        u = np.outer(rad, ang)
        du_dr = np.outer(rad_d, ang)
        du_dt_over_r = np.outer(rad / grid.r, ang_d)
        return u, du_dr, du_dt_over_r
    m, n = pair.mode
    spec = grid.spec
    km, kn = m * math.pi / spec.a, n * math.pi / spec.b
    sx = np.sin(km * (grid.x - spec.corner[0]))
    cx = np.cos(km * (grid.x - spec.corner[0]))
    sy = np.sin(kn * (grid.y - spec.corner[1]))
    cy = np.cos(kn * (grid.y - spec.corner[1]))
    c = pair.norm_const
    return c * np.outer(sx, sy), c * km * np.outer(cx, sy), c * kn * np.outer(sx, cy)


def integrate(grid, values: np.ndarray) -> float:
    """Integral of grid-sampled values over the domain."""
    return float((grid.weights * values).sum())

"""Rellich multiplier identity with A = (x - origin) . grad on Euclidean domains.

The identity

    int_Y d_nu(u) Au dsigma = <u, [-Lap, A] u> + <(-Lap - lam^2) u, Au>
                              - <u, A (-Lap - lam^2) u>

holds for any differential operator A; with the radial multiplier the first
right-hand term is 2 ||grad u||^2, and on the boundary Au reduces to
(x . nu) d_nu(u) because the tangential derivative of a Dirichlet function
vanishes.  The left side and the two perturbation terms are computed by
quadrature; the commutator term is exact in coefficients.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import cluster as cl
from .analytic import trace_at_angle
from .cluster import SpectralCluster
from .geometry import Disk, Rectangle, centroid, diameter
from .quadrature import disk_grid, domain_grid, pair_derivs_on_grid, rect_grid

ANALYTIC_RESIDUAL_TOL = 1e-7   # times lam^2 ||u||^2
FEM_RESIDUAL_TOL = 5e-2        # times lam^2 ||u||^2


@dataclass(frozen=True)
class RellichReport:
    lhs: float
    t1: float
    t2: float
    t3: float
    residual: float
    origin: tuple[float, float]
    quadrature: dict
    valid: bool
    tolerance: float

    def to_json(self) -> str:
        return json.dumps({
            "lhs": self.lhs, "t1": self.t1, "t2": self.t2, "t3": self.t3,
            "residual": self.residual, "origin": list(self.origin),
            "quadrature": self.quadrature, "valid": self.valid,
            "tolerance": self.tolerance,
        }, indent=2)


def commutator_term(u: SpectralCluster) -> float:
    """<u, [-Lap, A] u> = 2 ||grad u||^2, exact in coefficient space."""
    return 2.0 * cl.grad_norm(u) ** 2


def multiplier_lhs(u: SpectralCluster, origin=None) -> float:
    """int_Y ((x - origin) . nu) (d_nu u)^2 dsigma by boundary quadrature."""
    if u.is_empty:
        return 0.0
    if _is_fem(u):
        from . import fem
        return fem.rellich_boundary_term(u, origin)
    domain = u.spectrum.domain
    o = centroid(domain) if origin is None else np.asarray(origin, float)
    trace = cl.normal_trace(u)
    if isinstance(domain, Disk):
        R = domain.radius
        ntheta = _disk_boundary_nodes(u)
        theta = 2.0 * math.pi * np.arange(ntheta) / ntheta
        psi = trace_at_angle(trace, theta)
        oo = o - np.asarray(domain.center)
        xnu = R - (oo[0] * np.cos(theta) + oo[1] * np.sin(theta))
        return float((xnu * psi ** 2).sum() * (2.0 * math.pi / ntheta) * R)
    xnu = ((trace.points - o) * trace.normals).sum(axis=1)
    return float((trace.weights * xnu * trace.values ** 2).sum())


def lower_bound_rhs(u: SpectralCluster) -> float:
    """Certified lower value (2 lam^2 - 2 R_M s (lam + s)^2) ||u||^2."""
    R_M = diameter(u.spectrum.domain)
    lam, s = u.lam, u.s
    return (2.0 * lam ** 2 - 2.0 * R_M * s * (lam + s) ** 2) * cl.norm_l2(u) ** 2


def rellich_check(u: SpectralCluster, origin=None, tol: float | None = None) -> RellichReport:
    """Verify the multiplier identity for one cluster; never a silent pass."""
    domain = u.spectrum.domain
    o = centroid(domain) if origin is None else np.asarray(origin, float)
    fem_path = _is_fem(u)
    if tol is None:
        tol = FEM_RESIDUAL_TOL if fem_path else ANALYTIC_RESIDUAL_TOL
    if u.is_empty:
        return RellichReport(lhs=0.0, t1=0.0, t2=0.0, t3=0.0, residual=0.0,
                             origin=(float(o[0]), float(o[1])),
                             quadrature={"empty": True}, valid=True, tolerance=tol)
    t1 = commutator_term(u)
    if fem_path:
        from . import fem
        lhs = fem.rellich_boundary_term(u, origin)
        t2, t3 = fem.rellich_volume_terms(u, origin)
        quad = {"kind": "fem", "elements": int(len(u.spectrum.mesh.triangles))}
    else:
        lhs = multiplier_lhs(u, origin)
        t2, t3 = _volume_terms(u, o)
        quad = _quad_metadata(u)
    lhs, t1, t2, t3 = float(lhs), float(t1), float(t2), float(t3)
    residual = abs(lhs - (t1 + t2 + t3))
    scale = u.lam ** 2 * cl.norm_l2(u) ** 2
    valid = bool(np.isfinite([lhs, t1, t2, t3]).all() and residual <= tol * scale)
    return RellichReport(lhs=lhs, t1=t1, t2=t2, t3=t3, residual=residual,
                         origin=(float(o[0]), float(o[1])), quadrature=quad,
                         valid=valid, tolerance=float(tol * scale))


def _is_fem(u: SpectralCluster) -> bool:
    from .analytic import EigenPair
    return bool(u.members) and not isinstance(u.members[0], EigenPair)


def _disk_boundary_nodes(u: SpectralCluster) -> int:
    nmax = max((m.mode[0] for m in u.members), default=0)
    # integrand is a trig polynomial of degree <= 2 nmax + 1
    return max(256, 4 * nmax + 16)


def _quad_metadata(u: SpectralCluster) -> dict:
    domain = u.spectrum.domain
    if isinstance(domain, Disk):
        return {"kind": "disk", "radial": 128, "angular": 256,
                "boundary": _disk_boundary_nodes(u)}
    return {"kind": "rectangle", "nodes_per_axis": 96}


def _volume_terms(u: SpectralCluster, origin: np.ndarray) -> tuple[float, float]:
    """T2 = <(-Lap - lam^2) u, A u> and T3 = -<u, A (-Lap - lam^2) u>."""
    domain = u.spectrum.domain
    grid = domain_grid(domain)
    W = grid.weights
    if isinstance(domain, Disk):
        oo = origin - np.asarray(domain.center)
        cos_t, sin_t = np.cos(grid.theta), np.sin(grid.theta)
        o_er = oo[0] * cos_t + oo[1] * sin_t       # origin offset along e_r
        o_et = -oo[0] * sin_t + oo[1] * cos_t      # and along e_theta
        radial_factor = grid.r[:, None] - o_er[None, :]

        def apply_A(du_dr, du_dt_over_r):
            return radial_factor * du_dr - o_et[None, :] * du_dt_over_r
    else:
        X = grid.x[:, None] - origin[0]
        Y = grid.y[None, :] - origin[1]

        def apply_A(du_dx, du_dy):
            return X * du_dx + Y * du_dy

    vals, d1s, d2s = [], [], []
    for m in u.members:
        v, d1, d2 = pair_derivs_on_grid(m, grid)
        vals.append(v)
        d1s.append(d1)
        d2s.append(d2)
    c = u.coeffs
    u_grid = sum(ci * v for ci, v in zip(c, vals))
    Au_grid = apply_A(sum(ci * d for ci, d in zip(c, d1s)),
                      sum(ci * d for ci, d in zip(c, d2s)))
    lam2 = u.lam ** 2
    t2 = 0.0
    t3 = 0.0
    for ci, m, v, d1, d2 in zip(c, u.members, vals, d1s, d2s):
        w = (m.lam ** 2 - lam2) * ci
        if w == 0.0:
            continue
        t2 += w * float((W * v * Au_grid).sum())
        t3 -= w * float((W * u_grid * apply_A(d1, d2)).sum())
    return t2, t3

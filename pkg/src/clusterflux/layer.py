"""Boundary-layer quantities for clusters on the unit disk.

In boundary normal coordinates (theta, r) with r the distance in from the
circle, the collar data have closed forms: density k = sqrt(1 - r), curvature
potential F = (1/4)(1 - r)^-2, inverse angular metric h = (1 - r)^-2.  The
half-density v = k u satisfies

    v_rr + d_theta(h d_theta v) + lam^2 v + F v = sum (lam^2 - lam_l^2) v_l = H

member by member, which makes the layer norm L(r), the energy E(r), and the
differential inequality for L machine-checkable with Bessel evaluations only.
The collar depth is capped at delta = 1/3, well clear of the focusing center.

Note L(r) = int v^2 dtheta equals int_{Y_r} u^2 dsigma exactly on the disk:
the metric density k^2 = 1 - r is also the Jacobian of the Y_r arc measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import cluster as cl
from .analytic import _angular
from .cluster import SpectralCluster
from .geometry import Disk
from .specfun import bessel_j, bessel_j_deriv, bessel_j_second_deriv

COLLAR_DEPTH = 1.0 / 3.0


def collar_k(r):
    return np.sqrt(1.0 - np.asarray(r, float))


def collar_F(r):
    return 0.25 / (1.0 - np.asarray(r, float)) ** 2


def collar_h_inv(r):
    return 1.0 / (1.0 - np.asarray(r, float)) ** 2


@dataclass(frozen=True)
class CollarData:
    """Closed-form collar quantities sampled on an r grid."""

    r: np.ndarray
    k: np.ndarray
    F: np.ndarray
    h_inv: np.ndarray


def collar_data(r_grid) -> CollarData:
    r = np.asarray(r_grid, float)
    return CollarData(r=r, k=collar_k(r), F=collar_F(r), h_inv=collar_h_inv(r))


@dataclass(frozen=True)
class LayerProfile:
    r: np.ndarray
    L: np.ndarray
    E: np.ndarray
    lam: float
    s: float
    norm: float


def _require_unit_disk(u: SpectralCluster) -> Disk:
    domain = u.spectrum.domain
    if not isinstance(domain, Disk) or abs(domain.radius - 1.0) > 1e-12:
        raise ValueError("boundary-layer checks are defined on the unit disk")
    return domain


def _angular_nodes(u: SpectralCluster) -> np.ndarray:
    nmax = max((m.mode[0] for m in u.members), default=0)
    M = max(64, 4 * nmax + 16)
    return 2.0 * math.pi * np.arange(M) / M


def _member_radial(u: SpectralCluster, rho: np.ndarray):
    """w_l(rho) = c_l sqrt(rho) J_n(lam_l rho) and its first two rho-derivatives."""
    vals, d1, d2 = [], [], []
    sq = np.sqrt(rho)
    for m in u.members:
        n, _, _ = m.mode
        a = m.lam
        J = bessel_j(n, a * rho)
        Jp = bessel_j_deriv(n, a * rho)
        Jpp = bessel_j_second_deriv(n, a * rho)
        c = m.norm_const
        vals.append(c * sq * J)
        d1.append(c * (0.5 / sq * J + sq * a * Jp))
        d2.append(c * (-0.25 * rho ** -1.5 * J + rho ** -0.5 * a * Jp + sq * a * a * Jpp))
    return vals, d1, d2


def _check_collar_range(r) -> np.ndarray:
    r = np.atleast_1d(np.asarray(r, float))
    if (r < 0).any() or (r > COLLAR_DEPTH + 1e-12).any():
        raise ValueError(f"collar coordinate must lie in [0, {COLLAR_DEPTH}]")
    return r


def layer_norm(u: SpectralCluster, r) -> float | np.ndarray:
    """L(r) = int_{Y_r} v^2 dtheta by angular quadrature."""
    _require_unit_disk(u)
    rr = _check_collar_range(r)
    if u.is_empty:
        out = np.zeros(len(rr))
        return out if np.ndim(r) else 0.0
    theta = _angular_nodes(u)
    dtheta = 2.0 * math.pi / len(theta)
    rho = 1.0 - rr
    w, _, _ = _member_radial(u, rho)
    v = np.zeros((len(rr), len(theta)))
    for c, m, wl in zip(u.coeffs, u.members, w):
        n, _, parity = m.mode
        v += c * np.outer(wl, _angular(n, parity, theta))
    L = (v ** 2).sum(axis=1) * dtheta
    return L if np.ndim(r) else float(L[0])


def energy(u: SpectralCluster, r) -> float | np.ndarray:
    """E(r) = 1/2 int (v_r^2 + (lam^2 + F) v^2 - h (d_theta v)^2 - H v) dtheta."""
    _require_unit_disk(u)
    rr = _check_collar_range(r)
    if u.is_empty:
        out = np.zeros(len(rr))
        return out if np.ndim(r) else 0.0
    theta = _angular_nodes(u)
    dtheta = 2.0 * math.pi / len(theta)
    rho = 1.0 - rr
    w, w1, _ = _member_radial(u, rho)
    nr, nt = len(rr), len(theta)
    v = np.zeros((nr, nt))
    v_r = np.zeros((nr, nt))
    v_t = np.zeros((nr, nt))
    H = np.zeros((nr, nt))
    lam2 = u.lam ** 2
    for c, m, wl, w1l in zip(u.coeffs, u.members, w, w1):
        n, _, parity = m.mode
        ang = _angular(n, parity, theta)
        ang_d = (-n * np.sin(n * theta)) if parity == "cos" else (n * np.cos(n * theta))
        vl = np.outer(wl, ang)
        v += c * vl
        v_r += c * np.outer(-w1l, ang)  # d/dr = -d/drho
        v_t += c * np.outer(wl, ang_d)
        H += c * (lam2 - m.lam ** 2) * vl
    F = collar_F(rr)[:, None]
    h_inv = collar_h_inv(rr)[:, None]
    integrand = v_r ** 2 + (lam2 + F) * v ** 2 - h_inv * v_t ** 2 - H * v
    E = 0.5 * integrand.sum(axis=1) * dtheta
    return E if np.ndim(r) else float(E[0])


def profile(u: SpectralCluster, r_grid) -> LayerProfile:
    rr = _check_collar_range(r_grid)
    return LayerProfile(r=rr, L=np.atleast_1d(layer_norm(u, rr)),
                        E=np.atleast_1d(energy(u, rr)),
                        lam=u.lam, s=u.s, norm=cl.norm_l2(u))


def v_equation_residual(u: SpectralCluster, r, theta) -> np.ndarray:
    """Residual of the half-density equation at collar points (r, theta).

    Exact arithmetic gives zero; the evaluation uses recurrence-based second
    derivatives of J_n rather than the Bessel ODE, so this is a real check.
    """
    _require_unit_disk(u)
    rr = np.atleast_1d(np.asarray(r, float))
    tt = np.atleast_1d(np.asarray(theta, float))
    rho = 1.0 - rr
    w, _, w2 = _member_radial(u, rho)
    lam2 = u.lam ** 2
    res = np.zeros(len(rr))
    h_inv = collar_h_inv(rr)
    F = collar_F(rr)
    for c, m, wl, w2l in zip(u.coeffs, u.members, w, w2):
        n, _, parity = m.mode
        ang = _angular(n, parity, tt)
        # v_rr = +w''(rho); angular term = -h n^2 v
        res += c * ((w2l - h_inv * n * n * wl + (lam2 + F) * wl) * ang
                    - (lam2 - m.lam ** 2) * wl * ang)
    return res


def bdy_est_check(u: SpectralCluster, r_grid) -> dict:
    """Normalized boundary-layer ratio rho(r) = L(r) / (sqrt(1+s)(lam+s)^2 r^2 ||u||^2)."""
    prof = profile(u, r_grid)
    denom = math.sqrt(1.0 + u.s) * (u.lam + u.s) ** 2 * prof.norm ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        rho = np.where(prof.r > 0, prof.L / (denom * prof.r ** 2), np.nan)
    finite = rho[np.isfinite(rho)]
    return {"r": prof.r, "rho": rho,
            "max_rho": float(finite.max()) if len(finite) else 0.0,
            "lam": u.lam, "s": u.s}


def energy_bound_check(u: SpectralCluster, r_grid) -> dict:
    """Normalized energy |E(r)| / (sqrt(1+s)(lam+s)^2 ||u||^2) over the grid."""
    prof = profile(u, r_grid)
    denom = math.sqrt(1.0 + u.s) * (u.lam + u.s) ** 2 * prof.norm ** 2
    ratio = np.abs(prof.E) / denom
    return {"r": prof.r, "ratio": ratio, "max_ratio": float(ratio.max()),
            "E0": float(prof.E[0]) if len(prof.E) else 0.0,
            "lam": u.lam, "s": u.s}


def diff_ineq_from_profile(r: np.ndarray, L: np.ndarray, bound: float) -> dict:
    """Slack of L'' >= (L')^2 / L - bound via second-order central differences.

    Grid points where L < 1e-14 are excluded from the quotient (division
    guard) and noted.  A Richardson pass at twice the step estimates the
    finite-difference error.
    """
    r = np.asarray(r, float)
    L = np.asarray(L, float)
    hstep = r[1] - r[0]
    if not np.allclose(np.diff(r), hstep, rtol=1e-8):
        raise ValueError("diff-ineq check needs a uniform r grid")
    Lpp = (L[2:] - 2 * L[1:-1] + L[:-2]) / hstep ** 2
    Lp = (L[2:] - L[:-2]) / (2 * hstep)
    Lm = L[1:-1]
    guarded = Lm >= 1e-14
    with np.errstate(divide="ignore", invalid="ignore"):
        quot = np.where(guarded, Lp ** 2 / np.where(guarded, Lm, 1.0), 0.0)
    slack = Lpp - quot + bound
    # Richardson: stride-2 stencil; discrepancy estimates the h^2 error term
    Lpp2 = (L[4:] - 2 * L[2:-2] + L[:-4]) / (2 * hstep) ** 2
    fd_err = float(np.abs(Lpp2 - Lpp[1:-1]).max()) if len(Lpp2) else 0.0
    return {"slack": slack, "min_slack": float(slack[guarded].min()) if guarded.any() else 0.0,
            "excluded": int((~guarded).sum()), "fd_error_estimate": fd_err}


def diff_ineq_check(u: SpectralCluster, r_grid) -> dict:
    """Differential inequality for L with the bound constant measured from E.

    L'' = 4 int v_r^2 - 4E together with Cauchy-Schwarz gives
    L'' >= (L')^2/L - 4 E(r), so the certified constant is 4x the measured
    energy constant.
    """
    prof = profile(u, r_grid)
    denom = math.sqrt(1.0 + u.s) * (u.lam + u.s) ** 2 * prof.norm ** 2
    c_energy = float(np.abs(prof.E).max()) / denom if denom > 0 else 0.0
    bound = 4.0 * c_energy * denom
    out = diff_ineq_from_profile(prof.r, prof.L, bound)
    out.update({"lam": u.lam, "s": u.s, "energy_constant": c_energy,
                "bound": bound, "r": prof.r, "L": prof.L, "E": prof.E})
    return out


def layer_integral(u: SpectralCluster, n_points: int = 400) -> float:
    """int_0^(1/3) L(r) dr by trapezoid; bounded by ||u||^2."""
    r = np.linspace(0.0, COLLAR_DEPTH, n_points)
    return float(np.trapezoid(layer_norm(u, r), r))

"""Extremal boundary-flux ratios via boundary Gram matrices, plus the sweeps.

The trace functions d_nu(e_i) of distinct eigenfunctions are not orthogonal
on the boundary, so the extreme values of ||d_nu u|| / (lam ||u||) over a
window's span are the square roots of the extreme eigenvalues of the Gram
matrix G_ij = <d_nu e_i, d_nu e_j>_{L2(boundary)}.  Random sampling can only
bracket these from inside; the eigendecomposition is the exact answer, so
every sweep below is eigenvalue-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import analytic, cluster as cl
from .analytic import AnalyticSpectrum, EigenPair, normal_deriv_at, normal_trace
from .geometry import Disk
from .specfun import bessel_zero


@dataclass(frozen=True)
class GramMatrix:
    """G_ij = int_Y d_nu(e_i) d_nu(e_j) dsigma over a window's members."""

    matrix: np.ndarray
    lam: float
    s: float
    members: tuple[EigenPair, ...]

    def __post_init__(self):
        self.matrix.setflags(write=False)


@dataclass(frozen=True)
class RatioReport:
    lam: float
    s: float
    r_min: float
    r_max: float
    vec_min: np.ndarray
    vec_max: np.ndarray
    member_count: int


def _trace_descriptor(pair: EigenPair):
    """(angular order, parity, amplitude) for a disk trace; None otherwise."""
    if not isinstance(pair.domain, Disk):
        return None
    tr = normal_trace(pair)
    n, _, parity = pair.mode
    amp = tr.cos_coeffs[n] if parity == "cos" else tr.sin_coeffs[n]
    return n, parity, float(amp)


def gram_from_members(members: list[EigenPair], lam: float, s: float) -> GramMatrix:
    p = len(members)
    G = np.zeros((p, p))
    if p and isinstance(members[0].domain, Disk):
        R = members[0].domain.radius
        desc = [_trace_descriptor(m) for m in members]
        for i in range(p):
            ni, pi_, ai = desc[i]
            mi = 2.0 * math.pi if ni == 0 else math.pi
            for j in range(i, p):
                nj, pj, aj = desc[j]
                if ni == nj and pi_ == pj:
                    G[i, j] = G[j, i] = R * mi * ai * aj
    else:
        traces = [normal_trace(m) for m in members]
        V = np.stack([t.values for t in traces])
        W = traces[0].weights
        G = (V * W) @ V.T
        G = 0.5 * (G + G.T)
    return GramMatrix(matrix=G, lam=lam, s=s, members=tuple(members))


def boundary_gram(spectrum: AnalyticSpectrum, lam: float, s: float) -> GramMatrix:
    members = spectrum.window(lam, s)
    if not members:
        raise ValueError(f"empty window [{lam}, {lam + s})")
    return gram_from_members(members, lam, s)


def extremal_ratios(G: GramMatrix) -> RatioReport:
    """r_min, r_max of ||d_nu u|| / (lam ||u||) over the window span."""
    w, V = np.linalg.eigh(G.matrix)
    return RatioReport(
        lam=G.lam, s=G.s,
        r_min=math.sqrt(max(float(w[0]), 0.0)) / G.lam,
        r_max=math.sqrt(max(float(w[-1]), 0.0)) / G.lam,
        vec_min=V[:, 0].copy(), vec_max=V[:, -1].copy(),
        member_count=len(G.members))


def counterexample_disk(n: int, k: int, radius: float = 1.0):
    """Two consecutive same-order disk modes combined to cancel on the boundary.

    Both traces are multiples of the same cos(n theta) profile, so the 2x2
    cancellation is exact; the price is a window of width
    s* = j_{n,k+1} - j_{n,k} (slightly less than pi for large k).
    """
    spec = Disk(radius=radius)
    lam_hi = bessel_zero(n, k + 1) / radius
    spectrum = analytic.build_spectrum(spec, lam_hi * 1.001 + 1e-9)
    p1 = analytic.disk_pair(spec, n, k, "cos")
    p2 = analytic.disk_pair(spec, n, k + 1, "cos")
    a1 = _trace_descriptor(p1)[2]
    a2 = _trace_descriptor(p2)[2]
    scale = math.hypot(a1, a2)
    alpha, beta = a2 / scale, -a1 / scale
    s_star = p2.lam - p1.lam
    s = s_star * (1.0 + 1e-9) + 1e-12  # half-open window must include p2
    members = spectrum.window(p1.lam, s)
    coeffs = []
    for m in members:
        if m.mode == p1.mode:
            coeffs.append(alpha)
        elif m.mode == p2.mode:
            coeffs.append(beta)
        else:
            coeffs.append(0.0)
    u = cl.SpectralCluster(spectrum=spectrum, lam=p1.lam, s=s,
                           members=tuple(members), coeffs=np.array(coeffs))
    achieved = analytic.trace_l2(cl.normal_trace(u)) / (u.lam * cl.norm_l2(u))
    report = {
        "n": n, "k": k,
        "s_star": s_star,
        "lambda": p1.lam,
        "alpha": alpha, "beta": beta,
        "achieved_ratio": achieved,
        "norm": cl.norm_l2(u),
    }
    return u, report


# --- sweeps ----------------------------------------------------------------


def _window_sweep_rows(spectrum: AnalyticSpectrum, lam_grid, s_grid):
    rows = []
    for lam in lam_grid:
        for s in s_grid:
            members = spectrum.window(lam, s)
            row = {"lambda": float(lam), "s": float(s), "members": len(members)}
            if not members:
                row.update({"r_min": None, "r_max": None,
                            "q_upper": None, "q_lower": None})
            else:
                rep = extremal_ratios(gram_from_members(members, lam, s))
                norm = math.sqrt(1.0 + s) * (lam + s)
                row.update({
                    "r_min": rep.r_min,
                    "r_max": rep.r_max,
                    "q_upper": rep.r_max * lam / norm,
                    "q_lower": rep.r_min * lam / norm,
                })
            rows.append(row)
    return rows


def upper_sweep(spectrum: AnalyticSpectrum, lam_grid, s_grid):
    """Theorem-1 sweep: q_upper = r_max lam / (sqrt(1+s)(lam+s)) per cell."""
    return _window_sweep_rows(spectrum, lam_grid, s_grid)


def lower_sweep(spectrum: AnalyticSpectrum, lam_grid, s_grid):
    """Lower-bound sweep; r_min per cell (same schema as upper_sweep)."""
    return _window_sweep_rows(spectrum, lam_grid, s_grid)


def projector_bound(spectrum: AnalyticSpectrum, lam_grid):
    """Corollary-1 sweep over the cumulative windows (0, lam]."""
    rows = []
    for lam in lam_grid:
        members = spectrum.below(float(lam), inclusive=True)
        row = {"lambda": float(lam), "members": len(members)}
        if not members:
            row.update({"eig_max": None, "value": None})
        else:
            G = gram_from_members(members, float(lam), 0.0)
            eig_max = float(np.linalg.eigvalsh(G.matrix)[-1])
            row.update({"eig_max": eig_max,
                        "value": math.sqrt(max(eig_max, 0.0)) / float(lam) ** 1.5})
        rows.append(row)
    return rows


def hk_sweep(spectrum: AnalyticSpectrum, lam_grid, s: float, k_list):
    """H^k trace sweep on the disk.

    Reports, per (lam, k), the exact maximum of ||d_nu u||_{H^k} over unit
    clusters of the window, normalized two ways: q_hk divides by
    sqrt(1+s) (lam+s)^(k+1) (so the k = 0 column reproduces upper_sweep and a
    flat trend means the H^k estimate gains exactly one power of (lam+s) per
    derivative), and q_hk_flat divides by sqrt(1+s) (lam+s)^k.
    """
    if not isinstance(spectrum.domain, Disk):
        raise ValueError("H^k sweeps require a disk spectrum (Fourier traces)")
    rows = []
    for lam in lam_grid:
        members = spectrum.window(float(lam), s)
        for k in k_list:
            row = {"lambda": float(lam), "s": float(s), "k": float(k),
                   "members": len(members)}
            if not members:
                row.update({"hk_max": None, "q_hk": None, "q_hk_flat": None})
            else:
                G = gram_from_members(members, float(lam), s).matrix.copy()
                orders = np.array([m.mode[0] for m in members], dtype=float)
                wts = np.sqrt((1.0 + orders ** 2) ** float(k))
                Gk = G * np.outer(wts, wts)
                hk_max = math.sqrt(max(float(np.linalg.eigvalsh(Gk)[-1]), 0.0))
                base = math.sqrt(1.0 + s)
                row.update({
                    "hk_max": hk_max,
                    "q_hk": hk_max / (base * (float(lam) + s) ** (float(k) + 1.0)),
                    "q_hk_flat": hk_max / (base * (float(lam) + s) ** float(k)),
                })
            rows.append(row)
    return rows


# --- Ozawa boundary Weyl sum -------------------------------------------------


def ozawa_prediction(lam: float) -> float:
    """Leading term lam^(n+2) / ((4 pi)^(n/2) Gamma(n/2 + 2)) in dimension n = 2."""
    return lam ** 4 / (8.0 * math.pi)


def ozawa_sum(spectrum: AnalyticSpectrum, point, lam: float) -> float:
    """S(y, lam) = sum over lam_j < lam of (d_nu e_j)(y)^2.

    Requires the spectrum to be complete below lam; a truncated sum would
    silently bias the asymptotic.
    """
    if spectrum.cutoff < lam:
        raise ValueError("spectrum is truncated below the requested lambda")
    total = 0.0
    for p in spectrum.below(lam, inclusive=False):
        total += normal_deriv_at(p, point) ** 2
    return total

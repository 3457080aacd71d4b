"""Spectral clusters u = sum of e_j(f) over a frequency window [lam, lam+s).

Coefficient-space identities (Parseval, gradient energy, window-defect norms)
are exact here because the members are orthonormal; the quadrature versions
of the same quantities live in the tests as independent oracles.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import analytic
from .analytic import AnalyticSpectrum, BoundaryTrace, EigenPair, combine_traces
from .quadrature import domain_grid, integrate, pair_on_grid


@dataclass(frozen=True)
class SpectralCluster:
    """Window [lam, lam+s), member eigenpairs, and real coefficients."""

    spectrum: object            # AnalyticSpectrum or fem.DiscreteSpectrum
    lam: float
    s: float
    members: tuple
    coeffs: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        if len(self.members) != len(self.coeffs):
            raise ValueError("coefficient count must equal member count")
        np.asarray(self.coeffs).setflags(write=False)

    @property
    def member_lams(self) -> np.ndarray:
        return np.array([m.lam for m in self.members])

    @property
    def is_empty(self) -> bool:
        return len(self.members) == 0


def assemble(spectrum, lam: float, s: float, coeffs=None, seed: int | None = None,
             f=None) -> SpectralCluster:
    """Build a cluster from explicit coefficients, a random seed, or a sampler f.

    With a seed, coefficients are drawn uniformly from the unit sphere of the
    window span so that ||u|| = 1 exactly.  With f (a callable on points),
    coefficients are the quadrature projections <f, e_j>.
    """
    if lam <= 0 or s <= 0:
        raise ValueError("window requires lam > 0 and s > 0")
    members = tuple(spectrum.window(lam, s))
    if not members:
        return SpectralCluster(spectrum=spectrum, lam=lam, s=s, members=(),
                               coeffs=np.zeros(0), seed=seed)
    if coeffs is not None:
        c = np.asarray(coeffs, float).copy()
        if len(c) != len(members):
            raise ValueError(f"expected {len(members)} coefficients, got {len(c)}")
    elif f is not None:
        grid = domain_grid(spectrum.domain)
        fv = np.apply_along_axis(lambda q: f(q[0], q[1]), -1, grid.points())
        c = np.array([integrate(grid, fv * pair_on_grid(m, grid)) for m in members])
    elif seed is not None:
        rng = np.random.default_rng(seed)
        g = rng.standard_normal(len(members))
        c = g / np.linalg.norm(g)
    else:
        raise ValueError("provide coefficients, a seed, or a sampler f")
    return SpectralCluster(spectrum=spectrum, lam=lam, s=s, members=members,
                           coeffs=c, seed=seed)


def norm_l2(u: SpectralCluster) -> float:
    """||u||_{L2(M)} = ||c||, exact by member orthonormality."""
    return float(np.linalg.norm(u.coeffs))


def grad_norm(u: SpectralCluster) -> float:
    """||grad u|| = sqrt(sum lam_j^2 c_j^2), by Dirichlet integration by parts."""
    if u.is_empty:
        return 0.0
    return math.sqrt(float((u.member_lams ** 2 * u.coeffs ** 2).sum()))


def defect_norm(u: SpectralCluster) -> float:
    """||(-Lap - lam^2) u||_2 = sqrt(sum (lam_j^2 - lam^2)^2 c_j^2)."""
    if u.is_empty:
        return 0.0
    d = u.member_lams ** 2 - u.lam ** 2
    return math.sqrt(float((d * d * u.coeffs ** 2).sum()))


def defect_grad_norm(u: SpectralCluster) -> float:
    """||grad (-Lap - lam^2) u||_2 = sqrt(sum (lam_j^2 - lam^2)^2 lam_j^2 c_j^2)."""
    if u.is_empty:
        return 0.0
    lams = u.member_lams
    d = lams ** 2 - u.lam ** 2
    return math.sqrt(float((d * d * lams ** 2 * u.coeffs ** 2).sum()))


def evaluate(u: SpectralCluster, points) -> np.ndarray:
    """Pointwise values (analytic spectra only)."""
    _require_analytic(u)
    pts = np.atleast_2d(np.asarray(points, float))
    out = np.zeros(len(pts))
    for c, m in zip(u.coeffs, u.members):
        out += c * analytic.evaluate(m, pts)
    return out if np.asarray(points).ndim > 1 else float(out[0])


def gradient(u: SpectralCluster, points) -> np.ndarray:
    _require_analytic(u)
    pts = np.atleast_2d(np.asarray(points, float))
    out = np.zeros((len(pts), 2))
    for c, m in zip(u.coeffs, u.members):
        out += c * analytic.gradient(m, pts)
    return out


def normal_trace(u: SpectralCluster) -> BoundaryTrace:
    """d_nu u on the boundary as the coefficient combination of member traces."""
    _require_analytic(u)
    return combine_traces([analytic.normal_trace(m) for m in u.members],
                          u.coeffs)


def to_json(u: SpectralCluster) -> str:
    rec = {
        "lambda": u.lam,
        "s": u.s,
        "members": [{"lambda_j": m.lam, "mode": list(m.mode)} for m in u.members],
        "coeffs": [float(c) for c in u.coeffs],
        "seed": u.seed,
    }
    return json.dumps(rec, indent=2)


def _require_analytic(u: SpectralCluster) -> None:
    if u.members and not isinstance(u.members[0], EigenPair):
        raise TypeError("pointwise evaluation requires an analytic cluster; "
                        "FEM clusters are handled through their nodal vectors")

"""P1 finite elements for the Dirichlet eigenproblem on triangle meshes.

Assembly is vectorized over triangles.  Dirichlet conditions are imposed by
eliminating boundary degrees of freedom, the generalized eigenproblem is
solved dense below 2000 interior unknowns and by shift-invert Lanczos above,
and the boundary normal derivative is recovered variationally: test the weak
eigen-equation against boundary hat functions and solve the boundary mass
system, which is the consistent flux (half an order better on the boundary
than raw element gradients).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sps
import scipy.sparse.linalg as spla

from .geometry import DomainSpec, TriangleMesh, build_mesh, centroid

DENSE_DOF_LIMIT = 2000
DEGENERATE_BLOCK_GAP = 1e-6


class AssemblyError(ValueError):
    pass


@dataclass(frozen=True)
class DiscreteEigenPair:
    """One mass-normalized discrete eigenpair; nodal values vanish on the boundary."""

    lam: float
    index: int
    block: int
    vector: np.ndarray            # full-length nodal vector
    mesh: TriangleMesh
    residual: float

    def __post_init__(self):
        self.vector.setflags(write=False)

    @property
    def lam_sq(self) -> float:
        return self.lam * self.lam

    @property
    def mode(self) -> tuple:
        return ("fem", self.index)


@dataclass(frozen=True)
class DiscreteSpectrum:
    """Smallest discrete eigenpairs on a mesh; window() mirrors the analytic API."""

    domain: DomainSpec
    mesh: TriangleMesh
    pairs: tuple[DiscreteEigenPair, ...]
    cutoff: float

    def window(self, lam: float, s: float) -> list[DiscreteEigenPair]:
        if lam + s > self.cutoff + 1e-12:
            raise ValueError("window extends beyond the computed spectrum")
        return [p for p in self.pairs if lam <= p.lam < lam + s]


@dataclass(frozen=True)
class FluxTrace:
    """Consistent flux at boundary vertices with its boundary mass matrix."""

    boundary_vertices: np.ndarray
    values: np.ndarray
    B: sps.csr_matrix
    mesh: TriangleMesh


def _triangle_geometry(mesh: TriangleMesh):
    t = mesh.triangles
    a, b, c = (mesh.vertices[t[:, i]] for i in range(3))
    area = 0.5 * ((b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1])
                  - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0]))
    bad = np.nonzero(area <= 1e-14 * mesh.h ** 2)[0]
    if len(bad):
        raise AssemblyError(f"degenerate triangle {int(bad[0])}")
    grads = np.empty((len(t), 3, 2))
    grads[:, 0] = np.stack([b[:, 1] - c[:, 1], c[:, 0] - b[:, 0]], axis=1)
    grads[:, 1] = np.stack([c[:, 1] - a[:, 1], a[:, 0] - c[:, 0]], axis=1)
    grads[:, 2] = np.stack([a[:, 1] - b[:, 1], b[:, 0] - a[:, 0]], axis=1)
    grads /= (2.0 * area)[:, None, None]
    return area, grads


def assemble(mesh: TriangleMesh):
    """Full-size stiffness K, mass M, and boundary mass B (all n x n sparse)."""
    n = len(mesh.vertices)
    t = mesh.triangles
    area, grads = _triangle_geometry(mesh)
    mass_local = np.array([[2, 1, 1], [1, 2, 1], [1, 1, 2]]) / 12.0
    rows, cols, kv, mv = [], [], [], []
    for i in range(3):
        for j in range(3):
            rows.append(t[:, i])
            cols.append(t[:, j])
            kv.append(area * (grads[:, i] * grads[:, j]).sum(axis=1))
            mv.append(area * mass_local[i, j])
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    K = sps.csr_matrix((np.concatenate(kv), (rows, cols)), shape=(n, n))
    M = sps.csr_matrix((np.concatenate(mv), (rows, cols)), shape=(n, n))

    be = mesh.boundary_edges
    L = mesh.edge_lengths
    br = np.concatenate([be[:, 0], be[:, 1], be[:, 0], be[:, 1]])
    bc = np.concatenate([be[:, 0], be[:, 1], be[:, 1], be[:, 0]])
    bv = np.concatenate([L / 3, L / 3, L / 6, L / 6])
    B = sps.csr_matrix((bv, (br, bc)), shape=(n, n))
    return K, M, B


def solve_eigs(mesh: TriangleMesh, K: sps.csr_matrix, M: sps.csr_matrix,
               count: int) -> list[DiscreteEigenPair]:
    """Smallest `count` pairs of K x = lam^2 M x with boundary DOFs eliminated."""
    boundary = mesh.boundary_vertices
    interior = np.setdiff1d(np.arange(len(mesh.vertices)), boundary)
    if count > len(interior):
        raise ValueError("requested more eigenpairs than interior DOFs")
    Ki = K[np.ix_(interior, interior)]
    Mi = M[np.ix_(interior, interior)]
    if len(interior) < DENSE_DOF_LIMIT:
        w, V = sla.eigh(Ki.toarray(), Mi.toarray(), subset_by_index=(0, count - 1))
    else:
        v0 = np.ones(len(interior))
        try:
            w, V = spla.eigsh(Ki.tocsc(), k=count, M=Mi.tocsc(), sigma=0.0, v0=v0)
        except RuntimeError:
            w, V = spla.eigsh(Ki.tocsc(), k=count, M=Mi.tocsc(), sigma=-1e-8, v0=v0)
        order = np.argsort(w)
        w, V = w[order], V[:, order]

    pairs = []
    block = 0
    for i in range(count):
        x = np.zeros(len(mesh.vertices))
        x[interior] = V[:, i]
        x /= math.sqrt(float(x @ (M @ x)))
        if x[interior][np.argmax(np.abs(x[interior]))] < 0:
            x = -x  # deterministic sign
        kx = Ki @ x[interior]
        res = float(np.linalg.norm(kx - w[i] * (Mi @ x[interior]))
                    / max(np.linalg.norm(kx), 1e-300))
        if i > 0 and (w[i] - w[i - 1]) > DEGENERATE_BLOCK_GAP * max(w[i], 1.0):
            block += 1
        pairs.append(DiscreteEigenPair(lam=math.sqrt(max(float(w[i]), 0.0)),
                                       index=i, block=block, vector=x,
                                       mesh=mesh, residual=res))
    return pairs


def build_fem_spectrum(spec: DomainSpec, h: float, count: int) -> DiscreteSpectrum:
    mesh = build_mesh(spec, h)
    K, M, _ = assemble(mesh)
    pairs = solve_eigs(mesh, K, M, count)
    # last computed eigenvalue bounds what windows may be trusted
    return DiscreteSpectrum(domain=spec, mesh=mesh, pairs=tuple(pairs),
                            cutoff=pairs[-1].lam)


def recover_flux(pair: DiscreteEigenPair, system=None) -> FluxTrace:
    """Variational flux: solve B psi = (K - lam^2 M) x on the boundary block."""
    mesh = pair.mesh
    K, M, B = assemble(mesh) if system is None else system
    r = K @ pair.vector - pair.lam_sq * (M @ pair.vector)
    bset = mesh.boundary_vertices
    Bb = B[np.ix_(bset, bset)].tocsc()
    psi = spla.spsolve(Bb, r[bset])
    return FluxTrace(boundary_vertices=bset, values=psi, B=Bb.tocsr(), mesh=mesh)


def flux_l2(trace: FluxTrace) -> float:
    return math.sqrt(float(trace.values @ (trace.B @ trace.values)))


def flux_combination(traces: list[FluxTrace], coeffs) -> FluxTrace:
    vals = sum(c * t.values for c, t in zip(coeffs, traces))
    t0 = traces[0]
    return FluxTrace(boundary_vertices=t0.boundary_vertices, values=vals,
                     B=t0.B, mesh=t0.mesh)


def boundary_loop(mesh: TriangleMesh) -> np.ndarray:
    """Boundary vertices ordered along the (first) boundary loop."""
    succ = {int(e[0]): int(e[1]) for e in mesh.boundary_edges}
    start = int(mesh.boundary_edges[0, 0])
    loop = [start]
    cur = succ[start]
    while cur != start:
        loop.append(cur)
        cur = succ[cur]
    return np.array(loop, dtype=np.intp)


def flux_csv_rows(trace: FluxTrace) -> list[str]:
    """CSV body 'arc_length,psi' in boundary-loop order."""
    mesh = trace.mesh
    loop = boundary_loop(mesh)
    pos = {int(v): i for i, v in enumerate(trace.boundary_vertices)}
    pts = mesh.vertices[loop]
    seg = np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg[:-1])])
    return [f"{si!r},{trace.values[pos[int(v)]]!r}" for si, v in zip(s, loop)]


def convergence_study(spec: DomainSpec, mode_index: int, h_list,
                      exact_lam: float, exact_ratio: float) -> list[dict]:
    """Eigenvalue and flux-ratio errors against the analytic reference per h."""
    rows = []
    for h in h_list:
        spectrum = build_fem_spectrum(spec, float(h), mode_index + 1)
        pair = spectrum.pairs[mode_index]
        K, M, B = assemble(spectrum.mesh)
        ratio = flux_l2(recover_flux(pair, system=(K, M, B))) / pair.lam
        rows.append({"h": float(h),
                     "lambda_sq": pair.lam_sq,
                     "lambda_error": abs(pair.lam_sq - exact_lam ** 2),
                     "ratio": ratio,
                     "ratio_error": abs(ratio - exact_ratio)})
    return rows


# --- FEM path of the Rellich identity ---------------------------------------


def _cluster_nodal(u) -> np.ndarray:
    return sum(c * p.vector for c, p in zip(u.coeffs, u.members))


def rellich_boundary_term(u, origin=None) -> float:
    """int_Y ((x - o) . nu) psi^2 dsigma with the consistent flux psi.

    psi and (x - o) . nu are linear per boundary edge, so 2-point Gauss per
    edge integrates the cubic integrand exactly.
    """
    mesh = u.spectrum.mesh
    o = centroid(u.spectrum.domain) if origin is None else np.asarray(origin, float)
    system = assemble(mesh)
    traces = [recover_flux(p, system=system) for p in u.members]
    tr = flux_combination(traces, u.coeffs)
    pos = {int(v): i for i, v in enumerate(tr.boundary_vertices)}
    total = 0.0
    tq = np.array([0.5 - 0.5 / math.sqrt(3.0), 0.5 + 0.5 / math.sqrt(3.0)])
    for (i, j), nu, L in zip(mesh.boundary_edges, mesh.normals, mesh.edge_lengths):
        pi_, pj = mesh.vertices[i], mesh.vertices[j]
        vi, vj = tr.values[pos[int(i)]], tr.values[pos[int(j)]]
        for t in tq:
            p = pi_ + t * (pj - pi_)
            psi = vi + t * (vj - vi)
            total += 0.5 * L * float((p - o) @ nu) * psi * psi
    return total


def rellich_volume_terms(u, origin=None) -> tuple[float, float]:
    """T2 and T3 for a discrete cluster by exact per-element quadrature.

    The discrete defect (-Lap_h - lam^2) u expands in eigenvectors with the
    coefficients (lam_j^2 - lam^2) c_j, and each integrand e_i * (x - o).grad
    is quadratic per element, so edge-midpoint quadrature is exact.
    """
    mesh = u.spectrum.mesh
    o = centroid(u.spectrum.domain) if origin is None else np.asarray(origin, float)
    t = mesh.triangles
    area, grads = _triangle_geometry(mesh)
    verts = mesh.vertices[t]                       # (nt, 3, 2)
    mids = 0.5 * (verts + np.roll(verts, -1, axis=1))  # midpoints opposite each corner

    def nodal_at_mids(x):
        nod = x[t]                                  # (nt, 3)
        return 0.5 * (nod + np.roll(nod, -1, axis=1))

    def grad_of(x):
        return np.einsum("ta,tad->td", x[t], grads)

    u_nod = _cluster_nodal(u)
    u_mids = nodal_at_mids(u_nod)
    gu = grad_of(u_nod)
    xo = mids - o
    Au_mids = np.einsum("tqd,td->tq", xo, gu)
    w = area[:, None] / 3.0
    lam2 = u.lam ** 2
    t2 = 0.0
    t3 = 0.0
    for ci, p in zip(u.coeffs, u.members):
        fac = (p.lam_sq - lam2) * ci
        if fac == 0.0:
            continue
        ei_mids = nodal_at_mids(p.vector)
        t2 += fac * float((w * ei_mids * Au_mids).sum())
        Aei = np.einsum("tqd,td->tq", xo, grad_of(p.vector))
        t3 -= fac * float((w * u_mids * Aei).sum())
    return t2, t3

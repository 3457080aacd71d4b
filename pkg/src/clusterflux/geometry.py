"""Planar domains (disk, rectangle, simple polygon) and triangle meshing.

Rectangles get structured grids.  Polygons (and disks, via an inscribed
regular polygon) get a Delaunay triangulation of boundary samples plus an
offset hexagonal interior lattice, filtered to the polygon; a clearance
ladder retries the lattice offset until the mesh meets the edge-length bound.
All geometric values are immutable after construction and meshing is
deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.spatial import Delaunay


@dataclass(frozen=True)
class Disk:
    radius: float
    center: tuple[float, float] = (0.0, 0.0)
    kind: str = field(default="disk", init=False)

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("disk radius must be positive")


@dataclass(frozen=True)
class Rectangle:
    a: float
    b: float
    corner: tuple[float, float] = (0.0, 0.0)
    kind: str = field(default="rectangle", init=False)

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError("rectangle side lengths must be positive")


@dataclass(frozen=True)
class Polygon:
    vertices: tuple[tuple[float, float], ...]
    kind: str = field(default="polygon", init=False)

    def __post_init__(self):
        v = np.asarray(self.vertices, float)
        if len(v) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        if _signed_area(v) <= 0:
            raise ValueError("polygon must be counterclockwise")
        if not _is_simple(v):
            raise ValueError("polygon must be simple (no self-intersections)")


DomainSpec = Disk | Rectangle | Polygon


def spec_from_json(obj: dict) -> DomainSpec:
    kind = obj.get("kind")
    if kind == "disk":
        return Disk(radius=float(obj["radius"]),
                    center=tuple(obj.get("center", (0.0, 0.0))))
    if kind == "rectangle":
        return Rectangle(a=float(obj["a"]), b=float(obj["b"]),
                         corner=tuple(obj.get("corner", (0.0, 0.0))))
    if kind == "polygon":
        return Polygon(vertices=tuple(tuple(map(float, p)) for p in obj["vertices"]))
    raise ValueError(f"unknown domain kind: {kind!r}")


def spec_to_json(spec: DomainSpec) -> dict:
    if isinstance(spec, Disk):
        return {"kind": "disk", "radius": spec.radius, "center": list(spec.center)}
    if isinstance(spec, Rectangle):
        return {"kind": "rectangle", "a": spec.a, "b": spec.b, "corner": list(spec.corner)}
    return {"kind": "polygon", "vertices": [list(p) for p in spec.vertices]}


def _signed_area(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _segments_cross(p1, p2, q1, q2) -> bool:
    def orient(a, b, c):
        d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return 0 if abs(d) < 1e-14 else (1 if d > 0 else -1)

    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    return o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4)


def _is_simple(v: np.ndarray) -> bool:
    n = len(v)
    for i in range(n):
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue  # adjacent edges share a vertex
            if _segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]):
                return False
    return True


def diameter(spec: DomainSpec) -> float:
    """R_M = max pairwise distance over the closure of the domain."""
    if isinstance(spec, Disk):
        return 2.0 * spec.radius
    if isinstance(spec, Rectangle):
        return math.hypot(spec.a, spec.b)
    v = np.asarray(spec.vertices, float)
    d2 = ((v[:, None, :] - v[None, :, :]) ** 2).sum(-1)
    return float(np.sqrt(d2.max()))


def area(spec: DomainSpec) -> float:
    if isinstance(spec, Disk):
        return math.pi * spec.radius ** 2
    if isinstance(spec, Rectangle):
        return spec.a * spec.b
    return _signed_area(np.asarray(spec.vertices, float))


def boundary_length(spec: DomainSpec) -> float:
    if isinstance(spec, Disk):
        return 2.0 * math.pi * spec.radius
    if isinstance(spec, Rectangle):
        return 2.0 * (spec.a + spec.b)
    v = np.asarray(spec.vertices, float)
    return float(np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1).sum())


def centroid(spec: DomainSpec) -> np.ndarray:
    """Area centroid; the default origin for the multiplier operator x.grad."""
    if isinstance(spec, Disk):
        return np.asarray(spec.center, float)
    if isinstance(spec, Rectangle):
        return np.asarray(spec.corner, float) + 0.5 * np.array([spec.a, spec.b])
    v = np.asarray(spec.vertices, float)
    x, y = v[:, 0], v[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cross = x * yn - xn * y
    a = 0.5 * cross.sum()
    cx = ((x + xn) * cross).sum() / (6.0 * a)
    cy = ((y + yn) * cross).sum() / (6.0 * a)
    return np.array([cx, cy])


def contains(spec: DomainSpec, points: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Boolean mask: point in the closed domain (within tol of it)."""
    p = np.atleast_2d(np.asarray(points, float))
    if isinstance(spec, Disk):
        r = np.linalg.norm(p - np.asarray(spec.center), axis=1)
        return r <= spec.radius + tol
    if isinstance(spec, Rectangle):
        q = p - np.asarray(spec.corner)
        return ((q[:, 0] >= -tol) & (q[:, 0] <= spec.a + tol)
                & (q[:, 1] >= -tol) & (q[:, 1] <= spec.b + tol))
    v = np.asarray(spec.vertices, float)
    return _points_in_polygon(p, v) | (_dist_to_polyline(p, v) <= tol)


def x_dot_nu(spec: DomainSpec, point, origin=None) -> float:
    """(x - origin) . nu(x) at a boundary point x; origin defaults to centroid.

    Raises if the point is farther than 1e-10 from the boundary.
    """
    p = np.asarray(point, float)
    o = centroid(spec) if origin is None else np.asarray(origin, float)
    if isinstance(spec, Disk):
        d = p - np.asarray(spec.center)
        r = np.linalg.norm(d)
        if abs(r - spec.radius) > 1e-10:
            raise ValueError("point is not on the disk boundary")
        nu = d / r
        return float((p - o) @ nu)
    verts = (_rect_vertices(spec) if isinstance(spec, Rectangle)
             else np.asarray(spec.vertices, float))
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        ab = b - a
        L = np.linalg.norm(ab)
        t = np.clip((p - a) @ ab / (L * L), 0.0, 1.0)
        if np.linalg.norm(p - (a + t * ab)) <= 1e-10:
            nu = np.array([ab[1], -ab[0]]) / L  # outward for CCW loops
            return float((p - o) @ nu)
    raise ValueError("point is not on the boundary")


def _rect_vertices(spec: Rectangle) -> np.ndarray:
    x0, y0 = spec.corner
    return np.array([[x0, y0], [x0 + spec.a, y0],
                     [x0 + spec.a, y0 + spec.b], [x0, y0 + spec.b]])


# --- meshing ---------------------------------------------------------------


@dataclass(frozen=True)
class TriangleMesh:
    """Conforming triangulation with boundary edge markers.

    boundary_edges[i] = (v0, v1) ordered so the outward normal is
    normals[i]; every boundary edge belongs to exactly one triangle.
    """

    vertices: np.ndarray        # (nv, 2)
    triangles: np.ndarray       # (nt, 3) CCW
    boundary_edges: np.ndarray  # (nb, 2)
    normals: np.ndarray         # (nb, 2) outward unit
    edge_lengths: np.ndarray    # (nb,)
    h: float

    def __post_init__(self):
        for arr in (self.vertices, self.triangles, self.boundary_edges,
                    self.normals, self.edge_lengths):
            arr.setflags(write=False)

    @property
    def boundary_vertices(self) -> np.ndarray:
        return np.unique(self.boundary_edges)

    def triangle_areas(self) -> np.ndarray:
        a = self.vertices[self.triangles[:, 0]]
        b = self.vertices[self.triangles[:, 1]]
        c = self.vertices[self.triangles[:, 2]]
        return 0.5 * ((b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1])
                      - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0]))

    def min_angle_deg(self) -> float:
        v = self.vertices
        t = self.triangles
        worst = 180.0
        corners = (v[t[:, 0]], v[t[:, 1]], v[t[:, 2]])
        for i in range(3):
            p = corners[i]
            q = corners[(i + 1) % 3]
            r = corners[(i + 2) % 3]
            u1, u2 = q - p, r - p
            cosang = (u1 * u2).sum(1) / (
                np.linalg.norm(u1, axis=1) * np.linalg.norm(u2, axis=1))
            worst = min(worst, float(np.degrees(np.arccos(np.clip(cosang, -1, 1))).min()))
        return worst

    def max_edge_length(self) -> float:
        v = self.vertices
        t = self.triangles
        e = [np.linalg.norm(v[t[:, i]] - v[t[:, (i + 1) % 3]], axis=1) for i in range(3)]
        return float(np.max(e))


class MeshError(ValueError):
    pass


def build_mesh(spec: DomainSpec, h: float) -> TriangleMesh:
    """Triangulate the domain with target edge length h (max edge <= 1.5 h)."""
    if h <= 0:
        raise MeshError("mesh size h must be positive")
    if isinstance(spec, Rectangle):
        return _structured_rectangle(spec, h)
    if isinstance(spec, Disk):
        nsides = int(math.ceil(2.0 * math.pi * spec.radius / h))
        ang = 2.0 * math.pi * np.arange(nsides) / nsides
        verts = np.asarray(spec.center) + spec.radius * np.stack(
            [np.cos(ang), np.sin(ang)], axis=1)
        return _lattice_polygon_mesh(verts, h)
    verts = np.asarray(spec.vertices, float)
    shortest = np.linalg.norm(np.roll(verts, -1, axis=0) - verts, axis=1).min()
    if h > shortest:
        raise MeshError("h must not exceed the shortest polygon edge")
    return _lattice_polygon_mesh(verts, h)


def _structured_rectangle(spec: Rectangle, h: float) -> TriangleMesh:
    nx = max(1, int(math.ceil(spec.a / h - 1e-12)))
    ny = max(1, int(math.ceil(spec.b / h - 1e-12)))
    xs = spec.corner[0] + spec.a * np.arange(nx + 1) / nx
    ys = spec.corner[1] + spec.b * np.arange(ny + 1) / ny
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    pts = np.stack([X.ravel(), Y.ravel()], axis=1)

    def vid(i, j):
        return i * (ny + 1) + j

    tris = []
    for i in range(nx):
        for j in range(ny):
            v00, v10 = vid(i, j), vid(i + 1, j)
            v01, v11 = vid(i, j + 1), vid(i + 1, j + 1)
            tris.append((v00, v10, v11))
            tris.append((v00, v11, v01))
    return _finalize_mesh(pts, np.array(tris, dtype=np.intp), h)


def _points_in_polygon(p: np.ndarray, verts: np.ndarray) -> np.ndarray:
    # vectorized crossing number
    x, y = p[:, 0], p[:, 1]
    inside = np.zeros(len(p), dtype=bool)
    n = len(verts)
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        crosses = (y1 > y) != (y2 > y)
        with np.errstate(divide="ignore", invalid="ignore"):
            xint = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
        inside ^= crosses & (x < xint)
    return inside


def _dist_to_polyline(p: np.ndarray, verts: np.ndarray) -> np.ndarray:
    n = len(verts)
    best = np.full(len(p), np.inf)
    for i in range(n):
        a = verts[i]
        ab = verts[(i + 1) % n] - a
        denom = float(ab @ ab)
        t = np.clip(((p - a) @ ab) / denom, 0.0, 1.0)
        proj = a + t[:, None] * ab
        best = np.minimum(best, np.linalg.norm(p - proj, axis=1))
    return best


def _lattice_polygon_mesh(verts: np.ndarray, h: float) -> TriangleMesh:
    bpts = []
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        nseg = max(1, int(math.ceil(np.linalg.norm(b - a) / h - 1e-12)))
        for t in range(nseg):
            bpts.append(a + (b - a) * (t / nseg))
    bpts = np.array(bpts)

    g = 0.85 * h
    xmin, ymin = verts.min(axis=0)
    xmax, ymax = verts.max(axis=0)
    ny = int((ymax - ymin) / (g * math.sqrt(3) / 2.0))
    cand = []
    for j in range(1, ny + 1):
        y = ymin + j * g * math.sqrt(3) / 2.0
        if y >= ymax - 1e-12:
            break
        off = 0.5 * g if j % 2 else 0.0
        xs = np.arange(xmin + off + 0.5 * g, xmax - 1e-12, g)
        cand.append(np.stack([xs, np.full_like(xs, y)], axis=1))
    cand = np.vstack(cand) if cand else np.zeros((0, 2))
    if len(cand):
        cand = cand[_points_in_polygon(cand, verts)]
        dists = _dist_to_polyline(cand, verts)
    else:
        dists = np.zeros(0)

    # clearance ladder: retry with a narrower boundary gap until the
    # edge-length bound holds
    last = None
    for clearance in (0.5, 0.45, 0.4, 0.35, 0.3):
        interior = cand[dists >= clearance * h] if len(cand) else cand
        pts = np.vstack([bpts, interior]) if len(interior) else bpts
        simp = Delaunay(pts).simplices
        cent = pts[simp].mean(axis=1)
        simp = simp[_points_in_polygon(cent, verts)]
        mesh = _finalize_mesh(pts, simp.astype(np.intp), h)
        last = mesh
        if mesh.max_edge_length() <= 1.5 * h:
            return mesh
    return last


def _finalize_mesh(pts: np.ndarray, tris: np.ndarray, h: float) -> TriangleMesh:
    a, b, c = pts[tris[:, 0]], pts[tris[:, 1]], pts[tris[:, 2]]
    area2 = ((b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1])
             - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0]))
    flip = area2 < 0
    tris = tris.copy()
    tris[flip] = tris[flip][:, [0, 2, 1]]

    edge_count: dict[tuple[int, int], tuple[int, int]] = {}
    seen: dict[tuple[int, int], int] = {}
    for t in tris:
        for e in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            key = (min(e), max(e))
            seen[key] = seen.get(key, 0) + 1
            edge_count[key] = e  # CCW orientation from the owning triangle
    boundary = [edge_count[k] for k, cnt in seen.items() if cnt == 1]
    boundary.sort()
    bedges = np.array(boundary, dtype=np.intp)
    tang = pts[bedges[:, 1]] - pts[bedges[:, 0]]
    lengths = np.linalg.norm(tang, axis=1)
    normals = np.stack([tang[:, 1], -tang[:, 0]], axis=1) / lengths[:, None]
    mesh = TriangleMesh(vertices=pts, triangles=tris, boundary_edges=bedges,
                        normals=normals, edge_lengths=lengths, h=h)
    validate_mesh(mesh)
    return mesh


def validate_mesh(mesh: TriangleMesh) -> None:
    """Raise MeshError on any violated structural invariant."""
    areas = mesh.triangle_areas()
    if (areas <= 0).any():
        raise MeshError(f"triangle {int(np.argmin(areas))} has non-positive area")
    # boundary edges close into loops: every boundary vertex has degree 2
    idx, counts = np.unique(mesh.boundary_edges, return_counts=True)
    if (counts != 2).any():
        raise MeshError("boundary edges do not form closed loops")
    norms = np.linalg.norm(mesh.normals, axis=1)
    if np.abs(norms - 1.0).max() > 1e-12:
        raise MeshError("boundary normals are not unit length")
    # outward check: normal points away from the owning triangle centroid
    mids = 0.5 * (mesh.vertices[mesh.boundary_edges[:, 0]]
                  + mesh.vertices[mesh.boundary_edges[:, 1]])
    owner = _boundary_edge_owners(mesh)
    cent = mesh.vertices[mesh.triangles[owner]].mean(axis=1)
    if (((mids - cent) * mesh.normals).sum(axis=1) <= 0).any():
        raise MeshError("a boundary normal points into its triangle")


def _boundary_edge_owners(mesh: TriangleMesh) -> np.ndarray:
    owner_of: dict[tuple[int, int], int] = {}
    for ti, t in enumerate(mesh.triangles):
        for e in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            owner_of[(min(e), max(e))] = ti
    return np.array([owner_of[(min(e), max(e))] for e in mesh.boundary_edges],
                    dtype=np.intp)


# --- mesh text format ------------------------------------------------------


def save_mesh(mesh: TriangleMesh, path: str | Path) -> None:
    """Write the text format: 'nv nt nb', vertices, triangles, boundary edges."""
    lines = [f"{len(mesh.vertices)} {len(mesh.triangles)} {len(mesh.boundary_edges)}"]
    lines += [f"{x!r} {y!r}" for x, y in mesh.vertices]
    lines += [f"{i} {j} {k}" for i, j, k in mesh.triangles]
    lines += [f"{e[0]} {e[1]} {n[0]!r} {n[1]!r}"
              for e, n in zip(mesh.boundary_edges, mesh.normals)]
    Path(path).write_text("\n".join(lines) + "\n")


def load_mesh(path: str | Path, h: float = 0.0) -> TriangleMesh:
    tokens = Path(path).read_text().split("\n")
    nv, nt, nb = map(int, tokens[0].split())
    verts = np.array([[float(v) for v in tokens[1 + i].split()] for i in range(nv)])
    tris = np.array([[int(v) for v in tokens[1 + nv + i].split()] for i in range(nt)],
                    dtype=np.intp)
    bed, nrm = [], []
    for i in range(nb):
        parts = tokens[1 + nv + nt + i].split()
        bed.append((int(parts[0]), int(parts[1])))
        nrm.append((float(parts[2]), float(parts[3])))
    bedges = np.array(bed, dtype=np.intp)
    normals = np.array(nrm)
    lengths = np.linalg.norm(verts[bedges[:, 1]] - verts[bedges[:, 0]], axis=1)
    return TriangleMesh(vertices=verts, triangles=tris, boundary_edges=bedges,
                        normals=normals, edge_lengths=lengths, h=h)

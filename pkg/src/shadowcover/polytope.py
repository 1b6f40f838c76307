"""Convex polytopes in V- and H-representation.

A :class:`Body` is an immutable convex polytope held by its extreme points.
Its facet system is derived on first use and cached.  Hulls in dimension two
and higher are computed by Qhull; the one-dimensional case is handled by
hand.  All incidence and dedup decisions use the geometric tolerance scaled
by the body's circumradius, so predicates behave the same at any scale.
"""
from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
from scipy.spatial import ConvexHull, HalfspaceIntersection, QhullError

from . import lp
from .config import tolerances
from .errors import (BadBasis, BadParameter, DegenerateInput, DimensionMismatch,
                     SingularMap, Unbounded, ZeroDirection)
from .linalg import AffineMap, complement_basis


@dataclass(frozen=True)
class VPolytope:
    dim: int
    vertices: np.ndarray


@dataclass(frozen=True)
class HPolytope:
    """``{x : normals @ x <= offsets}`` with unit normals."""

    dim: int
    normals: np.ndarray
    offsets: np.ndarray

    def contains(self, points, tol: Optional[float] = None) -> np.ndarray:
        tol = tolerances().geom if tol is None else tol
        pts = np.atleast_2d(points)
        return np.all(pts @ self.normals.T <= self.offsets + tol, axis=1)


@dataclass(frozen=True)
class _FacetData:
    normals: np.ndarray      # (F, n) unit outer normals
    offsets: np.ndarray      # (F,)
    measures: np.ndarray     # (F,) (n-1)-volumes
    volume: float


def _scale_of(points: np.ndarray) -> float:
    centered = points - points.mean(axis=0)
    r = float(np.sqrt((centered ** 2).sum(axis=1).max())) if len(points) else 0.0
    return max(r, 1e-300)


def _affine_frame(points: np.ndarray, tol: float):
    """Origin and orthonormal basis of the affine hull of ``points``."""
    origin = points.mean(axis=0)
    centered = points - origin
    if not np.any(centered):
        return origin, np.zeros((0, points.shape[1]))
    _, s, vt = np.linalg.svd(centered, full_matrices=False)
    rank = int(np.sum(s > tol * max(1.0, math.sqrt(len(points)))))
    return origin, vt[:rank]


def _merge_facets(points: np.ndarray, equations: np.ndarray, simplices: np.ndarray,
                  tol_abs: float):
    """Collapse Qhull's triangulated equations into distinct facets.

    A piece joins an existing facet when its normal points the same way and
    all its points lie within ``tol_abs`` of that facet's hyperplane.
    """
    rep_normals = np.empty((0, points.shape[1]))
    rep_offsets = np.empty(0)
    labels = np.empty(len(equations), dtype=int)
    for i, (eq, simplex) in enumerate(zip(equations, simplices)):
        if len(rep_offsets):
            dist = np.abs(points[simplex] @ rep_normals.T - rep_offsets).max(axis=0)
            hit = np.flatnonzero((dist <= tol_abs) & (rep_normals @ eq[:-1] > 0))
            if len(hit):
                labels[i] = hit[0]
                continue
        labels[i] = len(rep_offsets)
        rep_normals = np.vstack([rep_normals, eq[:-1]])
        rep_offsets = np.append(rep_offsets, -eq[-1])
    return rep_normals, rep_offsets, labels


def _refit_facets(points, simplices, labels, normals, offsets):
    """Least-squares hyperplane through each merged facet's own points."""
    normals = normals.copy()
    offsets = offsets.copy()
    counts = np.bincount(labels, minlength=len(normals))
    for lab in np.flatnonzero(counts > 1):
        idx = np.unique(simplices[labels == lab])
        pts = points[idx]
        center = pts.mean(axis=0)
        _, _, vt = np.linalg.svd(pts - center)
        a = vt[-1]
        if a @ normals[lab] < 0:
            a = -a
        normals[lab] = a
        offsets[lab] = float((pts @ a).max())
    return normals, offsets


def _simplex_measures(simplices: np.ndarray) -> np.ndarray:
    """k-volumes of a stack of k-simplices in R^n (Gram determinants)."""
    edges = simplices[:, 1:] - simplices[:, :1]
    k = edges.shape[1]
    gram = edges @ edges.transpose(0, 2, 1)
    return np.sqrt(np.clip(np.linalg.det(gram), 0.0, None)) / math.factorial(k)


def _full_hull(points: np.ndarray, tol_abs: float):
    """Extreme points and facet data of a full-dimensional point set (n >= 2)."""
    n = points.shape[1]
    try:
        hull = ConvexHull(points)
    except QhullError as exc:
        raise DegenerateInput(f"qhull failed: {exc}") from exc
    normals, offsets, labels = _merge_facets(points, hull.equations, hull.simplices, tol_abs)
    normals, offsets = _refit_facets(points, hull.simplices, labels, normals, offsets)
    cand = hull.vertices
    incid = np.abs(points[cand] @ normals.T - offsets) <= tol_abs
    if n == 2:
        # two distinct edges through a polygon vertex are never parallel
        keep = cand[incid.sum(axis=1) >= 2]
    else:
        keep = [c for c, row in zip(cand, incid)
                if row.sum() >= n and np.linalg.matrix_rank(normals[row], tol=1e-9) == n]
    keep = np.sort(np.asarray(keep, dtype=int))
    verts = points[keep]
    measures = np.bincount(labels, weights=_simplex_measures(points[hull.simplices]),
                           minlength=len(normals))
    # fan of simplices from an interior point over the triangulated boundary;
    # uses input coordinates only, never the (merged) hyperplane equations
    center = verts.mean(axis=0)
    cones = points[hull.simplices] - center
    volume = float(np.abs(np.linalg.det(cones)).sum() / math.factorial(n))
    facets = _FacetData(normals, offsets, measures, volume)
    return verts, facets


def _interval(points: np.ndarray):
    lo, hi = float(points[:, 0].min()), float(points[:, 0].max())
    return np.array([[lo], [hi]]), _FacetData(
        np.array([[-1.0], [1.0]]), np.array([-lo, hi]), np.ones(2), hi - lo)


def extreme_points(points) -> tuple[np.ndarray, int, Optional[_FacetData]]:
    """Extreme points of ``points``, the affine dimension, and facet data.

    Facet data is only returned for full-dimensional input.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if not np.all(np.isfinite(pts)):
        raise BadParameter("non-finite coordinates")
    n = pts.shape[1]
    scale = _scale_of(pts)
    tol_abs = tolerances().geom * scale
    origin, frame = _affine_frame(pts, tol_abs)
    k = frame.shape[0]
    if k == 0:
        return pts[:1].copy(), 0, None
    if k == n:
        if n == 1:
            verts, facets = _interval(pts)
            if facets.volume <= tol_abs:
                return verts[:1], 0, None
            return verts, 1, facets
        verts, facets = _full_hull(pts, tol_abs)
        return verts, n, facets
    coords = (pts - origin) @ frame.T
    sub_verts, sub_dim, _ = extreme_points(coords)
    return sub_verts @ frame + origin, sub_dim, None


class Body:
    """Immutable convex polytope stored by its extreme points.

    Lower-dimensional bodies (points, segments, flat polygons) are allowed;
    ``affine_dim`` records their true dimension and volume-type queries on
    them raise DegenerateInput.
    """

    def __init__(self, points, name: Optional[str] = None):
        verts, affine_dim, facets = extreme_points(points)
        self.vertices = verts
        self.vertices.setflags(write=False)
        self.dim = verts.shape[1]
        self.affine_dim = affine_dim
        self.name = name
        self._facets = facets
        self._lock = threading.Lock()

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"Body{label}(dim={self.dim}, vertices={len(self.vertices)})"

    @property
    def full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    @property
    def vrep(self) -> VPolytope:
        return VPolytope(self.dim, self.vertices)

    @property
    def interior_point(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    @property
    def scale(self) -> float:
        return _scale_of(self.vertices)

    def _facet_data(self) -> _FacetData:
        if not self.full_dimensional:
            raise DegenerateInput(
                f"body has affine dimension {self.affine_dim} < {self.dim}")
        if self._facets is None:
            with self._lock:
                if self._facets is None:
                    _, _, self._facets = extreme_points(self.vertices)
        return self._facets

    @property
    def hrep(self) -> HPolytope:
        f = self._facet_data()
        return HPolytope(self.dim, f.normals, f.offsets)

    @property
    def facet_measures(self) -> np.ndarray:
        return self._facet_data().measures

    def volume(self) -> float:
        return self._facet_data().volume

    def support(self, v) -> tuple[float, np.ndarray]:
        """``h(v)`` and the vertices attaining it."""
        v = np.asarray(v, dtype=float)
        if not np.any(v):
            raise ZeroDirection("support function needs a nonzero direction")
        vals = self.vertices @ v
        h = float(vals.max())
        tol = tolerances().geom * max(1.0, self.scale * np.linalg.norm(v))
        return h, self.vertices[vals >= h - tol]

    def h(self, directions) -> np.ndarray:
        """Support values for a stack of directions (zero rows allowed)."""
        return (np.atleast_2d(directions) @ self.vertices.T).max(axis=1)

    def contains_points(self, points, tol: Optional[float] = None) -> np.ndarray:
        tol = tolerances().geom * max(1.0, self.scale) if tol is None else tol
        return self.hrep.contains(points, tol)

    def translate(self, x) -> "Body":
        return _rebuild(self, self.vertices + np.asarray(x, dtype=float))

    def scaled(self, factor: float) -> "Body":
        if factor < 0:
            return self.reflected().scaled(-factor)
        return _rebuild(self, self.vertices * float(factor))

    def reflected(self) -> "Body":
        return _rebuild(self, -self.vertices)

    def __add__(self, other: "Body") -> "Body":
        return minkowski_sum(self, other)

    def __neg__(self) -> "Body":
        return self.reflected()

    def __rmul__(self, factor: float) -> "Body":
        return self.scaled(factor)

    def to_json(self) -> dict:
        out = {"dim": self.dim, "vertices": self.vertices.tolist()}
        if self.name:
            out["name"] = self.name
        return out


class PointCloud:
    """A finite point set queried only through its support function.

    Stands in for a body whose hull is never needed, e.g. the shadow of the
    inner body in a containment test.
    """

    def __init__(self, points):
        self.vertices = np.atleast_2d(np.asarray(points, dtype=float))
        self.dim = self.vertices.shape[1]

    @property
    def interior_point(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    @property
    def affine_dim(self) -> int:
        centered = self.vertices - self.interior_point
        if not np.any(centered):
            return 0
        return int(np.linalg.matrix_rank(centered, tol=tolerances().geom * _scale_of(self.vertices)))

    def h(self, directions) -> np.ndarray:
        return (np.atleast_2d(directions) @ self.vertices.T).max(axis=1)


def _rebuild(body: Body, vertices: np.ndarray) -> Body:
    # vertex sets of translates, dilates and reflections stay irredundant
    new = Body.__new__(Body)
    new.vertices = np.ascontiguousarray(vertices)
    new.vertices.setflags(write=False)
    new.dim = body.dim
    new.affine_dim = body.affine_dim
    new.name = None
    new._facets = None
    new._lock = threading.Lock()
    return new


def hull(points, dim: Optional[int] = None) -> VPolytope:
    """Extreme points of a full-dimensional point set."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if dim is not None and pts.shape[1] != dim:
        raise DimensionMismatch(f"points live in R^{pts.shape[1]}, expected R^{dim}")
    verts, affine_dim, _ = extreme_points(pts)
    if affine_dim < pts.shape[1]:
        raise DegenerateInput(
            f"affine hull has dimension {affine_dim} < {pts.shape[1]}")
    return VPolytope(pts.shape[1], verts)


def volume(body: Body) -> float:
    return body.volume()


def support(body: Body, v) -> tuple[float, np.ndarray]:
    return body.support(v)


def minkowski_sum(a: Body, b: Body) -> Body:
    if a.dim != b.dim:
        raise DimensionMismatch(f"cannot add bodies in R^{a.dim} and R^{b.dim}")
    sums = (a.vertices[:, None, :] + b.vertices[None, :, :]).reshape(-1, a.dim)
    return Body(sums)


def combination(a: Body, b: Body, s: float, t: float) -> Body:
    """The Minkowski combination ``s a + t b`` for ``s, t >= 0``."""
    if s == 0:
        return b.scaled(t)
    if t == 0:
        return a.scaled(s)
    return minkowski_sum(a.scaled(s), b.scaled(t))


def affine_image(body: Body, psi: AffineMap) -> Body:
    if psi.matrix.shape != (body.dim, body.dim):
        raise DimensionMismatch("map and body dimensions differ")
    if abs(psi.det) <= tolerances().det:
        raise SingularMap(f"|det| = {abs(psi.det):.3e}")
    return Body(psi.apply(body.vertices))


def project(body: Body, basis) -> Body:
    """Orthogonal projection onto ``span(basis)``, in basis coordinates."""
    basis = np.atleast_2d(np.asarray(basis, dtype=float))
    k, n = basis.shape
    if n != body.dim or not 1 <= k < n:
        raise BadBasis(f"need 1 <= k < {body.dim} basis vectors in R^{body.dim}")
    if np.abs(basis @ basis.T - np.eye(k)).max() > 1e-9:
        raise BadBasis("basis is not orthonormal")
    return Body(body.vertices @ basis.T)


def project_along(body: Body, u) -> tuple[Body, np.ndarray]:
    """Projection onto ``u``-perp; returns the shadow and the basis used."""
    basis = complement_basis([np.asarray(u, dtype=float) / np.linalg.norm(u)])
    return project(body, basis), basis


def to_hrep(body: Body) -> HPolytope:
    return body.hrep


def _bounded(normals: np.ndarray, offsets: np.ndarray) -> bool:
    n = normals.shape[1]
    for j in range(n):
        for sign in (1.0, -1.0):
            c = np.zeros(n)
            c[j] = sign
            if lp.solve(lp.LinearProgram(normals, offsets, c)).status == lp.UNBOUNDED:
                return False
    return True


def to_vrep(h: HPolytope) -> Body:
    """Vertex enumeration of a bounded, full-dimensional H-polytope."""
    normals = np.atleast_2d(np.asarray(h.normals, dtype=float))
    offsets = np.asarray(h.offsets, dtype=float)
    norms = np.linalg.norm(normals, axis=1)
    normals, offsets = normals / norms[:, None], offsets / norms
    res = lp.chebyshev(normals, offsets)
    scale = 1.0 + np.abs(offsets).max()
    if res is None or res[1] <= tolerances().geom * scale:
        raise DegenerateInput("H-polytope is empty or has no interior")
    if not _bounded(normals, offsets):
        raise Unbounded("H-polytope is unbounded")
    center = res[0]
    if h.dim == 1:
        lo = max((-b for a, b in zip(normals[:, 0], offsets) if a < 0), default=None)
        hi = min((b for a, b in zip(normals[:, 0], offsets) if a > 0), default=None)
        return Body([[lo], [hi]])
    hs = HalfspaceIntersection(np.hstack([normals, -offsets[:, None]]), center)
    return Body(hs.intersections)


def intersect(a: Body, b: Body) -> Body:
    ha, hb = a.hrep, b.hrep
    return to_vrep(HPolytope(a.dim, np.vstack([ha.normals, hb.normals]),
                             np.concatenate([ha.offsets, hb.offsets])))


def symmetric_difference_volume(a: Body, b: Body) -> float:
    try:
        common = intersect(a, b).volume()
    except DegenerateInput:
        common = 0.0
    return a.volume() + b.volume() - 2.0 * common


def hausdorff(a: Body, b: Body) -> float:
    """Hausdorff distance between polytopes, via support functions.

    Exact for the max over the union of both facet-normal fans, which is
    where the support-function difference of two polytopes peaks.
    """
    dirs = []
    for body in (a, b):
        if body.full_dimensional:
            dirs.append(body.hrep.normals)
    dirs.append(np.vstack([np.eye(a.dim), -np.eye(a.dim)]))
    dirs = np.vstack(dirs)
    return float(np.abs(a.h(dirs) - b.h(dirs)).max())


# ---------------------------------------------------------------- named bodies

def standard_simplex(n: int) -> Body:
    """Convex hull of the origin and the coordinate unit vectors."""
    return Body(np.vstack([np.zeros(n), np.eye(n)]), name=f"standard_simplex_{n}")


def regular_simplex(n: int, edge: float = 1.0) -> Body:
    """Regular n-simplex with the given edge length, centroid at the origin."""
    if n < 1:
        raise BadParameter("n must be positive")
    corners = np.eye(n + 1) / math.sqrt(2.0)
    frame = complement_basis([np.ones(n + 1) / math.sqrt(n + 1)])
    verts = (corners - corners.mean(axis=0)) @ frame.T
    return Body(edge * verts, name=f"regular_simplex_{n}")


def cube(n: int, side: float = 1.0) -> Body:
    grid = np.array(np.meshgrid(*[[0.0, side]] * n, indexing="ij")).reshape(n, -1).T
    return Body(grid, name=f"cube_{n}")


def cross_polytope(n: int) -> Body:
    return Body(np.vstack([np.eye(n), -np.eye(n)]), name=f"cross_polytope_{n}")


def cap_point(n: int) -> np.ndarray:
    return np.full(n, 1.0 / (n - 1))


def cap_body(n: int) -> Body:
    """Hull of the standard simplex with the point (1/(n-1), ..., 1/(n-1))."""
    if n < 2:
        raise BadParameter("cap body needs n >= 2")
    pts = np.vstack([np.zeros(n), np.eye(n), cap_point(n)])
    return Body(pts, name=f"cap_body_{n}")


def cap_body_hrep(n: int) -> HPolytope:
    """Facets ``x_i >= 0`` and ``w_i . x <= 1`` (w_i = ones with 0 at i)."""
    w = np.ones((n, n)) - np.eye(n)
    normals = np.vstack([-np.eye(n), w])
    offsets = np.concatenate([np.zeros(n), np.ones(n)])
    return HPolytope(n, normals, offsets)


def prism(n: int, axis: int) -> Body:
    """The prism over the face of the standard simplex opposite ``e_axis``,
    extruded along the segment from the origin to ``e_axis``."""
    if not 0 <= axis < n:
        raise BadParameter(f"axis {axis} out of range for n={n}")
    base = np.vstack([np.zeros(n), np.delete(np.eye(n), axis, axis=0)])
    e = np.eye(n)[axis]
    return Body(np.vstack([base, base + e]), name=f"prism_{n}_{axis}")


def prism_hrep(n: int, axis: int) -> HPolytope:
    w = np.ones(n)
    w[axis] = 0.0
    e = np.eye(n)[axis]
    return HPolytope(n, np.vstack([-np.eye(n), e, w]),
                     np.concatenate([np.zeros(n), [1.0, 1.0]]))


def reflected_scaled(body: Body, factor: float) -> Body:
    """``factor * (-body)``."""
    if factor < 0:
        raise BadParameter("factor must be nonnegative")
    return body.reflected().scaled(factor)


def ball_approx(n: int, m: int, seed: int) -> Body:
    """Hull of ``m`` seeded points on the unit sphere.

    Every vertex lies at distance exactly 1 from the origin, so the body is
    inscribed in the unit ball; :func:`inradius` gives the matching inner
    bound.
    """
    if m < n + 1:
        raise BadParameter(f"need at least {n + 1} points")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((m, n))
    g /= np.linalg.norm(g, axis=1)[:, None]
    return Body(g, name=f"ball_approx_{n}_{m}")


def inradius(body: Body, center=None) -> float:
    center = body.interior_point if center is None else np.asarray(center, dtype=float)
    h = body.hrep
    return float((h.offsets - h.normals @ center).min())


def random_polytope(n: int, m: int, seed: int) -> Body:
    """Hull of ``m`` seeded uniform points in ``[-1, 1]^n``."""
    if m < n + 1:
        raise BadParameter(f"need at least {n + 1} points")
    rng = np.random.default_rng(seed)
    for _ in range(100):
        body = Body(rng.uniform(-1.0, 1.0, size=(m, n)), name=f"random_{n}_{m}_{seed}")
        if body.full_dimensional:
            return body
    raise BadParameter("could not draw a full-dimensional polytope")


def make_body(kind: str, n: int, params: Optional[dict] = None,
              seed: Optional[int] = None) -> Body:
    params = dict(params or {})
    if kind in ("standard_simplex", "xi"):
        return standard_simplex(n)
    if kind == "regular_simplex":
        return regular_simplex(n, params.get("edge", 1.0))
    if kind == "cube":
        return cube(n, params.get("side", 1.0))
    if kind == "cross_polytope":
        return cross_polytope(n)
    if kind == "cap_body":
        return cap_body(n)
    if kind == "prism":
        return prism(n, int(params.get("axis", 0)))
    if kind == "reflected_scaled":
        return reflected_scaled(params["body"], params.get("factor", 1.0))
    if kind == "ball_approx":
        return ball_approx(n, int(params.get("m", 100)), 0 if seed is None else seed)
    if kind == "random_polytope":
        return random_polytope(n, int(params.get("m", 2 * n + 2)), 0 if seed is None else seed)
    raise BadParameter(f"unknown body kind {kind!r}")


# ---------------------------------------------------------------- JSON

def body_from_json(data: dict) -> Body:
    try:
        dim = int(data["dim"])
        verts = np.asarray(data["vertices"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise BadParameter(f"malformed body JSON: {exc}") from exc
    if verts.ndim != 2 or verts.shape[1] != dim or len(verts) == 0:
        raise BadParameter(f"vertices must be a nonempty list of {dim}-vectors")
    return Body(verts, name=data.get("name"))


def load_body(path) -> Body:
    with open(path) as fh:
        return body_from_json(json.load(fh))


def save_body(body: Body, path) -> None:
    with open(path, "w") as fh:
        json.dump(body.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")


FIXTURES = Path(__file__).parent / "data"


def fixture(name: str) -> Body:
    """Load one of the shipped bodies (``xi3``, ``cap3``, ``regular_simplex3``)."""
    return load_body(FIXTURES / f"{name}.json")

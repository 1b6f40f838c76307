"""Translate containment ``K + x in L`` decided by linear programming.

For a polytope ``L = {y : a_j . y <= b_j}`` the translate ``K + x`` lies in
``L`` exactly when ``h_K(a_j) + a_j . x <= b_j`` for every facet, so each
question below is a small LP over the translation (plus one scale variable
where needed).  Only the facet normals of ``L`` are used.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import lp
from .config import tolerances
from .errors import DimensionMismatch, NotASimplex, NumericalFailure, PointBody, PreconditionFailed
from .mixedvol import base_height_mixed
from .polytope import Body, prism_hrep, project, standard_simplex
from .linalg import complement_basis


@dataclass
class ContainmentWitness:
    feasible: bool
    translation: Optional[np.ndarray] = None
    violated_facet: Optional[tuple] = None     # (unit normal, deficit)
    margin: float = float("nan")               # best achievable min facet slack


@dataclass
class ScaleResult:
    alpha: float
    translation: np.ndarray


def _check_dims(K: Body, L: Body):
    if K.dim != L.dim:
        raise DimensionMismatch(f"R^{K.dim} vs R^{L.dim}")


def containment_tol(L: Body) -> float:
    return tolerances().geom * max(1.0, L.scale)


def translate_into(K: Body, L: Body) -> ContainmentWitness:
    """Decide whether some translate of ``K`` fits in ``L``.

    The LP maximizes the smallest facet slack, so a positive verdict comes
    with a translation as deep inside ``L`` as possible and ``margin``
    reports how much room is left (negative when infeasible).
    """
    _check_dims(K, L)
    h = L.hrep
    rhs = h.offsets - K.h(h.normals)
    res = lp.chebyshev(h.normals, rhs)
    if res is None:
        raise NumericalFailure("containment LP failed")
    x, tau = res
    slack = rhs - h.normals @ x
    if tau >= -containment_tol(L):
        return ContainmentWitness(True, x, None, tau)
    j = int(np.argmin(slack))
    return ContainmentWitness(False, None, (h.normals[j].copy(), float(-slack[j])), tau)


def verify_witness(K: Body, L: Body, x, tol: float = 1e-8) -> bool:
    h = L.hrep
    return bool(np.all(K.h(h.normals) + h.normals @ x <= h.offsets + tol))


def max_scale(K: Body, L: Body) -> ScaleResult:
    """Largest ``alpha`` such that ``L`` contains a translate of ``alpha K``."""
    _check_dims(K, L)
    if K.affine_dim == 0:
        raise PointBody("every dilate of a point fits; alpha is unbounded")
    h = L.hrep
    c = K.interior_point
    hk = K.h(h.normals) - h.normals @ c
    A = np.hstack([h.normals, hk[:, None]])
    out = lp.solve(lp.LinearProgram(A, h.offsets, np.r_[np.zeros(K.dim), 1.0]))
    if out.status != lp.OPTIMAL:
        raise NumericalFailure(f"max_scale LP {out.status}")
    alpha = float(out.x[-1])
    # alpha (K - c) + x  =  alpha K + (x - alpha c)
    return ScaleResult(alpha, out.x[:-1] - alpha * c)


def min_cover_dilate(K: Body, L: Body) -> tuple[float, np.ndarray]:
    """Smallest ``lam`` such that ``lam L`` (dilated about the origin) contains a
    translate ``K + x``.

    The translation absorbs where the origin sits relative to ``L``.
    """
    _check_dims(K, L)
    h = L.hrep
    n = K.dim
    A = np.vstack([np.hstack([h.normals, -h.offsets[:, None]]),
                   np.r_[np.zeros(n), -1.0][None, :]])
    b = np.r_[-K.h(h.normals), 0.0]
    out = lp.solve(lp.LinearProgram(A, b, np.r_[np.zeros(n), 1.0], "minimize"))
    if out.status != lp.OPTIMAL:
        raise NumericalFailure(f"min_cover_dilate LP {out.status}")
    return float(out.x[-1]), out.x[:-1]


def lutwak_simplex_contains(T: Body, K: Body) -> bool:
    """Simplex containment test ``V_{n-1,1}(T, K) <= V_n(T)``.

    A simplex contains a translate of ``K`` exactly when this holds, so the
    answer needs no LP at all.
    """
    _check_dims(K, T)
    if len(T.vertices) != T.dim + 1 or not T.full_dimensional:
        raise NotASimplex(f"expected {T.dim + 1} affinely independent vertices")
    vol = T.volume()
    return base_height_mixed(T, K) <= vol * (1.0 + 1e-9)


def corner_offset(K: Body) -> np.ndarray:
    """Translation ``(h_K(-e_1), ..., h_K(-e_n))`` pushing ``K`` into the positive orthant corner."""
    return -K.vertices.min(axis=0)


def corner_normalize(K: Body) -> Body:
    return K.translate(corner_offset(K))


def hide_behind_simplex_witness(K: Body) -> tuple[np.ndarray, bool]:
    """Translate ``K`` into the cap body over the standard simplex.

    Only the coordinate shadows matter: once ``K`` sits in the orthant
    corner, a covered shadow along ``e_i`` forces ``K`` into the prism
    ``C_i``, and the prisms intersect in the cap body.  Raises
    PreconditionFailed at the first axis whose shadow is not covered.
    """
    n = K.dim
    xi = standard_simplex(n)
    for i in range(n):
        e = np.eye(n)[i]
        basis = complement_basis([e])
        if not translate_into(project(K, basis), project(xi, basis)).feasible:
            raise PreconditionFailed(f"shadow along e_{i + 1} is not covered", e)
    x = corner_offset(K)
    moved = K.vertices + x
    tol = containment_tol(K)
    inside = all(
        np.all(moved @ prism_hrep(n, i).normals.T <= prism_hrep(n, i).offsets + tol)
        for i in range(n))
    return x, bool(inside)

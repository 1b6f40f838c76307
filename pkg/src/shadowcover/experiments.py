"""Seeded generators for the randomized experiments."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .containment import max_scale
from .linalg import complement_basis, random_linear_map
from .polytope import Body, PointCloud, project, random_polytope, standard_simplex
from .shadow import sample_directions


def random_simplex(n: int, seed: int, min_volume: float = 1e-2) -> Body:
    rng = np.random.default_rng(seed)
    while True:
        T = Body(rng.uniform(-1.0, 1.0, size=(n + 1, n)))
        if T.full_dimensional and len(T.vertices) == n + 1 and T.volume() > min_volume:
            return T


def lutwak_pair(n: int, seed: int) -> tuple[Body, Body]:
    """A random simplex and a random body scaled to straddle containment.

    The body is dilated to between 0.6 and 1.4 times its largest fitting
    scale, so roughly half the pairs are contained.
    """
    rng = np.random.default_rng(10_000 + seed)
    T = random_simplex(n, seed)
    K = random_polytope(n, int(rng.integers(n + 2, 3 * n + 3)), 20_000 + seed)
    K = K.translate(rng.uniform(-2.0, 2.0, size=n))
    alpha = max_scale(K, T).alpha
    s = rng.uniform(0.6, 1.4)
    while abs(s - 1.0) < 1e-3:
        s = rng.uniform(0.6, 1.4)
    return T, K.scaled(s * alpha)


def shadow_scale(K: Body, L: Body, directions) -> float:
    """Smallest over ``directions`` of the largest scale at which ``L_u`` covers ``K_u``."""
    best = np.inf
    for u in directions:
        basis = complement_basis([u])
        best = min(best, max_scale(PointCloud(K.vertices @ basis.T), project(L, basis)).alpha)
    return float(best)


@dataclass
class HiddenBody:
    """A body whose simplex shadows cover its own but which the simplex does not contain."""

    K: Body
    containment_scale: float
    shadow_scale: float
    source_seed: int


def covered_not_contained(seed: int, n: int = 3, count: int = 300,
                          min_gap: float = 1.03, position: float = 0.3) -> HiddenBody:
    """Draw random polytopes until one has a real gap between the two scales.

    With ``alpha`` the largest scale at which the standard simplex contains a
    translate and ``beta`` the largest at which all sampled shadows are
    covered, the body is dilated to ``alpha + position (beta - alpha)``: past
    containment, but comfortably inside the shadow condition.
    """
    xi = standard_simplex(n)
    for k in range(1000):
        src = seed * 1000 + k
        K = random_polytope(n, 2 * n + 2, src)
        K = K.translate(-K.interior_point)
        alpha = max_scale(K, xi).alpha
        dirs = sample_directions(n, count, "informed", seed, bodies=(K, xi)).directions
        beta = shadow_scale(K, xi, dirs)
        if beta > min_gap * alpha:
            s = alpha + position * (beta - alpha)
            return HiddenBody(K.scaled(s), alpha / s, beta / s, src)
    raise RuntimeError("no body with a containment/shadow gap found")


def transport_case(seed: int, n: int = 3):
    """Random ``(K, L, psi, u)`` with ``L`` scaled so verdicts vary."""
    rng = np.random.default_rng(30_000 + seed)
    K = random_polytope(n, int(rng.integers(n + 2, 3 * n + 3)), 40_000 + seed)
    L = random_polytope(n, int(rng.integers(n + 2, 3 * n + 3)), 50_000 + seed)
    L = L.scaled(rng.uniform(0.8, 2.5))
    psi = random_linear_map(n, 60_000 + seed)
    u = rng.standard_normal(n)
    return K, L, psi, u / np.linalg.norm(u)

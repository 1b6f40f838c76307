"""Mixed volumes of two bodies and the volume profile of Minkowski interpolation.

Two independent routes to the first mixed volume are provided: fitting the
Steiner polynomial ``s -> V(K + sL)`` through exact Minkowski sums, and the
facet formula ``V_{n-1,1}(P, K) = (1/n) sum_u h_K(u) |P^u|`` for a polytope
``P``.  They share nothing beyond the volume kernel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from .errors import DegenerateInput, DimensionMismatch, IllConditioned, NumericalFailure, ZeroVolume
from .linalg import solve_linear
from .polytope import Body, combination, minkowski_sum

MAX_STEINER_DIM = 6


def _volume_or_zero(body: Body) -> float:
    try:
        return body.volume()
    except DegenerateInput:
        return 0.0


@dataclass(frozen=True)
class SteinerCoefficients:
    """``values[i]`` is the mixed volume ``V_{n-i,i}(K, L)``."""

    n: int
    values: tuple
    residual: float = 0.0

    def polynomial(self) -> Polynomial:
        """``s -> V(K + sL)``."""
        return Polynomial([math.comb(self.n, i) * v for i, v in enumerate(self.values)])

    def volume(self, a: float, b: float) -> float:
        """``V(aK + bL)`` from the expansion."""
        n = self.n
        return float(sum(math.comb(n, i) * a ** (n - i) * b ** i * v
                         for i, v in enumerate(self.values)))


def steiner_fit(K: Body, L: Body) -> SteinerCoefficients:
    """Mixed volumes from ``V(K + sL)`` at ``s = 0, 1, ..., n``.

    An extra evaluation at ``s = n + 1`` checks the fitted polynomial; a
    relative miss above 1e-7 raises NumericalFailure.
    """
    if K.dim != L.dim:
        raise DimensionMismatch(f"R^{K.dim} vs R^{L.dim}")
    n = K.dim
    if n > MAX_STEINER_DIM:
        raise IllConditioned(f"Steiner fit is limited to n <= {MAX_STEINER_DIM}")
    nodes = np.arange(n + 2, dtype=float)
    vols = np.array([_volume_or_zero(combination(K, L, 1.0, s)) for s in nodes])
    vander = np.vander(nodes[:-1], n + 1, increasing=True)
    coeffs = solve_linear(vander, vols[:-1])
    predicted = Polynomial(coeffs)(nodes[-1])
    residual = abs(predicted - vols[-1]) / max(abs(vols[-1]), 1e-300)
    if residual > 1e-7:
        raise NumericalFailure(f"Steiner fit residual {residual:.2e}")
    values = tuple(float(c / math.comb(n, i)) for i, c in enumerate(coeffs))
    return SteinerCoefficients(n, values, float(residual))


def base_height_mixed(P: Body, K: Body) -> float:
    """``V_{n-1,1}(P, K)`` by summing support values against facet areas of ``P``."""
    if P.dim != K.dim:
        raise DimensionMismatch(f"R^{P.dim} vs R^{K.dim}")
    h = P.hrep
    return float(K.h(h.normals) @ P.facet_measures / P.dim)


@dataclass(frozen=True)
class InterpFamily:
    """``f(t) = V((1-t) K + t T)`` as an exact degree-n polynomial."""

    K: Body
    T: Body
    steiner: SteinerCoefficients
    poly: Polynomial

    @property
    def n(self) -> int:
        return self.steiner.n

    def f(self, t):
        return self.poly(t)

    def fprime(self, t):
        return self.poly.deriv()(t)

    def fprime_at_1(self) -> float:
        """``n V(T) - n V_{1,n-1}(K, T)``, with the mixed term by the facet formula."""
        n = self.n
        return n * self.T.volume() - n * base_height_mixed(self.T, self.K)


def interp_family(K: Body, T: Body) -> InterpFamily:
    st = steiner_fit(K, T)
    n = st.n
    one_minus = Polynomial([1.0, -1.0])
    t = Polynomial([0.0, 1.0])
    poly = Polynomial([0.0])
    for i, v in enumerate(st.values):
        poly = poly + math.comb(n, i) * v * one_minus ** (n - i) * t ** i
    return InterpFamily(K, T, st, poly)


def _bisect(g, lo, hi, tol):
    glo = g(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def optimize_interp(K: Body, T: Body, family: InterpFamily | None = None,
                    grid: int = 4096) -> tuple[float, float]:
    """Global maximizer of ``f`` on ``[0, 1]``.

    Critical points are isolated by sign changes of ``f'`` on a uniform grid
    and refined by bisection to 1e-12.  When ``t = 1`` is within rounding of
    the maximum it is preferred, so flat and monotone profiles report 1.
    """
    fam = family or interp_family(K, T)
    d = fam.poly.deriv()
    ts = np.linspace(0.0, 1.0, grid + 1)
    ds = d(ts)
    candidates = [0.0, 1.0]
    for a, b, da, db in zip(ts[:-1], ts[1:], ds[:-1], ds[1:]):
        if da > 0 >= db or da >= 0 > db:
            candidates.append(_bisect(d, a, b, 1e-12))
    values = [float(fam.f(t)) for t in candidates]
    best = max(values)
    tol = 1e-12 * max(abs(best), 1e-300)
    if values[1] >= best - tol:
        return 1.0, values[1]
    i = int(np.argmax(values))
    return float(candidates[i]), values[i]


def brunn_minkowski_gap(K: Body, L: Body, t: float) -> float:
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    n = K.dim
    mixed = combination(K, L, 1.0 - t, t)
    return (mixed.volume() ** (1.0 / n) - (1.0 - t) * K.volume() ** (1.0 / n)
            - t * L.volume() ** (1.0 / n))


def rogers_shephard_ratio(K: Body) -> float:
    """``V(K - K) / V(K)``; lies in ``[2^n, C(2n, n)]``."""
    vol = _volume_or_zero(K)
    if vol <= 0.0:
        raise ZeroVolume("body has no volume")
    return minkowski_sum(K, K.reflected()).volume() / vol

"""Dense two-phase simplex for small LPs of the form ``opt c.x  s.t.  A x <= b``.

Variables are free.  Problems here have tens of rows, so the solver keeps a
full tableau, uses Dantzig pricing, and falls back to Bland's rule once it
has made ``5 (m + k)`` degenerate pivots in a row.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .config import tolerances
from .errors import NumericalFailure

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LinearProgram:
    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    sense: str = "maximize"

    def __post_init__(self):
        self.A = np.atleast_2d(np.asarray(self.A, dtype=float))
        self.b = np.asarray(self.b, dtype=float).reshape(-1)
        self.c = np.asarray(self.c, dtype=float).reshape(-1)
        m, k = self.A.shape
        if m < 1 or k < 1:
            raise ValueError("need at least one row and one column")
        if self.b.shape != (m,) or self.c.shape != (k,):
            raise ValueError(
                f"inconsistent shapes A{self.A.shape} b{self.b.shape} c{self.c.shape}")
        if self.sense not in ("maximize", "minimize"):
            raise ValueError(f"unknown sense {self.sense!r}")
        if not (np.all(np.isfinite(self.A)) and np.all(np.isfinite(self.b))
                and np.all(np.isfinite(self.c))):
            raise ValueError("LP data must be finite")


@dataclass
class LPOutcome:
    status: str
    x: Optional[np.ndarray] = None
    objective: float = float("nan")
    duals: Optional[np.ndarray] = None
    farkas: Optional[np.ndarray] = None   # y >= 0, y A = 0, y b < 0 when infeasible
    pivots: int = 0
    extra: dict = field(default_factory=dict)


class _Unbounded(Exception):
    pass


class _IterationLimit(Exception):
    pass


def _run_simplex(T, basis, cost, allowed, max_iter):
    """Minimize ``cost . z`` on tableau ``T = [B^-1 Aeq | B^-1 beq]`` in place.

    ``allowed`` masks the columns that may enter.  Returns the pivot count.
    """
    tol = tolerances().pivot
    m, ncols = T.shape[0], T.shape[1] - 1
    degenerate_run = 0
    bland_after = 5 * (m + ncols)
    pivots = 0
    while True:
        if pivots > max_iter:
            raise _IterationLimit
        cb = cost[basis]
        reduced = cost - cb @ T[:, :ncols]
        reduced[~allowed] = 0.0
        reduced[basis] = 0.0
        candidates = np.flatnonzero(reduced < -tol)
        if candidates.size == 0:
            return pivots
        if degenerate_run >= bland_after:
            enter = int(candidates[0])
        else:
            enter = int(candidates[np.argmin(reduced[candidates])])
        col = T[:, enter]
        positive = col > tol
        if not positive.any():
            raise _Unbounded
        ratios = np.full(m, np.inf)
        ratios[positive] = T[positive, -1] / col[positive]
        best = ratios.min()
        ties = np.flatnonzero(ratios <= best + tol * max(1.0, abs(best)))
        # Bland tie-break on the leaving side: smallest basic variable index
        leave = int(ties[np.argmin(basis[ties])])
        degenerate_run = degenerate_run + 1 if best <= tol else 0
        _pivot(T, leave, enter)
        basis[leave] = enter
        pivots += 1


def _pivot(T, row, col):
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])


def _standard_form_solve(Aeq, beq, cost, max_iter=None):
    """Minimize ``cost . z`` s.t. ``Aeq z = beq``, ``z >= 0`` (two phases).

    Returns ``(status, z, basis, kept_rows, pivots)``.
    """
    Aeq = np.array(Aeq, dtype=float)
    beq = np.array(beq, dtype=float)
    m, n = Aeq.shape
    flip = beq < 0
    Aeq[flip] *= -1.0
    beq[flip] *= -1.0
    if max_iter is None:
        max_iter = 50 * (m + n) + 200
    T = np.hstack([Aeq, np.eye(m), beq[:, None]])
    basis = np.arange(n, n + m)
    phase1_cost = np.concatenate([np.zeros(n), np.ones(m)])
    allowed = np.ones(n + m, dtype=bool)
    pivots = _run_simplex(T, basis, phase1_cost, allowed, max_iter)
    infeas = phase1_cost[basis] @ T[:, -1]
    scale = 1.0 + np.abs(beq).max(initial=0.0)
    if infeas > tolerances().lp_feas * scale:
        return INFEASIBLE, None, basis, None, pivots
    # drive zero-level artificials out of the basis, dropping redundant rows
    keep = np.ones(m, dtype=bool)
    for r in range(m):
        if basis[r] < n:
            continue
        row = T[r, :n]
        j = int(np.argmax(np.abs(row)))
        if abs(row[j]) > tolerances().pivot * 100:
            _pivot(T, r, j)
            basis[r] = j
            pivots += 1
        else:
            keep[r] = False
    T = np.hstack([T[keep][:, :n], T[keep][:, -1:]])
    basis = basis[keep]
    allowed = np.ones(n, dtype=bool)
    try:
        pivots += _run_simplex(T, basis, np.asarray(cost, dtype=float), allowed, max_iter)
    except _Unbounded:
        return UNBOUNDED, None, basis, keep, pivots
    z = np.zeros(n)
    z[basis] = T[:, -1]
    return OPTIMAL, z, basis, keep, pivots


def _farkas(A, b):
    """y >= 0 with A^T y = 0 and b.y = -1, or None."""
    m, k = A.shape
    Aeq = np.vstack([A.T, b[None, :]])
    beq = np.concatenate([np.zeros(k), [-1.0]])
    try:
        status, y, *_ = _standard_form_solve(Aeq, beq, np.zeros(m))
    except _IterationLimit:
        return None
    return y if status == OPTIMAL else None


def _solve_once(p: LinearProgram, b):
    A = p.A
    m, k = A.shape
    c = p.c if p.sense == "maximize" else -p.c
    # x = xp - xm, slack s: A xp - A xm + s = b
    Aeq = np.hstack([A, -A, np.eye(m)])
    cost = np.concatenate([-c, c, np.zeros(m)])
    status, z, basis, keep, pivots = _standard_form_solve(Aeq, b, cost)
    if status != OPTIMAL:
        return status, None, None, pivots
    x = z[:k] - z[k:2 * k]
    # duals from the final basis: y_i = -sigma_i pi_i
    sigma = np.where(b < 0, -1.0, 1.0)
    Aeq_signed = Aeq * sigma[:, None]
    rows = np.flatnonzero(keep)
    B = Aeq_signed[np.ix_(rows, basis)]
    y = np.zeros(m)
    try:
        pi = np.linalg.solve(B.T, cost[basis])
        y[rows] = -pi * sigma[rows]
    except np.linalg.LinAlgError:
        y = None
    return OPTIMAL, x, y, pivots


def solve(p: LinearProgram) -> LPOutcome:
    """Solve ``p``; optimal outcomes carry a feasible witness and duals.

    Infeasible outcomes carry a Farkas vector ``y >= 0`` with ``y A = 0`` and
    ``y b < 0``.  If the simplex stalls, the right-hand side is perturbed by
    a tiny seeded amount and the solve is retried once before giving up.
    """
    attempts = [p.b]
    rng = np.random.default_rng(12345)
    scale = 1.0 + np.abs(p.b).max()
    attempts.append(p.b + rng.uniform(0.0, 1e-11, size=p.b.shape) * scale)
    for b in attempts:
        try:
            status, x, y, pivots = _solve_once(p, b)
        except _IterationLimit:
            continue
        if status == OPTIMAL:
            obj = float(p.c @ x)
            return LPOutcome(OPTIMAL, x, obj, y, pivots=pivots)
        if status == INFEASIBLE:
            return LPOutcome(INFEASIBLE, farkas=_farkas(p.A, p.b), pivots=pivots)
        return LPOutcome(UNBOUNDED, pivots=pivots)
    raise NumericalFailure("simplex failed to terminate after perturbation restart")


def chebyshev(A, b, cap: Optional[float] = None):
    """Maximize the minimum normalized slack of ``A x <= b``.

    Returns ``(x, tau)`` where ``tau = min_i (b_i - a_i.x) / |a_i|`` is as
    large as possible (capped at ``cap``), or ``None`` if the LP itself
    fails.  ``tau < 0`` means the system is infeasible by that margin.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).reshape(-1)
    m, k = A.shape
    norms = np.linalg.norm(A, axis=1)
    if cap is None:
        cap = 1.0 + np.abs(b).max(initial=0.0)
    A_ext = np.vstack([np.hstack([A, norms[:, None]]),
                       np.concatenate([np.zeros(k), [1.0]])[None, :]])
    b_ext = np.concatenate([b, [cap]])
    c = np.concatenate([np.zeros(k), [1.0]])
    out = solve(LinearProgram(A_ext, b_ext, c, "maximize"))
    if out.status != OPTIMAL:
        return None
    return out.x[:k], float(out.x[k])


def feasible(A, b) -> Optional[np.ndarray]:
    """Interior-leaning witness of ``{x : A x <= b}``, or None when empty."""
    res = chebyshev(A, b)
    if res is None:
        return None
    x, tau = res
    b = np.asarray(b, dtype=float).reshape(-1)
    if tau < -tolerances().lp_feas * (1.0 + np.abs(b).max(initial=0.0)):
        return None
    return x

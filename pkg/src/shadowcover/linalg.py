"""Small dense linear algebra: orthonormal frames, complements, rotations, solves.

A *basis* throughout the package is a ``(k, n)`` float array whose rows are
orthonormal vectors of R^n.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import tolerances
from .errors import RankDeficient, Singular


@dataclass(frozen=True)
class AffineMap:
    """The map ``x -> matrix @ x + shift``."""

    matrix: np.ndarray
    shift: np.ndarray

    @classmethod
    def linear(cls, matrix) -> "AffineMap":
        matrix = np.asarray(matrix, dtype=float)
        return cls(matrix, np.zeros(matrix.shape[0]))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.matrix))

    def apply(self, points) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        return points @ self.matrix.T + self.shift

    def apply_direction(self, u) -> np.ndarray:
        return self.matrix @ np.asarray(u, dtype=float)


def _as_rows(vs) -> np.ndarray:
    arr = np.atleast_2d(np.asarray(vs, dtype=float))
    if arr.size == 0:
        return arr.reshape(0, arr.shape[-1] if arr.ndim == 2 else 0)
    return arr


def _orthonormalize_into(frame: list, v: np.ndarray, drop_tol: float) -> bool:
    # two passes of modified Gram-Schmidt keep the frame orthonormal to ~1e-15
    w = v.copy()
    for _ in range(2):
        for q in frame:
            w -= (q @ w) * q
    norm = np.linalg.norm(w)
    if norm <= drop_tol:
        return False
    frame.append(w / norm)
    return True


def gram_schmidt(vs) -> np.ndarray:
    """Orthonormal basis of ``span(vs)``.

    Vectors whose residual after projection has norm at most 1e-10 are
    dropped, so dependent inputs simply shrink the result.
    """
    rows = _as_rows(vs)
    tol = tolerances().rank
    frame: list[np.ndarray] = []
    for v in rows:
        _orthonormalize_into(frame, v, tol)
    if not frame:
        return np.zeros((0, rows.shape[1]))
    return np.array(frame)


def complement_basis(vs) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of ``span(vs)``.

    Raises RankDeficient when the inputs are linearly dependent.  The result
    is a deterministic function of the input: the complement is completed
    from the standard basis in coordinate order.
    """
    rows = _as_rows(vs)
    k, n = rows.shape
    tol = tolerances().rank
    if k:
        sv = np.linalg.svd(rows, compute_uv=False)
        if k > n or sv[-1] <= tol * max(1.0, sv[0]):
            raise RankDeficient(f"{k} input vectors are not linearly independent")
    frame: list[np.ndarray] = []
    for v in rows:
        _orthonormalize_into(frame, v, 0.0)
    eye = np.eye(n)
    out: list[np.ndarray] = []
    while len(frame) < n:
        # greedily take the standard axis with the largest surviving component
        residual = eye - sum((np.outer(q, q) for q in frame), np.zeros((n, n)))
        j = int(np.argmax(np.round(np.linalg.norm(residual, axis=0), 12)))
        _orthonormalize_into(frame, eye[j], 0.0)
        out.append(frame[-1])
    if not out:
        return np.zeros((0, n))
    return np.array(out)


def projector(basis) -> np.ndarray:
    q = _as_rows(basis)
    return q.T @ q


def random_rotation(n: int, seed: int) -> AffineMap:
    """Seeded rotation in SO(n) with zero shift."""
    if n < 1:
        raise ValueError("dimension must be positive")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    q = q * np.sign(np.where(np.diag(r) == 0.0, 1.0, np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return AffineMap.linear(q)


def random_linear_map(n: int, seed: int, min_singular: float = 0.2) -> AffineMap:
    """Seeded nonsingular (generally non-orthogonal) linear map."""
    rng = np.random.default_rng(seed)
    u = random_rotation(n, int(rng.integers(2**31))).matrix
    v = random_rotation(n, int(rng.integers(2**31))).matrix
    s = rng.uniform(min_singular, 2.0, size=n)
    return AffineMap(u @ np.diag(s) @ v, rng.uniform(-1.0, 1.0, size=n))


def solve_linear(A, b, return_cond: bool = False):
    """Solve ``A x = b`` by Gaussian elimination with partial pivoting.

    With ``return_cond`` the 1-norm condition estimate ``||A|| ||A^-1||`` is
    returned alongside the solution.
    """
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    m = A.shape[0]
    if A.shape != (m, m) or b.shape != (m,):
        raise ValueError(f"expected square system, got A{A.shape}, b{b.shape}")
    floor = tolerances().singular
    M = np.hstack([A, b[:, None]])
    scale = max(1.0, np.abs(A).max()) if m else 1.0
    for col in range(m):
        piv = col + int(np.argmax(np.abs(M[col:, col])))
        if abs(M[piv, col]) < floor * scale:
            raise Singular(f"pivot {M[piv, col]:.3e} in column {col}")
        if piv != col:
            M[[col, piv]] = M[[piv, col]]
        factors = M[col + 1:, col] / M[col, col]
        M[col + 1:, col:] -= np.outer(factors, M[col, col:])
    x = np.zeros(m)
    for row in range(m - 1, -1, -1):
        x[row] = (M[row, m] - M[row, row + 1:m] @ x[row + 1:]) / M[row, row]
    if return_cond:
        return x, float(np.linalg.cond(A, 1))
    return x

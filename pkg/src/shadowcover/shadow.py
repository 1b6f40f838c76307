"""Sampled shadow-covering certificates.

Whether every shadow of ``L`` can cover the matching shadow of ``K`` is a
statement about infinitely many subspaces.  The sweeps here test a finite,
seeded sample of them (plus, for hyperplane shadows, every direction at
which polytope shadows change combinatorially: facet normals and vertex
differences).  A passing sweep is a certificate at the sampled resolution,
not a proof, and every report says so.
"""
from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .config import tolerances
from .containment import ContainmentWitness, containment_tol, min_cover_dilate, translate_into
from .errors import BadCodimension, BadStrategy, PreconditionFailed, SweepInconclusive
from .linalg import AffineMap, complement_basis, random_rotation
from .polytope import Body, PointCloud, affine_image, project

LIMITATION = ("sampled sweep: a certificate at the stated direction/subspace "
              "resolution, not a proof over all subspaces")

STRATEGIES = ("fibonacci", "gaussian", "informed")


@dataclass
class DirectionSample:
    n: int
    directions: np.ndarray
    strategy: str
    seed: int


def _dedup(dirs: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Drop directions equal to an earlier one up to sign."""
    kept: list[np.ndarray] = []
    for u in dirs:
        if all(abs(abs(float(u @ w)) - 1.0) > tol for w in kept):
            kept.append(u)
    return np.array(kept).reshape(-1, dirs.shape[1])


def _normalize(rows: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(rows, axis=1)
    ok = norms > 1e-12
    return rows[ok] / norms[ok, None]


def fibonacci_sphere(count: int) -> np.ndarray:
    i = np.arange(count) + 0.5
    z = 1.0 - 2.0 * i / count
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = math.pi * (3.0 - math.sqrt(5.0)) * i
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def informed_directions(K: Body, L: Body, cap: int = 2000) -> np.ndarray:
    """Facet normals of both bodies and normalized vertex differences."""
    parts = []
    for body in (K, L):
        if body.full_dimensional:
            parts.append(body.hrep.normals)
    for body in (K, L):
        v = body.vertices
        diffs = (v[:, None, :] - v[None, :, :])[np.triu_indices(len(v), 1)]
        parts.append(_normalize(diffs)[:cap])
    return _dedup(_normalize(np.vstack(parts)))


def sample_directions(n: int, count: int, strategy: str = "gaussian", seed: int = 0,
                      bodies: Optional[tuple] = None) -> DirectionSample:
    """Seeded unit directions in R^n.

    In the plane every strategy returns ``count`` evenly spaced angles on the
    half circle (``u`` and ``-u`` cast the same shadow).  ``fibonacci`` is the
    golden-spiral point set (rotated by a seeded rotation when ``seed`` is
    nonzero) and exists only for n = 3.  ``informed`` prepends
    :func:`informed_directions` of ``bodies`` to a fibonacci (n = 3) or
    gaussian base sample.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if strategy not in STRATEGIES:
        raise BadStrategy(f"unknown strategy {strategy!r}")
    if n == 2:
        theta = math.pi * np.arange(count) / count
        base = np.column_stack([np.cos(theta), np.sin(theta)])
    elif strategy == "fibonacci" or (strategy == "informed" and n == 3):
        if n != 3:
            raise BadStrategy("fibonacci sampling is only defined for n = 3")
        base = fibonacci_sphere(count)
        if seed:
            base = base @ random_rotation(3, seed).matrix.T
    else:
        rng = np.random.default_rng(seed)
        base = _normalize(rng.standard_normal((count, n)))
    if strategy == "informed":
        if bodies is None:
            raise BadStrategy("informed sampling needs the two bodies")
        base = np.vstack([informed_directions(*bodies), base])
    return DirectionSample(n, base, strategy, seed)


def sample_subspaces(n: int, d: int, count: int, seed: int = 0) -> list[np.ndarray]:
    """Seeded orthonormal frames of ``(n - d)``-dimensional subspaces."""
    if not 1 <= d <= n - 1:
        raise BadCodimension(f"codimension {d} not in 1..{n - 1}")
    if d == 1:
        dirs = sample_directions(n, count, "gaussian", seed).directions
        return [complement_basis([u]) for u in dirs]
    rng = np.random.default_rng(seed)
    frames = []
    for _ in range(count):
        q, r = np.linalg.qr(rng.standard_normal((n, n - d)))
        q = q * np.sign(np.where(np.diag(r) == 0.0, 1.0, np.diag(r)))
        frames.append(q.T.copy())
    return frames


@dataclass
class Verdict:
    covered: bool
    margin: float
    basis: np.ndarray
    direction: Optional[np.ndarray] = None
    witness: Optional[np.ndarray] = None            # translation in subspace coordinates
    violated_facet: Optional[tuple] = None          # (normal in subspace coords, deficit)
    depth: int = 0

    @property
    def witness_ambient(self) -> Optional[np.ndarray]:
        return None if self.witness is None else self.witness @ self.basis

    def to_json(self) -> dict:
        out = {"covered": self.covered, "margin": self.margin, "depth": self.depth}
        if self.direction is not None:
            out["direction"] = self.direction.tolist()
        else:
            out["basis"] = self.basis.tolist()
        if self.witness is not None:
            out["witness"] = self.witness_ambient.tolist()
        if self.violated_facet is not None:
            out["violated_facet"] = {"normal": self.violated_facet[0].tolist(),
                                     "deficit": self.violated_facet[1]}
        return out


def covering_verdict(K: Body, L: Body, basis, direction=None) -> Verdict:
    """Does the shadow of ``L`` on ``span(basis)`` cover a translate of that of ``K``?"""
    basis = np.atleast_2d(np.asarray(basis, dtype=float))
    if basis.shape[0] >= K.dim:
        raise BadCodimension("subspace must be proper")
    w = translate_into(PointCloud(K.vertices @ basis.T), project(L, basis))
    return Verdict(w.feasible, float(w.margin), basis,
                   None if direction is None else np.asarray(direction, dtype=float),
                   w.translation, w.violated_facet)


def direction_verdict(K: Body, L: Body, u) -> Verdict:
    u = np.asarray(u, dtype=float)
    u = u / np.linalg.norm(u)
    return covering_verdict(K, L, complement_basis([u]), u)


@dataclass
class CoveringReport:
    n: int
    d: int
    seed: int
    count: int
    verdicts: list = field(default_factory=list)
    refinement_depth: int = 0

    @property
    def all_covered(self) -> bool:
        return all(v.covered for v in self.verdicts)

    @property
    def worst_margin(self) -> float:
        return min((v.margin for v in self.verdicts), default=float("nan"))

    @property
    def failures(self) -> list:
        return [v for v in self.verdicts if not v.covered]

    def summary(self) -> dict:
        return {"n": self.n, "d": self.d, "seed": self.seed, "sample_count": self.count,
                "evaluated": len(self.verdicts), "all_covered": self.all_covered,
                "worst_margin": self.worst_margin,
                "refinement_depth": self.refinement_depth, "note": LIMITATION}

    def to_json(self, include_verdicts: bool = True) -> dict:
        out = {"schema": "shadowcover/1", "kind": "covering_report", **self.summary()}
        if include_verdicts:
            out["verdicts"] = [v.to_json() for v in self.verdicts]
        return out

    def write_csv(self, fh) -> None:
        n = self.n
        writer = csv.writer(fh)
        if self.d == 1:
            head = [f"u{i}" for i in range(n)]
        else:
            head = [f"b{j}_{i}" for j in range(n - self.d) for i in range(n)]
        writer.writerow(head + ["covered", "margin"] + [f"w{i}" for i in range(n)])
        for v in self.verdicts:
            geo = v.direction if (self.d == 1 and v.direction is not None) else v.basis.ravel()
            wit = v.witness_ambient
            wit = [""] * n if wit is None else [f"{c:.12g}" for c in wit]
            writer.writerow([f"{c:.12g}" for c in geo] + [int(v.covered), f"{v.margin:.12g}"] + wit)


def _children(u: np.ndarray, eps: float) -> list[np.ndarray]:
    tangent = complement_basis([u])
    out = []
    for t in tangent:
        for s in (1.0, -1.0):
            c = u + s * eps * t
            out.append(c / np.linalg.norm(c))
    return out


def _spacing(n: int, count: int) -> float:
    # angular spacing of `count` roughly uniform points on S^{n-1}
    area = 2.0 * math.pi ** (n / 2) / math.gamma(n / 2)
    return (area / max(count, 1)) ** (1.0 / (n - 1))


def covering_sweep(K: Body, L: Body, d: int = 1, count: int = 500, seed: int = 0,
                   refine: bool = False, strategy: Optional[str] = None,
                   stop_on_failure: bool = False, workers: int = 1,
                   max_depth: int = 6) -> CoveringReport:
    """Covering verdicts over a seeded sample of codimension-``d`` shadows.

    For hyperplane shadows the informed directions of ``(K, L)`` are always
    included and evaluated first.  With ``refine`` every direction whose
    margin is below ten times the containment tolerance is probed by
    spherical midpoints at halving offsets until no child changes verdict or
    ``max_depth`` is reached.  The report is a deterministic function of the
    inputs and seed regardless of ``workers``.
    """
    n = K.dim
    if not 1 <= d <= n - 1:
        raise BadCodimension(f"codimension {d} not in 1..{n - 1}")
    report = CoveringReport(n, d, seed, count)
    if d == 1:
        if strategy is None:
            strategy = "informed"
        sample = sample_directions(n, count, strategy, seed, bodies=(K, L))
        jobs = [(complement_basis([u]), u) for u in sample.directions]
    else:
        jobs = [(b, None) for b in sample_subspaces(n, d, count, seed)]

    def run(job):
        return covering_verdict(K, L, job[0], job[1])

    if stop_on_failure or workers <= 1:
        for job in jobs:
            v = run(job)
            report.verdicts.append(v)
            if stop_on_failure and not v.covered:
                return report
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            report.verdicts.extend(pool.map(run, jobs))

    if refine and d == 1:
        _refine(K, L, report, _spacing(n, len(jobs)), max_depth)
    return report


def _refine(K: Body, L: Body, report: CoveringReport, spacing: float, max_depth: int):
    threshold = 10.0 * containment_tol(L)
    frontier = [v for v in report.verdicts if v.margin < threshold and v.direction is not None]
    for depth in range(1, max_depth + 1):
        if not frontier:
            break
        eps = spacing / 2 ** depth
        unstable = []
        for parent in frontier:
            kids = [direction_verdict(K, L, c) for c in _children(parent.direction, eps)]
            for k in kids:
                k.depth = depth
            report.verdicts.extend(kids)
            if any(k.covered != parent.covered for k in kids):
                unstable.extend(k for k in kids if k.margin < threshold)
        report.refinement_depth = depth
        frontier = unstable


def transport_verdict(K: Body, L: Body, psi: AffineMap, u) -> tuple[Verdict, Verdict]:
    """Verdicts for ``(K, L)`` along ``u`` and ``(psi K, psi L)`` along ``psi u / |psi u|``."""
    u = np.asarray(u, dtype=float)
    u = u / np.linalg.norm(u)
    first = direction_verdict(K, L, u)
    moved = psi.apply_direction(u)
    second = direction_verdict(affine_image(K, psi), affine_image(L, psi), moved)
    return first, second


@dataclass
class DilateCertificate:
    n: int
    d: int
    factor: float
    witness: ContainmentWitness
    sweep: Optional[dict] = None

    @property
    def feasible(self) -> bool:
        return self.witness.feasible

    @property
    def translation(self):
        return self.witness.translation

    def to_json(self) -> dict:
        w = self.witness
        return {"schema": "shadowcover/1", "kind": "dilate_certificate", "n": self.n,
                "d": self.d, "factor": self.factor, "feasible": w.feasible,
                "translation": None if w.translation is None else w.translation.tolist(),
                "margin": w.margin, "sweep": self.sweep, "tolerance": tolerances().geom}


def dilate_cover_certificate(K: Body, L: Body, d: int = 1,
                             sweep: Optional[CoveringReport] = None) -> DilateCertificate:
    """Translate ``K`` into ``n/(n-d) L``.

    Raises PreconditionFailed if a supplied sweep did not pass, and
    SweepInconclusive if the dilate does not fit although the sweep passed.
    """
    n = K.dim
    if not 1 <= d <= n - 1:
        raise BadCodimension(f"codimension {d} not in 1..{n - 1}")
    if sweep is not None and not sweep.all_covered:
        bad = sweep.failures[0]
        raise PreconditionFailed("covering sweep did not pass", bad.direction)
    factor = n / (n - d)
    w = translate_into(K, L.scaled(factor))
    if not w.feasible:
        raise SweepInconclusive(
            f"K does not fit in {factor:g} L (margin {w.margin:.3e}); the sweep was "
            "too coarse or the inputs are numerically borderline")
    return DilateCertificate(n, d, factor, w, None if sweep is None else sweep.summary())


def dilate_chain(K: Body, L: Body, d: int, count: int = 100, seed: int = 0) -> dict:
    """Largest sampled covering dilate on subspaces of each dimension ``n-d .. n``.

    Each step up in dimension from ``m`` to ``m+1`` may cost at most a factor
    ``(m+1)/m``; the product of the steps telescopes to ``n/(n-d)``.
    """
    n = K.dim
    levels = {}
    for m in range(n - d, n):
        frames = sample_subspaces(n, n - m, count, seed + m)
        levels[m] = max(min_cover_dilate(project(K, f), project(L, f))[0] for f in frames)
    levels[n] = min_cover_dilate(K, L)[0]
    steps = [(m + 1) / m for m in range(n - d, n)]
    return {"levels": levels, "step_factors": steps, "product": float(np.prod(steps))}


@dataclass
class BoundReport:
    n: int
    d: int
    dilate_bound: float
    volume_bound: float
    rs_bound: float
    ball_bound: float
    asymptote: float
    universal: Optional[float]
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"schema": "shadowcover/1", "kind": "bound_report", **self.__dict__}


BALL_CONSTANT = 1.1696


def bound_report(n: int, d: int = 1) -> BoundReport:
    if n < 2 or not 1 <= d <= n - 1:
        raise BadCodimension(f"need n >= 2 and 1 <= d <= n-1, got n={n}, d={d}")
    notes = []
    if n == 2 and d == 1:
        notes.append("sharp planar constant is 3/2")
    universal = max((m / (m - 1)) ** m for m in range(7, 200)) if d == 1 else None
    return BoundReport(
        n=n, d=d,
        dilate_bound=n / (n - d),
        volume_bound=(n / (n - d)) ** n,
        rs_bound=math.comb(2 * n, n) / 2 ** n,
        ball_bound=BALL_CONSTANT * math.sqrt(n),
        asymptote=math.exp(d),
        universal=universal,
        notes=notes)


@dataclass
class ConjectureProbe:
    n: int
    d: int
    ratios: list = field(default_factory=list)       # volume ratios of covered pairs
    candidates: list = field(default_factory=list)   # indices with ratio > n/(n-1)

    @property
    def max_ratio(self) -> float:
        return max(self.ratios, default=float("nan"))

    @property
    def corollary_bound(self) -> float:
        return (self.n / (self.n - self.d)) ** self.n


def conjecture_probe(pairs: Sequence[tuple], d: int = 1, count: int = 300,
                     seed: int = 0) -> ConjectureProbe:
    """Volume ratios ``V(K)/V(L)`` over pairs whose sampled sweep passes.

    Ratios above ``n/(n-1)`` are recorded as candidates against the sharper
    conjectured bound; none are expected.
    """
    n = pairs[0][0].dim
    probe = ConjectureProbe(n, d)
    for idx, (K, L) in enumerate(pairs):
        if not covering_sweep(K, L, d, count, seed, stop_on_failure=True).all_covered:
            continue
        ratio = K.volume() / L.volume()
        probe.ratios.append(ratio)
        if ratio > n / (n - 1) + 1e-9:
            probe.candidates.append(idx)
    return probe

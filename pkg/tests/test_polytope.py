import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.spatial import ConvexHull

from shadowcover import polytope as pt
from shadowcover.errors import (BadBasis, BadParameter, DegenerateInput, DimensionMismatch,
                                SingularMap, ZeroDirection)
from shadowcover.linalg import AffineMap, complement_basis, random_linear_map
from shadowcover.shadow import fibonacci_sphere


def test_known_volumes():
    for n in (2, 3, 4, 5):
        assert np.isclose(pt.standard_simplex(n).volume(), 1 / math.factorial(n), rtol=1e-12)
        assert np.isclose(pt.cube(n, 1.5).volume(), 1.5 ** n, rtol=1e-12)
        assert np.isclose(pt.cross_polytope(n).volume(), 2 ** n / math.factorial(n), rtol=1e-12)
        # regular simplex of edge a: a^n sqrt(n+1) / (n! 2^(n/2))
        ref = 2.0 ** n * math.sqrt(n + 1) / (math.factorial(n) * 2 ** (n / 2))
        assert np.isclose(pt.regular_simplex(n, 2.0).volume(), ref, rtol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_volume_matches_qhull(n):
    for seed in range(25):
        K = pt.random_polytope(n, 3 * n, seed)
        ref = ConvexHull(K.vertices).volume
        assert np.isclose(K.volume(), ref, rtol=1e-10)


def test_volume_monte_carlo():
    K = pt.random_polytope(3, 12, 5)
    rng = np.random.default_rng(0)
    pts = rng.uniform(-1, 1, size=(200_000, 3))
    est = 8.0 * K.contains_points(pts).mean()
    assert abs(est - K.volume()) < 0.03


def test_regular_simplex_geometry():
    T = pt.regular_simplex(4, 1.0)
    assert np.allclose(T.vertices.mean(axis=0), 0.0, atol=1e-12)
    d = np.linalg.norm(T.vertices[:, None] - T.vertices[None], axis=2)
    off = d[~np.eye(5, dtype=bool)]
    assert np.allclose(off, 1.0)


def test_interior_points_removed():
    pts = np.vstack([pt.cube(3).vertices, [[0.5, 0.5, 0.5], [0.2, 0.3, 0.9]]])
    assert len(pt.Body(pts).vertices) == 8


def test_points_on_facets_and_edges_removed():
    pts = np.vstack([pt.cube(3).vertices, [[0.5, 0.5, 0.0], [0.5, 0.0, 0.0], [1.0, 0.3, 1.0]]])
    assert len(pt.Body(pts).vertices) == 8
    square = np.array([[0, 0], [1, 0], [1, 1], [0, 1], [0.5, 0], [1, 0.5]], dtype=float)
    assert len(pt.Body(square).vertices) == 4


def test_facet_counts_and_measures():
    C = pt.cube(3)
    assert len(C.hrep.normals) == 6
    assert np.allclose(C.facet_measures, 1.0)
    X = pt.standard_simplex(3)
    assert len(X.hrep.normals) == 4
    assert np.isclose(X.facet_measures.sum(), 1.5 + math.sqrt(3) / 2)


def test_minkowski_closure(rng):
    # sum of facet measures times unit normals vanishes
    for seed in range(10):
        K = pt.random_polytope(4, 11, seed)
        assert np.allclose(K.facet_measures @ K.hrep.normals, 0.0, atol=1e-10)


def test_divergence_volume(rng):
    K = pt.random_polytope(3, 10, 1)
    h = K.hrep
    c = rng.standard_normal(3)
    # volume from any apex, even outside
    assert np.isclose(np.sum((h.offsets - h.normals @ c) * K.facet_measures) / 3, K.volume())


def test_degenerate_bodies():
    flat = pt.Body([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0], [0.5, 0.5, 0]])
    assert flat.affine_dim == 2
    assert len(flat.vertices) == 4
    with pytest.raises(DegenerateInput):
        flat.volume()
    with pytest.raises(DegenerateInput):
        pt.hull(flat.vertices)
    seg = pt.Body([[0, 0], [1, 1], [0.5, 0.5], [2, 2]])
    assert seg.affine_dim == 1 and len(seg.vertices) == 2
    point = pt.Body([[1.0, 2.0], [1.0, 2.0]])
    assert point.affine_dim == 0


def test_interval_body():
    I = pt.Body([[3.0], [-1.0], [0.5]])
    assert np.isclose(I.volume(), 4.0)
    assert sorted(I.vertices.ravel()) == [-1.0, 3.0]


def test_hull_dimension_check():
    with pytest.raises(DimensionMismatch):
        pt.hull(np.eye(3), dim=2)


def test_support_and_argmax():
    C = pt.cube(2)
    h, arg = C.support([1.0, 0.0])
    assert h == 1.0 and len(arg) == 2
    with pytest.raises(ZeroDirection):
        C.support([0.0, 0.0])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_minkowski_support_additive(n, rng):
    K = pt.random_polytope(n, 2 * n + 1, 3)
    L = pt.random_polytope(n, 2 * n + 3, 4)
    S = K + L
    dirs = rng.standard_normal((200, n))
    assert np.allclose(S.h(dirs), K.h(dirs) + L.h(dirs))


def test_cube_sum_volume():
    assert np.isclose((pt.cube(3) + pt.cube(3)).volume(), 8.0)


def test_combination_and_scaling(rng):
    K = pt.random_polytope(3, 9, 2)
    L = pt.random_polytope(3, 9, 3)
    M = pt.combination(K, L, 0.3, 0.7)
    dirs = rng.standard_normal((100, 3))
    assert np.allclose(M.h(dirs), 0.3 * K.h(dirs) + 0.7 * L.h(dirs))
    assert np.isclose(K.scaled(2.0).volume(), 8 * K.volume())
    assert np.allclose((-K).h(dirs), K.h(-dirs))
    assert np.allclose((-2.0 * K).h(dirs), 2 * K.h(-dirs))


def test_hrep_vrep_round_trip():
    for n in (2, 3, 4):
        K = pt.random_polytope(n, 3 * n, 17)
        back = pt.to_vrep(pt.to_hrep(K))
        assert pt.hausdorff(K, back) < 1e-9
        assert len(back.vertices) == len(K.vertices)


def test_to_vrep_of_box_hrep():
    H = pt.HPolytope(2, np.array([[1.0, 0], [-1, 0], [0, 1], [0, -1], [1, 1]]),
                     np.array([1.0, 1, 1, 1, 5]))
    B = pt.to_vrep(H)
    assert len(B.vertices) == 4
    assert np.isclose(B.volume(), 4.0)


def test_to_vrep_unbounded_and_empty():
    with pytest.raises(Exception):
        pt.to_vrep(pt.HPolytope(2, np.array([[1.0, 0], [0, 1]]), np.array([1.0, 1.0])))
    with pytest.raises(Exception):
        pt.to_vrep(pt.HPolytope(1, np.array([[1.0], [-1.0]]), np.array([0.0, -1.0])))


def test_intersection_of_shifted_cubes():
    A = pt.cube(3)
    B = pt.cube(3).translate([0.5, 0.5, 0.5])
    assert np.isclose(pt.intersect(A, B).volume(), 0.125)
    assert np.isclose(pt.symmetric_difference_volume(A, B), 2 - 0.25)


def test_hausdorff_of_dilates():
    C = pt.cross_polytope(3)
    assert np.isclose(pt.hausdorff(C, C.scaled(1.5)), 0.5)
    assert pt.hausdorff(C, C) == 0.0


def test_affine_image_volume():
    K = pt.random_polytope(3, 10, 8)
    psi = random_linear_map(3, 9)
    assert np.isclose(pt.affine_image(K, psi).volume(), abs(psi.det) * K.volume(), rtol=1e-10)
    with pytest.raises(SingularMap):
        pt.affine_image(K, AffineMap.linear(np.diag([1.0, 1.0, 0.0])))


def test_projection_of_cube():
    shadow = pt.project(pt.cube(3), complement_basis([[0, 0, 1.0]]))
    assert shadow.dim == 2 and len(shadow.vertices) == 4
    assert np.isclose(shadow.volume(), 1.0)
    diag = pt.project(pt.cube(3), complement_basis([np.ones(3) / math.sqrt(3)]))
    assert len(diag.vertices) == 6
    assert np.isclose(diag.volume(), math.sqrt(3))


def test_projection_bad_basis():
    with pytest.raises(BadBasis):
        pt.project(pt.cube(3), np.array([[1.0, 0, 0], [1.0, 0, 0]]))


def test_cauchy_mean_shadow_area():
    # average shadow area of a convex body in R^3 is a quarter of its surface area
    K = pt.random_polytope(3, 12, 21)
    dirs = fibonacci_sphere(3000)
    areas = [pt.project_along(K, u)[0].volume() for u in dirs]
    assert np.isclose(np.mean(areas), K.facet_measures.sum() / 4, rtol=2e-3)


def test_cap_body_equals_prism_intersection():
    for n in (2, 3, 4):
        inter = pt.prism(n, 0)
        for i in range(1, n):
            inter = pt.intersect(inter, pt.prism(n, i))
        D = pt.cap_body(n)
        assert pt.symmetric_difference_volume(D, inter) < 1e-10
        assert pt.hausdorff(D, pt.to_vrep(pt.cap_body_hrep(n))) < 1e-12


def test_prism_hrep_matches_body():
    for i in range(3):
        assert pt.hausdorff(pt.prism(3, i), pt.to_vrep(pt.prism_hrep(3, i))) < 1e-12
    with pytest.raises(BadParameter):
        pt.prism(3, 3)


def test_ball_approx_inscribed():
    B = pt.ball_approx(3, 400, 1)
    assert np.allclose(np.linalg.norm(B.vertices, axis=1), 1.0)
    assert 0.85 < pt.inradius(B, np.zeros(3)) < 1.0
    assert B.volume() < 4 * math.pi / 3


def test_random_polytope_reproducible():
    a = pt.random_polytope(3, 10, 99)
    b = pt.random_polytope(3, 10, 99)
    assert np.array_equal(a.vertices, b.vertices)


def test_make_body_dispatch():
    assert np.isclose(pt.make_body("cap_body", 3).volume(), 0.25)
    assert len(pt.make_body("prism", 3, {"axis": 2}).vertices) == 6
    with pytest.raises(BadParameter):
        pt.make_body("dodecahedron", 3)


def test_json_round_trip(tmp_path):
    K = pt.random_polytope(3, 9, 4)
    path = tmp_path / "k.json"
    pt.save_body(K, path)
    back = pt.load_body(path)
    assert np.array_equal(back.vertices, K.vertices)
    with pytest.raises(BadParameter):
        pt.body_from_json({"dim": 3, "vertices": [[1, 2]]})


def test_fixtures():
    assert np.isclose(pt.fixture("xi3").volume(), 1 / 6)
    assert np.isclose(pt.fixture("cap3").volume(), 0.25)
    assert np.isclose(pt.fixture("regular_simplex3").volume(), 1 / (6 * math.sqrt(2)))


def test_vertices_read_only():
    K = pt.cube(2)
    with pytest.raises(ValueError):
        K.vertices[0, 0] = 5.0


points3 = st.lists(st.tuples(*[st.floats(-10, 10, allow_nan=False)] * 3), min_size=4, max_size=14)


def _generic(pts):
    a = np.asarray(pts, dtype=float)
    centered = a - a.mean(axis=0)
    s = np.linalg.svd(centered, compute_uv=False)
    return s[-1] > 1e-2 * max(1.0, s[0])


@settings(max_examples=60, deadline=None)
@given(points3)
def test_property_support_of_hull_is_max_over_points(pts):
    a = np.asarray(pts, dtype=float)
    K = pt.Body(a)
    dirs = fibonacci_sphere(50)
    assert np.allclose(K.h(dirs), (dirs @ a.T).max(axis=1), atol=1e-9)


@settings(max_examples=60, deadline=None)
@given(points3)
def test_property_volume_agrees_with_qhull(pts):
    a = np.asarray(pts, dtype=float)
    if not _generic(a):
        return
    assert np.isclose(pt.Body(a).volume(), ConvexHull(a).volume, rtol=1e-8, atol=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 10_000), st.floats(0.05, 0.95))
def test_property_brunn_minkowski(s1, s2, t):
    K = pt.random_polytope(3, 8, s1)
    L = pt.random_polytope(3, 8, s2)
    M = pt.combination(K, L, 1 - t, t)
    lhs = M.volume() ** (1 / 3)
    assert lhs >= (1 - t) * K.volume() ** (1 / 3) + t * L.volume() ** (1 / 3) - 1e-9


def test_sliver_triangle_keeps_all_corners():
    # nearly parallel edges must not be merged into one facet
    K = pt.Body([[0, 0, 0], [0, 0, 0], [1, 0, 0], [2, 0, 1e-7]])
    assert K.affine_dim == 2
    assert len(K.vertices) == 3
    T = pt.Body([[0.0, 0.0], [1.0, 0.0], [2.0, 1e-7]])
    assert len(T.vertices) == 3
    assert np.isclose(T.volume(), 0.5e-7, rtol=1e-6)

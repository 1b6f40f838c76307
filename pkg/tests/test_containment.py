import numpy as np
import pytest
from scipy.spatial import ConvexHull

from shadowcover import polytope as pt
from shadowcover.containment import (corner_normalize, corner_offset, hide_behind_simplex_witness,
                                     lutwak_simplex_contains, max_scale, min_cover_dilate,
                                     translate_into, verify_witness)
from shadowcover.errors import DimensionMismatch, NotASimplex, PointBody, PreconditionFailed
from shadowcover.experiments import lutwak_pair


def _inside(points, L, tol=1e-9):
    """Point-in-hull test from scipy's own facet equations."""
    eq = ConvexHull(L.vertices).equations
    return np.all(points @ eq[:, :-1].T + eq[:, -1] <= tol)


def _gauge_grid_dilate(K, L, half_width=1.5, steps=301):
    # brute force: for each translation x the least lambda with K + x in lambda L
    eq = ConvexHull(L.vertices).equations
    a, b = eq[:, :-1], -eq[:, -1]
    hk = (a @ K.vertices.T).max(axis=1)
    g = np.linspace(-half_width, half_width, steps)
    X = np.array(np.meshgrid(g, g)).reshape(2, -1).T
    lam = ((hk[None, :] + X @ a.T) / b[None, :]).max(axis=1)
    return lam.min()


def test_cube_in_larger_cube():
    w = translate_into(pt.cube(3), pt.cube(3, 2.0).translate([5, 5, 5]))
    assert w.feasible
    assert np.isclose(w.margin, 0.5)
    assert _inside(pt.cube(3).vertices + w.translation, pt.cube(3, 2.0).translate([5, 5, 5]))


def test_cube_too_large():
    w = translate_into(pt.cube(3, 2.1), pt.cube(3, 2.0))
    assert not w.feasible
    assert w.translation is None
    normal, deficit = w.violated_facet
    assert np.isclose(np.linalg.norm(normal), 1.0)
    assert np.isclose(deficit, 0.05)
    assert np.isclose(w.margin, -0.05)


def test_exact_fit_is_feasible():
    T = pt.standard_simplex(3)
    assert translate_into(T.translate([3, 1, 2]), T).feasible


def test_witnesses_on_random_pairs():
    agree = 0
    for seed in range(40):
        K = pt.random_polytope(2, 6, 100 + seed).scaled(0.6)
        L = pt.random_polytope(2, 7, 200 + seed)
        w = translate_into(K, L)
        if w.feasible:
            assert verify_witness(K, L, w.translation)
            assert _inside(K.vertices + w.translation, L, 1e-8)
        else:
            # no translation on a fine grid fits either
            assert _gauge_grid_dilate(K, L.translate(-L.interior_point), 2.0, 201) > 1.0
        agree += 1
    assert agree == 40


def test_square_in_triangle():
    # largest axis-parallel square in the standard triangle has side 1/2
    s = max_scale(pt.cube(2), pt.standard_simplex(2))
    assert np.isclose(s.alpha, 0.5)
    assert verify_witness(pt.cube(2).scaled(0.5), pt.standard_simplex(2), s.translation)


def test_max_scale_is_reciprocal_of_min_dilate():
    for seed in range(10):
        K = pt.random_polytope(3, 8, 300 + seed)
        L = pt.random_polytope(3, 9, 400 + seed)
        L = L.translate(-L.interior_point)
        lam, x = min_cover_dilate(K, L)
        assert np.isclose(max_scale(K, L).alpha, 1.0 / lam, rtol=1e-8)
        assert verify_witness(K, L.scaled(lam), x)


def test_reflection_dilate_matches_brute_force():
    D = pt.regular_simplex(2)
    lam, _ = min_cover_dilate(D, -D)
    assert np.isclose(lam, 2.0)
    assert abs(_gauge_grid_dilate(D, -D, 0.5, 401) - 2.0) < 1e-2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_reflection_dilate_equals_n(n):
    D = pt.regular_simplex(n)
    assert np.isclose(min_cover_dilate(D, -D)[0], n, atol=1e-9)


def test_every_body_fits_in_n_times_its_reflection():
    for n in (2, 3):
        for seed in range(15):
            K = pt.random_polytope(n, 2 * n + 2, 70_000 + seed)
            assert translate_into(K, K.reflected().scaled(n)).feasible


def test_simplex_sharpness_dilate():
    D = pt.regular_simplex(3)
    assert np.isclose(min_cover_dilate(D, pt.reflected_scaled(D, 2.0))[0], 1.5)


def test_point_body_scale():
    with pytest.raises(PointBody):
        max_scale(pt.Body([[0.0, 0.0]]), pt.cube(2))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        translate_into(pt.cube(2), pt.cube(3))


def test_lutwak_agrees_with_lp():
    for n in (2, 3):
        for seed in range(25):
            T, K = lutwak_pair(n, seed)
            assert lutwak_simplex_contains(T, K) == translate_into(K, T).feasible


def test_lutwak_needs_simplex():
    with pytest.raises(NotASimplex):
        lutwak_simplex_contains(pt.cube(2), pt.cube(2))


def test_corner_normalize():
    K = pt.random_polytope(3, 9, 5)
    C = corner_normalize(K)
    assert np.allclose(C.vertices.min(axis=0), 0.0)
    assert np.allclose(corner_offset(K), -K.vertices.min(axis=0))


def test_cap_body_hides_but_does_not_fit():
    D = pt.cap_body(3)
    xi = pt.standard_simplex(3)
    assert not translate_into(D, xi).feasible
    x, inside = hide_behind_simplex_witness(D)
    assert inside and np.allclose(x, 0.0)


def test_hide_behind_precondition():
    with pytest.raises(PreconditionFailed) as info:
        hide_behind_simplex_witness(pt.cube(3))
    assert info.value.direction is not None
    x, inside = hide_behind_simplex_witness(pt.standard_simplex(3).scaled(0.9).translate([4, 4, 4]))
    assert inside

import cmath
import math

import numpy as np
import pytest

from sl2h.matrices import MatH2, SingularMatrixError
from sl2h.mobius import (
    INFINITY,
    AmbiguousClassificationError,
    BoundaryPoint,
    apply_mobius,
    classify,
    conjugate,
    fixed_points,
)
from sl2h.quaternions import Quaternion


def random_quaternion(rng, scale=1.0):
    return Quaternion(*rng.normal(0.0, scale, size=4))


def random_sl_matrix(rng):
    while True:
        m = MatH2(*[random_quaternion(rng) for _ in range(4)])
        if m.det() > 0.1:
            return m.normalized()


def test_identity_acts_trivially():
    rng = np.random.default_rng(101)
    ident = MatH2.identity()
    for _ in range(50):
        z = BoundaryPoint(random_quaternion(rng))
        assert apply_mobius(ident, z).close_to(z)
    assert apply_mobius(ident, INFINITY).is_infinity


def test_standard_conjugators_move_base_points():
    # h = [[z0^-1, -1], [0, z0]] sends z0 to 0; u = [[1, 0], [-z0^-1, 1]]
    # fixes 0
    rng = np.random.default_rng(103)
    for _ in range(20):
        z0 = random_quaternion(rng)
        if z0.norm() < 0.1:
            continue
        h = MatH2(z0.inverse(), -1, 0, z0)
        u = MatH2(1, 0, -z0.inverse(), 1)
        zero = BoundaryPoint(Quaternion())
        assert apply_mobius(h, BoundaryPoint(z0)).close_to(zero)
        assert apply_mobius(u, zero).close_to(zero)


def test_action_is_a_group_action():
    rng = np.random.default_rng(107)
    for _ in range(10_000):
        m = random_sl_matrix(rng)
        n = random_sl_matrix(rng)
        z = BoundaryPoint(random_quaternion(rng))
        lhs = apply_mobius(m @ n, z)
        rhs = apply_mobius(m, apply_mobius(n, z))
        assert lhs.distance_to(rhs) <= 1e-8 * max(1.0, 1.0 if rhs.is_infinity else rhs.value.norm())


def test_action_at_infinity():
    m = MatH2(Quaternion(1, 2, 0, 0), 1, Quaternion(0, 0, 3, 0), 1).normalized()
    img = apply_mobius(m, INFINITY)
    assert img.close_to(BoundaryPoint(m.a * m.c.inverse()))
    upper = MatH2(1, 5, 0, 1)
    assert apply_mobius(upper, INFINITY).is_infinity


def test_zero_denominator_maps_to_infinity():
    swap = MatH2(0, 1, 1, 0)
    assert apply_mobius(swap, BoundaryPoint(Quaternion())).is_infinity


def test_singular_matrix_does_not_act():
    with pytest.raises(SingularMatrixError):
        apply_mobius(MatH2(1, 1, 1, 1), INFINITY)


def test_fixed_points_of_diagonal():
    pts = fixed_points(MatH2.diagonal(2, 0.5))
    assert len(pts) == 2
    assert any(p.is_infinity for p in pts)
    assert any(p.close_to(BoundaryPoint(Quaternion())) for p in pts)


def test_fixed_points_of_translation():
    pts = fixed_points(MatH2(1, 1, 0, 1))
    assert len(pts) == 1
    assert pts[0].is_infinity


def test_fixed_points_transported_by_conjugation():
    rng = np.random.default_rng(109)
    for _ in range(50):
        p = random_sl_matrix(rng)
        m = conjugate(MatH2.diagonal(2, 0.5), p)
        pts = fixed_points(m)
        assert len(pts) == 2
        images = [apply_mobius(p, BoundaryPoint(Quaternion())), apply_mobius(p, INFINITY)]
        for img in images:
            assert any(pt.close_to(img, tol=1e-6) for pt in pts)


def test_fixed_points_verify_under_action():
    rng = np.random.default_rng(113)
    for _ in range(200):
        m = random_sl_matrix(rng)
        try:
            pts = fixed_points(m)
        except ValueError:
            continue
        for p in pts:
            assert apply_mobius(m, p).distance_to(p) <= 1e-8


def test_fixed_points_of_identity_rejected():
    with pytest.raises(ValueError):
        fixed_points(MatH2.identity())
    with pytest.raises(ValueError):
        fixed_points(-MatH2.identity())


def test_classify_hyperbolic_diagonal():
    c = classify(MatH2.diagonal(2, 0.5))
    assert c.kind == "hyperbolic"
    assert abs(c.abt - 2.5) <= 1e-12
    assert abs(c.tau - 2.0 * math.log(2.0)) <= 1e-12
    assert abs(2.0 * math.cosh(c.tau) - (4.0 + 0.25)) <= 1e-10


def test_classify_parabolic_translation():
    c = classify(MatH2(1, 1, 0, 1))
    assert c.kind == "parabolic"
    assert abs(c.abt - 2.0) <= 1e-6
    assert abs(c.lam - 1.0) <= 1e-6


def test_classify_rotatory_parabolic():
    c = classify(MatH2(-1, 1, 0, -1))
    assert c.kind == "parabolic"
    assert abs(c.lam - (-1.0)) <= 1e-6


def test_classify_elliptic_2rot():
    m = MatH2.from_complex_diag(cmath.exp(1j * math.pi / 12), cmath.exp(1j * math.pi / 6))
    c = classify(m)
    assert c.kind == "elliptic_2rot"
    assert abs(c.at - math.pi / 4) <= 1e-12
    assert abs(c.abt - 2.0) <= 1e-12


def test_classify_elliptic_1rot():
    m = MatH2.from_complex_diag(cmath.exp(1j * math.pi / 6), cmath.exp(1j * math.pi / 6))
    assert classify(m).kind == "elliptic_1rot"
    j = Quaternion(0, 0, 1, 0)
    assert classify(MatH2.diagonal(j, j)).kind == "elliptic_1rot"


def test_classify_identity():
    assert classify(MatH2.identity()).kind == "identity"
    assert classify(-MatH2.identity()).kind == "identity"


def test_classify_requires_unit_det():
    with pytest.raises(ValueError, match="not SL-normalized"):
        classify(MatH2.diagonal(2, 2))


def test_classify_ambiguous_band():
    r = 1.0 + 1e-5
    with pytest.raises(AmbiguousClassificationError) as info:
        classify(MatH2.diagonal(r, 1.0 / r))
    assert info.value.modulus_margin > 1e-6


def test_center_classifies_identically():
    rng = np.random.default_rng(127)
    for _ in range(100):
        m = random_sl_matrix(rng)
        try:
            c = classify(m)
        except AmbiguousClassificationError:
            continue
        c_neg = classify(-m)
        assert c.kind == c_neg.kind
        assert abs(c.abt - c_neg.abt) <= 1e-9
        assert abs(c.tau - c_neg.tau) <= 1e-9


def test_classification_invariant_under_conjugation():
    rng = np.random.default_rng(131)
    count = 0
    while count < 1000:
        lam = rng.uniform(1.2, 3.0)
        m = MatH2.diagonal(lam, 1.0 / lam)
        p = random_sl_matrix(rng)
        base = classify(m)
        moved = classify(conjugate(m, p))
        assert moved.kind == base.kind == "hyperbolic"
        assert abs(moved.at - base.at) <= 1e-7
        assert abs(moved.abt - base.abt) <= 1e-7
        count += 1


def test_at_range():
    rng = np.random.default_rng(137)
    for _ in range(200):
        m = random_sl_matrix(rng)
        try:
            c = classify(m)
        except AmbiguousClassificationError:
            continue
        assert 0.0 <= c.at <= 2.0 * math.pi
        assert c.abt > 0.0


def test_boundary_point_chordal_convention():
    huge = BoundaryPoint(Quaternion(1e9))
    assert huge.close_to(INFINITY)
    assert huge.effectively_infinite()
    near = BoundaryPoint(Quaternion(1, 2, 3, 4))
    assert near.distance_to(INFINITY) == math.inf


def test_boundary_point_json():
    p = BoundaryPoint(Quaternion(1, 2, 3, 4))
    assert BoundaryPoint.from_json(p.to_json()).close_to(p, tol=0.0)
    assert INFINITY.to_json() == {"inf": True}
    assert BoundaryPoint.from_json({"inf": True}).is_infinity


def test_classification_json_shape():
    c = classify(MatH2.diagonal(2, 0.5))
    data = c.to_json()
    assert set(data) == {"kind", "lambda", "mu", "at", "abt", "tau"}
    assert data["lambda"] == [2.0, 0.0]

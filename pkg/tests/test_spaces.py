import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from reltc.errors import DimensionMismatch, DuplicatePoint, EmptyConfiguration, InvalidConfiguration, PoleExcluded
from reltc.spaces import (
    CylinderPoint,
    EuclideanPoint,
    JoinPoint,
    SpherePoint,
    check_configuration_array,
    config_distance,
    inverse_stereographic,
    join_distance,
    make_configuration,
    orthogonal_unit,
    point_from_json,
    point_to_json,
    sphere_distance,
    stereographic,
    tangent_field,
)

E1, E2, E3 = np.eye(3)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
vec3 = arrays(float, 3, elements=finite).filter(lambda v: np.linalg.norm(v) > 1e-3)


def unit(v):
    return v / np.linalg.norm(v)


# sphere points

def test_sphere_point_rejects_non_unit():
    with pytest.raises(ValueError):
        SpherePoint([1.0, 1.0, 0.0])


@given(vec3)
def test_normalized_points_are_unit(v):
    p = SpherePoint.normalized(v)
    assert abs(np.linalg.norm(p.coords) - 1.0) <= 1e-9
    assert p.dim == 2


def test_cylinder_height_range():
    with pytest.raises(ValueError):
        CylinderPoint(EuclideanPoint([0.0]), 1.5)
    assert CylinderPoint(EuclideanPoint([0.0]), 1.0).height == 1.0


# distances

def test_sphere_distance_examples():
    assert sphere_distance(E1, E1) == 0.0
    assert sphere_distance(E1, -E1) == pytest.approx(math.pi, abs=1e-15)
    assert sphere_distance(E1, E2) == pytest.approx(math.pi / 2, abs=1e-15)
    with pytest.raises(DimensionMismatch):
        sphere_distance(E1, np.array([1.0, 0.0]))


@given(vec3, vec3)
def test_sphere_distance_symmetric_and_matches_arccos(u, v):
    x, y = unit(u), unit(v)
    d = sphere_distance(x, y)
    assert d == sphere_distance(y, x)
    assert 0.0 <= d <= math.pi
    assert d == pytest.approx(math.acos(np.clip(x @ y, -1.0, 1.0)), abs=1e-7)


def test_config_distance_cylinder_metric():
    a = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.5]])
    b = np.array([[0.0, 0.0, 0.3], [1.0, 0.1, 0.5]])
    assert config_distance(a, b, cylinder=True) == pytest.approx(0.3)
    assert config_distance(a, b) == pytest.approx(0.3)


# configurations

def test_make_configuration_examples():
    c = make_configuration([SpherePoint(E1)])
    assert len(c) == 1 and c.min_separation == math.inf
    with pytest.raises(DuplicatePoint):
        make_configuration([SpherePoint(E1), SpherePoint(E1)])
    c2 = make_configuration([SpherePoint(E1), SpherePoint(-E1)])
    assert c2.min_separation == pytest.approx(2.0)
    with pytest.raises(EmptyConfiguration):
        make_configuration([])
    with pytest.raises(DimensionMismatch):
        make_configuration([SpherePoint(E1), EuclideanPoint([1.0, 2.0, 3.0])])


def test_near_duplicates_rejected():
    with pytest.raises(DuplicatePoint):
        make_configuration([EuclideanPoint([0.0]), EuclideanPoint([1e-10])])
    with pytest.raises(InvalidConfiguration):
        check_configuration_array([[0.0], [5e-10]])


@given(st.lists(arrays(float, 2, elements=finite), min_size=2, max_size=5))
def test_min_separation_is_min_pairwise_distance(pts):
    d = [np.linalg.norm(p - q) for i, p in enumerate(pts) for q in pts[i + 1:]]
    assume(min(d) > 1e-9)
    c = make_configuration([EuclideanPoint(p) for p in pts])
    assert c.min_separation == pytest.approx(min(d))


# joins

def test_join_canonical_form():
    a, b, b2 = np.array([1.0, 2.0]), np.array([3.0]), np.array([4.0])
    assert JoinPoint(a, b, 0.0) == JoinPoint(a, b2, 0.0) == JoinPoint(a, None, 0.0)
    assert JoinPoint(a, b, 1.0) == JoinPoint(np.array([9.0, 9.0]), b, 1.0)
    assert JoinPoint(a, b, 0.5) != JoinPoint(a, b2, 0.5)
    assert hash(JoinPoint(a, b, 0.0)) == hash(JoinPoint(a, b2, 0.0))


join_pts = st.builds(
    lambda l, r, t: JoinPoint(np.array([l]), np.array([r]), t),
    st.sampled_from([0.0, 1.0, 2.0]),
    st.sampled_from([0.0, 1.0]),
    st.sampled_from([0.0, 0.5, 1.0]),
)


@given(join_pts, join_pts, join_pts)
def test_join_equality_is_an_equivalence(p, q, r):
    assert p == p
    assert (p == q) == (q == p)
    if p == q and q == r:
        assert p == r
    if p == q:
        assert hash(p) == hash(q)
        assert join_distance(p, q) == 0.0


@given(join_pts, join_pts, join_pts)
def test_join_distance_is_a_pseudometric(p, q, r):
    assert join_distance(p, q) == pytest.approx(join_distance(q, p))
    assert join_distance(p, r) <= join_distance(p, q) + join_distance(q, r) + 1e-12


# tangent field

def test_tangent_field_examples():
    v = tangent_field(E3, -E3)
    assert abs(np.linalg.norm(v) - 1.0) <= 1e-9 and abs(v @ E3) <= 1e-9
    assert abs(tangent_field(E3, E1) @ E1) <= 1e-9
    with pytest.raises(PoleExcluded):
        tangent_field(E3, E3)


def _fd_oracle(z, x, h=1e-6):
    """Finite-difference derivative of inverse stereographic projection along e."""
    e = orthogonal_unit(z)
    p = stereographic(z, x)
    d = (inverse_stereographic(z, p + h * e) - inverse_stereographic(z, p - h * e)) / (2 * h)
    return d / np.linalg.norm(d)


def test_tangent_field_matches_finite_difference_oracle_at_antipode():
    assert np.allclose(tangent_field(E3, -E3), _fd_oracle(E3, -E3), atol=1e-6)


@given(vec3, vec3)
def test_tangent_field_matches_finite_difference_oracle(u, w):
    z, x = unit(u), unit(w)
    assume(sphere_distance(x, z) > 0.2)
    assert np.allclose(inverse_stereographic(z, stereographic(z, x)), x, atol=1e-9)
    assert np.allclose(tangent_field(z, x), _fd_oracle(z, x), atol=1e-5)


def test_tangent_field_residuals_and_continuity(rng):
    z = E3
    X = rng.standard_normal((10_000, 3))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    worst_norm = worst_orth = worst_jump = 0.0
    for x in X:
        if sphere_distance(x, z) <= 1e-9:
            continue
        v = tangent_field(z, x)
        worst_norm = max(worst_norm, abs(np.linalg.norm(v) - 1.0))
        worst_orth = max(worst_orth, abs(v @ x))
        if sphere_distance(x, z) >= 0.1 + 1e-3:
            g = rng.standard_normal(3)
            g -= (g @ x) * x
            x2 = unit(x + 1e-4 * g / np.linalg.norm(g))
            worst_jump = max(worst_jump, np.linalg.norm(v - tangent_field(z, x2)))
    assert worst_norm <= 1e-9 and worst_orth <= 1e-9
    assert worst_jump <= 0.1


# JSON

def test_point_json_round_trip():
    pts = [
        SpherePoint(E2),
        EuclideanPoint([1.0, -2.0]),
        CylinderPoint(SpherePoint(E1), 0.25),
        JoinPoint(np.array([1.0]), np.array([2.0]), 0.5),
        JoinPoint(np.array([1.0]), np.array([2.0]), 0.0),
        make_configuration([SpherePoint(E1), SpherePoint(E2)]),
    ]
    for p in pts:
        assert point_from_json(point_to_json(p)) == p

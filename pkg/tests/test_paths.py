import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reltc.errors import EndpointMismatch
from reltc.planners import ParamPath, Segment, chain, concat_paths, geodesic_path, slerp, stack_paths

E1, E2, E3 = np.eye(3)


def slerp_oracle(x, y, u):
    """Rotation in the plane of x and y at constant angular speed."""
    w = math.acos(float(np.clip(x @ y, -1.0, 1.0)))
    v = y - (x @ y) * x
    v /= np.linalg.norm(v)
    return math.cos(u * w) * x + math.sin(u * w) * v


def linear(a, b):
    a, b = np.asarray(a, float), np.asarray(b, float)
    return ParamPath.from_function(lambda u: a + u[:, None] * (b - a), "linear")


def test_endpoints_are_cached_exactly():
    x = np.array([0.6, 0.8, 0.0])
    p = geodesic_path(x, E3)
    assert p.eval(0.0) is p.start and p.eval(1.0) is p.end
    assert np.array_equal(p.sample([0.0, 1.0])[0], x)


def test_concat_constant_paths():
    c = ParamPath.constant(E1)
    p = concat_paths(c, c)
    assert np.allclose(p.sample(np.linspace(0, 1, 11)), E1)


def test_concat_geodesics_matches_slerp():
    p = concat_paths(geodesic_path(E1, E2), geodesic_path(E2, E3))
    assert np.allclose(p(0.25), slerp_oracle(E1, E2, 0.5), atol=1e-12)
    assert np.allclose(p(0.75), slerp_oracle(E2, E3, 0.5), atol=1e-12)


def test_concat_rejects_gaps():
    with pytest.raises(EndpointMismatch):
        concat_paths(geodesic_path(E1, E2), geodesic_path(E3, E1))


@given(st.floats(0.05, 0.95), st.lists(st.floats(-5, 5), min_size=4, max_size=4))
def test_concat_is_continuous_at_the_split(split, v):
    a, b, c = np.array(v[:2]), np.array(v[2:]), np.array([0.0, 0.0])
    p = concat_paths(linear(a, b), linear(b, c), split)
    eps = 1e-9
    assert np.allclose(p(split - eps), b, atol=1e-6)
    assert np.allclose(p(split + eps), b, atol=1e-6)
    assert np.allclose(p(split), b, atol=1e-9)


def test_chain_and_breakpoint_agreement():
    pts = [np.array([0.0]), np.array([1.0]), np.array([3.0]), np.array([2.0])]
    p = chain([linear(pts[i], pts[i + 1]) for i in range(3)], (1 / 3, 2 / 3))
    for t in p.breakpoints[1:-1]:
        left = p(t - 1e-12)
        right = p(t + 1e-12)
        assert np.allclose(left, right, atol=1e-9)
    assert np.allclose(p(0.5), [2.0])


def test_sample_matches_eval():
    p = chain([linear([0.0], [1.0]), linear([1.0], [5.0])], (0.3,))
    ts = np.linspace(0, 1, 37)
    assert np.allclose(p.sample(ts), np.stack([p(t) for t in ts]))


def test_reversed_and_map():
    p = linear([0.0, 0.0], [2.0, 4.0])
    r = p.reversed()
    assert np.allclose(r(0.25), p(0.75))
    q = p.map(lambda b: 2 * np.asarray(b))
    assert np.allclose(q(0.5), [2.0, 4.0]) and np.allclose(q.end, [4.0, 8.0])


def test_stack_paths_merges_breakpoints():
    p1 = concat_paths(linear([0.0], [1.0]), linear([1.0], [0.0]), 0.25)
    p2 = linear([5.0], [6.0])
    s = stack_paths([p1, p2])
    assert s.breakpoints.tolist() == [0.0, 0.25, 1.0]
    assert np.allclose(s(0.25), [[1.0], [5.25]])
    assert s.start.shape == (2, 1)


def test_rejects_bad_breakpoints():
    seg = Segment(lambda u: u[:, None], "linear")
    with pytest.raises(ValueError):
        ParamPath([0.0, 0.5], [seg], 0, 1)
    with pytest.raises(ValueError):
        linear([0.0], [1.0]).eval(1.5)


@given(st.lists(st.floats(-1, 1), min_size=6, max_size=6), st.floats(0, 1))
def test_slerp_matches_rotation_oracle(v, u):
    x, y = np.array(v[:3]), np.array(v[3:])
    if np.linalg.norm(x) < 1e-3 or np.linalg.norm(y) < 1e-3:
        return
    x, y = x / np.linalg.norm(x), y / np.linalg.norm(y)
    if x @ y < -1 + 1e-3 or x @ y > 1 - 1e-9:
        return
    got = slerp(x, y, np.array([u]))[0]
    assert np.allclose(got, slerp_oracle(x, y, u), atol=1e-9)
    assert abs(np.linalg.norm(got) - 1.0) <= 1e-12

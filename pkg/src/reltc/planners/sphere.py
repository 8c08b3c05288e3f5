"""Three-rule planner on the sphere S^m with a marked point z."""
from __future__ import annotations

import math

import numpy as np

from ..errors import DimensionMismatch
from ..spaces import TOL, _coords, _tangent, orthogonal_unit, sphere_distance
from .core import PARTITION, Planner, Rule
from .paths import ParamPath, Segment


def _normalize_rows(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def slerp(x, y, u):
    """Constant-speed point(s) on the shortest great-circle arc from ``x`` to ``y``.

    ``x`` and ``y`` must not be antipodal. ``u`` may be a scalar or an array.
    """
    x, y = _coords(x), _coords(y)
    return _slerp(x, y, np.asarray(u, dtype=float), sphere_distance(x, y))


def _slerp(x: np.ndarray, y: np.ndarray, u: np.ndarray, omega: float) -> np.ndarray:
    if omega == 0.0:
        return np.broadcast_to(x, u.shape + x.shape).copy()
    s = math.sin(omega)
    a = np.sin((1.0 - u) * omega) / s
    b = np.sin(u * omega) / s
    out = a[..., None] * x + b[..., None] * y
    return _normalize_rows(out)


def geodesic_path(x, y) -> ParamPath:
    """Shortest path from ``x`` to ``y`` at constant speed (``s_1``)."""
    x, y = _coords(x).copy(), _coords(y).copy()
    if np.array_equal(x, y):
        return ParamPath.constant(x)
    omega = sphere_distance(x, y)
    fn = lambda u: _slerp(x, y, u, omega)
    return ParamPath([0.0, 1.0], [Segment(fn, "geodesic")], x, y)


def antipodal_path(x, y, v) -> ParamPath:
    """Half great circle ``x cos(pi t) + v sin(pi t)`` from ``x`` towards ``-x``.

    ``y`` is within the antipodal tolerance band of ``-x``; the term
    ``t (y + x)`` vanishes when ``y == -x`` exactly and otherwise lands the
    path on ``y``.
    """
    x, y, v = _coords(x).copy(), _coords(y).copy(), np.asarray(v, dtype=float)
    corr = y + x

    def fn(u):
        u = u[:, None]
        return _normalize_rows(x * np.cos(np.pi * u) + v * np.sin(np.pi * u) + u * corr)

    return ParamPath([0.0, 1.0], [Segment(fn, "great-circle")], x, y)


def sphere_planner(m: int, z=None, tau: float = TOL) -> Planner:
    """Partition of ``S^m x S^m`` into three sets with explicit sections.

    1. ``x . y > -1 + tau``: constant-speed geodesic.
    2. near-antipodal, ``x`` away from ``z``: half great circle through ``V(x)``.
    3. near ``(z, -z)``: the fixed half great circle from ``z`` to ``-z``
       through ``w``, the first basis vector orthogonalized against ``z``.

    Ties on the tolerance band go to the higher-index rule.
    """
    if m < 1:
        raise ValueError("sphere dimension must be at least 1")
    if z is None:
        z = np.zeros(m + 1)
        z[-1] = 1.0
    z = _coords(z).astype(float).copy()
    if z.size != m + 1:
        raise DimensionMismatch(f"z has {z.size} coordinates, S^{m} needs {m + 1}")
    if abs(np.linalg.norm(z) - 1.0) > 1e-9:
        raise ValueError("z must be a unit vector")
    e = orthogonal_unit(z)
    w = e.copy()
    thresh = -1.0 + tau

    def dot(x, y):
        return float(np.dot(_coords(x), _coords(y)))

    def in_k1(x, y):
        return dot(x, y) > thresh

    def in_k2(x, y):
        return dot(x, y) <= thresh and sphere_distance(x, z) > tau

    def in_k3(x, y):
        return dot(x, y) <= thresh and sphere_distance(x, z) <= tau

    def s1(x, y):
        return geodesic_path(x, y)

    def s2(x, y):
        x = _coords(x)
        return antipodal_path(x, y, _tangent(z, e, x))

    def s3(x, y):
        x, y = _coords(x).copy(), _coords(y).copy()
        cx, cy = x - z, y + z

        def fn(u):
            u = u[:, None]
            base = z * np.cos(np.pi * u) + w * np.sin(np.pi * u)
            return _normalize_rows(base + (1.0 - u) * cx + u * cy)

        return ParamPath([0.0, 1.0], [Segment(fn, "fixed-path")], x, y)

    def margin(x, y):
        d = dot(x, y)
        if d > thresh:
            return d - thresh
        dz = sphere_distance(x, z)
        return dz - tau if dz > tau else math.inf

    rules = (
        Rule(1, in_k1, s1, "geodesic"),
        Rule(2, in_k2, s2, "antipodal"),
        Rule(3, in_k3, s3, "marked-antipode"),
    )
    return Planner(
        rules,
        mode=PARTITION,
        source=f"S^{m}",
        target=f"S^{m}",
        ambient=f"S^{m}",
        name="sphere",
        margin=margin,
        meta={"family": "sphere", "m": m, "z": z.tolist(), "w": w.tolist(), "tau": tau},
    )

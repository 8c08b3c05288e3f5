"""Ambient spaces: points on spheres, lines, cylinders Y x I and joins, plus configurations.

Planners work on plain numpy arrays for speed; the typed point classes here
exist for validation, equality semantics and JSON encoding. A configuration of
n robots is an ``(n, d)`` array; a configuration in a cylinder ``Y x I`` is an
``(n, d + 1)`` array whose last column is the height.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicatePoint,
    EmptyConfiguration,
    InvalidConfiguration,
    PoleExcluded,
)

TOL = 1e-9
UNIT_TOL = 1e-9


def _coords(p) -> np.ndarray:
    if isinstance(p, (SpherePoint, EuclideanPoint)):
        return p.coords
    return np.asarray(p, dtype=float)


@dataclass(frozen=True, eq=False)
class SpherePoint:
    coords: np.ndarray

    def __post_init__(self):
        c = np.array(self.coords, dtype=float).reshape(-1)
        if c.size < 2:
            raise DimensionMismatch("a sphere point needs at least 2 coordinates")
        if abs(np.linalg.norm(c) - 1.0) > UNIT_TOL:
            raise ValueError(f"not a unit vector (norm {np.linalg.norm(c)!r})")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @classmethod
    def normalized(cls, v) -> "SpherePoint":
        v = np.asarray(v, dtype=float)
        return cls(v / np.linalg.norm(v))

    @property
    def dim(self) -> int:
        """Dimension m of the sphere S^m containing the point."""
        return self.coords.size - 1

    def __eq__(self, other):
        return isinstance(other, SpherePoint) and np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash(("sphere", self.coords.tobytes()))

    def __neg__(self):
        return SpherePoint(-self.coords)


@dataclass(frozen=True, eq=False)
class EuclideanPoint:
    coords: np.ndarray

    def __post_init__(self):
        c = np.array(self.coords, dtype=float).reshape(-1)
        if not np.all(np.isfinite(c)):
            raise ValueError("euclidean coordinates must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @property
    def dim(self) -> int:
        return self.coords.size

    def __eq__(self, other):
        return isinstance(other, EuclideanPoint) and np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash(("euclidean", self.coords.tobytes()))


@dataclass(frozen=True)
class CylinderPoint:
    """A point ``(y, h)`` of ``Y x I``."""

    base: Any
    height: float

    def __post_init__(self):
        if not 0.0 <= self.height <= 1.0:
            raise ValueError(f"height {self.height} outside [0, 1]")

    def __eq__(self, other):
        return (
            isinstance(other, CylinderPoint)
            and self.height == other.height
            and _same(self.base, other.base)
        )

    def __hash__(self):
        return hash(("cylinder", _key(self.base), self.height))


def _same(a, b) -> bool:
    if a is None or b is None:
        return a is None and b is None
    if isinstance(a, (np.ndarray, list, tuple)) or isinstance(b, (np.ndarray, list, tuple)):
        a, b = np.asarray(a), np.asarray(b)
        return a.shape == b.shape and bool(np.array_equal(a, b))
    return a == b


def _key(v):
    if isinstance(v, (np.ndarray, list, tuple)):
        arr = np.asarray(v, dtype=float)
        return ("arr", arr.shape, arr.tobytes())
    if isinstance(v, (SpherePoint, EuclideanPoint)):
        return _key(v.coords)
    return v


@dataclass(frozen=True, eq=False)
class JoinPoint:
    """Point ``[y1, y2, t]`` of the join ``Y1 * Y2`` kept in canonical form.

    At ``t == 0`` the right slot is dropped (stored as ``None``); at ``t == 1``
    the left slot is dropped. Equality and hashing use the canonical form, so
    they respect the quotient identifications.
    """

    left: Any
    right: Any
    t: float

    def __post_init__(self):
        t = float(self.t)
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"join coordinate {t} outside [0, 1]")
        object.__setattr__(self, "t", t)
        if t == 0.0:
            if self.left is None:
                raise ValueError("join point at t=0 needs a left coordinate")
            object.__setattr__(self, "right", None)
        elif t == 1.0:
            if self.right is None:
                raise ValueError("join point at t=1 needs a right coordinate")
            object.__setattr__(self, "left", None)
        elif self.left is None or self.right is None:
            raise ValueError("interior join points need both coordinates")

    def __eq__(self, other):
        return (
            isinstance(other, JoinPoint)
            and self.t == other.t
            and _same(self.left, other.left)
            and _same(self.right, other.right)
        )

    def __hash__(self):
        return hash(("join", _key(self.left), _key(self.right), self.t))


def _slot_distance(a, b) -> float:
    if isinstance(a, (np.ndarray, list, tuple, float, int, np.floating)) and not isinstance(a, bool):
        return float(np.linalg.norm(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)))
    return 0.0 if a == b else 1.0


def join_distance(p: JoinPoint, q: JoinPoint) -> float:
    """Quotient-compatible distance on a join.

    ``|t - s| + min(1-t, 1-s) * d1 + min(t, s) * d2``; a slot whose weight
    vanishes is never read, so dropped coordinates are harmless.
    """
    d = abs(p.t - q.t)
    wl = min(1.0 - p.t, 1.0 - q.t)
    wr = min(p.t, q.t)
    if wl > 0.0:
        d += wl * _slot_distance(p.left, q.left)
    if wr > 0.0:
        d += wr * _slot_distance(p.right, q.right)
    return d


def point_distance(a, b) -> float:
    """Distance between two points of the same ambient space."""
    if isinstance(a, JoinPoint):
        return join_distance(a, b)
    if isinstance(a, CylinderPoint):
        return max(point_distance(a.base, b.base), abs(a.height - b.height))
    if isinstance(a, tuple):
        if len(a) != len(b):
            raise DimensionMismatch("tuples of different length")
        return max((point_distance(u, v) for u, v in zip(a, b)), default=0.0)
    ca, cb = _coords(a), _coords(b)
    if ca.shape != cb.shape:
        raise DimensionMismatch(f"shapes {ca.shape} and {cb.shape} differ")
    return float(np.linalg.norm(ca - cb))


def config_distance(a, b, cylinder: bool = False) -> float:
    """Max over robots of the per-robot distance between two configuration arrays."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    if a.ndim == 1:
        return float(np.linalg.norm(a - b))
    diff = a - b
    if cylinder:
        rows = np.maximum(np.linalg.norm(diff[:, :-1], axis=1), np.abs(diff[:, -1]))
    else:
        rows = np.linalg.norm(diff, axis=1)
    return float(rows.max())


def min_pairwise_separation(points: np.ndarray, cylinder: bool = False) -> float:
    """Smallest pairwise distance between rows; ``inf`` for fewer than two rows.

    With ``cylinder`` the last column is a height and the product metric
    ``max(base distance, |height difference|)`` is used.
    """
    pts = np.asarray(points, dtype=float)
    n = pts.shape[0]
    if n < 2:
        return math.inf
    i, j = np.triu_indices(n, 1)
    diff = pts[i] - pts[j]
    if cylinder:
        d = np.maximum(np.linalg.norm(diff[:, :-1], axis=1), np.abs(diff[:, -1]))
    else:
        d = np.linalg.norm(diff, axis=1)
    return float(d.min())


@dataclass(frozen=True, eq=False)
class Configuration:
    """Ordered tuple of pairwise-distinct points (an element of C^n(Y))."""

    points: tuple
    min_separation: float = field(default=math.inf)

    def __len__(self):
        return len(self.points)

    def array(self) -> np.ndarray:
        """Stack the coordinates into an ``(n, d)`` array (sphere/euclidean points only)."""
        return np.stack([_coords(p) for p in self.points])

    def __eq__(self, other):
        return (
            isinstance(other, Configuration)
            and len(self) == len(other)
            and all(_key(p) == _key(q) for p, q in zip(self.points, other.points))
        )

    def __hash__(self):
        return hash(tuple(_key(p) for p in self.points))


def _space_of(p) -> tuple:
    if isinstance(p, SpherePoint):
        return ("sphere", p.coords.size)
    if isinstance(p, EuclideanPoint):
        return ("euclidean", p.coords.size)
    if isinstance(p, CylinderPoint):
        return ("cylinder", _space_of(p.base))
    if isinstance(p, JoinPoint):
        return ("join",)
    return ("array", np.asarray(p).shape)


def make_configuration(points: Sequence) -> Configuration:
    """Validate distinctness and build a Configuration.

    Raises EmptyConfiguration for no points and DuplicatePoint when two points
    are within ``TOL`` of each other.
    """
    pts = tuple(points)
    if not pts:
        raise EmptyConfiguration("a configuration needs at least one point")
    spaces = {_space_of(p) for p in pts}
    if len(spaces) != 1:
        raise DimensionMismatch(f"points come from different spaces: {sorted(map(str, spaces))}")
    sep = math.inf
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = point_distance(pts[i], pts[j])
            if d <= TOL:
                raise DuplicatePoint(f"points {i} and {j} coincide (distance {d:.3g})")
            sep = min(sep, d)
    return Configuration(pts, sep)


def check_configuration_array(a, cylinder: bool = False) -> np.ndarray:
    """Coerce to an ``(n, d)`` array and reject near-coincident rows."""
    arr = np.asarray(a, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.shape[0] == 0:
        raise EmptyConfiguration("a configuration needs at least one point")
    if min_pairwise_separation(arr, cylinder) <= TOL:
        raise InvalidConfiguration(f"configuration has coincident points: {arr.tolist()}")
    return arr


# sphere geometry

def sphere_distance(x, y) -> float:
    """Great-circle distance in radians.

    Uses ``2 atan2(|x - y|, |x + y|)``, which equals ``arccos(x . y)`` but keeps
    full precision near 0 and pi and is exactly symmetric.
    """
    cx, cy = _coords(x), _coords(y)
    if cx.shape != cy.shape:
        raise DimensionMismatch(f"sphere points of different dimension: {cx.size - 1} and {cy.size - 1}")
    return 2.0 * math.atan2(float(np.linalg.norm(cx - cy)), float(np.linalg.norm(cx + cy)))


def orthogonal_unit(z) -> np.ndarray:
    """First standard basis vector made orthogonal to ``z`` by Gram-Schmidt.

    Falls back to the next basis vector when the residual is too small (``z``
    close to that axis).
    """
    z = _coords(z)
    for k in range(z.size):
        e = np.zeros_like(z)
        e[k] = 1.0
        w = e - z[k] * z
        nw = np.linalg.norm(w)
        if nw > 0.5:
            return w / nw
    raise DimensionMismatch("no orthogonal direction found")  # pragma: no cover


def stereographic(z, x) -> np.ndarray:
    """Project ``x != z`` from pole ``z`` onto the hyperplane ``z^perp`` (ambient coords)."""
    z, x = _coords(z), _coords(x)
    h = 0.5 * float(np.dot(x - z, x - z))
    return (x - np.dot(x, z) * z) / h


def inverse_stereographic(z, p) -> np.ndarray:
    z, p = _coords(z), np.asarray(p, dtype=float)
    q = float(np.dot(p, p))
    return (2.0 * p + (q - 1.0) * z) / (q + 1.0)


def _tangent(z: np.ndarray, e: np.ndarray, x: np.ndarray) -> np.ndarray:
    # Direction of the pushforward of the constant field e under inverse
    # stereographic projection from z, scaled by h = 1 - x.z > 0:
    # h*e + (x.e)(z - x), whose norm is exactly h.
    h = 0.5 * float(np.dot(x - z, x - z))
    v = h * e + float(np.dot(x, e)) * (z - x)
    return v / np.linalg.norm(v)


def tangent_field(z, x) -> np.ndarray:
    """Unit tangent vector field on ``S^m - {z}``.

    Pushes the constant field ``orthogonal_unit(z)`` forward through inverse
    stereographic projection from ``z`` and normalizes. Smooth away from ``z``.
    """
    z, x = _coords(z), _coords(x)
    if z.shape != x.shape:
        raise DimensionMismatch("z and x live on spheres of different dimension")
    if sphere_distance(x, z) <= TOL:
        raise PoleExcluded("the tangent field is undefined at the marked point z")
    return _tangent(z, orthogonal_unit(z), x)


# JSON encoding

def point_to_json(p) -> dict:
    if isinstance(p, SpherePoint):
        return {"space": "sphere", "coords": p.coords.tolist()}
    if isinstance(p, EuclideanPoint):
        return {"space": "euclidean", "coords": p.coords.tolist()}
    if isinstance(p, CylinderPoint):
        base = point_to_json(p.base)
        return {"space": "cylinder", "base_space": base["space"], "coords": base["coords"], "height": p.height}
    if isinstance(p, JoinPoint):
        return {"space": "join", "left": _slot_json(p.left), "right": _slot_json(p.right), "t": p.t}
    if isinstance(p, Configuration):
        return {"space": "configuration", "points": [point_to_json(q) for q in p.points]}
    raise TypeError(f"cannot encode {type(p).__name__}")


def _slot_json(v):
    if v is None:
        return None
    if isinstance(v, (SpherePoint, EuclideanPoint, CylinderPoint, JoinPoint)):
        return point_to_json(v)
    if isinstance(v, np.ndarray):
        return v.tolist()
    return v


def point_from_json(d):
    if not isinstance(d, dict):
        return np.asarray(d, dtype=float)
    space = d.get("space")
    if space == "sphere":
        return SpherePoint(d["coords"])
    if space == "euclidean":
        return EuclideanPoint(d["coords"])
    if space == "cylinder":
        base = point_from_json({"space": d.get("base_space", "euclidean"), "coords": d["coords"]})
        return CylinderPoint(base, float(d["height"]))
    if space == "join":
        return JoinPoint(_slot_from_json(d.get("left")), _slot_from_json(d.get("right")), d["t"])
    if space == "configuration":
        return make_configuration([point_from_json(q) for q in d["points"]])
    raise ValueError(f"unknown space {space!r}")


def _slot_from_json(v):
    if isinstance(v, dict):
        return point_from_json(v)
    if isinstance(v, list):
        return np.asarray(v, dtype=float)
    return v


def to_array(v) -> np.ndarray:
    """Coordinates of a point or configuration as a float array."""
    if isinstance(v, Configuration):
        return v.array()
    if isinstance(v, CylinderPoint):
        return np.append(_coords(v.base), v.height)
    return _coords(v)

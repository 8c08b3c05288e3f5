"""Recovering planners on Y from planners on configuration spaces of Y."""
from __future__ import annotations

from typing import Callable, Iterable, Sequence

import numpy as np

from ..errors import AnchorInY, InvalidConfiguration, NotFixedPointFree, NotRetraction
from ..spaces import TOL
from .core import Planner, Rule


def _point(v) -> np.ndarray:
    return np.atleast_1d(np.asarray(v, dtype=float)).reshape(-1)


def _dist(p, q) -> float:
    return float(np.linalg.norm(_point(p) - _point(q)))


def _first_robot(planner: Planner) -> Callable:
    """Batch map from configuration paths to the first robot's position in ``Y``."""
    if planner.meta.get("family") in ("lifted", "corrupted-lift"):
        return lambda batch: np.asarray(batch)[..., 0, :-1]
    return lambda batch: np.asarray(batch)[..., 0, :]


def _extracted(config_planner: Planner, embed: Callable, project: Callable, name: str, meta: dict) -> Planner:
    def wrap(rule):
        def section(x, y):
            return rule.section(embed(x), embed(y)).map(project)

        return Rule(rule.id, lambda x, y: rule.domain(embed(x), embed(y)), section, rule.name)

    validate = None
    if config_planner.validate is not None:
        validate = lambda x, y: config_planner.validate(embed(x), embed(y))
    margin = None
    if config_planner.margin is not None:
        margin = lambda x, y: config_planner.margin(embed(x), embed(y))
    return Planner(
        tuple(wrap(r) for r in config_planner.rules),
        mode=config_planner.mode,
        source="Y",
        target="Y",
        ambient="Y",
        name=name,
        include=_point,
        distance=_dist,
        margin=margin,
        validate=validate,
        meta=meta,
    )


def extract_fixed_point_free(
    config_planner: Planner,
    maps: Sequence[Callable],
    *,
    samples: Iterable = (),
    tol: float = TOL,
) -> Planner:
    """Planner on ``Y`` from a planner on ``C^n(Y x I)`` and ``n - 1`` maps ``Y -> Y``.

    Each point ``y`` is embedded as the configuration
    ``(y, f_1(y), ..., f_{n-1}(y))``; the section keeps the first robot's
    track. The maps must be fixed-point-free and pairwise disagreeing, which
    is checked on ``samples`` (a check can refute but never certify).
    """
    maps = list(maps)
    first = _first_robot(config_planner)

    for y in samples:
        y = _point(y)
        vals = [y] + [_point(f(y)) for f in maps]
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                if _dist(vals[i], vals[j]) <= tol:
                    kind = "fixed point" if i == 0 else "maps agree"
                    raise NotFixedPointFree(
                        f"{kind} at y={y.tolist()} (indices {i}, {j})",
                        {"y": y.tolist(), "i": i, "j": j},
                    )

    def embed(y):
        y = _point(y)
        return np.stack([y] + [_point(f(y)) for f in maps])

    return _extracted(config_planner, embed, first, "fixed-point-free",
                      {"family": "fixed-point-free", "n": len(maps) + 1})


def extract_via_retract(
    config_planner: Planner,
    r: Callable,
    anchors: Sequence,
    in_Y: Callable[[np.ndarray], bool],
    *,
    r_batch: Callable | None = None,
    samples: Iterable = (),
    tol: float = TOL,
) -> Planner:
    """Planner on ``Y`` from a planner on ``C^n(Y' x I)`` and a retraction ``r: Y' -> Y``.

    ``y`` is embedded as ``(y, z_2, ..., z_n)`` with fixed anchors outside
    ``Y``; the section is ``r`` applied to the first robot's track.
    """
    zs = [_point(z) for z in anchors]
    for z in zs:
        if in_Y(z):
            raise AnchorInY(f"anchor {z.tolist()} lies in Y")
    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            if _dist(zs[i], zs[j]) <= tol:
                raise InvalidConfiguration(f"anchors {i} and {j} coincide")
    for y in samples:
        y = _point(y)
        d = _dist(r(y), y)
        if d > tol:
            raise NotRetraction(f"r moves y={y.tolist()} by {d:.3g}", {"y": y.tolist(), "r(y)": _point(r(y)).tolist()})

    first = _first_robot(config_planner)
    rb = r_batch if r_batch is not None else (lambda batch: np.stack([_point(r(p)) for p in batch]))

    def embed(y):
        return np.stack([_point(y)] + zs)

    return _extracted(config_planner, embed, lambda batch: rb(first(batch)), "retract",
                      {"family": "retract", "n": len(zs) + 1})

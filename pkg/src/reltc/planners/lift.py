"""Lifting planners on Y^n to collision-free planners in C^n(Y x I), and back."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from ..spaces import config_distance
from .core import Planner, Rule
from .paths import ParamPath, Segment, chain

THIRDS = (1.0 / 3.0, 2.0 / 3.0)


def _rows(a) -> np.ndarray:
    arr = np.asarray(a, dtype=float)
    return arr.reshape(-1, 1) if arr.ndim == 1 else arr


def as_config_planner(base: Planner) -> Planner:
    """View a planner on single points as a planner on one-robot configurations."""
    if base.meta.get("n") is not None:
        return base

    def wrap(rule):
        return Rule(
            rule.id,
            lambda a, b: rule.domain(_rows(a)[0], _rows(b)[0]),
            lambda a, b: rule.section(_rows(a)[0], _rows(b)[0]).map(
                lambda batch: np.asarray(batch)[:, None, :], lambda p: np.asarray(p)[None, :]
            ),
            rule.name,
        )

    margin = None
    if base.margin is not None:
        margin = lambda a, b: base.margin(_rows(a)[0], _rows(b)[0])
    meta = dict(base.meta, n=1)
    return base.with_rules(
        [wrap(r) for r in base.rules],
        include=_rows,
        distance=lambda p, q: config_distance(_rows(p), _rows(q)),
        margin=margin,
        validate=None,
        diagnose=None,
        meta=meta,
    )


def plateau_heights(n: int) -> np.ndarray:
    """Robot ``j`` (1-based) flies at height ``1/j``."""
    return 1.0 / np.arange(1, n + 1, dtype=float)


def _with_heights(points: np.ndarray, heights: np.ndarray) -> np.ndarray:
    return np.concatenate([points, heights[:, None]], axis=-1)


def ramp_path(config, heights) -> ParamPath:
    """Robots rise vertically from height 0 to ``heights`` while staying above ``config``."""
    c = _rows(config).copy()
    h = np.asarray(heights, dtype=float)

    def fn(u):
        k = len(u)
        base = np.broadcast_to(c, (k,) + c.shape)
        return np.concatenate([base, (u[:, None] * h[None, :])[..., None]], axis=-1)

    return ParamPath([0.0, 1.0], [Segment(fn, "height-ramp")], _with_heights(c, 0 * h), _with_heights(c, h))


def lift_section(path: ParamPath, a, b, heights) -> ParamPath:
    """Ascend on ``[0, 1/3]``, follow ``path`` at fixed heights, descend on ``[2/3, 1]``."""
    h = np.asarray(heights, dtype=float)

    def plateau(batch):
        batch = np.asarray(batch, dtype=float)
        return np.concatenate([batch, np.broadcast_to(h[None, :, None], batch.shape[:2] + (1,))], axis=-1)

    middle = path.map(plateau, lambda p: _with_heights(_rows(p), h))
    return chain(
        [ramp_path(a, h), middle, ramp_path(b, h).reversed()],
        THIRDS,
        distance=lambda p, q: config_distance(p, q, cylinder=True),
    )


def _lift(base: Planner, heights_for=plateau_heights, name: str = "lifted") -> Planner:
    base = as_config_planner(base)

    def wrap(rule):
        def section(a, b):
            a, b = _rows(a), _rows(b)
            return lift_section(rule.section(a, b), a, b, heights_for(len(a)))

        return Rule(rule.id, rule.domain, section, rule.name)

    meta = {"family": name, "base": base.meta.get("family", base.name), "n": base.meta.get("n"),
            "base_meta": dict(base.meta)}
    return base.with_rules(
        [wrap(r) for r in base.rules],
        ambient=f"C^n(Y x I) above {base.source}",
        name=f"lift({base.name})",
        include=lambda a: _with_heights(_rows(a), np.zeros(len(_rows(a)))),
        distance=lambda p, q: config_distance(p, q, cylinder=True),
        meta=meta,
    )


def lift_planner(base: Planner) -> Planner:
    """Collision-free planner in ``C^n(Y x I)`` from a planner on ``Y^n``.

    Robot ``j`` climbs to height ``1/j``, the robots then follow the base path
    at their distinct heights, and finally descend. The rule count is that of
    ``base``; every time slice is a configuration because heights differ
    except at the endpoints, where the inputs are configurations already.
    """
    return _lift(base)


def project_planner(lifted: Planner) -> Planner:
    """Drop the heights: a planner on ``Y^n`` with the same rules and endpoints."""

    def drop(batch):
        return np.asarray(batch)[..., :-1]

    def wrap(rule):
        return Rule(rule.id, rule.domain, lambda a, b: rule.section(a, b).map(drop, lambda p: np.asarray(p)[..., :-1]),
                    rule.name)

    meta = dict(lifted.meta, family="projected")
    return lifted.with_rules(
        [wrap(r) for r in lifted.rules],
        ambient="Y^n",
        name=f"project({lifted.name})",
        include=_rows,
        distance=lambda p, q: config_distance(_rows(p), _rows(q)),
        meta=meta,
    )


def equal_height_lift(base: Planner) -> Planner:
    """Deliberately broken lift that parks every robot at height 1 (test fixture)."""
    return _lift(base, heights_for=lambda n: np.ones(n), name="corrupted-lift")


def plateau_embedding(points, heights: Sequence[float] | None = None) -> np.ndarray:
    pts = _rows(points)
    h = plateau_heights(len(pts)) if heights is None else np.asarray(heights, dtype=float)
    return _with_heights(pts, h)

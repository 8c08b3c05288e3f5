"""Planners on the real line and on pairs of robots on the line."""
from __future__ import annotations

import numpy as np

from ..errors import InvalidConfiguration
from ..spaces import check_configuration_array, config_distance
from .core import PARTITION, Planner, Rule
from .paths import ParamPath, Segment, stack_paths


def _real(v) -> np.ndarray:
    return np.atleast_1d(np.asarray(v, dtype=float)).reshape(-1)


def sigma_path(x, y, anchor: float) -> ParamPath:
    """Move from ``x`` to ``anchor`` on ``[0, 1/2]``, then from ``anchor`` to ``y``."""
    x, y = _real(x).copy(), _real(y).copy()
    c = np.full_like(x, float(anchor))
    down = lambda u: (1.0 - u)[:, None] * x + u[:, None] * c
    up = lambda u: (1.0 - u)[:, None] * c + u[:, None] * y
    return ParamPath([0.0, 0.5, 1.0], [Segment(down, "linear"), Segment(up, "linear")], x, y)


def line_sigma_planner(anchor: int = 0) -> Planner:
    """One-rule planner on ``R x R`` routing every path through ``anchor``."""
    if anchor not in (0, 1):
        raise ValueError("anchor must be 0 or 1")
    rule = Rule(1, lambda x, y: True, lambda x, y: sigma_path(x, y, anchor), f"sigma{anchor}")
    return Planner(
        (rule,),
        mode=PARTITION,
        source="R",
        target="R",
        ambient="R",
        name=f"line-sigma{anchor}",
        include=_real,
        distance=lambda p, q: float(np.linalg.norm(_real(p) - _real(q))),
        meta={"family": "line-sigma", "anchor": anchor},
    )


def _config2(a) -> np.ndarray:
    arr = np.asarray(a, dtype=float).reshape(-1, 1)
    if arr.shape != (2, 1):
        raise InvalidConfiguration(f"expected two robots on the line, got shape {np.shape(a)}")
    return arr


def c2_section(a, b) -> ParamPath:
    """Both robots go through 0 when ``x1 < x2`` and through 1 when ``x1 > x2``.

    The two branches live on the two components of ``C^2(R)`` so together they
    form a single continuous rule. Intermediate states may collide: the
    ambient space is ``R^2``, not ``C^2(R)``.
    """
    a, b = _config2(a), _config2(b)
    if a[0, 0] == a[1, 0]:
        raise InvalidConfiguration("x1 == x2 is not a configuration")
    anchor = 0.0 if a[0, 0] < a[1, 0] else 1.0
    return stack_paths([sigma_path(a[k], b[k], anchor) for k in range(2)])


def c2_line_planner() -> Planner:
    def validate(a, b):
        check_configuration_array(_config2(a))
        check_configuration_array(_config2(b))

    rule = Rule(1, lambda a, b: True, c2_section, "sigma-by-order")
    return Planner(
        (rule,),
        mode=PARTITION,
        source="C^2(R)",
        target="C^2(R)",
        ambient="R^2",
        name="c2-line",
        include=_config2,
        distance=lambda p, q: config_distance(_config2(p), _config2(q)),
        validate=validate,
        meta={"family": "c2-line", "n": 2, "d": 1},
    )

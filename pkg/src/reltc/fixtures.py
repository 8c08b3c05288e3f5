"""Deliberately broken planners used to check that the audits catch faults."""
from __future__ import annotations

import numpy as np

from .planners.core import Planner, Rule
from .planners.lift import equal_height_lift
from .planners.sphere import geodesic_path, sphere_planner
from .spaces import orthogonal_unit

ENDPOINT_OFFSET = 1e-3


def corrupted_endpoint_planner(m: int = 2, z=None, offset: float = ENDPOINT_OFFSET) -> Planner:
    """Sphere planner whose geodesic rule lands ``offset`` away from the target.

    The faulty path is still a great-circle arc on the sphere and depends
    continuously on the inputs, so only the endpoint audit should object.
    """
    good = sphere_planner(m, z)

    def bent(y):
        y = np.asarray(y, dtype=float)
        v = y + offset * orthogonal_unit(y)
        return v / np.linalg.norm(v)

    r1 = good.rule(1)
    broken = Rule(1, r1.domain, lambda x, y: geodesic_path(x, bent(y)), "geodesic-off-target")
    rules = (broken,) + tuple(r for r in good.rules if r.id != 1)
    return good.with_rules(rules, name="corrupted-endpoint",
                           meta=dict(good.meta, family="corrupted-endpoint"))


def corrupted_lift_planner(base: Planner) -> Planner:
    """Lift that keeps every robot at height 1, so crossing robots collide."""
    return equal_height_lift(base)

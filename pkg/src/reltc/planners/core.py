"""Rules, planners and dispatch."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Callable

import numpy as np

from ..errors import Uncovered
from ..spaces import point_distance
from .paths import ParamPath

PARTITION = "partition"
OPEN_COVER = "open-cover"


@dataclass(frozen=True)
class Rule:
    """One continuous rule: a domain predicate and a section over it."""

    id: int
    domain: Callable[[Any, Any], bool]
    section: Callable[[Any, Any], ParamPath]
    name: str = ""


def _identity(p):
    return p


@dataclass(frozen=True)
class Planner:
    """A motion planning algorithm for ``TC_X(Y1 x Y2)``.

    ``include`` maps planner inputs into the ambient space ``X`` (the
    inclusion of ``Y1``, and of ``Y2`` unless ``include_target`` is given),
    so endpoint checks compare ``path(0)`` with ``include(a)``. ``distance`` is a metric on ``X``.
    ``margin`` optionally estimates how far an input pair is from the nearest
    rule boundary; ``validate`` rejects malformed inputs before dispatch;
    ``diagnose`` turns an uncovered pair into a more specific error.
    """

    rules: tuple[Rule, ...]
    mode: str = PARTITION
    source: str = "Y1"
    target: str = "Y2"
    ambient: str = "X"
    name: str = "planner"
    include: Callable[[Any], Any] = _identity
    include_target: Callable[[Any], Any] | None = None
    distance: Callable[[Any, Any], float] = point_distance
    margin: Callable[[Any, Any], float] | None = None
    validate: Callable[[Any, Any], None] | None = None
    diagnose: Callable[[Any, Any], Exception] | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.rules:
            raise ValueError("a planner needs at least one rule")
        if self.mode not in (PARTITION, OPEN_COVER):
            raise ValueError(f"unknown coverage mode {self.mode!r}")
        ids = [r.id for r in self.rules]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate rule ids {ids}")

    @property
    def k(self) -> int:
        """Rule count."""
        return len(self.rules)

    def rule(self, rule_id: int) -> Rule:
        for r in self.rules:
            if r.id == rule_id:
                return r
        raise KeyError(rule_id)

    def accepting(self, a, b) -> list[int]:
        """Ids of every rule whose domain contains ``(a, b)``."""
        return [r.id for r in self.rules if r.domain(a, b)]

    def select(self, a, b) -> Rule:
        if self.validate is not None:
            self.validate(a, b)
        for r in self.rules:
            if r.domain(a, b):
                return r
        if self.diagnose is not None:
            raise self.diagnose(a, b)
        raise Uncovered(f"{self.name}: no rule accepts the pair")

    def with_rules(self, rules, **changes) -> "Planner":
        return replace(self, rules=tuple(rules), **changes)


def dispatch(planner: Planner, a, b) -> tuple[int, ParamPath]:
    """Pick the rule for ``(a, b)`` and return ``(rule id, path)``.

    Rules are tried in order, so in open-cover mode the lowest-id accepting
    rule wins; in partition mode at most one rule accepts.
    """
    r = planner.select(a, b)
    return r.id, r.section(a, b)


def endpoint_residual(planner: Planner, a, b, path: ParamPath) -> float:
    inc_b = planner.include_target or planner.include
    return max(planner.distance(path.eval(0.0), planner.include(a)), planner.distance(path.eval(1.0), inc_b(b)))


def _jsonable(v):
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if hasattr(v, "__dataclass_fields__"):
        from ..spaces import point_to_json
        return point_to_json(v)
    return v


def path_to_json(rule_id: int, path: ParamPath, samples: int = 101) -> dict:
    ts = np.linspace(0.0, 1.0, samples) if samples > 1 else np.array([0.0])
    pts = path.sample(ts)
    return {
        "rule": int(rule_id),
        "breakpoints": path.breakpoints.tolist(),
        "segments": path.segment_kinds(),
        "samples": [{"t": float(t), "point": _jsonable(p)} for t, p in zip(ts, pts)],
    }


def planner_to_json(planner: Planner) -> dict:
    return {
        "name": planner.name,
        "mode": planner.mode,
        "source": planner.source,
        "target": planner.target,
        "ambient": planner.ambient,
        "rules": [{"id": r.id, "name": r.name} for r in planner.rules],
        "meta": _jsonable(planner.meta),
    }

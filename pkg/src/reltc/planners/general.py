"""One-rule planners from joins and nullhomotopies, and transport along maps."""
from __future__ import annotations

from typing import Any, Callable, Iterable

import numpy as np

from ..errors import HomotopyEndpointMismatch
from ..spaces import TOL, JoinPoint, join_distance, point_distance
from .core import PARTITION, Planner, Rule, _identity
from .lift import THIRDS
from .paths import ParamPath, Segment, chain

# A homotopy is a callable H(t, y) -> point of the ambient space, t in [0, 1].
Homotopy = Callable[[float, Any], Any]


def _batch(values: list):
    if values and all(isinstance(v, np.ndarray) for v in values):
        return np.stack(values)
    return values


def trace_path(H: Homotopy, y, kind: str = "homotopy-trace") -> ParamPath:
    """The path ``t -> H(t, y)``."""
    fn = lambda u: _batch([H(float(s), y) for s in u])
    return ParamPath([0.0, 1.0], [Segment(fn, kind)], H(0.0, y), H(1.0, y))


def join_path(y1, y2) -> ParamPath:
    fn = lambda u: [JoinPoint(y1, y2, float(s)) for s in u]
    return ParamPath([0.0, 1.0], [Segment(fn, "join-sweep")], JoinPoint(y1, None, 0.0), JoinPoint(None, y2, 1.0))


def join_planner(Y1: str = "Y1", Y2: str = "Y2") -> Planner:
    """Single rule ``s(y1, y2)(t) = [y1, y2, t]`` on ``Y1 x Y2`` inside the join."""
    rule = Rule(1, lambda a, b: True, join_path, "join-sweep")
    return Planner(
        (rule,),
        mode=PARTITION,
        source=Y1,
        target=Y2,
        ambient=f"{Y1} * {Y2}",
        name="join",
        include=lambda a: JoinPoint(a, None, 0.0),
        include_target=lambda b: JoinPoint(None, b, 1.0),
        distance=join_distance,
        meta={"family": "join", "Y1": Y1, "Y2": Y2},
    )


def _check_homotopy(H: Homotopy, samples: Iterable, start_of, end_of, distance, tol, label: str):
    for y in samples:
        d0 = distance(H(0.0, y), start_of(y))
        if d0 > tol:
            raise HomotopyEndpointMismatch(f"{label} at t=0 misses the inclusion by {d0:.3g} at y={y!r}")
        d1 = distance(H(1.0, y), end_of(y))
        if d1 > tol:
            raise HomotopyEndpointMismatch(f"{label} at t=1 misses its target by {d1:.3g} at y={y!r}")


def section_from_nullhomotopies(
    g: Homotopy,
    h: Homotopy,
    sigma: ParamPath,
    *,
    samples1: Iterable = (),
    samples2: Iterable = (),
    include: Callable = _identity,
    include_target: Callable | None = None,
    distance: Callable = point_distance,
    tol: float = TOL,
    name: str = "nullhomotopic",
) -> Planner:
    """One-rule planner on ``Y1 x Y2`` from nullhomotopies of both inclusions.

    ``g`` contracts ``Y1`` to ``sigma(0)`` and ``h`` contracts ``Y2`` to
    ``sigma(1)``. The section follows ``g`` on ``[0, 1/3]``, then ``sigma``,
    then ``h`` backwards. The homotopy hypotheses are checked on the supplied
    sample points only.
    """
    inc_b = include_target or include
    x1, x2 = sigma.start, sigma.end
    _check_homotopy(g, samples1, include, lambda y: x1, distance, tol, "g")
    _check_homotopy(h, samples2, inc_b, lambda y: x2, distance, tol, "h")

    def section(a, b):
        return chain([trace_path(g, a), sigma, trace_path(h, b).reversed()], THIRDS, tol=tol, distance=distance)

    return Planner(
        (Rule(1, lambda a, b: True, section, "contract-travel-expand"),),
        mode=PARTITION,
        ambient="X",
        name=name,
        include=include,
        include_target=include_target,
        distance=distance,
        meta={"family": name},
    )


def transport_planner(
    base: Planner,
    f: Callable,
    alpha1: Callable,
    alpha2: Callable,
    H1: Homotopy,
    H2: Homotopy,
    *,
    f_batch: Callable | None = None,
    samples1: Iterable = (),
    samples2: Iterable = (),
    include: Callable = _identity,
    include_target: Callable | None = None,
    distance: Callable = point_distance,
    tol: float = TOL,
    name: str = "transported",
) -> Planner:
    """Carry a planner for ``(X, Y1, Y2)`` over to ``(X', Y1', Y2')``.

    ``f: X -> X'`` and ``alpha_j: Y_j' -> Y_j``; ``H_j`` runs from the
    inclusion of ``Y_j'`` to ``f o alpha_j``. Rule ``i`` accepts ``(a, b)``
    when base rule ``i`` accepts ``(alpha1(a), alpha2(b))``; its path follows
    ``H1``, then ``f`` of the base path, then ``H2`` backwards.
    """
    inc_b = include_target or include
    _check_homotopy(H1, samples1, include, lambda y: f(base.include(alpha1(y))), distance, tol, "H1")
    _check_homotopy(H2, samples2, inc_b, lambda y: f((base.include_target or base.include)(alpha2(y))),
                    distance, tol, "H2")
    fb = f_batch if f_batch is not None else (lambda batch: _batch([f(p) for p in batch]))

    def wrap(rule):
        def domain(a, b):
            return rule.domain(alpha1(a), alpha2(b))

        def section(a, b):
            middle = rule.section(alpha1(a), alpha2(b)).map(fb, f)
            return chain([trace_path(H1, a), middle, trace_path(H2, b).reversed()], THIRDS, tol=tol,
                         distance=distance)

        return Rule(rule.id, domain, section, rule.name)

    margin = None
    if base.margin is not None:
        margin = lambda a, b: base.margin(alpha1(a), alpha2(b))
    validate = None
    if base.validate is not None:
        validate = lambda a, b: base.validate(alpha1(a), alpha2(b))
    return Planner(
        tuple(wrap(r) for r in base.rules),
        mode=base.mode,
        name=name,
        include=include,
        include_target=include_target,
        distance=distance,
        margin=margin,
        validate=validate,
        meta={"family": name, "base": base.meta.get("family", base.name)},
    )

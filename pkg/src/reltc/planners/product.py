"""Graded product planners on Y^n and their restriction to configuration pairs."""
from __future__ import annotations

import math

import numpy as np

from ..errors import GradeOverflow, NotPartition
from ..spaces import check_configuration_array, config_distance
from .core import PARTITION, Planner, Rule
from .paths import stack_paths


def _rows(a) -> np.ndarray:
    arr = np.asarray(a, dtype=float)
    return arr.reshape(-1, 1) if arr.ndim == 1 else arr


def _base_indices(base: Planner, a, b) -> list[int]:
    return [base.select(a[k], b[k]).id for k in range(len(a))]


def graded_product_planner(base: Planner, n: int) -> Planner:
    """Planner on ``Y^n`` with one rule per grade ``|J| = j_1 + ... + j_n``.

    ``base`` must be a partition-mode planner with rule ids ``1..r`` ordered
    so that limits of pairs in rule ``j`` fall in rules ``j' >= j``. With that
    ordering distinct multi-indices of equal grade have separated closures,
    so the union over a grade carries a continuous section. Produces
    ``r n - n + 1`` rules with ids ``n..r n``.
    """
    if base.mode != PARTITION:
        raise NotPartition("graded products need a partition-mode base planner")
    if n < 1:
        raise ValueError("n must be positive")
    r = base.k
    if sorted(rule.id for rule in base.rules) != list(range(1, r + 1)):
        raise ValueError("base rule ids must be 1..r")
    if n == 1:
        return base

    def grade(a, b) -> int:
        a, b = _rows(a), _rows(b)
        return sum(_base_indices(base, a, b))

    def make_rule(j):
        def domain(a, b):
            return grade(a, b) == j

        def section(a, b):
            a, b = _rows(a), _rows(b)
            idx = _base_indices(base, a, b)
            return stack_paths([base.rule(i).section(a[k], b[k]) for k, i in enumerate(idx)])

        return Rule(j, domain, section, f"grade-{j}")

    def margin(a, b):
        if base.margin is None:
            return math.inf
        a, b = _rows(a), _rows(b)
        return min(base.margin(a[k], b[k]) for k in range(len(a)))

    meta = dict(base.meta)
    meta.update({"family": "product", "base": base.meta.get("family", base.name), "n": n, "r": r})
    return Planner(
        tuple(make_rule(j) for j in range(n, r * n + 1)),
        mode=PARTITION,
        source=f"({base.source})^{n}",
        target=f"({base.target})^{n}",
        ambient=f"({base.ambient})^{n}",
        name=f"{base.name}^{n}",
        include=_rows,
        distance=lambda p, q: config_distance(_rows(p), _rows(q)),
        margin=margin,
        meta=meta,
    )


def product_grade(product: Planner, base: Planner, a, b) -> int:
    return sum(_base_indices(base, _rows(a), _rows(b)))


def restrict_to_configurations(product: Planner, z=None, base: Planner | None = None) -> Planner:
    """Keep the grades ``n..2n+1`` of a graded product of sphere planners.

    In a configuration at most one robot sits at the marked point ``z``, so
    at most one component uses rule 3 and the grade never exceeds ``2n+1``.
    The result has ``n + 2`` rules on ``C^n(S^m) x C^n(S^m)``; a pair needing
    a higher grade is reported as ``GradeOverflow``.
    """
    meta = product.meta
    if meta.get("family") == "sphere":
        n = 1
    elif meta.get("family") == "product" and meta.get("base") == "sphere":
        n = meta["n"]
    else:
        raise ValueError("restriction expects a graded product of sphere planners")
    if z is not None and not np.allclose(np.asarray(z, dtype=float), meta["z"], atol=1e-12):
        raise ValueError("z differs from the marked point of the sphere planner")
    if base is None:
        from .sphere import sphere_planner
        base = sphere_planner(meta["m"], np.asarray(meta["z"]), meta.get("tau", 1e-9))

    top = 2 * n + 1
    kept = [r for r in product.rules if n <= r.id <= top]

    def validate(a, b):
        check_configuration_array(_rows(a))
        check_configuration_array(_rows(b))

    def diagnose(a, b):
        a, b = _rows(a), _rows(b)
        return GradeOverflow(sum(_base_indices(base, a, b)) if n > 1 else base.select(a[0], b[0]).id, top)

    new_meta = dict(meta)
    new_meta.update({"family": "config-sphere", "n": n})
    m = meta["m"]
    if n == 1:
        from .lift import as_config_planner

        single = as_config_planner(product)
        kept = [r for r in single.rules if n <= r.id <= top]
        return single.with_rules(kept, meta=new_meta, name="config-sphere-1", validate=validate, diagnose=diagnose)
    return product.with_rules(
        kept,
        source=f"C^{n}(S^{m})",
        target=f"C^{n}(S^{m})",
        ambient=f"(S^{m})^{n}",
        name=f"config-sphere-{n}",
        validate=validate,
        diagnose=diagnose,
        meta=new_meta,
    )

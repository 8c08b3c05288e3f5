"""Named planner families: constructors, samplers, and the checks that apply.

A scenario file is JSON::

    {"planner": {"family": "config-sphere-lifted", "m": 2, "n": 3, "z": [0, 0, 1]},
     "queries": [{"start": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "end": [...]}],
     "output": {"samples": 101, "format": "json"}}

Points are plain coordinate lists: a list of floats for a point, a list of
such lists for a configuration. Join queries take a start in ``Y1`` and an
end in ``Y2``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from .errors import InvalidPresentation, ReltcError, UnsupportedFamily
from .fixtures import corrupted_endpoint_planner, corrupted_lift_planner
from .planners import (
    Planner,
    c2_line_planner,
    extract_fixed_point_free,
    extract_via_retract,
    graded_product_planner,
    join_planner,
    lift_planner,
    line_sigma_planner,
    restrict_to_configurations,
    sphere_planner,
)
from .spaces import point_from_json, to_array
from .verify import (
    Sampler,
    VerificationReport,
    config_sphere_pairs,
    euclidean_pairs,
    interval_pairs,
    line_config_pairs,
    run_suite,
    sphere_pairs,
    sphere_power_pairs,
)

BASIC = ("rule-count", "cover", "endpoints", "continuity")
RETRACT_EPS = 1e-6


@dataclass
class Family:
    """A resolved planner together with everything needed to audit it."""

    family: str
    planner: Planner
    sampler: Sampler
    expected_rules: int
    checks: tuple[str, ...] = BASIC
    fixture: bool = False
    fixture_targets: tuple[str, ...] = ()
    continuity_samples: int | None = None
    collision_samples: int | None = None
    params: dict = field(default_factory=dict)

    def verify(self, N: int, seed: int) -> VerificationReport:
        return run_suite(
            self.planner,
            self.sampler,
            N,
            seed,
            checks=self.checks,
            expected_rules=self.expected_rules,
            continuity_samples=self.continuity_samples,
            collision_samples=self.collision_samples,
            fixture=self.fixture,
            fixture_targets=self.fixture_targets,
        )


def _z(spec: dict, m: int):
    z = spec.get("z")
    return None if z is None else np.asarray(z, dtype=float)


def _config_sphere(m: int, n: int, z) -> Planner:
    base = sphere_planner(m, z)
    return restrict_to_configurations(graded_product_planner(base, n), z, base)


def _lifted_c2() -> Planner:
    return lift_planner(c2_line_planner())


def _sphere(spec):
    m = int(spec.get("m", 2))
    z = _z(spec, m)
    return Family("sphere", sphere_planner(m, z), sphere_pairs(m, z, special=0.2), 3,
                  BASIC[:3] + ("sphere-confinement", "continuity"), params={"m": m})


def _sphere_product(spec):
    m, n = int(spec.get("m", 2)), int(spec.get("n", 2))
    z = _z(spec, m)
    planner = graded_product_planner(sphere_planner(m, z), n)
    return Family("sphere-product", planner, sphere_power_pairs(m, n, z, special=0.2), 2 * n + 1,
                  BASIC[:3] + ("sphere-confinement", "continuity"), continuity_samples=2000,
                  params={"m": m, "n": n})


def _config_sphere_family(spec):
    m, n = int(spec.get("m", 2)), int(spec.get("n", 2))
    z = _z(spec, m)
    return Family("config-sphere", _config_sphere(m, n, z), config_sphere_pairs(m, n, z, special=0.2), n + 2,
                  BASIC[:3] + ("sphere-confinement", "continuity"), continuity_samples=2000,
                  params={"m": m, "n": n})


def _config_sphere_lifted(spec):
    m, n = int(spec.get("m", 2)), int(spec.get("n", 2))
    z = _z(spec, m)
    planner = lift_planner(_config_sphere(m, n, z))
    return Family("config-sphere-lifted", planner, config_sphere_pairs(m, n, z, special=0.2, swap=0.25), n + 2,
                  BASIC[:3] + ("sphere-confinement", "continuity", "collision", "plateau-heights"),
                  continuity_samples=2000, collision_samples=2000, params={"m": m, "n": n})


def _line_sigma(spec):
    anchor = int(spec.get("anchor", 0))
    return Family("line-sigma", line_sigma_planner(anchor), interval_pairs(-5.0, 5.0), 1,
                  params={"anchor": anchor})


def _c2_line(spec):
    return Family("c2-line", c2_line_planner(), line_config_pairs(2), 1)


def _join(spec):
    d1, d2 = int(spec.get("d1", 2)), int(spec.get("d2", 2))
    return Family("join", join_planner(f"R^{d1}", f"R^{d2}"), euclidean_pairs(d1, d2), 1,
                  continuity_samples=1000, params={"d1": d1, "d2": d2})


def _fixed_point_free_line(spec):
    shift = float(spec.get("shift", 1.0))
    probe = np.linspace(-10.0, 10.0, 201)
    planner = extract_fixed_point_free(_lifted_c2(), [lambda y: y + shift], samples=probe)
    return Family("fixed-point-free-line", planner, interval_pairs(-5.0, 5.0), 1, params={"shift": shift})


def _retract_interval(spec):
    eps = float(spec.get("eps", RETRACT_EPS))
    anchor = float(spec.get("anchor", 2.0))

    def r(y):
        return np.clip(np.asarray(y, dtype=float), eps, 1.0 - eps)

    planner = extract_via_retract(
        _lifted_c2(),
        r,
        [anchor],
        lambda p: bool(0.0 < float(np.asarray(p).reshape(-1)[0]) < 1.0),
        r_batch=r,
        samples=np.linspace(eps, 1.0 - eps, 101),
    )
    return Family("retract-interval", planner, interval_pairs(eps, 1.0 - eps), 1,
                  params={"eps": eps, "anchor": anchor})


def _corrupted_lift(spec):
    m, n = int(spec.get("m", 2)), int(spec.get("n", 2))
    z = _z(spec, m)
    planner = corrupted_lift_planner(_config_sphere(m, n, z))
    return Family("corrupted-lift", planner, config_sphere_pairs(m, n, z, special=0.2, swap=0.5), n + 2,
                  BASIC + ("collision",), fixture=True, fixture_targets=("collision",),
                  continuity_samples=2000, collision_samples=2000, params={"m": m, "n": n})


def _corrupted_endpoint(spec):
    m = int(spec.get("m", 2))
    z = _z(spec, m)
    return Family("corrupted-endpoint", corrupted_endpoint_planner(m, z), sphere_pairs(m, z, special=0.2), 3,
                  BASIC[:3] + ("sphere-confinement", "continuity"), fixture=True, fixture_targets=("endpoints",),
                  params={"m": m})


FAMILIES: dict[str, Callable[[dict], Family]] = {
    "sphere": _sphere,
    "sphere-product": _sphere_product,
    "config-sphere": _config_sphere_family,
    "config-sphere-lifted": _config_sphere_lifted,
    "line-sigma": _line_sigma,
    "c2-line": _c2_line,
    "join": _join,
    "fixed-point-free-line": _fixed_point_free_line,
    "retract-interval": _retract_interval,
    "corrupted-lift": _corrupted_lift,
    "corrupted-endpoint": _corrupted_endpoint,
}


def resolve(spec: dict) -> Family:
    """Build the planner family named by ``spec["family"]``."""
    name = spec.get("family")
    if name not in FAMILIES:
        raise UnsupportedFamily(f"unknown planner family {name!r}; known: {sorted(FAMILIES)}")
    return FAMILIES[name](spec)


def parse_point(v) -> Any:
    """Coordinates (or a tagged point object) to the array a planner expects."""
    if isinstance(v, dict):
        v = point_from_json(v)
        return to_array(v)
    arr = np.asarray(v, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    return arr


@dataclass
class Scenario:
    planner_spec: dict
    queries: list[tuple[Any, Any]]
    samples: int = 101
    format: str = "json"
    raw: dict = field(default_factory=dict)


def scenario_from_dict(d: dict) -> Scenario:
    try:
        spec = d["planner"]
        if not isinstance(spec, dict):
            raise TypeError("'planner' must be an object")
        queries = [(parse_point(q["start"]), parse_point(q["end"])) for q in d.get("queries", [])]
        out = d.get("output", {})
        return Scenario(spec, queries, int(out.get("samples", 101)), str(out.get("format", "json")), d)
    except (KeyError, TypeError, ValueError, ReltcError) as exc:
        raise InvalidPresentation(f"malformed scenario: {exc}") from exc


def load_scenario(path) -> Scenario:
    try:
        with open(Path(path), encoding="utf-8") as fh:
            d = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidPresentation(f"{path}: not valid JSON ({exc})") from exc
    except OSError as exc:
        raise InvalidPresentation(f"{path}: {exc.strerror}") from exc
    if not isinstance(d, dict):
        raise InvalidPresentation(f"{path}: scenario must be a JSON object")
    return scenario_from_dict(d)

"""Monte-Carlo audits of planners against the motion-planning contract.

Every check draws its input pairs from a :class:`Sampler` driven by a seeded
``numpy`` generator. Samples are produced in fixed-size chunks, chunk ``i``
using child ``i`` of ``SeedSequence(seed)``, so the first ``N`` pairs are the
same whatever the total requested and reports are reproducible bit for bit.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from .errors import ReltcError
from .planners.core import PARTITION, Planner, endpoint_residual
from .planners.paths import ParamPath
from .spaces import TOL, JoinPoint, orthogonal_unit, point_to_json

CHUNK = 1000
MIN_SEPARATION = 1e-3
CLEARANCE_TOL = 1e-8
ALARM = 0.1
MAX_WITNESSES = 5

Pair = tuple[Any, Any]


# --------------------------------------------------------------------------
# samplers

@dataclass(frozen=True)
class Sampler:
    """Seeded source of input pairs.

    ``draw(rng, k)`` returns ``k`` pairs; ``perturb(rng, a, b, delta)`` returns
    a pair within ``delta`` of ``(a, b)`` of the same kind, or ``None`` when
    no admissible nearby pair was found. ``spherical`` marks samplers whose
    points (or configuration rows) are unit vectors, so that interpolated
    points are normalized back onto the sphere.
    """

    name: str
    draw: Callable[[np.random.Generator, int], list]
    perturb: Callable[[np.random.Generator, Any, Any, float], Pair | None] | None = None
    spherical: bool = False

    def between(self, p, q, s: float):
        """Point at fraction ``s`` of the straight segment from ``p`` to ``q``."""
        out = (1.0 - s) * np.asarray(p, dtype=float) + s * np.asarray(q, dtype=float)
        if self.spherical:
            out = out / np.linalg.norm(out, axis=-1, keepdims=True)
        return out


def _chunks(seed: int, N: int) -> list[np.random.SeedSequence]:
    return np.random.SeedSequence(seed).spawn(math.ceil(N / CHUNK)) if N > 0 else []


def draw_pairs(sampler: Sampler, seed: int, N: int) -> list[Pair]:
    out: list[Pair] = []
    for ss in _chunks(seed, N):
        out.extend(sampler.draw(np.random.default_rng(ss), CHUNK))
    return out[:N]


def _perturb_rngs(seed: int, N: int):
    """One generator per chunk for perturbations, independent of the draws."""
    return [np.random.default_rng(ss.spawn(2)[1]) for ss in _chunks(seed, N)]


def unit_vectors(rng: np.random.Generator, k: int, dim: int) -> np.ndarray:
    """Uniform points on the unit sphere in ``R^dim`` (normalized Gaussians)."""
    g = rng.standard_normal((k, dim))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def nudge_on_sphere(rng: np.random.Generator, x: np.ndarray, delta: float) -> np.ndarray:
    """A point at angle at most ``delta`` from ``x`` in a random direction."""
    g = rng.standard_normal(x.shape)
    g -= (g @ x) * x
    norm = np.linalg.norm(g)
    if norm == 0.0:
        g, norm = orthogonal_unit(x), 1.0
    theta = delta * rng.uniform(0.5, 1.0)
    y = math.cos(theta) * x + math.sin(theta) * (g / norm)
    return y / np.linalg.norm(y)


def sphere_pairs(m: int, z=None, special: float = 0.0, tau: float = TOL) -> Sampler:
    """Uniform pairs on ``S^m``; a fraction ``special`` are antipodal, half of those at ``z``."""
    dim = m + 1
    zz = np.eye(dim)[-1] if z is None else np.asarray(z, dtype=float)

    def draw(rng, k):
        X, Y = unit_vectors(rng, k, dim), unit_vectors(rng, k, dim)
        u = rng.random(k)
        pairs = []
        for i in range(k):
            x, y = X[i], Y[i]
            if u[i] < special / 2:
                x, y = zz.copy(), -zz
            elif u[i] < special:
                y = -x
            pairs.append((x, y))
        return pairs

    def perturb(rng, a, b, delta):
        a2 = nudge_on_sphere(rng, a, delta)
        b2 = -a2 if a @ b <= -1 + tau else nudge_on_sphere(rng, b, delta)
        return a2, b2

    return Sampler(f"sphere-pairs(m={m})", draw, perturb, spherical=True)


def sphere_power_pairs(m: int, n: int, z=None, special: float = 0.0, tau: float = TOL) -> Sampler:
    """Pairs in ``(S^m)^n`` with independent coordinates, each drawn as in :func:`sphere_pairs`."""
    single = sphere_pairs(m, z, special, tau)

    def draw(rng, k):
        cols = [single.draw(rng, k) for _ in range(n)]
        return [(np.stack([c[i][0] for c in cols]), np.stack([c[i][1] for c in cols])) for i in range(k)]

    def perturb(rng, a, b, delta):
        moved = [single.perturb(rng, a[j], b[j], delta) for j in range(n)]
        return np.stack([p[0] for p in moved]), np.stack([p[1] for p in moved])

    return Sampler(f"sphere-power-pairs(m={m}, n={n})", draw, perturb, spherical=True)


def _separated(points: np.ndarray, sep: float) -> bool:
    n = len(points)
    if n < 2:
        return True
    d = np.linalg.norm(points[:, None, :] - points[None, :, :], axis=-1)
    return bool(d[np.triu_indices(n, 1)].min() > sep)


def _random_config(rng, n, dim, sep, on_sphere: bool, scale: float = 1.0) -> np.ndarray:
    while True:
        pts = unit_vectors(rng, n, dim) if on_sphere else scale * rng.standard_normal((n, dim))
        if _separated(pts, sep):
            return pts


def config_sphere_pairs(m: int, n: int, z=None, special: float = 0.0, swap: float = 0.0,
                        tau: float = TOL) -> Sampler:
    """Pairs of configurations of ``n`` robots on ``S^m`` (rejection, min separation 1e-3).

    With probability ``swap`` the target is the start with robots cyclically
    relabelled. Otherwise each target robot is sent to the antipode of its
    start with probability ``special``, and with the same probability one
    start robot is moved onto the marked point ``z``.
    """
    dim = m + 1
    zz = np.eye(dim)[-1] if z is None else np.asarray(z, dtype=float)

    def draw(rng, k):
        pairs = []
        for _ in range(k):
            a = _random_config(rng, n, dim, MIN_SEPARATION, True)
            b = _random_config(rng, n, dim, MIN_SEPARATION, True)
            u = rng.random(n + 2)
            if u[0] < swap and n > 1:
                b = np.roll(a, 1, axis=0)
            else:
                if u[1] < special:
                    j = int(rng.integers(n))
                    cand = a.copy()
                    cand[j] = zz
                    if _separated(cand, MIN_SEPARATION):
                        a = cand
                for j in range(n):
                    if u[2 + j] < special:
                        cand = b.copy()
                        cand[j] = -a[j]
                        if _separated(cand, MIN_SEPARATION):
                            b = cand
            pairs.append((a, b))
        return pairs

    def perturb(rng, a, b, delta):
        a2, b2 = np.empty_like(a), np.empty_like(b)
        for j in range(len(a)):
            a2[j] = nudge_on_sphere(rng, a[j], delta)
            b2[j] = -a2[j] if a[j] @ b[j] <= -1 + tau else nudge_on_sphere(rng, b[j], delta)
        if not (_separated(a2, MIN_SEPARATION / 2) and _separated(b2, MIN_SEPARATION / 2)):
            return None
        return a2, b2

    return Sampler(f"config-sphere-pairs(m={m}, n={n})", draw, perturb, spherical=True)


def interval_pairs(lo: float, hi: float) -> Sampler:
    """Uniform pairs of reals in ``[lo, hi]``; perturbations stay inside."""

    def draw(rng, k):
        v = rng.uniform(lo, hi, size=(k, 2))
        return [(np.array([x]), np.array([y])) for x, y in v]

    def perturb(rng, a, b, delta):
        a2 = np.clip(a + rng.uniform(-delta, delta, 1), lo, hi)
        b2 = np.clip(b + rng.uniform(-delta, delta, 1), lo, hi)
        return a2, b2

    return Sampler(f"interval-pairs[{lo}, {hi}]", draw, perturb)


def line_config_pairs(n: int = 2, scale: float = 5.0, swap: float = 0.0) -> Sampler:
    """Pairs of configurations of ``n`` distinct reals."""

    def draw(rng, k):
        pairs = []
        for _ in range(k):
            a = _random_config(rng, n, 1, MIN_SEPARATION, False, scale)
            b = _random_config(rng, n, 1, MIN_SEPARATION, False, scale)
            if rng.random() < swap:
                b = np.roll(a, 1, axis=0)
            pairs.append((a, b))
        return pairs

    def perturb(rng, a, b, delta):
        a2 = a + rng.uniform(-delta / 2, delta / 2, a.shape)
        b2 = b + rng.uniform(-delta / 2, delta / 2, b.shape)
        if not (_separated(a2, MIN_SEPARATION / 2) and _separated(b2, MIN_SEPARATION / 2)):
            return None
        # stay in the same component of C^n(R)
        if np.any(np.argsort(a2[:, 0]) != np.argsort(a[:, 0])):
            return None
        return a2, b2

    return Sampler(f"line-config-pairs(n={n})", draw, perturb)


def euclidean_pairs(d1: int, d2: int) -> Sampler:
    """Gaussian points of ``R^d1`` and ``R^d2``, for join planners."""

    def draw(rng, k):
        A, B = rng.standard_normal((k, d1)), rng.standard_normal((k, d2))
        return [(A[i], B[i]) for i in range(k)]

    def perturb(rng, a, b, delta):
        def step(v):
            g = rng.standard_normal(v.shape)
            return v + g / np.linalg.norm(g) * delta * rng.uniform(0.5, 1.0)

        return step(a), step(b)

    return Sampler(f"euclidean-pairs({d1}, {d2})", draw, perturb)


# --------------------------------------------------------------------------
# reports

@dataclass
class CheckResult:
    name: str
    passed: bool
    evidence: dict
    witnesses: list = field(default_factory=list)
    fixture_target: bool = False

    def to_json(self) -> dict:
        return {"check": self.name, "passed": self.passed, "evidence": self.evidence,
                "witnesses": self.witnesses}


@dataclass
class VerificationReport:
    planner: str
    seed: int
    samples: int
    checks: list[CheckResult] = field(default_factory=list)
    fixture: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "planner": self.planner,
            "seed": self.seed,
            "samples": self.samples,
            "fixture": self.fixture,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def summary(self) -> str:
        rows = [("check", "result", "evidence")]
        for c in self.checks:
            ev = ", ".join(f"{k}={_fmt(v)}" for k, v in c.evidence.items() if not isinstance(v, (dict, list)))
            rows.append((c.name, "pass" if c.passed else "FAIL", ev))
        w0 = max(len(r[0]) for r in rows)
        w1 = max(len(r[1]) for r in rows)
        lines = [f"planner {self.planner}  seed {self.seed}  samples {self.samples}"]
        lines += [f"{r[0]:<{w0}}  {r[1]:<{w1}}  {r[2]}" for r in rows]
        return "\n".join(lines)


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.3g}"
    return str(v)


def _num(x) -> float | None:
    """JSON-safe float (infinities become None)."""
    x = float(x)
    return x if math.isfinite(x) else None


def _jsonable(v):
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, JoinPoint) or hasattr(v, "__dataclass_fields__"):
        return point_to_json(v)
    return v


def _witness(i: int, a, b, **extra) -> dict:
    return {"index": i, "a": _jsonable(a), "b": _jsonable(b), **{k: _jsonable(v) for k, v in extra.items()}}


# --------------------------------------------------------------------------
# dispatch and distance helpers

@dataclass
class _Dispatched:
    index: int
    a: Any
    b: Any
    rule: int | None
    path: ParamPath | None
    error: str | None = None


def _dispatch_all(planner: Planner, pairs: Sequence[Pair]) -> list[_Dispatched]:
    out = []
    for i, (a, b) in enumerate(pairs):
        try:
            r = planner.select(a, b)
            out.append(_Dispatched(i, a, b, r.id, r.section(a, b)))
        except ReltcError as exc:
            out.append(_Dispatched(i, a, b, None, None, f"{type(exc).__name__}: {exc}"))
    return out


def _is_lifted(planner: Planner) -> bool:
    return planner.meta.get("family") in ("lifted", "corrupted-lift")


def path_gap(planner: Planner, P, Q) -> np.ndarray:
    """Pointwise distance between two sampled paths, in the planner's metric."""
    if isinstance(P, np.ndarray) and isinstance(Q, np.ndarray) and P.dtype.kind == "f":
        diff = P - Q
        if _is_lifted(planner):
            base = np.linalg.norm(diff[..., :-1], axis=-1)
            d = np.maximum(base, np.abs(diff[..., -1]))
        else:
            d = np.linalg.norm(diff, axis=-1) if diff.ndim >= 2 else np.abs(diff)
        while d.ndim > 1:
            d = d.max(axis=-1)
        return d
    return np.array([planner.distance(p, q) for p, q in zip(P, Q)])


# --------------------------------------------------------------------------
# checks

def cover_evidence(planner: Planner, pairs: Sequence[Pair]) -> CheckResult:
    uncovered = multi = 0
    witnesses = []
    for i, (a, b) in enumerate(pairs):
        try:
            if planner.validate is not None:
                planner.validate(a, b)
            acc = planner.accepting(a, b)
        except ReltcError as exc:
            uncovered += 1
            if len(witnesses) < MAX_WITNESSES:
                witnesses.append(_witness(i, a, b, error=f"{type(exc).__name__}: {exc}"))
            continue
        if not acc:
            uncovered += 1
            if len(witnesses) < MAX_WITNESSES:
                witnesses.append(_witness(i, a, b, accepted=[]))
        elif planner.mode == PARTITION and len(acc) > 1:
            multi += 1
            if len(witnesses) < MAX_WITNESSES:
                witnesses.append(_witness(i, a, b, accepted=acc))
    ok = uncovered == 0 and multi == 0
    return CheckResult("cover", ok, {"samples": len(pairs), "uncovered": uncovered, "multi_covered": multi},
                       witnesses)


def verify_cover(planner: Planner, sampler: Sampler, N: int, seed: int = 0) -> CheckResult:
    """Count pairs accepted by no rule, and in partition mode by more than one."""
    return cover_evidence(planner, draw_pairs(sampler, seed, N))


def _endpoint_check(planner: Planner, items: list[_Dispatched], tol: float) -> CheckResult:
    worst, witnesses, errors = 0.0, [], 0
    for it in items:
        if it.path is None:
            errors += 1
            continue
        r = endpoint_residual(planner, it.a, it.b, it.path)
        if r > worst:
            worst = r
        if r > tol and len(witnesses) < MAX_WITNESSES:
            witnesses.append(_witness(it.index, it.a, it.b, rule=it.rule, residual=r))
    return CheckResult("endpoints", worst <= tol and errors == 0,
                       {"samples": len(items), "max_residual": float(worst), "tol": tol, "dispatch_errors": errors},
                       witnesses)


def verify_endpoints(planner: Planner, sampler: Sampler, N: int, tol: float = 1e-9, seed: int = 0) -> CheckResult:
    """Largest distance between ``path(0), path(1)`` and the included inputs."""
    return _endpoint_check(planner, _dispatch_all(planner, draw_pairs(sampler, seed, N)), tol)


def _confinement_check(planner: Planner, items: list[_Dispatched], t_samples: int, tol: float,
                       drop_height: bool) -> CheckResult:
    ts = np.linspace(0.0, 1.0, t_samples)
    worst, witnesses = 0.0, []
    for it in items:
        if it.path is None:
            continue
        P = np.asarray(it.path.sample(ts), dtype=float)
        if drop_height:
            P = P[..., :-1]
        dev = np.abs(np.linalg.norm(P, axis=-1) - 1.0)
        r = float(dev.max())
        if r > worst:
            worst = r
        if r > tol and len(witnesses) < MAX_WITNESSES:
            witnesses.append(_witness(it.index, it.a, it.b, rule=it.rule, deviation=r))
    return CheckResult("sphere-confinement", worst <= tol,
                       {"samples": len(items), "t_samples": t_samples, "max_deviation": worst, "tol": tol}, witnesses)


def verify_sphere_confinement(planner: Planner, sampler: Sampler, N: int, t_samples: int = 101,
                              tol: float = 1e-9, seed: int = 0) -> CheckResult:
    """Largest deviation of ``|p|`` from 1 along sampled paths (per robot)."""
    items = _dispatch_all(planner, draw_pairs(sampler, seed, N))
    return _confinement_check(planner, items, t_samples, tol, _is_lifted(planner))


def _continuity_check(planner: Planner, items: list[_Dispatched], sampler: Sampler, seed: int,
                      delta: float, t_samples: int, alarm: float, margin_factor: float) -> CheckResult:
    ts = np.linspace(0.0, 1.0, t_samples)
    tau = float(planner.meta.get("tau", TOL))
    floor = margin_factor * tau
    rngs = _perturb_rngs(seed, len(items))
    modulus: dict[int, float] = {}
    used = excluded_margin = excluded_rule = excluded_other = steep = unresolved = 0
    witnesses = []
    for it in items:
        if it.path is None:
            excluded_other += 1
            continue
        rng = rngs[it.index // CHUNK]
        if planner.margin is not None and planner.margin(it.a, it.b) < floor:
            excluded_margin += 1
            continue
        q = sampler.perturb(rng, it.a, it.b, delta) if sampler.perturb is not None else None
        if q is None:
            excluded_other += 1
            continue
        a2, b2 = q
        try:
            r2 = planner.select(a2, b2)
        except ReltcError:
            excluded_other += 1
            continue
        if r2.id != it.rule:
            excluded_rule += 1
            continue
        if planner.margin is not None and planner.margin(a2, b2) < floor:
            excluded_margin += 1
            continue
        P = it.path.sample(ts)
        gap = float(path_gap(planner, P, r2.section(a2, b2).sample(ts)).max())
        used += 1
        if gap > modulus.get(it.rule, 0.0):
            modulus[it.rule] = gap
        if gap > alarm:
            fine = _bisected_gap(planner, sampler, it, (a2, b2), ts, floor)
            if fine is None:
                excluded_rule += 1
                continue
            if fine <= 0.5 * alarm:
                steep += 1
                continue
            unresolved += 1
            if len(witnesses) < MAX_WITNESSES:
                witnesses.append(_witness(it.index, it.a, it.b, rule=it.rule, gap=gap, bisected_gap=_num(fine)))
    worst = max(modulus.values(), default=0.0)
    return CheckResult(
        "continuity",
        unresolved == 0,
        {
            "samples": len(items),
            "pairs_used": used,
            "excluded_near_boundary": excluded_margin,
            "excluded_rule_change": excluded_rule,
            "excluded_other": excluded_other,
            "delta": delta,
            "t_samples": t_samples,
            "alarm": alarm,
            "max_modulus": worst,
            "steep_resolved": steep,
            "unresolved": unresolved,
            "modulus_by_rule": {str(k): v for k, v in sorted(modulus.items())},
        },
        witnesses,
    )


def _bisected_gap(planner, sampler, it, q, ts, floor, steps: int = 30) -> float | None:
    """Gap left after bisecting the segment from ``(a, b)`` to its perturbation ``q``.

    Each step keeps the half whose end paths differ most. A continuous but
    steep section (large slope near a rule boundary) leaves a gap that
    halves with the segment; a jump keeps its size. Returns ``None`` when the
    segment leaves the rule or its margin, i.e. meets a rule boundary.
    """
    if not isinstance(it.a, np.ndarray) or not isinstance(q[0], np.ndarray):
        return math.inf

    def sample(s):
        a = sampler.between(it.a, q[0], s)
        b = sampler.between(it.b, q[1], s)
        try:
            r = planner.select(a, b)
        except ReltcError:
            return None
        if r.id != it.rule or (planner.margin is not None and planner.margin(a, b) < floor):
            return None
        return r.section(a, b).sample(ts)

    lo, hi = 0.0, 1.0
    P_lo, P_hi = sample(lo), sample(hi)
    if P_lo is None or P_hi is None:
        return None
    gap = float(path_gap(planner, P_lo, P_hi).max())
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        P_mid = sample(mid)
        if P_mid is None:
            return None
        g1 = float(path_gap(planner, P_lo, P_mid).max())
        g2 = float(path_gap(planner, P_mid, P_hi).max())
        if g1 >= g2:
            hi, P_hi, gap = mid, P_mid, g1
        else:
            lo, P_lo, gap = mid, P_mid, g2
    return gap


def verify_continuity(planner: Planner, sampler: Sampler, N: int, delta: float = 1e-3, t_samples: int = 101,
                      alarm: float = ALARM, seed: int = 0, margin_factor: float = 10.0) -> CheckResult:
    """Empirical local modulus of each section.

    For each sampled pair a nearby pair (within ``delta``) handled by the same
    rule is drawn, and the largest distance between the two paths over
    ``t_samples`` times is recorded per rule. Pairs closer than
    ``margin_factor`` times the predicate tolerance to a rule boundary are
    excluded and counted. A gap above ``alarm`` is bisected along the
    segment between the two inputs; it counts as steep when the gap shrinks
    below half the alarm and fails when it does not, which is the signature
    of a jump. This is a numerical proxy, not a proof.
    """
    items = _dispatch_all(planner, draw_pairs(sampler, seed, N))
    return _continuity_check(planner, items, sampler, seed, delta, t_samples, alarm, margin_factor)


def min_clearance(P: np.ndarray, cylinder: bool) -> tuple[float, int]:
    """Smallest pairwise robot distance over a sampled configuration path, and its time index."""
    P = np.asarray(P, dtype=float)
    n = P.shape[1]
    if n < 2:
        return math.inf, -1
    i, j = np.triu_indices(n, 1)
    diff = P[:, i, :] - P[:, j, :]
    if cylinder:
        d = np.maximum(np.linalg.norm(diff[..., :-1], axis=-1), np.abs(diff[..., -1]))
    else:
        d = np.linalg.norm(diff, axis=-1)
    per_t = d.min(axis=1)
    k = int(per_t.argmin())
    return float(per_t[k]), k


def _collision_check(planner: Planner, items: list[_Dispatched], t_samples: int, threshold: float) -> CheckResult:
    ts = np.linspace(0.0, 1.0, t_samples)
    cyl = _is_lifted(planner)
    worst, witnesses, robot_pairs = math.inf, [], 0
    for it in items:
        if it.path is None:
            continue
        n = len(np.asarray(it.a).reshape(len(np.asarray(it.a)), -1))
        robot_pairs = max(robot_pairs, n * (n - 1) // 2)
        c, k = min_clearance(it.path.sample(ts), cyl)
        if c < worst:
            worst = c
        if c <= threshold and len(witnesses) < MAX_WITNESSES:
            witnesses.append(_witness(it.index, it.a, it.b, rule=it.rule, clearance=c, t=float(ts[k])))
    return CheckResult("collision", worst > threshold,
                       {"samples": len(items), "t_samples": t_samples, "robot_pairs": robot_pairs,
                        "min_clearance": _num(worst), "threshold": threshold}, witnesses)


def verify_collision_free(planner: Planner, sampler: Sampler, N: int, t_samples: int = 201, seed: int = 0,
                          threshold: float = CLEARANCE_TOL) -> CheckResult:
    """Minimum pairwise robot distance along sampled paths; passes iff above ``threshold``.

    Lifted planners are measured in the product metric ``max(base, |height|)``.
    """
    items = _dispatch_all(planner, draw_pairs(sampler, seed, N))
    return _collision_check(planner, items, t_samples, threshold)


def verify_rule_counts(planner: Planner, expected: int) -> CheckResult:
    return CheckResult("rule-count", planner.k == expected, {"rules": planner.k, "expected": int(expected)})


def _plateau_check(planner: Planner, items: list[_Dispatched], tol: float) -> CheckResult:
    n = planner.meta.get("n") or 1
    expected = 1.0 / np.arange(1, n + 1)
    ts = np.linspace(1 / 3, 2 / 3, 51)
    worst, witnesses = 0.0, []
    for it in items:
        if it.path is None:
            continue
        H = np.asarray(it.path.sample(ts))[..., -1]
        r = float(np.abs(H - expected[None, :]).max())
        if r > worst:
            worst = r
        if r > tol and len(witnesses) < MAX_WITNESSES:
            witnesses.append(_witness(it.index, it.a, it.b, deviation=r))
    return CheckResult("plateau-heights", worst <= tol,
                       {"samples": len(items), "max_deviation": worst, "tol": tol}, witnesses)


def verify_plateau_heights(planner: Planner, sampler: Sampler, N: int, tol: float = 1e-12,
                           seed: int = 0) -> CheckResult:
    """On the middle third of a lifted path robot ``j`` sits at height ``1/j``."""
    return _plateau_check(planner, _dispatch_all(planner, draw_pairs(sampler, seed, N)), tol)


def roundtrip_deviation(projected: Planner, base: Planner, a, b, t_samples: int = 101) -> float:
    """Distance between a projected lifted path and the base path, time-aligned.

    The projected path is stationary at ``a`` on ``[0, 1/3]``, runs the base
    path on ``[1/3, 2/3]`` and is stationary at ``b`` afterwards.
    """
    ts = np.linspace(0.0, 1.0, t_samples)
    _, P = _one(projected, a, b)
    _, B = _one(base, a, b)
    middle = np.asarray(P.sample((1.0 + ts) / 3.0), dtype=float)
    ref = np.asarray(B.sample(ts), dtype=float).reshape(middle.shape)
    early = np.asarray(P.sample(ts / 3.0), dtype=float)
    late = np.asarray(P.sample((2.0 + ts) / 3.0), dtype=float)
    a_ = np.asarray(a, dtype=float).reshape(early.shape[1:])
    b_ = np.asarray(b, dtype=float).reshape(late.shape[1:])
    return float(max(np.abs(middle - ref).max(), np.abs(early - a_).max(), np.abs(late - b_).max()))


def _one(planner: Planner, a, b):
    r = planner.select(a, b)
    return r.id, r.section(a, b)


def verify_roundtrip(projected: Planner, base: Planner, sampler: Sampler, N: int, tol: float = 1e-9,
                     t_samples: int = 101, seed: int = 0) -> CheckResult:
    """Projecting a lifted planner recovers the base planner's rules and paths."""
    worst, mismatched, witnesses = 0.0, 0, []
    for i, (a, b) in enumerate(draw_pairs(sampler, seed, N)):
        if projected.select(a, b).id != base.select(a, b).id:
            mismatched += 1
            continue
        d = roundtrip_deviation(projected, base, a, b, t_samples)
        worst = max(worst, d)
        if d > tol and len(witnesses) < MAX_WITNESSES:
            witnesses.append(_witness(i, a, b, deviation=d))
    return CheckResult("roundtrip", worst <= tol and mismatched == 0,
                       {"samples": N, "max_deviation": worst, "rule_mismatches": mismatched, "tol": tol}, witnesses)


# --------------------------------------------------------------------------
# suites

ALL_CHECKS = ("rule-count", "cover", "endpoints", "sphere-confinement", "continuity", "collision", "plateau-heights")


def run_suite(
    planner: Planner,
    sampler: Sampler,
    N: int,
    seed: int = 0,
    *,
    checks: Sequence[str] = ("rule-count", "cover", "endpoints", "continuity"),
    expected_rules: int | None = None,
    continuity_samples: int | None = None,
    collision_samples: int | None = None,
    tol: float = 1e-9,
    delta: float = 1e-3,
    alarm: float = ALARM,
    fixture: bool = False,
    fixture_targets: Sequence[str] = (),
) -> VerificationReport:
    """Run the named checks on one shared, seeded batch of input pairs.

    Continuity and collision checks are more expensive per pair and may use
    a prefix of the batch (``continuity_samples``, ``collision_samples``).
    """
    unknown = set(checks) - set(ALL_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}")
    report = VerificationReport(planner.name, seed, N, fixture=fixture)
    pairs = draw_pairs(sampler, seed, N)
    items = _dispatch_all(planner, pairs) if set(checks) - {"rule-count", "cover"} else []
    for name in checks:
        if name == "rule-count":
            res = verify_rule_counts(planner, planner.k if expected_rules is None else expected_rules)
        elif name == "cover":
            res = cover_evidence(planner, pairs)
        elif name == "endpoints":
            res = _endpoint_check(planner, items, tol)
        elif name == "sphere-confinement":
            res = _confinement_check(planner, items, 101, tol, _is_lifted(planner))
        elif name == "continuity":
            k = N if continuity_samples is None else min(N, continuity_samples)
            res = _continuity_check(planner, items[:k], sampler, seed, delta, 101, alarm, 10.0)
        elif name == "collision":
            k = N if collision_samples is None else min(N, collision_samples)
            res = _collision_check(planner, items[:k], 201, CLEARANCE_TOL)
        else:
            res = _plateau_check(planner, items, 1e-12)
        res.fixture_target = name in fixture_targets
        report.checks.append(res)
    return report

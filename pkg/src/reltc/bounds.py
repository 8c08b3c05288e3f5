"""Closed-form bounds on (relative) topological complexity in exact arithmetic.

All values use the unreduced convention, in which a contractible space has
``TC = 1``. Comparing against reduced-convention literature means shifting by one.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .cohomology import graph_yn_product_check, load_algebra, load_map, relative_zcl_lower_bound, zcl_lower_bound
from .errors import InconsistentBounds, InvalidPresentation, ParamOutOfRange, UnsupportedFamily

UNREDUCED_NOTE = "unreduced convention: TC(point) = 1; reduced values are one less"


def _nonneg(name: str, v: int) -> int:
    if int(v) != v or v < 0:
        raise ParamOutOfRange(f"{name} must be a non-negative integer, got {v!r}")
    return int(v)


def dim_conn_upper(d1: int, d2: int, s: int) -> int:
    """Upper bound for ``TC_X(Y1 x Y2)`` from dimensions and the connectivity of ``X``.

    The bound is the largest integer strictly below ``(d1 + d2 + 1)/(s + 1) + 1``,
    i.e. ``q`` when ``q = (d1 + d2 + 1)/(s + 1)`` is an integer and ``ceil(q)``
    otherwise.
    """
    d1, d2, s = _nonneg("d1", d1), _nonneg("d2", d2), _nonneg("s", s)
    q = Fraction(d1 + d2 + 1, s + 1)
    return q.numerator if q.denominator == 1 else math.ceil(q)


def farber_product_upper(tcY: int, n: int) -> int:
    """``TC(Y^n) <= n TC(Y) - n + 1``."""
    if int(tcY) != tcY or tcY < 1:
        raise ParamOutOfRange(f"tcY must be a positive integer, got {tcY!r}")
    if int(n) != n or n < 1:
        raise ParamOutOfRange(f"n must be a positive integer, got {n!r}")
    return int(n) * int(tcY) - int(n) + 1


REFERENCE_FAMILIES = ("sphere", "config-euclidean", "config-tree")


def reference_tc(family: str, **params) -> int:
    """Known values of ``TC``.

    ``sphere`` (``n``): 2 for odd ``n``, 3 for even ``n >= 2``.
    ``config-euclidean`` (``n >= 2`` points in ``R^m``, ``m >= 2``): ``2n - eps``
    with ``eps = 1`` for odd ``m`` (``m >= 3``) and ``eps = 2`` for even ``m``.
    ``config-tree`` (``n`` points on a tree with ``m >= 1`` essential vertices):
    ``2 min(m, n // 2) + 1``.
    """
    def need(*names):
        missing = [k for k in names if k not in params]
        if missing:
            raise ParamOutOfRange(f"{family} needs parameters {missing}")
        return [params[k] for k in names]

    if family == "sphere":
        (n,) = need("n")
        if int(n) != n or n < 1:
            raise ParamOutOfRange(f"sphere dimension must be >= 1, got {n!r}")
        return 2 if n % 2 else 3
    if family == "config-euclidean":
        n, m = need("n", "m")
        if int(n) != n or n < 2:
            raise ParamOutOfRange(f"config-euclidean needs n >= 2, got {n!r}")
        if int(m) != m or m < 2:
            raise ParamOutOfRange(f"config-euclidean needs m >= 2, got {m!r}")
        eps = 1 if m % 2 else 2
        return 2 * int(n) - eps
    if family == "config-tree":
        n, m = need("n", "m")
        if int(m) != m or m < 1:
            raise ParamOutOfRange(f"config-tree needs m >= 1 essential vertices, got {m!r}")
        if int(n) != n or n < 1:
            raise ParamOutOfRange(f"config-tree needs n >= 1, got {n!r}")
        return 2 * min(int(m), int(n) // 2) + 1
    raise UnsupportedFamily(f"no reference value for family {family!r}")


@dataclass(frozen=True)
class Bound:
    """One certified inequality: ``quantity >= value`` or ``quantity <= value``."""

    side: str
    value: int
    by: str

    def __post_init__(self):
        if self.side not in ("lower", "upper"):
            raise ValueError(f"side must be 'lower' or 'upper', got {self.side!r}")
        if int(self.value) != self.value:
            raise ValueError(f"bound value must be an integer, got {self.value!r}")

    def to_json(self) -> dict:
        return {"value": int(self.value), "by": self.by}


def lower(value: int, by: str) -> Bound:
    return Bound("lower", int(value), by)


def upper(value: int, by: str) -> Bound:
    return Bound("upper", int(value), by)


@dataclass
class BoundReport:
    quantity: str
    lower: Bound | None
    upper: Bound | None
    notes: list[str] = field(default_factory=list)

    @property
    def interval(self) -> tuple[int | None, int | None]:
        return (self.lower.value if self.lower else None, self.upper.value if self.upper else None)

    @property
    def exact(self) -> bool:
        lo, hi = self.interval
        return lo is not None and lo == hi

    def to_json(self) -> dict:
        return {
            "quantity": self.quantity,
            "lower": self.lower.to_json() if self.lower else None,
            "upper": self.upper.to_json() if self.upper else None,
            "notes": list(self.notes),
        }


def combine_bounds(pieces, quantity: str = "TC", notes=()) -> BoundReport:
    """Best interval from a list of certified bounds.

    Takes the largest lower and the smallest upper bound; ties are broken by
    the provenance string so the result does not depend on input order.
    """
    pieces = list(pieces)
    lows = sorted((p for p in pieces if p.side == "lower"), key=lambda p: (-p.value, p.by))
    ups = sorted((p for p in pieces if p.side == "upper"), key=lambda p: (p.value, p.by))
    lo = lows[0] if lows else None
    hi = ups[0] if ups else None
    if lo is not None and hi is not None and lo.value > hi.value:
        raise InconsistentBounds(
            f"{quantity}: lower bound {lo.value} ({lo.by}) exceeds upper bound {hi.value} ({hi.by})"
        )
    all_notes = [UNREDUCED_NOTE]
    for n in notes:
        if n not in all_notes:
            all_notes.append(n)
    return BoundReport(quantity, lo, hi, all_notes)


# --------------------------------------------------------------------------
# bound specifications (JSON)

GRAPH_TRANSFER_NOTE = (
    "the graph-power product certifies TC(Y^n) >= 2n+1; carrying it over to configuration "
    "spaces of Y assumes the product survives restriction to H*(C^n(Y)), which is not computed here"
)


def _resolve(base_dir, name):
    p = Path(name)
    return p if p.is_absolute() or base_dir is None else Path(base_dir) / p


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidPresentation(f"{path}: not valid JSON ({exc})") from exc
    except OSError as exc:
        raise InvalidPresentation(f"{path}: {exc.strerror}") from exc


def piece_from_spec(p: dict, base_dir=None) -> tuple[list[Bound], list[str]]:
    """Turn one piece of a bounds file into certified bounds and notes.

    Supported kinds: ``value``, ``dim-conn``, ``farber-product``,
    ``reference``, ``zcl`` (from an algebra and optional maps, or from a
    saved ``zcl`` result), ``graph-product`` and ``rule-count`` (from a
    planner family or a saved verification report).
    """
    kind = p.get("kind")
    by = p.get("by")
    notes = list(p.get("notes", []))
    if kind == "value":
        return [Bound(p["side"], int(p["value"]), by or "given")], notes
    if kind == "dim-conn":
        v = dim_conn_upper(p["d1"], p["d2"], p["s"])
        return [upper(v, by or f"dimension/connectivity bound (d1={p['d1']}, d2={p['d2']}, s={p['s']})")], notes
    if kind == "farber-product":
        v = farber_product_upper(p["tcY"], p["n"])
        return [upper(v, by or f"product inequality n*TC(Y)-n+1 (TC(Y)={p['tcY']}, n={p['n']})")], notes
    if kind == "reference":
        params = {k: v for k, v in p.items() if k not in ("kind", "family", "by", "side", "notes")}
        v = reference_tc(p["family"], **params)
        tag = by or f"reference value {p['family']} {params}"
        side = p.get("side", "both")
        out = [Bound(s, v, tag) for s in (("lower", "upper") if side == "both" else (side,))]
        return out, notes
    if kind == "zcl":
        if "result" in p:
            d = _read_json(_resolve(base_dir, p["result"]))
            return [lower(int(d["tc_lower"]), by or f"zero-divisor cup-length ({p['result']})")], notes
        A = load_algebra(_resolve(base_dir, p["algebra"]))
        maps = [load_map(_resolve(base_dir, m), source=A) for m in p.get("maps", [])]
        if not maps:
            res = zcl_lower_bound(A)
        else:
            res = relative_zcl_lower_bound(A, maps[0], maps[-1])
        tag = by or f"zero-divisor cup-length, witness {res.witness}"
        return [lower(res.tc_lower, tag)], notes
    if kind == "graph-product":
        n = int(p["n"])
        A = load_algebra(_resolve(base_dir, p["algebra"]))
        if graph_yn_product_check(n, A, p.get("classes")):
            return [lower(2 * n + 1, by or f"graph-power zero-divisor product (n={n})")], notes + [GRAPH_TRANSFER_NOTE]
        return [], notes + [f"graph-power zero-divisor product vanishes for n={n}; no lower bound taken"]
    if kind == "rule-count":
        if "file" in p:
            d = _read_json(_resolve(base_dir, p["file"]))
            if "rules" in d:
                k = int(d["rules"])
            else:
                k = next(int(c["evidence"]["rules"]) for c in d["checks"] if c["check"] == "rule-count")
            return [upper(k, by or f"planner rule count ({p['file']})")], notes
        from .scenarios import resolve

        planner = resolve(p["planner"]).planner
        return [upper(planner.k, by or f"explicit planner {planner.name} with {planner.k} rules")], notes
    raise InvalidPresentation(f"unknown bound kind {kind!r}")


def report_from_spec(spec: dict, base_dir=None) -> BoundReport:
    """Evaluate every piece of a bounds file and combine them."""
    pieces, notes = [], list(spec.get("notes", []))
    for p in spec.get("pieces", []):
        try:
            b, n = piece_from_spec(p, base_dir)
        except (KeyError, TypeError, ValueError, StopIteration) as exc:
            raise InvalidPresentation(f"malformed bound piece {p!r}: {exc}") from exc
        pieces.extend(b)
        notes.extend(n)
    return combine_bounds(pieces, spec.get("quantity", "TC"), notes)

"""Piecewise closed-form paths evaluable at any time in [0, 1]."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from ..errors import EndpointMismatch
from ..spaces import TOL, point_distance

# A segment function maps an array of local parameters u in [0, 1] to a batch
# of points: an ndarray of shape (len(u), *point_shape) or a list of objects.
SegmentFn = Callable[[np.ndarray], Any]


@dataclass(frozen=True)
class Segment:
    fn: SegmentFn
    kind: str = "custom"


def _take(batch, i):
    return batch[i]


def _assemble(pieces, order, total):
    if all(isinstance(p, np.ndarray) for p in pieces):
        out = np.concatenate(pieces, axis=0)
        res = np.empty_like(out)
        res[order] = out
        return res
    flat = [v for p in pieces for v in p]
    res = [None] * total
    for k, v in zip(order, flat):
        res[k] = v
    return res


class ParamPath:
    """Continuous path ``[0, 1] -> X`` given by closed-form pieces.

    Piece ``i`` covers ``[breakpoints[i], breakpoints[i+1]]`` and is evaluated
    at the local parameter ``u = (t - t_i) / (t_{i+1} - t_i)``. The endpoints
    are cached and returned verbatim at ``t = 0`` and ``t = 1``.
    """

    __slots__ = ("breakpoints", "segments", "start", "end")

    def __init__(self, breakpoints: Sequence[float], segments: Sequence[Segment], start, end):
        bps = np.asarray(breakpoints, dtype=float)
        if bps.ndim != 1 or len(bps) != len(segments) + 1 or not segments:
            raise ValueError("need r + 1 breakpoints for r >= 1 segments")
        if bps[0] != 0.0 or bps[-1] != 1.0 or np.any(np.diff(bps) <= 0):
            raise ValueError(f"breakpoints must increase from 0 to 1, got {bps.tolist()}")
        self.breakpoints = bps
        self.segments = tuple(segments)
        self.start = start
        self.end = end

    @classmethod
    def from_function(cls, fn: SegmentFn, kind: str = "custom") -> "ParamPath":
        u = np.array([0.0, 1.0])
        ends = fn(u)
        return cls([0.0, 1.0], [Segment(fn, kind)], _take(ends, 0), _take(ends, 1))

    @classmethod
    def constant(cls, point) -> "ParamPath":
        if isinstance(point, np.ndarray):
            p = point.copy()
            fn = lambda u: np.broadcast_to(p, (len(u),) + p.shape).copy()
        else:
            fn = lambda u: [point] * len(u)
        return cls([0.0, 1.0], [Segment(fn, "constant")], point, point)

    def __len__(self):
        return len(self.segments)

    def _locate(self, ts: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self.breakpoints, ts, side="right") - 1
        return np.clip(idx, 0, len(self.segments) - 1)

    def _local(self, i: int, ts: np.ndarray) -> np.ndarray:
        a, b = self.breakpoints[i], self.breakpoints[i + 1]
        return np.clip((ts - a) / (b - a), 0.0, 1.0)

    def _raw(self, ts: np.ndarray):
        if len(self.segments) == 1:
            return self.segments[0].fn(np.clip(ts, 0.0, 1.0))
        idx = self._locate(ts)
        pieces, order = [], []
        for i in np.unique(idx):
            sel = np.nonzero(idx == i)[0]
            pieces.append(self.segments[i].fn(self._local(i, ts[sel])))
            order.append(sel)
        return _assemble(pieces, np.concatenate(order), len(ts))

    def eval(self, t: float):
        if t == 0.0:
            return self.start
        if t == 1.0:
            return self.end
        if not 0.0 < t < 1.0:
            raise ValueError(f"t = {t} outside [0, 1]")
        return _take(self._raw(np.array([float(t)])), 0)

    __call__ = eval

    def sample(self, ts) -> Any:
        """Evaluate at every time in ``ts``; array-valued paths return one stacked array."""
        ts = np.asarray(ts, dtype=float).reshape(-1)
        if np.any((ts < 0.0) | (ts > 1.0)):
            raise ValueError("sample times must lie in [0, 1]")
        out = self._raw(ts)
        for k in np.nonzero(ts == 0.0)[0]:
            out[k] = self.start
        for k in np.nonzero(ts == 1.0)[0]:
            out[k] = self.end
        return out

    def segment_at(self, t: float) -> Segment:
        return self.segments[int(self._locate(np.array([t]))[0])]

    def map(self, f: Callable, single: Callable | None = None) -> "ParamPath":
        """Compose with a map of the ambient space.

        ``f`` acts on batches; ``single`` (defaulting to a batch of one) on the
        cached endpoints.
        """
        if single is None:
            single = lambda p: _take(f(_batch_of_one(p)), 0)
        segs = [Segment(_compose(f, s.fn), s.kind) for s in self.segments]
        return ParamPath(self.breakpoints, segs, single(self.start), single(self.end))

    def reversed(self) -> "ParamPath":
        bps = 1.0 - self.breakpoints[::-1]
        segs = [Segment(_flip(s.fn), s.kind) for s in reversed(self.segments)]
        return ParamPath(bps, segs, self.end, self.start)

    def segment_kinds(self) -> list[str]:
        return [s.kind for s in self.segments]


def _batch_of_one(p):
    if isinstance(p, np.ndarray):
        return p[None, ...]
    return [p]


def _compose(f, fn):
    return lambda u: f(fn(u))


def _flip(fn):
    return lambda u: fn(1.0 - u)


def concat_paths(first: ParamPath, second: ParamPath, split: float = 0.5, tol: float = TOL,
                 distance=point_distance) -> ParamPath:
    """Traverse ``first`` on ``[0, split]`` then ``second`` on ``[split, 1]``."""
    if not 0.0 < split < 1.0:
        raise ValueError("split must lie strictly between 0 and 1")
    gap = distance(first.end, second.start)
    if gap > tol:
        raise EndpointMismatch(f"paths do not meet: gap {gap:.3g} > {tol:g}")
    bps = np.concatenate([first.breakpoints * split, split + second.breakpoints[1:] * (1.0 - split)])
    return ParamPath(bps, first.segments + second.segments, first.start, second.end)


def chain(paths: Sequence[ParamPath], splits: Sequence[float], tol: float = TOL,
          distance=point_distance) -> ParamPath:
    """Concatenate several paths at the given absolute split times."""
    if len(splits) != len(paths) - 1:
        raise ValueError("need one split fewer than paths")
    cuts = [0.0, *splits, 1.0]
    bps = [0.0]
    segs = []
    for k, p in enumerate(paths):
        if k and distance(paths[k - 1].end, p.start) > tol:
            raise EndpointMismatch(f"paths {k - 1} and {k} do not meet")
        a, b = cuts[k], cuts[k + 1]
        bps.extend((a + p.breakpoints[1:] * (b - a)).tolist())
        segs.extend(p.segments)
    bps[-1] = 1.0
    return ParamPath(bps, segs, paths[0].start, paths[-1].end)


def stack_paths(paths: Sequence[ParamPath]) -> ParamPath:
    """Componentwise product path ``t -> (p_1(t), ..., p_n(t))`` as an ``(n, ...)`` array."""
    if len(paths) == 1:
        p = paths[0]
        return p.map(lambda b: np.asarray(b)[:, None, ...], lambda v: np.asarray(v)[None, ...])
    bps = np.unique(np.concatenate([p.breakpoints for p in paths]))
    segs = []
    for i in range(len(bps) - 1):
        a, b = bps[i], bps[i + 1]
        segs.append(Segment(_stacked(paths, a, b), "product"))
    start = np.stack([np.asarray(p.start) for p in paths])
    end = np.stack([np.asarray(p.end) for p in paths])
    return ParamPath(bps, segs, start, end)


def _stacked(paths, a, b):
    def fn(u):
        ts = a + u * (b - a)
        return np.stack([np.asarray(p._raw(ts)) for p in paths], axis=1)
    return fn

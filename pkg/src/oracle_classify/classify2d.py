"""Greedy planar classification against a separation oracle.

The algorithm maintains an inner hull of confirmed-inside query points and,
for every unclassified point, the wedge of directions from the point to the
hull.  The perpendicular arc of each wedge enters the depth structure; each
round picks a direction whose tangent halfplane holds the most unclassified
points and queries either those points directly (when few) or their
centerpoint.  Inside answers grow the hull and shrink wedges monotonically;
Outside answers discard everything strictly beyond the returned separator.

While the hull is still empty the round queries a centerpoint of the whole
unclassified set, which removes a constant fraction per Outside answer.

All labeling decisions are exact.  A float mirror of the point set screens
the two linear scans (wedge updates on expand, separator sign on remove);
anything inside its error band is re-tested with rational arithmetic, so
the mirror only skips work, never decides it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from .centerpoint import EXACT, Sampled, centerpoint2
from .depth import build as build_arcset
from .errors import InconsistentOracleError
from .geometry import (
    Arc,
    Direction2,
    Halfplane2,
    Hull2,
    Point2,
    convex_hull2,
    direction2,
    hull_insert,
    perp_ccw,
    perp_cw,
)
from .oracle import Inside

SMALL_THRESHOLD = 3

# consecutive zero-label expand rounds tolerated before forcing a direct
# point query; keeps sampled-centerpoint runs terminating
STALL_LIMIT = 12

AUTO_EXACT_LIMIT = 200

# relative width of the float error band; true rounding error is ~1e-15,
# so everything the filter certifies has four orders of margin
_EPS_BAND = 1e-11


class TraceRow(NamedTuple):
    round: int
    query: tuple
    answer: str
    op: str
    labeled: int
    depth: int


@dataclass(frozen=True)
class ClassifyConfig:
    centerpoint: object = "auto"  # "auto" | Exact() | Sampled(...)
    depth_backend: str = "naive"
    seed: int = 0


@dataclass
class ClassificationResult:
    labels: Dict[int, str]
    queries: int
    trace: List[TraceRow]


@dataclass
class ClassifierState2:
    unclassified: Dict[int, Point2]
    inner: Hull2
    labels: Dict[int, str]
    arcset: object = None
    wedges: Dict[int, Tuple[Direction2, Direction2]] = field(default_factory=dict)
    mirror: object = None


def _safe_float(x) -> float:
    try:
        return float(x)
    except OverflowError:
        return math.inf if x > 0 else -math.inf


def _unit_floats(d: Direction2) -> Tuple[float, float]:
    a, b = d.a, d.b
    bl = max(a.bit_length(), b.bit_length())
    if bl > 512:
        sh = bl - 512
        a >>= sh
        b >>= sh
    fa = float(a)
    fb = float(b)
    h = math.hypot(fa, fb)
    return fa / h, fb / h


class _FloatMirror:
    """Float shadow of the point set backing the vectorized prefilters.

    Rows with non-finite coordinates are never certified; they always fall
    through to the exact predicate.
    """

    __slots__ = ("ids", "px", "py", "alive", "finite",
                 "na", "nb", "xa", "xb", "alo", "ahi", "slot", "scale")

    def __init__(self, items):
        n = len(items)
        self.ids = np.empty(n, dtype=np.int64)
        self.px = np.empty(n)
        self.py = np.empty(n)
        self.alive = np.ones(n, dtype=bool)
        self.na = np.zeros(n)
        self.nb = np.zeros(n)
        self.xa = np.zeros(n)
        self.xb = np.zeros(n)
        self.alo = np.zeros(n)
        self.ahi = np.zeros(n)
        self.slot: Dict[int, int] = {}
        for i, (key, u) in enumerate(items):
            self.ids[i] = key
            self.slot[key] = i
            self.px[i] = _safe_float(u.x)
            self.py[i] = _safe_float(u.y)
        self.finite = np.isfinite(self.px) & np.isfinite(self.py)
        self.scale = 1.0
        if self.finite.any():
            self.scale = max(1.0,
                             float(np.max(np.abs(self.px[self.finite]))),
                             float(np.max(np.abs(self.py[self.finite]))))

    def kill(self, key) -> None:
        self.alive[self.slot[key]] = False

    def set_wedge(self, key, wedge) -> None:
        s = self.slot[key]
        na, nb = _unit_floats(wedge[0])
        xa, xb = _unit_floats(wedge[1])
        self.na[s] = na
        self.nb[s] = nb
        self.xa[s] = xa
        self.xb[s] = xb
        # arc endpoints: clockwise perp of dmax opens, ccw perp of dmin closes
        self.alo[s] = math.atan2(-xa, xb)
        self.ahi[s] = math.atan2(na, -nb)

    def stab_split(self, d: Direction2):
        """(certainly stabbed, needs exact test) among live arcs."""
        fa, fb = _unit_floats(d)
        ad = math.atan2(fb, fa)
        two_pi = 2.0 * math.pi
        width = (self.ahi - self.alo) % two_pi
        pos = (ad - self.alo) % two_pi
        b = 1e-9
        sure = self.alive & (pos >= b) & (pos <= width - b)
        out = (pos >= width + b) & (pos <= two_pi - b)
        maybe = self.alive & ~sure & ~out
        return self.ids[sure], self.ids[maybe]

    def expand_candidates(self, p: Point2):
        """Ids whose wedge test is not certifiably a no-op for new vertex p."""
        px = _safe_float(p.x)
        py = _safe_float(p.y)
        vx = self.px - px
        vy = self.py - py
        c1 = self.na * vy - self.nb * vx
        c2 = self.xb * vx - self.xa * vy
        band = _EPS_BAND * (self.scale + abs(px) + abs(py)) \
            + _EPS_BAND * (np.abs(vx) + np.abs(vy))
        clear = self.finite & (c1 > band) & (c2 > band)
        return self.ids[self.alive & ~clear]

    def split_beyond(self, sep: Halfplane2):
        """(certainly beyond, needs exact test) among live rows."""
        fa = _safe_float(sep.a)
        fb = _safe_float(sep.b)
        fc = _safe_float(sep.c)
        band = _EPS_BAND * ((abs(fa) + abs(fb)) * self.scale + abs(fc) + 1.0)
        if not math.isfinite(band):
            return [], [int(k) for k in self.ids[self.alive]]
        v = fa * self.px + fb * self.py - fc
        sure = self.alive & self.finite & (v > band)
        maybe = self.alive & ~sure & ~(self.finite & (v < -band))
        return [int(k) for k in self.ids[sure]], [int(k) for k in self.ids[maybe]]


def _mode_for(config: ClassifyConfig, m: int):
    if config.centerpoint == "auto":
        if m <= AUTO_EXACT_LIMIT:
            return EXACT
        return Sampled(seed=config.seed)
    return config.centerpoint


def _arc_of(wedge: Tuple[Direction2, Direction2]) -> Arc:
    dmin, dmax = wedge
    return Arc(perp_cw(dmax), perp_ccw(dmin))


def seed_inner(state: ClassifierState2, p: Point2, backend: str) -> int:
    """First confirmed-inside point: hull becomes {p}, arcs are built."""
    state.inner = convex_hull2([p])
    labeled = []
    arcs = []
    for key, u in state.unclassified.items():
        if u == p:
            labeled.append(key)
            continue
        d = direction2(u.x - p.x, u.y - p.y)
        state.wedges[key] = (d, d)
        arcs.append((key, _arc_of((d, d))))
        if state.mirror is not None:
            state.mirror.set_wedge(key, (d, d))
    for key in labeled:
        state.labels[key] = "inside"
        del state.unclassified[key]
        if state.mirror is not None:
            state.mirror.kill(key)
    state.arcset = build_arcset(arcs, backend)
    return len(labeled)


def _wedge_test(wedge, u: Point2, p: Point2):
    """Exact wedge widening for one point, no side effects.

    Returns None (p falls inside the current wedge), True (u lies in the
    new hull), or the widened wedge.
    """
    if u == p:
        return True
    vx = u.x - p.x
    vy = u.y - p.y
    dmin, dmax = wedge
    c1 = dmin.a * vy - dmin.b * vx
    c2 = dmax.b * vx - dmax.a * vy
    if c1 == 0:
        # parallel to the wedge edge: fresh direction only if antipodal,
        # and then p and the old hull straddle u
        return True if dmin.a * vx + dmin.b * vy <= 0 else None
    if c2 == 0:
        return True if dmax.a * vx + dmax.b * vy <= 0 else None
    if c1 > 0 and c2 > 0:
        return None  # already between dmin and dmax
    if c1 > 0:
        return (dmin, direction2(vx, vy))
    if c2 > 0:
        return (direction2(vx, vy), dmax)
    return True  # wedge would span a half-turn or more


# an expand that widens more arcs than this fraction of the structure
# rebuilds it outright instead of editing entry by entry
_REBUILD_MIN = 2048
_REBUILD_FRACTION = 4


def expand(state: ClassifierState2, p: Point2) -> int:
    """Insert a confirmed-inside point into the inner hull.

    Every unclassified point's direction wedge widens by at most the one new
    direction toward p, so the update is a constant number of exact sign
    tests per point.  Points whose wedge can no longer fit in an open
    half-turn are inside the new hull and get labeled.  Returns the number
    of points labeled.
    """
    if state.inner.contains(p) >= 0:
        return 0
    state.inner = hull_insert(state.inner, p)
    mirror = state.mirror
    wedges = state.wedges
    labeled = []
    changed = []
    if mirror is None:
        pairs = list(state.unclassified.items())
    else:
        un = state.unclassified
        pairs = [(int(k), un[int(k)]) for k in mirror.expand_candidates(p)]
    for key, u in pairs:
        res = _wedge_test(wedges[key], u, p)
        if res is None:
            continue
        if res is True:
            labeled.append(key)
            continue
        wedges[key] = res
        changed.append(key)
        if mirror is not None:
            mirror.set_wedge(key, res)
    for key in labeled:
        state.labels[key] = "inside"
        del state.unclassified[key]
        wedges.pop(key, None)
        if mirror is not None:
            mirror.kill(key)
    arcset = state.arcset
    if len(changed) + len(labeled) > max(_REBUILD_MIN,
                                         len(arcset) // _REBUILD_FRACTION):
        arcset.rebuild((k, _arc_of(w)) for k, w in wedges.items())
    else:
        for key in labeled:
            if key in arcset:
                arcset.delete(key)
        for key in changed:
            arcset.replace(key, _arc_of(wedges[key]))
    return len(labeled)


def remove(state: ClassifierState2, sep: Halfplane2, q: Point2,
           position_of: Dict[Point2, int]) -> int:
    """Label Outside everything strictly beyond the separator, plus the
    query point itself when it is an input point.  Returns labels made."""
    for v in state.inner.vertices:
        if sep.value(v) > 0:
            raise InconsistentOracleError(
                "separator cuts a confirmed-inside hull vertex")
    if state.mirror is None:
        doomed = [key for key, u in state.unclassified.items()
                  if sep.value(u) > 0]
    else:
        doomed, maybe = state.mirror.split_beyond(sep)
        un = state.unclassified
        for key in maybe:
            if sep.value(un[key]) > 0:
                doomed.append(key)
    qid = position_of.get(q)
    if qid is not None and qid in state.unclassified and qid not in doomed:
        doomed.append(qid)
    mirror = state.mirror
    wedges = state.wedges
    arcset = state.arcset
    in_arcs = 0
    for key in doomed:
        state.labels[key] = "outside"
        del state.unclassified[key]
        if wedges.pop(key, None) is not None:
            in_arcs += 1
        if mirror is not None:
            mirror.kill(key)
    if arcset is not None and in_arcs:
        if in_arcs > max(_REBUILD_MIN, len(arcset) // _REBUILD_FRACTION):
            arcset.rebuild((k, _arc_of(w)) for k, w in wedges.items())
        else:
            for key in doomed:
                if key in arcset:
                    arcset.delete(key)
    return len(doomed)


def greedy_classify(points: List[Point2], oracle,
                    config: Optional[ClassifyConfig] = None) -> ClassificationResult:
    """Classify every point as inside or outside the oracle's body.

    Output labels are exact; the query count is the figure of merit.
    Duplicate input points share one query budget and one label.
    """
    config = config or ClassifyConfig()
    position_of: Dict[Point2, int] = {}
    duplicate_of: Dict[int, int] = {}
    for idx, p in enumerate(points):
        if p in position_of:
            duplicate_of[idx] = position_of[p]
        else:
            position_of[p] = idx
    unique = sorted(position_of.values())
    state = ClassifierState2(
        unclassified={idx: points[idx] for idx in unique},
        inner=convex_hull2([]),
        labels={},
    )
    state.mirror = _FloatMirror([(idx, points[idx]) for idx in unique])
    trace: List[TraceRow] = []
    rounds = 0
    force_direct = False

    def ask(q: Point2):
        answer = oracle.query(q)
        kind = "inside" if isinstance(answer, Inside) else "outside"
        return answer, kind

    # ---- phase 1: inner hull still empty --------------------------------
    while state.unclassified and state.inner.is_empty():
        rounds += 1
        m = len(state.unclassified)
        if force_direct or m == 1:
            q = state.unclassified[min(state.unclassified)]
        else:
            q = centerpoint2(state.unclassified.values(), _mode_for(config, m))
        answer, kind = ask(q)
        if kind == "inside":
            labeled = seed_inner(state, q, config.depth_backend)
            op = "expand"
        else:
            labeled = remove(state, answer.separator, q, position_of)
            op = "remove"
        trace.append(TraceRow(rounds, (q.x, q.y), kind, op, labeled, m))
        force_direct = (labeled == 0 and kind == "outside")

    def witness():
        """Deepest direction and the ids it stabs, float-screened."""
        arcset = state.arcset
        d, depth = arcset.max_depth()
        sure, maybe = state.mirror.stab_split(d)
        arcs = arcset.arcs
        ids = [int(k) for k in sure]
        ids += [int(k) for k in maybe if arcs[int(k)].contains(d)]
        ids.sort()
        assert len(ids) == depth
        return d, depth, ids

    # ---- phase 2: tangent-direction rounds ------------------------------
    stalled = 0
    while state.unclassified:
        rounds += 1
        direction, depth, ids = witness()
        if depth <= SMALL_THRESHOLD or stalled >= STALL_LIMIT:
            if depth > SMALL_THRESHOLD:
                ids = ids[:8]  # stall fallback: a few direct hits suffice
            for key in ids:
                if key not in state.unclassified:
                    continue  # an earlier separator already covered it
                u = state.unclassified[key]
                answer, kind = ask(u)
                if kind == "inside":
                    labeled = expand(state, u)
                    op = "expand"
                else:
                    labeled = remove(state, answer.separator, u, position_of)
                    op = "remove"
                trace.append(TraceRow(rounds, (u.x, u.y), kind, op, labeled, depth))
            stalled = 0
            continue
        targets = [state.unclassified[key] for key in ids]
        q = centerpoint2(targets, _mode_for(config, len(targets)))
        if state.inner.contains(q) >= 0:
            # the centerpoint degenerated onto the hull: no expansion is
            # possible there, so spend the query on an input point instead
            q = state.unclassified[min(ids)]
        answer, kind = ask(q)
        if kind == "inside":
            labeled = expand(state, q)
            op = "expand"
        else:
            labeled = remove(state, answer.separator, q, position_of)
            op = "remove"
        trace.append(TraceRow(rounds, (q.x, q.y), kind, op, labeled, depth))
        stalled = stalled + 1 if labeled == 0 else 0

    labels = dict(state.labels)
    for idx, rep in duplicate_of.items():
        labels[idx] = labels[rep]
    return ClassificationResult(labels=labels, queries=len(trace), trace=trace)

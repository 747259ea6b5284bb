"""Query-thrifty 2d classification that adapts to instance difficulty.

The greedy classifier pays per hull vertex; this variant pays per unit of
instance difficulty instead.  After seeding the inner hull it runs two
directional climbs along the x axis, which confine every unclassified
point to the vertical strip spanned by the hull's extreme vertices.  It
then cleans the vertical line through each upper-chain (later each
lower-chain) hull vertex: a binary search over the line's intersections
with every line through two input points, classifying all of them and
severing visibility across the line.  What remains are vertical pockets,
processed by repeated centerpoint queries; the first inside answer in a
pocket triggers a clean through it, splitting the pocket into two pieces
of at most two thirds the size.

All labeling decisions are exact.  Cleans are only ever performed on
vertical lines; a coordinate shear (applied when the hull's extreme-x
vertices form a vertical edge) keeps that restriction harmless.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

import numpy as np

from .centerpoint import centerpoint2
from .classify2d import (
    STALL_LIMIT,
    ClassificationResult,
    ClassifyConfig,
    _FloatMirror,
    _mode_for,
    remove,
)
from .errors import EmptyHullError, GeometryError
from .geometry import (
    Direction2,
    Halfplane2,
    Hull2,
    Line2,
    Point2,
    R,
    convex_hull2,
    direction2,
    hull_insert,
    line_intersection,
    orient2,
)
from .oracle import Inside

_DY = 1 << 64


class OptimalTraceRow(NamedTuple):
    round: int
    query: tuple
    answer: str
    op: str
    labeled: int
    depth: int
    stage: str
    pocket_id: int
    pocket_size: int


@dataclass(frozen=True)
class OptimalConfig(ClassifyConfig):
    # "all" follows the definition of the cut-line family (every pair of
    # input points); "pocket" restricts to pairs of pocket members, which
    # is all the split guarantee needs and far cheaper on big instances
    lines_scope: str = "all"


@dataclass
class Pocket:
    x_left: "Rational"
    x_right: "Rational"
    side: str                      # "above" | "below" the anchor segment
    members: List[int]
    pid: int = -1


@dataclass
class _OptState:
    unclassified: Dict[int, Point2]
    inner: Hull2
    labels: Dict[int, str]
    mirror: object = None
    # classify2d.remove expects these two slots; they stay inert here
    arcset: object = None
    wedges: Dict[int, tuple] = field(default_factory=dict)


def _snap64(q: Point2) -> Point2:
    """Round to the 2^-64 grid when denominators have grown huge.

    Sampled centerpoints come out of nested Radon steps whose denominators
    multiply; snapping keeps later exact arithmetic small.  Labels stay
    exact because every decision is about the point actually queried."""
    dens = (q.x.denominator, q.y.denominator)
    if max(dens) <= _DY:
        return q
    return Point2(R((q.x.numerator * _DY) // q.x.denominator) / _DY,
                  R((q.y.numerator * _DY) // q.y.denominator) / _DY)


# ---------------------------------------------------------------------------
# lean state operations (no visibility-arc structure)


def _seed_inner(state: _OptState, p: Point2) -> int:
    state.inner = convex_hull2([p])
    hit = [k for k, u in state.unclassified.items() if u == p]
    for key in hit:
        state.labels[key] = "inside"
        del state.unclassified[key]
        if state.mirror is not None:
            state.mirror.kill(key)
    return len(hit)


def _expand(state: _OptState, p: Point2) -> int:
    """Grow the inner hull with a confirmed-inside point; label swallowed
    input points.  Returns the number labeled."""
    if state.inner.contains(p) >= 0:
        return 0
    state.inner = hull_insert(state.inner, p)
    h = state.inner
    mirror = state.mirror
    if mirror is None or len(h.vertices) < 3:
        keys = list(state.unclassified)
    else:
        keys = _inside_candidates(mirror, h)
    hit = []
    for key in keys:
        if h.contains(state.unclassified[key]) >= 0:
            hit.append(key)
    for key in hit:
        state.labels[key] = "inside"
        del state.unclassified[key]
        if mirror is not None:
            mirror.kill(key)
    return len(hit)


def _inside_candidates(mirror, h: Hull2) -> List[int]:
    """Ids not certainly outside the hull (float screen, exact superset)."""
    vs = h.vertices
    worst = None
    for i in range(len(vs)):
        a = vs[i]
        b = vs[(i + 1) % len(vs)]
        na = _f(b.y - a.y)
        nb = _f(a.x - b.x)
        off = na * _f(a.x) + nb * _f(a.y)
        if not (math.isfinite(na) and math.isfinite(nb) and math.isfinite(off)):
            return [int(k) for k in mirror.ids[mirror.alive]]
        v = na * mirror.px + nb * mirror.py - off
        band = 1e-9 * ((abs(na) + abs(nb)) * mirror.scale + abs(off) + 1.0)
        out = v > band
        worst = out if worst is None else (worst | out)
    keep = mirror.alive & ~worst
    return [int(k) for k in mirror.ids[keep]]


def _f(x) -> float:
    try:
        return float(x)
    except OverflowError:
        return float("inf") if x > 0 else float("-inf")


def _beyond(state: _OptState, hp: Halfplane2) -> List[int]:
    """Unclassified ids strictly beyond the halfplane, exact."""
    if state.mirror is None:
        return sorted(k for k, u in state.unclassified.items()
                      if hp.value(u) > 0)
    sure, maybe = state.mirror.split_beyond(hp)
    un = state.unclassified
    ids = list(sure)
    ids += [k for k in maybe if hp.value(un[k]) > 0]
    ids.sort()
    return ids


# ---------------------------------------------------------------------------
# directional climb


def directional_climb(state: _OptState, v: Direction2, oracle,
                      config: Optional[ClassifyConfig] = None,
                      position_of: Optional[Dict[Point2, int]] = None,
                      record=None) -> int:
    """Push the inner hull's supporting line in direction v past every
    unclassified point.  Returns the number of oracle queries spent."""
    if state.inner.is_empty():
        raise EmptyHullError("directional climb needs a nonempty inner hull")
    config = config or ClassifyConfig()
    position_of = position_of or {}
    queries = 0
    stalled = 0
    while True:
        hp = state.inner.tangent_halfplane(v)
        ids = _beyond(state, hp)
        if not ids:
            return queries
        if stalled >= STALL_LIMIT:
            # sampled centerpoints can keep landing on unproductive spots;
            # a few direct hits restore progress
            for key in ids[:8]:
                if key not in state.unclassified:
                    continue
                queries += 1
                _apply_query(state, state.unclassified[key], oracle,
                             position_of, record, len(ids), "climb", -1, 0)
            stalled = 0
            continue
        pts = [state.unclassified[k] for k in ids]
        q = _snap64(centerpoint2(pts, _mode_for(config, len(pts))))
        queries += 1
        labeled = _apply_query(state, q, oracle, position_of, record,
                               len(ids), "climb", -1, 0)
        stalled = stalled + 1 if labeled == 0 else 0


def _apply_query(state: _OptState, q: Point2, oracle, position_of,
                 record, depth: int, stage: str, pid: int, psize: int) -> int:
    """One oracle round: query q, expand or remove, optionally trace.

    Returns labels made; for Inside answers that only grow the hull the
    count can be zero even though progress happened."""
    answer = oracle.query(q)
    if isinstance(answer, Inside):
        labeled = (_seed_inner(state, q) if state.inner.is_empty()
                   else _expand(state, q))
        kind, op = "inside", "expand"
    else:
        labeled = remove(state, answer.separator, q, position_of)
        kind, op = "outside", "remove"
    if record is not None:
        record(q, kind, op, labeled, depth, stage, pid, psize)
    return labeled


# ---------------------------------------------------------------------------
# cut points and line cleaning


def enumerate_cut_points(points: Iterable[Point2], line: Line2,
                         interval: Tuple[Point2, Point2]) -> List[Point2]:
    """Intersections of the line with every line through two input points,
    clipped to the interval, deduplicated, sorted along the line."""
    a, b = interval
    dx = b.x - a.x
    dy = b.y - a.y
    T = dx * dx + dy * dy
    if T == 0:
        raise GeometryError("cut enumeration over a degenerate interval")
    pts = list(points)
    seen = {}
    for i in range(len(pts)):
        p = pts[i]
        for j in range(i + 1, len(pts)):
            r = pts[j]
            if p == r:
                continue
            pair = Line2(p.y - r.y, r.x - p.x,
                         (p.y - r.y) * p.x + (r.x - p.x) * p.y)
            z = line_intersection(line, pair)
            if z is None:
                continue  # parallel or coincident: no isolated cut
            t = dx * (z.x - a.x) + dy * (z.y - a.y)
            if 0 <= t <= T and t not in seen:
                seen[t] = z
    return [seen[t] for t in sorted(seen)]


def _vertical_span(h: Hull2, x: "Rational") -> Optional[Tuple["Rational", "Rational"]]:
    """Exact y-range of the hull on the vertical line, or None if missed."""
    vs = h.vertices
    if not vs:
        return None
    ys = [v.y for v in vs if v.x == x]
    m = len(vs)
    for i in range(m):
        p, r = vs[i], vs[(i + 1) % m]
        if (p.x - x) * (r.x - x) < 0:
            ys.append(p.y + (x - p.x) * (r.y - p.y) / (r.x - p.x))
        if m == 2:
            break  # a segment has one edge, not two
    if not ys:
        return None
    return min(ys), max(ys)


def clean_line(state: _OptState, line: Line2, pocket: Pocket, oracle,
               config: Optional[OptimalConfig] = None,
               position_of: Optional[Dict[Point2, int]] = None,
               all_points: Optional[Dict[int, Point2]] = None,
               record=None):
    """Classify every cut point on the line inside the pocket, then split
    the pocket along it.  Returns (state, left, right); either side may be
    None when it ends up empty."""
    if line.b != 0:
        raise GeometryError("only vertical lines are cleaned")
    config = config or OptimalConfig()
    position_of = position_of or {}
    x = line.c / line.a
    sgn = 1 if pocket.side == "above" else -1

    members = [k for k in pocket.members if k in state.unclassified]
    span = _vertical_span(state.inner, x)
    if span is None:
        raise GeometryError("cleaned line misses the inner hull")
    base = span[1] if sgn > 0 else span[0]

    member_pts = [state.unclassified[k] for k in members]
    region = convex_hull2(member_pts + state.inner.vertices)
    rspan = _vertical_span(region, x)
    top = rspan[1] if sgn > 0 else rspan[0]

    if sgn * (top - base) > 0:
        if config.lines_scope == "pocket":
            scope = member_pts
        else:
            scope = list((all_points or state.unclassified).values())
        ends = (Point2(x, base), Point2(x, top))
        cuts = enumerate_cut_points(scope, line, ends)
    else:
        cuts = []

    # binary search over the unresolved cuts, innermost first
    pending = sorted(cuts, key=lambda z: sgn * z.y)
    while pending and state.inner.contains(pending[0]) >= 0:
        pending.pop(0)  # already certified by the hull
    while pending:
        mid = len(pending) // 2
        u = pending[mid]
        answer = oracle.query(u)
        if isinstance(answer, Inside):
            labeled = _expand(state, u)
            # the hull now covers the line from the base through u
            pending = pending[mid + 1:]
            kind, op = "inside", "expand"
        else:
            sep = answer.separator
            labeled = remove(state, sep, u, position_of)
            # sep.value is monotone along the line, so the strictly-beyond
            # cuts form a contiguous run ending at the outer end
            lo, hi = 0, len(pending)
            while lo < hi:
                m2 = (lo + hi) // 2
                if sep.value(pending[m2]) > 0:
                    hi = m2
                else:
                    lo = m2 + 1
            del pending[lo:]
            if mid < len(pending) and pending[mid] == u:
                del pending[mid]  # resolved by its own query
            kind, op = "outside", "remove"
        if record is not None:
            record(u, kind, op, labeled, len(cuts), "clean",
                   pocket.pid, len(members))

    # an input point exactly on the line escapes the cut bookkeeping only
    # when every scope pair through it is collinear with the line itself
    for key in members:
        if key in state.unclassified and state.unclassified[key].x == x:
            _apply_query(state, state.unclassified[key], oracle, position_of,
                         record, 1, "clean", pocket.pid, len(members))

    left_ids = []
    right_ids = []
    for key in members:
        if key not in state.unclassified:
            continue
        if state.unclassified[key].x < x:
            left_ids.append(key)
        else:
            right_ids.append(key)
    left = Pocket(pocket.x_left, x, pocket.side, left_ids) if left_ids else None
    right = Pocket(x, pocket.x_right, pocket.side, right_ids) if right_ids else None
    return state, left, right


# ---------------------------------------------------------------------------
# vertical pocket splitting


def split_pocket(state: _OptState, pocket: Pocket, oracle,
                 config: Optional[OptimalConfig] = None,
                 position_of: Optional[Dict[Point2, int]] = None,
                 all_points: Optional[Dict[int, Point2]] = None,
                 record=None) -> List[Pocket]:
    """Centerpoint rounds on the pocket members until an inside answer
    triggers a vertical clean through it; returns the sub-pockets."""
    config = config or OptimalConfig()
    position_of = position_of or {}
    stalled = 0
    while True:
        members = [k for k in pocket.members if k in state.unclassified]
        if not members:
            return []
        if len(members) <= 2 or stalled >= STALL_LIMIT:
            for key in members:
                if key not in state.unclassified:
                    continue
                _apply_query(state, state.unclassified[key], oracle,
                             position_of, record, len(members),
                             "pocket-direct", pocket.pid, len(members))
            stalled = 0
            continue
        pts = [state.unclassified[k] for k in members]
        q = _snap64(centerpoint2(pts, _mode_for(config, len(pts))))
        answer = oracle.query(q)
        if isinstance(answer, Inside):
            labeled = _expand(state, q)
            if record is not None:
                record(q, "inside", "expand", labeled, len(members),
                       "pocket-split", pocket.pid, len(members))
            if not (pocket.x_left < q.x < pocket.x_right):
                stalled += 1  # snapped query drifted onto a wall; retry
                continue
            live = Pocket(pocket.x_left, pocket.x_right, pocket.side,
                          members, pocket.pid)
            _, left, right = clean_line(state, Line2(R(1), R(0), q.x), live,
                                        oracle, config, position_of,
                                        all_points, record)
            return [p for p in (left, right) if p is not None]
        labeled = remove(state, answer.separator, q, position_of)
        if record is not None:
            record(q, "outside", "remove", labeled, len(members),
                   "pocket-split", pocket.pid, len(members))
        stalled = stalled + 1 if labeled == 0 else 0


# ---------------------------------------------------------------------------
# the full pipeline


class _ShearFrame:
    """Oracle adapter for a sheared coordinate frame x' = x + s*y.

    Queries are mapped back to true coordinates before reaching the inner
    oracle, and separators are mapped forward, so the wrapped oracle (and
    the trace) only ever sees true-frame geometry."""

    def __init__(self, inner, s):
        self.inner = inner
        self.s = s

    def to_frame(self, p: Point2) -> Point2:
        return Point2(p.x + self.s * p.y, p.y)

    def query(self, p: Point2):
        true = Point2(p.x - self.s * p.y, p.y)
        answer = self.inner.query(true)
        if isinstance(answer, Inside):
            return answer
        sep = answer.separator
        return type(answer)(Halfplane2(sep.a, sep.b - sep.a * self.s, sep.c))


def _extreme_x(h: Hull2):
    """(west vertex, east vertex, degenerate?) of the hull."""
    vs = h.vertices
    xs = [v.x for v in vs]
    lo, hi = min(xs), max(xs)
    west = [v for v in vs if v.x == lo]
    east = [v for v in vs if v.x == hi]
    return west[0], east[0], (len(west) > 1 or len(east) > 1)


def _upper_chain(h: Hull2, west: Point2, east: Point2) -> List[Point2]:
    """Hull vertices from west to east along the top, in increasing x."""
    vs = h.vertices
    if len(vs) <= 2:
        return sorted(vs, key=lambda v: v.x)
    i = vs.index(east)
    chain = [east]
    while chain[-1] != west:
        i = (i + 1) % len(vs)  # counterclockwise from east reaches west over the top
        chain.append(vs[i])
    return chain[::-1]


def _lower_chain(h: Hull2, west: Point2, east: Point2) -> List[Point2]:
    vs = h.vertices
    if len(vs) <= 2:
        return sorted(vs, key=lambda v: v.x)
    i = vs.index(west)
    chain = [west]
    while chain[-1] != east:
        i = (i + 1) % len(vs)
        chain.append(vs[i])
    return chain


def optimal_classify(points: List[Point2], oracle,
                     config: Optional[OptimalConfig] = None) -> ClassificationResult:
    """Exact labels for every point with a query bill that tracks how hard
    the instance actually is, not how many points it has."""
    config = config or OptimalConfig()
    position_of: Dict[Point2, int] = {}
    duplicate_of: Dict[int, int] = {}
    for idx, p in enumerate(points):
        if p in position_of:
            duplicate_of[idx] = position_of[p]
        else:
            position_of[p] = idx
    unique = sorted(position_of.values())

    state = _OptState(unclassified={i: points[i] for i in unique},
                      inner=convex_hull2([]), labels={})
    state.mirror = _FloatMirror([(i, points[i]) for i in unique])

    trace: List[OptimalTraceRow] = []
    frame: Optional[_ShearFrame] = None

    def record(q, kind, op, labeled, depth, stage, pid, psize):
        true_q = q if frame is None else Point2(q.x - frame.s * q.y, q.y)
        trace.append(OptimalTraceRow(len(trace) + 1, (true_q.x, true_q.y),
                                     kind, op, labeled, depth, stage,
                                     pid, psize))

    def finish():
        labels = dict(state.labels)
        for idx, rep in duplicate_of.items():
            labels[idx] = labels[rep]
        return ClassificationResult(labels=labels, queries=len(trace),
                                    trace=trace)

    # ---- stage 1: greedy rounds until the inner hull is seeded ----------
    ask_oracle = oracle
    force_direct = False
    while state.unclassified and state.inner.is_empty():
        m = len(state.unclassified)
        if force_direct or m <= 2:
            q = state.unclassified[min(state.unclassified)]
        else:
            q = _snap64(centerpoint2(list(state.unclassified.values()),
                                     _mode_for(config, m)))
        labeled = _apply_query(state, q, ask_oracle, position_of, record,
                               m, "greedy", -1, 0)
        force_direct = (labeled == 0
                        and state.inner.is_empty())
    if not state.unclassified:
        return finish()

    # ---- stage 2: directional climbs confine everything to a strip ------
    east_dir = direction2(1, 0)
    west_dir = direction2(-1, 0)
    rng = random.Random(0x0C71 ^ config.seed)
    while True:
        directional_climb(state, east_dir, ask_oracle, config, position_of,
                          record)
        if not state.unclassified:
            return finish()
        directional_climb(state, west_dir, ask_oracle, config, position_of,
                          record)
        if not state.unclassified:
            return finish()
        west, east, degenerate = _extreme_x(state.inner)
        if not degenerate:
            break
        # a vertical extreme edge leaves the anchor ambiguous; shear the
        # frame (x' = x + s*y preserves convexity and incidence), rebuild
        # every coordinate-bearing structure, and re-climb
        delta = R(rng.randrange(1, 1 << 16)) / (1 << 20)
        total = delta if frame is None else frame.s + delta
        frame = _ShearFrame(oracle, total)
        ask_oracle = frame
        bump = lambda p: Point2(p.x + delta * p.y, p.y)
        state.unclassified = {k: bump(p) for k, p in
                              state.unclassified.items()}
        state.inner = Hull2([bump(v) for v in state.inner.vertices])
        position_of = {bump(p): i for p, i in position_of.items()}
        state.mirror = _FloatMirror(sorted(state.unclassified.items()))

    anchor_left, anchor_right = west, east

    def anchor_side(u: Point2) -> int:
        return orient2(anchor_left, anchor_right, u)

    above = [k for k, u in state.unclassified.items() if anchor_side(u) > 0]
    below = [k for k, u in state.unclassified.items() if anchor_side(u) < 0]

    next_pid = 0
    all_pts = {i: p for p, i in position_of.items()}

    def run_side(side: str, ids: List[int], chain: List[Point2]):
        nonlocal next_pid
        strip = Pocket(anchor_left.x, anchor_right.x, side,
                       sorted(ids), next_pid)
        next_pid += 1
        # ---- stage 3: clean the vertical through every chain vertex ----
        queue: deque = deque()
        current = strip
        for w in chain:
            if current is None:
                break
            _, left, right = clean_line(state, Line2(R(1), R(0), w.x),
                                        current, ask_oracle, config,
                                        position_of, all_pts, record)
            if left is not None:
                left.pid = next_pid
                next_pid += 1
                queue.append(left)
            current = right
            if current is not None:
                current.pid = next_pid
                next_pid += 1
        if current is not None:
            queue.append(current)
        # ---- stage 4/5: pocket loop ------------------------------------
        while queue:
            pocket = queue.popleft()
            members = [k for k in pocket.members if k in state.unclassified]
            if not members:
                continue
            if len(members) <= 2:
                for key in members:
                    if key not in state.unclassified:
                        continue
                    _apply_query(state, state.unclassified[key], ask_oracle,
                                 position_of, record, len(members),
                                 "pocket-direct", pocket.pid, len(members))
                continue
            pocket.members = members
            children = split_pocket(state, pocket, ask_oracle, config,
                                    position_of, all_pts, record)
            for child in children:
                child.pid = next_pid
                next_pid += 1
                queue.append(child)

    run_side("above", above, _upper_chain(state.inner, west, east))
    if state.unclassified:
        run_side("below",
                 [k for k in below if k in state.unclassified],
                 _lower_chain(state.inner, west, east))

    # anything left sits exactly on the anchor segment, inside the hull,
    # so the loops above cannot have missed it; guard regardless
    for key in sorted(state.unclassified):
        _apply_query(state, state.unclassified[key], ask_oracle, position_of,
                     record, 1, "pocket-direct", -1, 0)

    return finish()

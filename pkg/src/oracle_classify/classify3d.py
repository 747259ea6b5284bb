"""Greedy spatial classification against a 3d separation oracle.

Same round structure as the planar classifier: while the inner hull is
empty, query centerpoints of the whole unclassified set; afterwards find a
supporting plane of the hull whose closed outer halfspace holds the most
unclassified points, then query those points directly (when few) or their
centerpoint.  There is no 3d analogue of the planar arc structure; the
tangent plane comes from explicit candidate search instead.  The search is
exact up to a size cutoff and heuristic above it, which can only cost extra
queries, never correctness.

Labeling stays exact everywhere.  A float mirror holds one certifying hull
face per point (proof it is still outside); only points whose certificate
died with an expansion get re-tested, and anything inside the float error
band falls back to rational arithmetic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .centerpoint import EXACT, Sampled, centerpoint3
from .classify2d import (
    SMALL_THRESHOLD,
    STALL_LIMIT,
    ClassificationResult,
    ClassifyConfig,
    TraceRow,
)
from .errors import EmptyHullError, InconsistentOracleError
from .geometry import Halfspace3, Point3, R
from .hull3 import Hull3, cross3, dotp3, hull3_insert, reduce3, sub3
from .oracle import Inside

AUTO_EXACT_LIMIT3 = 30

# above this many unclassified points the round's tangent plane is chosen
# heuristically; the choice only steers query count, labels stay exact
EXACT_TANGENT_LIMIT = 60

# vertex_count * candidate_pairs budget for the exact tangent search inside
# the classifier; the standalone operation ignores it
_TANGENT_BUDGET = 200_000

_EPS_BAND = 1e-11


def _f(x) -> float:
    try:
        return float(x)
    except OverflowError:
        return math.inf if x > 0 else -math.inf


_DY = 1 << 64


def _snap64(q: Point3) -> Point3:
    """Round to the 2^-64 grid.  Sampled centerpoints carry rational
    coordinates whose size grows with the Radon recursion; querying the
    rounded point instead keeps every later hull computation small, and
    costs at most a sliver of depth."""
    if max(q.x.denominator, q.y.denominator, q.z.denominator) <= _DY:
        return q
    return Point3(
        R((int(q.x.numerator) * _DY) // int(q.x.denominator)) / _DY,
        R((int(q.y.numerator) * _DY) // int(q.y.denominator)) / _DY,
        R((int(q.z.numerator) * _DY) // int(q.z.denominator)) / _DY,
    )


# ---------------------------------------------------------------------------
# deepest tangent plane


def _as_items(points) -> List[Tuple[int, Point3]]:
    if isinstance(points, dict):
        return sorted(points.items())
    return list(enumerate(points))


def _hull_edges(h: Hull3) -> List[Tuple[Point3, Point3]]:
    if h.rank == 1:
        return [(h.flat[0], h.flat[1])]
    if h.rank == 2:
        ring = h.flat
        return [(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))]
    seen = set()
    out = []
    for f in h.faces.values():
        for a, b in ((f.a, f.b), (f.b, f.c), (f.c, f.a)):
            key = (min(a, b), max(a, b))
            if key not in seen:
                seen.add(key)
                out.append((h.pts[a], h.pts[b]))
    return out


def _exact_count(h: Hull3, d, pts: List[Point3]):
    """Exact support value and outer-halfspace members for direction d."""
    s, _ = h.support(d)
    members = [i for i, p in enumerate(pts) if dotp3(d, p) >= s]
    return s, members


def deepest_tangent_plane(h: Hull3, points):
    """A supporting plane whose closed outer halfspace has the most points.

    Returns (plane, ids): the plane as the body-side halfspace (hull inside,
    value <= 0) and the ids of the points on or beyond it.  The maximum is
    taken over every supporting plane; the finite candidate family (facet
    normals, planes through an edge and a point, planes through a vertex
    and two points, vertex-to-point offsets) attains it.  Candidates are
    scored in floating point, then every potential winner is re-scored
    exactly; ties go to the lexicographically least reduced normal.
    """
    if h.is_empty():
        raise EmptyHullError("tangent plane of an empty hull")
    items = _as_items(points)
    ids = [k for k, _ in items]
    pts = [p for _, p in items]
    verts = h.vertices
    if not items:
        d = (R(1), R(0), R(0))
        s, _ = h.support(d)
        return Halfspace3(d[0], d[1], d[2], s), []

    npts = len(pts)
    P = np.array([[_f(p.x), _f(p.y), _f(p.z)] for p in pts])
    V = np.array([[_f(v.x), _f(v.y), _f(v.z)] for v in verts])
    finite = bool(np.isfinite(P).all() and np.isfinite(V).all())
    scale = 1.0
    if finite:
        scale = max(1.0, float(np.abs(P).max()), float(np.abs(V).max()))
    edges = _hull_edges(h)

    # candidate direction blocks; prov rows are (kind, i, j) with
    # kind 0 = facet normal i, 1 = edge i x point j, 2 = vertex i with
    # point pair (j // npts, j % npts), 3 = point j minus vertex i.
    # err holds an absolute bound on each float row's rounding error,
    # which is what makes the float screen an honest upper bound even
    # for nearly-parallel cross products
    blocks: List[np.ndarray] = []
    provs: List[np.ndarray] = []
    errs: List[np.ndarray] = []
    eps = 2e-15

    def block(rows, kind, i, j, err):
        blocks.append(rows)
        provs.append(np.stack([np.full(len(rows), kind, dtype=np.int64),
                               np.asarray(i, dtype=np.int64),
                               np.asarray(j, dtype=np.int64)], axis=1))
        errs.append(np.broadcast_to(err, (len(rows),)))

    facet_ids: List[int] = []
    if h.rank == 3:
        facet_ids = sorted(h.faces)
        rows = np.array([[_f(c) for c in h.faces[fid].normal]
                         for fid in facet_ids])
        block(rows, 0, np.arange(len(facet_ids)), np.zeros(len(facet_ids)),
              eps * np.abs(rows).max(axis=1))
    elif h.rank == 2:
        rows = np.array([[_f(c) for c in h.plane[0]]])
        block(rows, 0, [0], [0], eps * np.abs(rows).max(axis=1))
    if edges:
        E = np.array([[_f(x) for x in sub3(b, a)] for a, b in edges])
        EA = np.array([[_f(a.x), _f(a.y), _f(a.z)] for a, _ in edges])
        diff = P[None, :, :] - EA[:, None, :]
        cr = np.cross(E[:, None, :], diff)
        ne = len(edges)
        cerr = 8 * eps * (np.abs(E).max(axis=1)[:, None]
                          * np.abs(diff).max(axis=2))
        block(cr.reshape(-1, 3), 1,
              np.repeat(np.arange(ne), npts), np.tile(np.arange(npts), ne),
              cerr.reshape(-1))
    iu, ju = np.triu_indices(npts, k=1)
    for vi, v in enumerate(verts):
        vv = np.array([_f(v.x), _f(v.y), _f(v.z)])
        D = P - vv
        dm = np.abs(D).max(axis=1)
        block(D, 3, np.full(npts, vi), np.arange(npts), eps * dm)
        if len(iu):
            cr = np.cross(D[iu], D[ju])
            block(cr, 2, np.full(len(iu), vi), iu * npts + ju,
                  8 * eps * dm[iu] * dm[ju])
    A = np.concatenate(blocks, axis=0)
    prov = np.concatenate(provs, axis=0)
    aerr = np.concatenate(errs, axis=0)
    A = np.concatenate([A, -A], axis=0)
    sign = np.concatenate([np.ones(len(prov), dtype=np.int64),
                           -np.ones(len(prov), dtype=np.int64)])
    prov = np.concatenate([prov, prov], axis=0)
    aerr = np.concatenate([aerr, aerr], axis=0)

    C = len(A)
    hi = np.full(C, npts)
    if finite:
        with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
            mag = np.linalg.norm(A, axis=1)
            U = A / mag[:, None]
            # direction error after normalization, then dot-value error
            # against coordinates up to |scale|
            band = 6.0 * scale * (aerr / mag + eps) + _EPS_BAND
        ok = np.isfinite(U).all(axis=1) & np.isfinite(band) & (mag > 0)
        U = np.where(ok[:, None], U, 0.0)
        band = np.where(ok, band, np.inf)
        for lo in range(0, C, 16384):
            sl = slice(lo, min(C, lo + 16384))
            s = (U[sl] @ V.T).max(axis=1)
            hi[sl] = ((U[sl] @ P.T) >= (s - 4 * band[sl])[:, None]).sum(axis=1)
        hi = np.where(ok, hi, npts)

    def exact_normal(kind, i, j, sg):
        if kind == 0:
            if h.rank == 2:
                n = tuple(R(c) for c in h.plane[0])
            else:
                n = tuple(R(c) for c in h.faces[facet_ids[i]].normal)
        elif kind == 1:
            a, b = edges[i]
            n = cross3(sub3(b, a), sub3(pts[j], a))
        elif kind == 2:
            v = verts[i]
            n = cross3(sub3(pts[j // npts], v), sub3(pts[j % npts], v))
        else:
            n = sub3(pts[j], verts[i])
        return n if sg > 0 else (-n[0], -n[1], -n[2])

    def screened_members(rd):
        """Exact outer members of direction rd, float-pruned."""
        uf = np.array([_f(c) for c in rd])
        m = np.abs(uf).max()
        if not finite or not math.isfinite(m) or m == 0:
            s, mem = _exact_count(h, rd, pts)
            return mem
        uf = uf / np.linalg.norm(uf / m) / m
        b = 4.0 * (_EPS_BAND + eps * scale)
        sv = V @ uf
        sf = sv.max()
        s_ex = max(dotp3(rd, verts[i])
                   for i in np.nonzero(sv > sf - b)[0])
        pv = P @ uf
        members = [int(i) for i in np.nonzero(pv >= sf + b)[0]]
        for i in np.nonzero((pv < sf + b) & (pv > sf - b))[0]:
            if dotp3(rd, pts[i]) >= s_ex:
                members.append(int(i))
        return sorted(members)

    order = np.argsort(-hi, kind="stable")
    best = None            # (count, reduced normal, members)
    seen = set()
    for idx in order:
        if best is not None and hi[idx] < best[0]:
            break
        d = exact_normal(prov[idx, 0], prov[idx, 1], prov[idx, 2], sign[idx])
        if d == (0, 0, 0):
            continue
        rd = reduce3(d)
        if rd in seen:
            continue
        seen.add(rd)
        members = screened_members(rd)
        if best is None or len(members) > best[0] \
                or (len(members) == best[0] and rd < best[1]):
            best = (len(members), rd, members)
        if best[0] == 0 and hi[idx] == 0:
            break    # every remaining candidate is also certainly at 0
    if best is None:
        rd = (1, 0, 0)
        _, members = _exact_count(h, rd, pts)
    else:
        _, rd, members = best
    s_red, _ = h.support(rd)
    plane = Halfspace3(R(rd[0]), R(rd[1]), R(rd[2]), s_red)
    return plane, sorted(ids[i] for i in members)


def _heuristic_witness(state: "ClassifierState3", rng: random.Random) -> List[int]:
    """Approximate deepest-outer-halfspace members for large sets.

    Pure floating point: scores a pool of candidate directions (current
    face normals, point offsets from the hull centroid, crosses of offset
    pairs) and returns the ids near or beyond the winner's support.  The
    ids only decide where the next query goes; labeling stays exact in the
    expand/remove operations, so a poor pick costs queries, not truth."""
    h = state.inner
    mirror = state.mirror
    rows = np.nonzero(mirror.alive & mirror.finite)[0]
    if len(rows) == 0:
        return []
    P = np.stack([mirror.px[rows], mirror.py[rows], mirror.pz[rows]], axis=1)
    verts = h.vertices
    V = np.array([[_f(v.x), _f(v.y), _f(v.z)] for v in verts])
    if not np.isfinite(V).all():
        return []
    cand = [mirror.fn] if (h.rank == 3 and mirror.fids is not None
                           and len(mirror.fids)) else []
    if h.rank == 2:
        n = [_f(c) for c in h.plane[0]]
        cand.append(np.array([n, [-c for c in n]]))
    c0 = V.mean(axis=0)
    offs = P - c0[None, :]
    take = min(len(rows), 48)
    sel = np.array(sorted(rng.sample(range(len(rows)), take)))
    cand.append(offs[sel])
    if take >= 2:
        pairs = min(64, take * (take - 1) // 2)
        a = np.array([rng.randrange(take) for _ in range(pairs)])
        b = np.array([rng.randrange(take) for _ in range(pairs)])
        cr = np.cross(offs[sel[a]], offs[sel[b]])
        cand.append(cr)
        cand.append(-cr)
    A = np.concatenate(cand, axis=0)
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        A = A / np.abs(A).max(axis=1)[:, None]
        A = A / np.linalg.norm(A, axis=1)[:, None]
    good = np.isfinite(A).all(axis=1)
    A = np.where(good[:, None], A, 0.0)
    s = (A @ V.T).max(axis=1)
    band = 1e-9 * (1.0 + mirror.scale)
    hits = (A @ P.T) >= (s - band)[:, None]
    counts = np.where(good, hits.sum(axis=1), -1)
    pick = int(np.argmax(counts))
    if counts[pick] <= 0:
        return []
    return sorted(int(k) for k in mirror.ids[rows[hits[pick]]])


# ---------------------------------------------------------------------------
# classifier state


@dataclass
class ClassifierState3:
    unclassified: Dict[int, Point3]
    inner: Hull3
    labels: Dict[int, str]
    mirror: object = None


class _FloatMirror3:
    """Float shadow of the point set with per-point outside certificates.

    ``wit[i]`` is the id of a hull face that certifiably separates point i
    (float value above the error band), or -1 when no such certificate is
    known and only an exact test can decide.
    """

    __slots__ = ("ids", "px", "py", "pz", "alive", "finite", "slot", "scale",
                 "wit", "fids", "fn", "foff", "fband", "ffin")

    def __init__(self, items):
        n = len(items)
        self.ids = np.empty(n, dtype=np.int64)
        self.px = np.empty(n)
        self.py = np.empty(n)
        self.pz = np.empty(n)
        self.alive = np.ones(n, dtype=bool)
        self.wit = np.full(n, -1, dtype=np.int64)
        self.slot: Dict[int, int] = {}
        for i, (key, u) in enumerate(items):
            self.ids[i] = key
            self.slot[key] = i
            self.px[i] = _f(u.x)
            self.py[i] = _f(u.y)
            self.pz[i] = _f(u.z)
        self.finite = (np.isfinite(self.px) & np.isfinite(self.py)
                       & np.isfinite(self.pz))
        self.scale = 1.0
        if self.finite.any():
            self.scale = max(1.0,
                             float(np.max(np.abs(self.px[self.finite]))),
                             float(np.max(np.abs(self.py[self.finite]))),
                             float(np.max(np.abs(self.pz[self.finite]))))
        self.fids = None

    def kill(self, key) -> None:
        self.alive[self.slot[key]] = False

    def load_faces(self, h: Hull3) -> None:
        fids = sorted(h.faces)
        self.fids = np.array(fids, dtype=np.int64)
        fn = np.empty((len(fids), 3))
        foff = np.empty(len(fids))
        for r, fid in enumerate(fids):
            f = h.faces[fid]
            fn[r, 0] = _f(f.normal[0])
            fn[r, 1] = _f(f.normal[1])
            fn[r, 2] = _f(f.normal[2])
            foff[r] = _f(f.offset)
        # normalize rows so the error band is relative, not absolute
        m = np.abs(fn).max(axis=1)
        with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
            fn /= m[:, None]
            foff /= m
        self.fn = fn
        self.foff = foff
        self.fband = _EPS_BAND * (3.0 * self.scale + np.abs(foff) + 1.0)
        self.ffin = np.isfinite(fn).all(axis=1) & np.isfinite(foff) \
            & np.isfinite(self.fband)
        self.fn[~self.ffin] = 0.0
        self.foff[~self.ffin] = 0.0
        self.fband[~self.ffin] = np.inf

    def classify_rows(self, rows):
        """(certified outside + witness, certified-inside candidates, exact).

        Row indexes of live points split by the face matrix: rows with a
        face value above its band keep that face id; rows below every band
        (all faces float-clean) are inside candidates; the rest need exact
        membership tests."""
        if len(rows) == 0 or self.fids is None or not len(self.fids):
            return [], [], list(rows)
        p = np.stack([self.px[rows], self.py[rows], self.pz[rows]], axis=1)
        vals = p @ self.fn.T - self.foff[None, :]
        over = (vals > self.fband[None, :]) & self.ffin[None, :]
        out_mask = over.any(axis=1) & self.finite[rows]
        wit_pick = np.argmax(np.where(over, vals, -np.inf), axis=1)
        under = (vals < -self.fband[None, :]) | ~self.ffin[None, :]
        in_mask = under.all(axis=1) & self.ffin.all() & self.finite[rows]
        outs = []
        ins = []
        exact = []
        for r, row in enumerate(rows):
            if out_mask[r]:
                self.wit[row] = self.fids[wit_pick[r]]
                outs.append(row)
            elif in_mask[r]:
                ins.append(row)
            else:
                exact.append(row)
        return outs, ins, exact

    def split_beyond(self, sep: Halfspace3):
        """(certainly beyond, needs exact test) among live rows."""
        fa = _f(sep.a)
        fb = _f(sep.b)
        fc = _f(sep.c)
        fd = _f(sep.d)
        m = max(abs(fa), abs(fb), abs(fc))
        if not math.isfinite(m) or m == 0 or not math.isfinite(fd / m):
            return [], [int(k) for k in self.ids[self.alive]]
        fa, fb, fc, fd = fa / m, fb / m, fc / m, fd / m
        band = _EPS_BAND * (3.0 * self.scale + abs(fd) + 1.0)
        v = fa * self.px + fb * self.py + fc * self.pz - fd
        sure = self.alive & self.finite & (v > band)
        maybe = self.alive & ~sure & ~(self.finite & (v < -band))
        return [int(k) for k in self.ids[sure]], [int(k) for k in self.ids[maybe]]


# ---------------------------------------------------------------------------
# operations


def _label_inside(state: ClassifierState3, keys: Iterable[int]) -> int:
    done = 0
    for key in keys:
        state.labels[key] = "inside"
        del state.unclassified[key]
        if state.mirror is not None:
            state.mirror.kill(key)
        done += 1
    return done


def expand3(state: ClassifierState3, p: Point3) -> int:
    """Insert a confirmed-inside point; label everything the hull swallows.

    Returns the number of points labeled.  Low-rank hulls re-test every
    point against the flat; full hulls re-test only points whose outside
    certificate died with the removed faces."""
    h_old = state.inner
    h_new = hull3_insert(h_old, p)
    if h_new is h_old:
        return 0
    state.inner = h_new
    mirror = state.mirror
    if h_new.rank < 3:
        labeled = [k for k, u in state.unclassified.items()
                   if h_new.contains(u) >= 0]
        return _label_inside(state, labeled)
    if mirror is None:
        labeled = [k for k, u in state.unclassified.items()
                   if h_new.contains(u) >= 0]
        return _label_inside(state, labeled)
    if h_old.rank == 3:
        died = np.array(sorted(set(h_old.faces) - set(h_new.faces)),
                        dtype=np.int64)
        hit = mirror.alive & ((mirror.wit < 0) | np.isin(mirror.wit, died))
        affected = np.nonzero(hit)[0]
    else:
        affected = np.nonzero(mirror.alive)[0]
    mirror.load_faces(h_new)
    outs, ins, exact = mirror.classify_rows(np.asarray(affected, dtype=np.int64))
    labeled = []
    for row in ins:
        # inside certificates are cheap to double-check: once per point ever
        key = int(mirror.ids[row])
        if h_new.contains(state.unclassified[key]) < 0:
            raise AssertionError("float band certified a point wrongly")
        labeled.append(key)
    for row in exact:
        key = int(mirror.ids[row])
        if h_new.contains(state.unclassified[key]) >= 0:
            labeled.append(key)
        else:
            mirror.wit[row] = -1
    return _label_inside(state, labeled)


def remove3(state: ClassifierState3, sep: Halfspace3, q: Point3,
            position_of: Dict[Point3, int]) -> int:
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
    for key in doomed:
        state.labels[key] = "outside"
        del state.unclassified[key]
        if state.mirror is not None:
            state.mirror.kill(key)
    return len(doomed)


# ---------------------------------------------------------------------------
# the greedy loop


def _mode_for3(config: ClassifyConfig, m: int):
    if config.centerpoint == "auto":
        if m <= AUTO_EXACT_LIMIT3:
            return EXACT
        # skip the exact depth check: one weak round costs a few extra
        # queries, the check costs cubic time per round
        return Sampled(seed=config.seed, verify=False)
    return config.centerpoint


def _witness3(state: ClassifierState3, rng: random.Random) -> List[int]:
    """Ids of the points a deepest (or near-deepest) tangent plane selects."""
    h = state.inner
    m = len(state.unclassified)
    nverts = len(h.vertices)
    if m <= EXACT_TANGENT_LIMIT and nverts * m * m <= _TANGENT_BUDGET:
        _, ids = deepest_tangent_plane(h, state.unclassified)
        return ids
    return _heuristic_witness(state, rng)


def greedy_classify3(points: List[Point3], oracle,
                     config: Optional[ClassifyConfig] = None) -> ClassificationResult:
    """Classify every point as inside or outside the oracle's 3d body.

    Output labels are exact; the query count is the figure of merit.
    Duplicate input points share one query budget and one label.
    """
    config = config or ClassifyConfig()
    rng = random.Random(0x3D5EED ^ config.seed)
    position_of: Dict[Point3, int] = {}
    duplicate_of: Dict[int, int] = {}
    for idx, p in enumerate(points):
        if p in position_of:
            duplicate_of[idx] = position_of[p]
        else:
            position_of[p] = idx
    unique = sorted(position_of.values())
    state = ClassifierState3(
        unclassified={idx: points[idx] for idx in unique},
        inner=Hull3(),
        labels={},
    )
    state.mirror = _FloatMirror3([(idx, points[idx]) for idx in unique])
    trace: List[TraceRow] = []
    rounds = 0
    force_direct = False

    def ask(q: Point3):
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
            q = _snap64(centerpoint3(state.unclassified.values(),
                                     _mode_for3(config, m)))
        answer, kind = ask(q)
        if kind == "inside":
            labeled = expand3(state, q)
            op = "expand"
        else:
            labeled = remove3(state, answer.separator, q, position_of)
            op = "remove"
        trace.append(TraceRow(rounds, (q.x, q.y, q.z), kind, op, labeled, m))
        force_direct = (labeled == 0 and kind == "outside")

    # ---- phase 2: tangent-plane rounds ----------------------------------
    stalled = 0
    while state.unclassified:
        rounds += 1
        ids = _witness3(state, rng)
        depth = len(ids)
        if depth == 0:
            ids = [min(state.unclassified)]
        if depth <= SMALL_THRESHOLD or stalled >= STALL_LIMIT:
            if depth > SMALL_THRESHOLD:
                ids = ids[:8]  # stall fallback: a few direct hits suffice
            for key in ids:
                if key not in state.unclassified:
                    continue  # an earlier separator already covered it
                u = state.unclassified[key]
                answer, kind = ask(u)
                if kind == "inside":
                    labeled = expand3(state, u)
                    op = "expand"
                else:
                    labeled = remove3(state, answer.separator, u, position_of)
                    op = "remove"
                trace.append(TraceRow(rounds, (u.x, u.y, u.z), kind, op,
                                      labeled, depth))
            stalled = 0
            continue
        targets = [state.unclassified[key] for key in ids]
        q = _snap64(centerpoint3(targets, _mode_for3(config, len(targets))))
        if state.inner.contains(q) >= 0:
            # the centerpoint degenerated onto the hull: no expansion is
            # possible there, so spend the query on an input point instead
            q = state.unclassified[min(ids)]
        answer, kind = ask(q)
        if kind == "inside":
            labeled = expand3(state, q)
            op = "expand"
        else:
            labeled = remove3(state, answer.separator, q, position_of)
            op = "remove"
        trace.append(TraceRow(rounds, (q.x, q.y, q.z), kind, op, labeled, depth))
        stalled = stalled + 1 if labeled == 0 else 0

    labels = dict(state.labels)
    for idx, rep in duplicate_of.items():
        labels[idx] = labels[rep]
    return ClassificationResult(labels=labels, queries=len(trace), trace=trace)

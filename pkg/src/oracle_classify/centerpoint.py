"""Tukey depth and centerpoints, exact and sampled, in 2d and 3d.

Exact centerpoints are certified: every returned point is re-checked with an
exact depth computation, so a guarantee failure raises instead of silently
degrading.  Sampled modes trade the guarantee for speed on large inputs and
are validated statistically by the test suite.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cmp_to_key

import numpy as np

from .errors import CenterpointError, GeometryError, TooLargeForExactError
from .geometry import (
    Direction2,
    Point2,
    Point3,
    R,
    angular_cmp,
    direction2,
    dot_dd,
    opposite,
    perp_ccw,
    perp_cw,
    scale_to_ints,
)


@dataclass(frozen=True)
class Exact:
    """Certified mode: depth >= ceil(n/3) in 2d, >= ceil(n/4) in 3d."""


@dataclass(frozen=True)
class Sampled:
    """Centerpoint of a uniform sample; depth guarantees become statistical.

    In 2d the sample has min(n, sample_size) points and gets an exact
    centerpoint.  In 3d the sample feeds a Radon-point tournament whose base
    size is sample_size rounded up to a power of five.  When verify is set
    (and the input is small enough to afford it), the 3d result is depth-
    checked exactly and regenerated on failure; callers that only need the
    statistical guarantee can turn this off.
    """

    sample_size: int = 40
    seed: int = 0
    verify: bool = True


EXACT = Exact()


# ---------------------------------------------------------------------------
# exact Tukey depth, 2d


def _gap_direction(e: Direction2, f: Direction2) -> Direction2:
    """An exact direction strictly inside the open ccw gap from e to f."""
    if f == opposite(e):
        return perp_ccw(e)
    return direction2(e.a + f.a, e.b + f.b)


def tukey_depth2(points, q: Point2, witness: bool = False):
    """Exact Tukey depth of q: min over closed halfplanes through q of the
    number of points they contain.

    With witness=True also returns a direction w attaining the minimum:
    #{p : w . p >= w . q} equals the depth (None when all points equal q).
    """
    eq = 0
    dir_count: dict[Direction2, int] = {}
    for p in points:
        dx = p.x - q.x
        dy = p.y - q.y
        if dx == 0 and dy == 0:
            eq += 1
            continue
        d = direction2(dx, dy)
        dir_count[d] = dir_count.get(d, 0) + 1
    if not dir_count:
        return (eq, None) if witness else eq
    # u is over p - q exactly on the closed half-turn arc [perp_cw, perp_ccw],
    # so depth is eq plus the minimum coverage of these half-circle arcs.
    opens: dict[Direction2, int] = {}
    closes: dict[Direction2, int] = {}
    for d, c in dir_count.items():
        lo = perp_cw(d)
        hi = perp_ccw(d)
        opens[lo] = opens.get(lo, 0) + c
        closes[hi] = closes.get(hi, 0) + c
    events = sorted(set(opens) | set(closes), key=cmp_to_key(angular_cmp))
    m = len(events)
    e0 = events[0]
    cur = sum(c for d, c in dir_count.items() if dot_dd(e0, d) >= 0)
    best = cur
    best_at = e0
    for t, e in enumerate(events):
        if t > 0:
            cur += opens.get(e, 0)
        after_gap = cur - closes.get(e, 0)
        if cur < best:
            best = cur
            best_at = e
        if after_gap < best:
            best = after_gap
            best_at = _gap_direction(e, events[(t + 1) % m])
        cur = after_gap
    if witness:
        return eq + best, best_at
    return eq + best


# ---------------------------------------------------------------------------
# exact k-th largest projection (constraint right-hand sides)


def _kth_largest_dot2(xs: np.ndarray, ys: np.ndarray, int_pts, u: Direction2,
                      k: int, safe_int64: bool) -> int:
    """Exact k-th largest of u . p over integer points (k >= 1)."""
    n = len(int_pts)
    if safe_int64 and abs(u.a) < 2 ** 20 and abs(u.b) < 2 ** 20:
        vals = u.a * xs + u.b * ys
        return int(np.partition(vals, n - k)[n - k])
    try:
        fa, fb = float(u.a), float(u.b)
        with np.errstate(over="ignore"):
            fv = fa * xs.astype(float) + fb * ys.astype(float)
    except OverflowError:
        fv = None
    if fv is not None and np.all(np.isfinite(fv)):
        t = float(np.partition(fv, n - k)[n - k])
        span = abs(fa) * float(np.max(np.abs(xs))) + \
            abs(fb) * float(np.max(np.abs(ys))) + 1.0
        err = span * 1e-12
        above = int(np.count_nonzero(fv > t + err))
        window = np.nonzero(np.abs(fv - t) <= err)[0]
        if above < k <= above + len(window):
            w = sorted((u.a * int_pts[i][0] + u.b * int_pts[i][1]
                        for i in window), reverse=True)
            return w[k - above - 1]
    # float window was not conclusive: full exact sort
    exact = sorted(u.a * x + u.b * y for x, y in int_pts)
    return exact[n - k]


# ---------------------------------------------------------------------------
# exact feasible point of an intersection of halfplanes/halfspaces
# (randomized incremental LP with a zero objective; exact rationals)


class _Infeasible(Exception):
    pass


def _lp_point(cons, dim, lo, hi, rng):
    """A point of {x : a . x <= b for all (a, b)} inside the box [lo, hi].

    cons entries are (a, b) with a a dim-tuple of rationals.  Assumes the
    feasible set is nonempty and inside the box; raises _Infeasible otherwise.
    """
    if dim == 1:
        low, high = lo[0], hi[0]
        for a, b in cons:
            c = a[0]
            if c > 0:
                v = b / c
                if v < high:
                    high = v
            elif c < 0:
                v = b / c
                if v > low:
                    low = v
            elif b < 0:
                raise _Infeasible
        if low > high:
            raise _Infeasible
        return [low]

    order = list(cons)
    rng.shuffle(order)
    x = list(lo)
    for idx, (a, b) in enumerate(order):
        if sum(ai * xi for ai, xi in zip(a, x)) <= b:
            continue
        # current point violates (a, b): some feasible point of the prefix
        # lies on its boundary; recurse with the variable of largest |a_j|
        # eliminated via a . x = b.
        j = max(range(dim), key=lambda t: abs(a[t]))
        if a[j] == 0:
            raise _Infeasible
        keep = [t for t in range(dim) if t != j]

        def project(a2, b2):
            coef = a2[j] / a[j]
            na = tuple(a2[t] - coef * a[t] for t in keep)
            nb = b2 - coef * b
            return na, nb

        sub = [project(a2, b2) for a2, b2 in order[: idx + 1]]
        # the eliminated variable's box sides become ordinary constraints
        ej_hi = tuple(R(1) if t == j else R(0) for t in range(dim))
        ej_lo = tuple(R(-1) if t == j else R(0) for t in range(dim))
        sub.append(project(ej_hi, hi[j]))
        sub.append(project(ej_lo, -lo[j]))
        y = _lp_point(sub, dim - 1, [lo[t] for t in keep],
                      [hi[t] for t in keep], rng)
        x = [None] * dim
        for t, v in zip(keep, y):
            x[t] = v
        x[j] = (b - sum(a[t] * x[t] for t in keep)) / a[j]
    return x


# ---------------------------------------------------------------------------
# centerpoint, 2d


def _median_candidates2(pts):
    n = len(pts)
    xs = sorted(p.x for p in pts)
    ys = sorted(p.y for p in pts)
    mid = (n - 1) // 2
    cands = [Point2(xs[mid], ys[mid])]
    if n % 2 == 0:
        cands.append(Point2(xs[n // 2], ys[n // 2]))
        cands.append(Point2((xs[mid] + xs[n // 2]) / 2,
                            (ys[mid] + ys[n // 2]) / 2))
    cands.append(Point2(sum(xs) / n, sum(ys) / n))
    # medians in the 45-degree frame: s = x + y, t = x - y
    ss = sorted(p.x + p.y for p in pts)
    ts = sorted(p.x - p.y for p in pts)
    cands.append(Point2((ss[mid] + ts[mid]) / 2, (ss[mid] - ts[mid]) / 2))
    return cands


class _Scaled2:
    """Integer-scaled copy of a 2d point set plus exact constraint helpers."""

    def __init__(self, pts):
        self.int_pts, self.denom = scale_to_ints(pts)
        xs = np.array([p[0] for p in self.int_pts], dtype=object)
        ys = np.array([p[1] for p in self.int_pts], dtype=object)
        maxc = max(1, max(int(np.max(np.abs(xs))), int(np.max(np.abs(ys)))))
        self.safe = maxc < 2 ** 40
        if self.safe:
            xs = xs.astype(np.int64)
            ys = ys.astype(np.int64)
        self.xs = xs
        self.ys = ys

    def constraint(self, u: Direction2, k: int):
        """u . x <= k-th largest projection, as an exact LP row."""
        b = _kth_largest_dot2(self.xs, self.ys, self.int_pts, u, k, self.safe)
        return (R(u.a), R(u.b)), R(b) / self.denom


_AXES2 = (Direction2(1, 0), Direction2(-1, 0),
          Direction2(0, 1), Direction2(0, -1))

# above this size the O(n^2) candidate-direction system is replaced by
# iterative cutting with exact depth witnesses
_FULL_SYSTEM_LIMIT2 = 240


def _centerpoint2_full(pts, k: int, sc: _Scaled2, lo, hi) -> Point2:
    """Guaranteed construction: the depth region is an intersection of
    halfplanes whose only relevant normals are the pair-difference
    perpendiculars plus the axes (consecutive direction gaps under pi keep
    every cell pointed), so one LP over all of them finds a member."""
    dirs = set(_AXES2)
    distinct = sorted(set(sc.int_pts))
    for i in range(len(distinct)):
        ax, ay = distinct[i]
        for j in range(i + 1, len(distinct)):
            bx, by = distinct[j]
            d = direction2(bx - ax, by - ay)
            dirs.add(perp_ccw(d))
            dirs.add(perp_cw(d))
    cons = [sc.constraint(u, k) for u in dirs]
    try:
        x = _lp_point(cons, 2, lo, hi, random.Random(0x2D5EED))
    except _Infeasible as exc:
        raise CenterpointError("no point satisfies the depth system") from exc
    return Point2(R(x[0]), R(x[1]))


def _centerpoint2_cutting(pts, k: int, sc: _Scaled2, lo, hi):
    """Large-n construction: grow the constraint set lazily.

    A failed depth verification yields a violated witness direction, but
    witness cuts alone can zeno toward a region vertex.  The edges of the
    depth region lie on lines through two input points, so the loop prefers
    cuts from that finite family: pair perpendiculars taken from a rank
    window around k along the witness direction.  The raw witness cut is
    the fallback when no local pair constraint is violated.
    """
    cons = [sc.constraint(u, k) for u in _AXES2]
    seen = set(_AXES2)
    for it in range(160):
        try:
            x = _lp_point(cons, 2, lo, hi, random.Random(0x2D5EED + it))
        except _Infeasible as exc:
            raise CenterpointError("depth system became infeasible") from exc
        q = Point2(R(x[0]), R(x[1]))
        depth, w = tukey_depth2(pts, q, witness=True)
        if depth >= k:
            return q
        order = sorted(sc.int_pts,
                       key=lambda p: w.a * p[0] + w.b * p[1], reverse=True)
        window = [p for p in order[max(0, k - 8): k + 8]]
        added = 0
        for i in range(len(window)):
            ax, ay = window[i]
            for j in range(i + 1, len(window)):
                bx, by = window[j]
                if ax == bx and ay == by:
                    continue
                d = direction2(bx - ax, by - ay)
                for u in (perp_ccw(d), perp_cw(d)):
                    if u in seen:
                        continue
                    seen.add(u)
                    a, b = sc.constraint(u, k)
                    if a[0] * q.x + a[1] * q.y > b:
                        cons.append((a, b))
                        added += 1
        if added == 0:
            a, b = sc.constraint(w, k)
            if a[0] * q.x + a[1] * q.y <= b:
                return None  # witness failed to cut: use the full system
            cons.append((a, b))
    return None


def _centerpoint2_exact(pts) -> Point2:
    n = len(pts)
    k = -(-n // 3)
    for c in _median_candidates2(pts):
        if tukey_depth2(pts, c) >= k:
            return c

    sc = _Scaled2(pts)
    lo = [min(p.x for p in pts), min(p.y for p in pts)]
    hi = [max(p.x for p in pts), max(p.y for p in pts)]
    q = None
    if n > _FULL_SYSTEM_LIMIT2:
        q = _centerpoint2_cutting(pts, k, sc, lo, hi)
    if q is None:
        q = _centerpoint2_full(pts, k, sc, lo, hi)
    if tukey_depth2(pts, q) < k:
        raise CenterpointError("constructed point failed depth verification")
    return q


def centerpoint2(points, mode=EXACT) -> Point2:
    """A point of Tukey depth >= ceil(n/3) (Exact) or a sampled stand-in."""
    pts = list(points)
    if not pts:
        raise GeometryError("centerpoint of empty point set")
    if isinstance(mode, Sampled):
        if len(pts) > mode.sample_size:
            rng = random.Random(mode.seed)
            pts = rng.sample(pts, mode.sample_size)
        return _centerpoint2_exact(pts)
    return _centerpoint2_exact(pts)


# ---------------------------------------------------------------------------
# exact Tukey depth, 3d


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def _dot3(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _reduce3(v):
    g = math.gcd(math.gcd(abs(v[0]), abs(v[1])), abs(v[2]))
    return (v[0] // g, v[1] // g, v[2] // g)


def _scale3(vecs):
    L = 1
    for v in vecs:
        L = math.lcm(L, int(v[0].denominator), int(v[1].denominator),
                     int(v[2].denominator))
    out = []
    for v in vecs:
        out.append(tuple(int(c.numerator) * (L // int(c.denominator))
                         for c in v))
    return out, L


def _plane_basis(u0):
    if u0[0] == 0 and u0[1] == 0:
        b1 = (1, 0, 0)
    else:
        b1 = (-u0[1], u0[0], 0)
    return b1, _cross3(u0, b1)


def tukey_depth3(points, q: Point3, witness: bool = False):
    """Exact Tukey depth of q in 3d; optionally also a rational direction u
    with #{p : u . (p - q) >= 0} equal to the depth (minus coincident points).

    Returns depth, or (depth, u) when witness is requested (u is None when
    every point coincides with q).
    """
    eq = 0
    raw = []
    for p in points:
        v = (p.x - q.x, p.y - q.y, p.z - q.z)
        if v[0] == 0 and v[1] == 0 and v[2] == 0:
            eq += 1
        else:
            raw.append(tuple(R(c) for c in v))
    if not raw:
        return (eq, None) if witness else eq
    vecs, _ = _scale3(raw)

    verts = set()
    base_dir = vecs[0]
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            c = _cross3(vecs[i], vecs[j])
            if c != (0, 0, 0):
                r = _reduce3(c)
                verts.add(r)
                verts.add((-r[0], -r[1], -r[2]))
    if not verts:
        # all offsets parallel: a halfspace can shave off either side
        pos = sum(1 for v in vecs if _dot3(v, base_dir) > 0)
        neg = len(vecs) - pos
        if witness:
            u = base_dir if pos <= neg else tuple(-c for c in base_dir)
            return eq + min(pos, neg), u
        return eq + min(pos, neg)

    best = None
    best_state = None
    for u0 in verts:
        base = 0
        zero = []
        for v in vecs:
            s = _dot3(u0, v)
            if s > 0:
                base += 1
            elif s == 0:
                zero.append(v)
        if best is not None and base >= best:
            continue
        b1, b2 = _plane_basis(u0)
        dirs2 = [direction2(_dot3(v, b1), _dot3(v, b2)) for v in zero]
        events = set()
        for d in dirs2:
            events.add(perp_cw(d))
            events.add(perp_ccw(d))
        for e in events:
            pcc = perp_ccw(e)
            cnt = 0
            for d in dirs2:
                s = dot_dd(e, d)
                if s > 0 or (s == 0 and dot_dd(pcc, d) > 0):
                    cnt += 1
            if best is None or base + cnt < best:
                best = base + cnt
                best_state = (u0, b1, b2, dirs2, e)
    if not witness:
        return eq + best

    u0, b1, b2, dirs2, e = best_state
    # rational direction strictly inside the winning gap: nudge e ccw
    pcc = perp_ccw(e)
    want = []
    for d in dirs2:
        s = dot_dd(e, d)
        want.append(s > 0 or (s == 0 and dot_dd(pcc, d) > 0))
    s = 1
    while True:
        w = (e.a * s + pcc.a, e.b * s + pcc.b)
        if all((w[0] * d.a + w[1] * d.b > 0) == wt
               for d, wt in zip(dirs2, want)):
            break
        s *= 2
    wp = tuple(w[0] * c1 + w[1] * c2 for c1, c2 in zip(b1, b2))
    m = 1
    while True:
        u = tuple(u0[t] * m + wp[t] for t in range(3))
        ok = True
        for v in vecs:
            s0 = _dot3(u0, v)
            if s0 != 0 and (_dot3(u, v) > 0) != (s0 > 0):
                ok = False
                break
        if ok:
            break
        m *= 2
    u = _reduce3(u)
    assert sum(1 for v in vecs if _dot3(u, v) >= 0) == best
    return eq + best, u


# ---------------------------------------------------------------------------
# centerpoint, 3d


def _affine_frame3(pts):
    """(dim, origin, dirs): affine dimension and spanning offsets of pts."""
    p0 = pts[0]
    d1 = None
    for p in pts:
        v = (p.x - p0.x, p.y - p0.y, p.z - p0.z)
        if v != (0, 0, 0):
            d1 = v
            break
    if d1 is None:
        return 0, p0, ()
    nrm = None
    for p in pts:
        v = (p.x - p0.x, p.y - p0.y, p.z - p0.z)
        c = _cross3(d1, v)
        if c != (0, 0, 0):
            nrm = c
            break
    if nrm is None:
        return 1, p0, (d1,)
    for p in pts:
        v = (p.x - p0.x, p.y - p0.y, p.z - p0.z)
        if _dot3(nrm, v) != 0:
            return 3, p0, (d1, nrm, v)
    return 2, p0, (d1, nrm)


def _kth_largest_dot3(int_pts, u, k):
    vals = sorted(_dot3(u, p) for p in int_pts)
    return vals[len(vals) - k]


def _centerpoint3_exact(pts) -> Point3:
    n = len(pts)
    k = -(-n // 4)
    dim, p0, frame = _affine_frame3(pts)
    if dim == 0:
        return p0
    if dim == 1:
        d1 = frame[0]
        order = sorted(pts, key=lambda p: _dot3(d1, (p.x, p.y, p.z)))
        return order[(n - 1) // 2]
    if dim == 2:
        d1, nrm = frame
        b1 = d1
        b2 = _cross3(nrm, b1)
        flat = [Point2(_dot3(b1, (p.x - p0.x, p.y - p0.y, p.z - p0.z)),
                       _dot3(b2, (p.x - p0.x, p.y - p0.y, p.z - p0.z)))
                for p in pts]
        q2 = _centerpoint2_exact(flat)
        a = q2.x / _dot3(b1, b1)
        b = q2.y / _dot3(b2, b2)
        return Point3(p0.x + a * b1[0] + b * b2[0],
                      p0.y + a * b1[1] + b * b2[1],
                      p0.z + a * b1[2] + b * b2[2])

    # full-dimensional: fast candidates, then constraints + LP + verify loop
    xs = sorted(p.x for p in pts)
    ys = sorted(p.y for p in pts)
    zs = sorted(p.z for p in pts)
    mid = (n - 1) // 2
    cands = [Point3(xs[mid], ys[mid], zs[mid]),
             Point3(sum(xs) / n, sum(ys) / n, sum(zs) / n)]
    for c in cands:
        if tukey_depth3(pts, c) >= k:
            return c

    raw = [(R(p.x), R(p.y), R(p.z)) for p in pts]
    int_pts, scale = _scale3(raw)
    denom = R(scale)

    dirs = {(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1),
            (0, 0, -1)}
    distinct = sorted(set(int_pts))
    m = len(distinct)
    for i in range(m):
        for j in range(i + 1, m):
            dij = tuple(a - b for a, b in zip(distinct[j], distinct[i]))
            for t in range(m):
                if t == i or t == j:
                    continue
                dit = tuple(a - b for a, b in zip(distinct[t], distinct[i]))
                c = _cross3(dij, dit)
                if c != (0, 0, 0):
                    r = _reduce3(c)
                    dirs.add(r)
                    dirs.add((-r[0], -r[1], -r[2]))

    cons = []
    for u in dirs:
        b = _kth_largest_dot3(int_pts, u, k)
        cons.append(((R(u[0]), R(u[1]), R(u[2])), R(b) / denom))
    lo = [xs[0], ys[0], zs[0]]
    hi = [xs[-1], ys[-1], zs[-1]]
    rng = random.Random(0x3D5EED)
    for _ in range(200):
        try:
            x = _lp_point(cons, 3, lo, hi, rng)
        except _Infeasible as exc:
            raise CenterpointError("no point satisfies the depth system") \
                from exc
        q = Point3(R(x[0]), R(x[1]), R(x[2]))
        depth, u = tukey_depth3(pts, q, witness=True)
        if depth >= k:
            return q
        # the witness halfspace shows a missing constraint: add it and retry
        b = _kth_largest_dot3(int_pts, u, k)
        cons.append(((R(u[0]), R(u[1]), R(u[2])), R(b) / denom))
    raise CenterpointError("depth cutting loop failed to converge")


def _radon_point3(five):
    """Radon point of five 3d points: a point in the intersection of the two
    convex hulls of a sign-split of an affine dependence."""
    # rows: sum(l) = 0 and sum(l * coord) = 0 for each coordinate
    rows = [[R(1)] * 5,
            [R(p.x) for p in five],
            [R(p.y) for p in five],
            [R(p.z) for p in five]]
    ncols = 5
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = None
        for rr in range(r, len(rows)):
            if rows[rr][c] != 0:
                piv = rr
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for rr in range(len(rows)):
            if rr != r and rows[rr][c] != 0:
                f = rows[rr][c]
                rows[rr] = [v - f * w for v, w in zip(rows[rr], rows[r])]
        piv_cols.append(c)
        r += 1
        if r == len(rows):
            break
    free = next(c for c in range(ncols) if c not in piv_cols)
    lam = [R(0)] * ncols
    lam[free] = R(1)
    for rr, c in enumerate(piv_cols):
        lam[c] = -rows[rr][free]
    spos = sum(l for l in lam if l > 0)
    assert spos > 0
    x = sum(l * five[i].x for i, l in enumerate(lam) if l > 0) / spos
    y = sum(l * five[i].y for i, l in enumerate(lam) if l > 0) / spos
    z = sum(l * five[i].z for i, l in enumerate(lam) if l > 0) / spos
    return Point3(x, y, z)


def _radon_tournament3(pts, base, rng):
    level = [pts[rng.randrange(len(pts))] for _ in range(base)]
    while len(level) > 1:
        level = [_radon_point3(level[i:i + 5])
                 for i in range(0, len(level), 5)]
    return level[0]


def centerpoint3(points, mode=EXACT) -> Point3:
    """A point of Tukey depth >= ceil(n/4) (Exact, n <= 30) or a Radon-
    tournament point (Sampled, depth about n/5 with high probability)."""
    pts = list(points)
    if not pts:
        raise GeometryError("centerpoint of empty point set")
    n = len(pts)
    if isinstance(mode, Sampled):
        base = 5
        while base < max(5, mode.sample_size):
            base *= 5
        if n <= 200 and mode.verify:
            # verification is cheap here: retry until the target holds
            target = -(-n // 5)
            best, best_depth = None, -1
            for attempt in range(8):
                rng = random.Random(mode.seed * 1000003 + attempt)
                q = _radon_tournament3(pts, base, rng)
                d = tukey_depth3(pts, q)
                if d >= target:
                    return q
                if d > best_depth:
                    best, best_depth = q, d
            return best
        return _radon_tournament3(pts, base, random.Random(mode.seed))
    if n > 30:
        raise TooLargeForExactError(
            f"exact 3d centerpoint supports n <= 30, got {n}")
    return _centerpoint3_exact(pts)

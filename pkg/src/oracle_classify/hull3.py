"""Incremental exact convex hulls in three dimensions.

A hull tracks its affine rank.  Ranks 0..2 (point, segment, planar polygon)
keep a canonical vertex list and, for rank 2, the carrying plane; rank 3
keeps a triangulated boundary with outward integer normals and a fixed
interior reference point.  Insertion of a point strictly outside deletes
the faces that see it and stitches the horizon to the new vertex; points
inside or on the boundary leave the hull untouched.

Faces are triangles, so adjacent coplanar triangles may subdivide one
geometric facet; every predicate here is exact either way.
"""

from __future__ import annotations

import math
from typing import Dict, List, NamedTuple, Optional, Tuple

from .geometry import Point2, Point3, R, convex_hull2

Vec3 = Tuple  # rational or integer 3-tuple


def sub3(p: Point3, q: Point3) -> Vec3:
    return (p.x - q.x, p.y - q.y, p.z - q.z)


def cross3(u: Vec3, v: Vec3) -> Vec3:
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def dot3(u: Vec3, v: Vec3):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def dotp3(u: Vec3, p: Point3):
    return u[0] * p.x + u[1] * p.y + u[2] * p.z


def orient3(a: Point3, b: Point3, c: Point3, p: Point3) -> int:
    """Sign of the signed volume of the tetrahedron abcp."""
    v = dot3(cross3(sub3(b, a), sub3(c, a)), sub3(p, a))
    return (v > 0) - (v < 0)


def reduce3(v: Vec3) -> Tuple[int, int, int]:
    """Scale a nonzero rational vector to coprime integers, same direction."""
    a, b, c = R(v[0]), R(v[1]), R(v[2])
    lcm = math.lcm(int(a.denominator), int(b.denominator), int(c.denominator))
    ia = int(a.numerator) * (lcm // int(a.denominator))
    ib = int(b.numerator) * (lcm // int(b.denominator))
    ic = int(c.numerator) * (lcm // int(c.denominator))
    g = math.gcd(ia, ib, ic)
    return (ia // g, ib // g, ic // g)


class Face3(NamedTuple):
    a: int
    b: int
    c: int
    normal: Tuple[int, int, int]   # outward
    offset: "R"                    # normal . x <= offset on the hull


# dropping axis k keeps these two coordinates, in this order, so that an
# even permutation (i, j, k) preserves orientation
_KEEP = {0: (1, 2), 1: (2, 0), 2: (0, 1)}


def _planar_ring(pts: List[Point3], n: Vec3) -> List[Point3]:
    """Canonical convex polygon (ccw around n) of coplanar points."""
    k = max(range(3), key=lambda i: abs(n[i]))
    i, j = _KEEP[k]
    if n[k] < 0:
        i, j = j, i
    back = {}
    flat = []
    for p in pts:
        key = (p[i], p[j])
        back[key] = p
        flat.append(Point2(key[0], key[1]))
    hull = convex_hull2(flat)
    return [back[(v.x, v.y)] for v in hull.vertices]


class Hull3:
    """Exact 3d convex hull; see the module docstring for the rank states."""

    __slots__ = ("rank", "flat", "plane", "pts", "faces", "ref", "_next_fid",
                 "_verts")

    def __init__(self):
        self.rank = -1
        self._verts = None
        self.flat: List[Point3] = []       # ranks 0..2
        self.plane = None                  # rank 2: (normal, offset)
        self.pts: List[Point3] = []        # rank 3: indexed coordinates
        self.faces: Dict[int, Face3] = {}  # rank 3: stable face ids
        self.ref: Optional[Point3] = None  # rank 3: interior point
        self._next_fid = 0

    def __repr__(self):
        return "Hull3(rank=%d, vertices=%d)" % (self.rank, len(self.vertices))

    def is_empty(self) -> bool:
        return self.rank < 0

    @property
    def vertices(self) -> List[Point3]:
        if self.rank < 3:
            return list(self.flat)
        if self._verts is None:
            used = sorted({i for f in self.faces.values()
                           for i in (f.a, f.b, f.c)})
            self._verts = [self.pts[i] for i in used]
        return self._verts

    def support(self, d: Vec3):
        """Max of d . v over the vertices, with one attaining vertex."""
        best = None
        best_v = None
        for v in self.vertices:
            s = dotp3(d, v)
            if best is None or s > best:
                best, best_v = s, v
        return best, best_v

    def contains(self, p: Point3) -> int:
        """+1 strictly inside, 0 on the boundary, -1 outside (or empty)."""
        if self.rank < 0:
            return -1
        if self.rank == 0:
            return 0 if p == self.flat[0] else -1
        if self.rank == 1:
            a, b = self.flat
            u = sub3(b, a)
            w = sub3(p, a)
            if cross3(u, w) != (0, 0, 0):
                return -1
            s = dot3(w, u)
            return 0 if 0 <= s <= dot3(u, u) else -1
        if self.rank == 2:
            n, off = self.plane
            if dotp3(n, p) != off:
                return -1
            ring = self.flat
            for i in range(len(ring)):
                a, b = ring[i], ring[(i + 1) % len(ring)]
                if dot3(cross3(sub3(b, a), sub3(p, a)), n) < 0:
                    return -1
            return 0
        on_boundary = False
        for f in self.faces.values():
            v = dotp3(f.normal, p) - f.offset
            if v > 0:
                return -1
            if v == 0:
                on_boundary = True
        return 0 if on_boundary else 1

    # -- construction -----------------------------------------------------

    def _copy(self) -> "Hull3":
        h = Hull3()
        h.rank = self.rank
        h.flat = list(self.flat)
        h.plane = self.plane
        h.pts = list(self.pts)
        h.faces = dict(self.faces)
        h.ref = self.ref
        h._next_fid = self._next_fid
        return h

    def _add_face(self, ai: int, bi: int, ci: int) -> None:
        a, b, c = self.pts[ai], self.pts[bi], self.pts[ci]
        n = reduce3(cross3(sub3(b, a), sub3(c, a)))
        off = dotp3(n, a)
        if dotp3(n, self.ref) > off:
            ai, bi, ci = ai, ci, bi
            n = (-n[0], -n[1], -n[2])
            off = -off
        self.faces[self._next_fid] = Face3(ai, bi, ci, n, off)
        self._next_fid += 1
        self._verts = None

    def _lift(self, p: Point3) -> "Hull3":
        """Raise the rank: p is affinely independent of the current flat."""
        h = Hull3()
        if self.rank == 0:
            h.rank = 1
            h.flat = [self.flat[0], p]
            return h
        if self.rank == 1:
            a, b = self.flat
            n = reduce3(cross3(sub3(b, a), sub3(p, a)))
            h.rank = 2
            h.plane = (n, dotp3(n, a))
            h.flat = _planar_ring([a, b, p], n)
            return h
        # planar polygon grows a tent with apex p
        ring = self.flat
        h.rank = 3
        h.pts = list(ring) + [p]
        r0, r1, r2 = ring[0], ring[1], ring[2]
        h.ref = Point3((r0.x + r1.x + r2.x + p.x) / 4,
                       (r0.y + r1.y + r2.y + p.y) / 4,
                       (r0.z + r1.z + r2.z + p.z) / 4)
        m = len(ring)
        apex = m
        for i in range(1, m - 1):
            h._add_face(0, i, i + 1)
        for i in range(m):
            h._add_face(i, (i + 1) % m, apex)
        return h

    def _insert_full(self, p: Point3) -> "Hull3":
        visible = []
        for fid, f in self.faces.items():
            if dotp3(f.normal, p) > f.offset:
                visible.append(fid)
        if not visible:
            return self          # inside or on the boundary
        h = self._copy()
        edge_face = {}
        for fid, f in h.faces.items():
            for a, b in ((f.a, f.b), (f.b, f.c), (f.c, f.a)):
                edge_face[(a, b)] = fid
        vis = set(visible)
        horizon = []
        for fid in visible:
            f = h.faces[fid]
            for a, b in ((f.a, f.b), (f.b, f.c), (f.c, f.a)):
                if edge_face[(b, a)] not in vis:
                    horizon.append((a, b))
        for fid in visible:
            del h.faces[fid]
        h.pts.append(p)
        pi = len(h.pts) - 1
        for a, b in horizon:
            h._add_face(a, b, pi)
        return h

    def insert(self, p: Point3) -> "Hull3":
        if self.rank < 0:
            h = Hull3()
            h.rank = 0
            h.flat = [p]
            return h
        if self.rank == 3:
            return self._insert_full(p)
        side = self.contains(p)
        if self.rank == 2 and side == -1 and dotp3(self.plane[0], p) == self.plane[1]:
            h = Hull3()
            h.rank = 2
            h.plane = self.plane
            h.flat = _planar_ring(self.flat + [p], self.plane[0])
            return h
        if side >= 0:
            return self
        if self.rank == 1:
            a, b = self.flat
            u = sub3(b, a)
            if cross3(u, sub3(p, a)) == (0, 0, 0):
                h = Hull3()
                h.rank = 1
                h.flat = [p, b] if dot3(sub3(p, a), u) < 0 else [a, p]
                return h
        return self._lift(p)


def convex_hull3(points) -> Hull3:
    """Exact convex hull of the points, degenerate ranks included."""
    h = Hull3()
    for p in points:
        h = h.insert(p)
    return h


def hull3_insert(h: Hull3, p: Point3) -> Hull3:
    """Hull of h's point set plus p; h itself is left untouched."""
    return h.insert(p)

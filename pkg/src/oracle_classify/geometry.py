"""Exact planar primitives: rational points, directions, lines, convex hulls.

Everything here is exact.  Coordinates are arbitrary-precision rationals
(gmpy2.mpq when available), directions are reduced integer vectors compared
by angle without any trigonometry, and predicates return certain signs.
Float shortcuts live in the callers, never here.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rational

from .errors import EmptyHullError, GeometryError, PointInsideHullError

ZERO = Rational(0)
ONE = Rational(1)


def R(value) -> Rational:
    """Coerce ints, strings, Fractions and floats to an exact rational.

    Floats convert exactly (every float is a dyadic rational); decimal and
    ``p/q`` strings parse exactly through fractions.Fraction.
    """
    if isinstance(value, float):
        return Rational(Fraction(value))
    if isinstance(value, str):
        return Rational(Fraction(value))
    return Rational(value)


def parse_number(text: str) -> Rational:
    """Parse ``p/q``, integer, or decimal literals exactly."""
    return R(text.strip())


class Point2(NamedTuple):
    x: "Rational"
    y: "Rational"


class Point3(NamedTuple):
    x: "Rational"
    y: "Rational"
    z: "Rational"


def point2(x, y) -> Point2:
    return Point2(R(x), R(y))


def point3(x, y, z) -> Point3:
    return Point3(R(x), R(y), R(z))


class Direction2(NamedTuple):
    """An oriented direction stored as a reduced integer vector.

    (a, b) with gcd(|a|, |b|) == 1; positive scalings collapse to one
    representative, so equality of tuples is equality of directions.
    """

    a: int
    b: int


def direction2(dx, dy) -> Direction2:
    """Reduce a rational/integer vector to its canonical Direction2."""
    if isinstance(dx, int) and isinstance(dy, int):
        na, nb = dx, dy
    else:
        dx = R(dx)
        dy = R(dy)
        # (p/q, r/s) is positively proportional to (p*s, r*q): q, s > 0.
        na = int(dx.numerator) * int(dy.denominator)
        nb = int(dy.numerator) * int(dx.denominator)
    if na == 0 and nb == 0:
        raise GeometryError("zero vector has no direction")
    g = math.gcd(abs(na), abs(nb))
    return Direction2(na // g, nb // g)


def perp_ccw(d: Direction2) -> Direction2:
    return Direction2(-d.b, d.a)


def perp_cw(d: Direction2) -> Direction2:
    return Direction2(d.b, -d.a)


def opposite(d: Direction2) -> Direction2:
    return Direction2(-d.a, -d.b)


def _half(d: Direction2) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2*pi), measuring from (1, 0).
    if d.b > 0 or (d.b == 0 and d.a > 0):
        return 0
    return 1


def cross_dd(u: Direction2, v: Direction2) -> int:
    return u.a * v.b - u.b * v.a


def dot_dd(u: Direction2, v: Direction2) -> int:
    return u.a * v.a + u.b * v.b


def angular_less(u: Direction2, v: Direction2) -> bool:
    """Strict angular order starting at direction (1, 0), counterclockwise."""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu < hv
    return cross_dd(u, v) > 0


def angular_cmp(u: Direction2, v: Direction2) -> int:
    if u == v:
        return 0
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = cross_dd(u, v)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0  # same direction, different representative cannot happen (reduced)


def angular_key(d: Direction2) -> tuple:
    """Exact sort key matching angular_cmp: key(u) < key(v) iff u before v.

    Within an open half-turn the angle grows as -a/b grows; the half start
    (b == 0) sorts first via the middle tag.  Injective on reduced
    directions, so bisection by key finds exact positions.
    """
    if d.b == 0:
        return (0 if d.a > 0 else 1, 0, ZERO)
    return (0 if d.b > 0 else 1, 1, Rational(-d.a) / d.b)


def direction_angle_float(d: Direction2) -> float:
    """Float angle in [0, 2*pi): ordering hint only, never a predicate."""
    a, b = d.a, d.b
    bl = max(a.bit_length(), b.bit_length())
    if bl > 512:
        # scale huge components into float range; floor shift keeps signs
        sh = bl - 512
        a >>= sh
        b >>= sh
    ang = math.atan2(float(b), float(a))
    if ang < 0:
        ang += 2.0 * math.pi
    return ang


def ccw_between(lo: Direction2, hi: Direction2, d: Direction2) -> bool:
    """True when d lies on the closed ccw arc from lo to hi."""
    if lo == hi:
        return d == lo
    lo_le_hi = angular_less(lo, hi)
    if lo_le_hi:
        return not angular_less(d, lo) and not angular_less(hi, d)
    # Arc wraps through (1, 0).
    return not angular_less(d, lo) or not angular_less(hi, d)


def orient2(a: Point2, b: Point2, c: Point2) -> int:
    """Sign of the signed area of (a, b, c): +1 ccw, -1 cw, 0 collinear."""
    det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    if det > 0:
        return 1
    if det < 0:
        return -1
    return 0


class Line2(NamedTuple):
    """The line a*x + b*y = c."""

    a: "Rational"
    b: "Rational"
    c: "Rational"


class Halfplane2(NamedTuple):
    """The closed halfplane a*x + b*y <= c."""

    a: "Rational"
    b: "Rational"
    c: "Rational"

    def value(self, p: Point2):
        return self.a * p.x + self.b * p.y - self.c

    def contains(self, p: Point2) -> bool:
        return self.value(p) <= 0

    def boundary(self) -> Line2:
        return Line2(self.a, self.b, self.c)

    def outward_normal(self) -> Direction2:
        return direction2(self.a, self.b)


class Halfspace3(NamedTuple):
    """The closed halfspace a*x + b*y + c*z <= d."""

    a: "Rational"
    b: "Rational"
    c: "Rational"
    d: "Rational"

    def value(self, p: Point3):
        return self.a * p.x + self.b * p.y + self.c * p.z - self.d

    def contains(self, p: Point3) -> bool:
        return self.value(p) <= 0


def halfplane_through(normal: Direction2, p: Point2) -> Halfplane2:
    """Closed halfplane with the given outward normal whose boundary passes
    through p: {x : normal . x <= normal . p}."""
    a = R(normal.a)
    b = R(normal.b)
    return Halfplane2(a, b, a * p.x + b * p.y)


def line_intersection(l1: Line2, l2: Line2) -> Point2 | None:
    """Intersection point of two lines, or None when parallel."""
    det = l1.a * l2.b - l1.b * l2.a
    if det == 0:
        return None
    x = (l1.c * l2.b - l1.b * l2.c) / det
    y = (l1.a * l2.c - l1.c * l2.a) / det
    return Point2(x, y)


def side_of_line(line: Line2, p: Point2) -> int:
    v = line.a * p.x + line.b * p.y - line.c
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


class Hull2:
    """A convex polygon: counterclockwise, strictly convex vertex list.

    Degenerate hulls are allowed: 0 vertices (empty), 1 (a point),
    2 (a segment).  No three vertices are ever collinear.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices: list[Point2]):
        self.vertices = vertices

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, Hull2) and self.vertices == other.vertices

    def __repr__(self):
        return f"Hull2({self.vertices!r})"

    def is_empty(self) -> bool:
        return not self.vertices

    def contains(self, p: Point2) -> int:
        """+1 strictly inside, 0 on the boundary, -1 outside."""
        vs = self.vertices
        m = len(vs)
        if m == 0:
            return -1
        if m == 1:
            return 0 if p == vs[0] else -1
        if m == 2:
            if orient2(vs[0], vs[1], p) != 0:
                return -1
            lo, hi = sorted(vs)
            return 0 if lo <= p <= hi else -1
        for i in range(m):
            if orient2(vs[i], vs[(i + 1) % m], p) < 0:
                return -1
        for i in range(m):
            if orient2(vs[i], vs[(i + 1) % m], p) == 0:
                return 0
        return 1

    def support(self, d: Direction2) -> tuple[int, "Rational"]:
        """Index and value of the vertex maximizing d . v (first max wins)."""
        vs = self.vertices
        if not vs:
            raise EmptyHullError("support of empty hull")
        da = R(d.a)
        db = R(d.b)
        best_i = 0
        best = da * vs[0].x + db * vs[0].y
        for i in range(1, len(vs)):
            val = da * vs[i].x + db * vs[i].y
            if val > best:
                best = val
                best_i = i
        return best_i, best

    def tangent_halfplane(self, d: Direction2) -> Halfplane2:
        """Supporting halfplane {x : d . x <= max d . v} containing the hull."""
        _, val = self.support(d)
        return Halfplane2(R(d.a), R(d.b), val)


def tangent_line_in_direction(h: Hull2, d: Direction2) -> Line2:
    """Supporting line of h with outer normal d."""
    return h.tangent_halfplane(d).boundary()


def convex_hull2(points) -> Hull2:
    """Strictly convex hull (Andrew's monotone chain, exact, collinear
    mid-edge points dropped)."""
    pts = sorted(set(points))
    if len(pts) <= 1:
        return Hull2(pts)
    if len(pts) == 2:
        return Hull2(pts)

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and orient2(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    verts = lower[:-1] + upper[:-1]
    if len(verts) < 2:  # all collinear: keep the two extremes
        return Hull2([pts[0], pts[-1]])
    return Hull2(verts)


def hull_insert(h: Hull2, p: Point2) -> Hull2:
    """Hull of h's vertices plus p.  Equals recomputing from scratch."""
    if h.contains(p) >= 0:
        return h
    return convex_hull2(h.vertices + [p])


def _dir_from_points(p: Point2, w: Point2) -> Direction2:
    return direction2(p.x - w.x, p.y - w.y)


def tangency_vertices(h: Hull2, p: Point2) -> tuple[int, int]:
    """Indices (i_min, i_max) of the vertices attaining the angularly extreme
    difference directions p - v.  p must be strictly outside h."""
    vs = h.vertices
    if not vs:
        raise GeometryError("tangents of empty hull")
    i_min = i_max = 0
    dirs = [(p.x - w.x, p.y - w.y) for w in vs]
    # The difference directions span less than a half circle, so pairwise
    # cross-product signs give a consistent angular order.
    for i in range(1, len(vs)):
        ux, uy = dirs[i]
        ax, ay = dirs[i_max]
        if ax * uy - ay * ux > 0:  # dirs[i] ccw of current max
            i_max = i
        bx, by = dirs[i_min]
        if bx * uy - by * ux < 0:  # dirs[i] cw of current min
            i_min = i
    return i_min, i_max


class Arc(NamedTuple):
    """Closed counterclockwise arc of directions from lo to hi.

    lo == hi denotes the single-direction arc.  Visibility arcs never exceed
    a half circle.
    """

    lo: Direction2
    hi: Direction2

    def contains(self, d: Direction2) -> bool:
        return ccw_between(self.lo, self.hi, d)

    def contains_arc(self, other: "Arc") -> bool:
        if self.lo == self.hi:
            return other.lo == self.lo and other.hi == self.lo
        if not self.contains(other.lo) or not self.contains(other.hi):
            return False
        # Both endpoints inside; reject the case where other exits and
        # re-enters, which for arcs requires other to wrap past self.hi:
        # walking ccw from self.lo, other.lo must come no later than other.hi.
        return offset_cmp(self.lo, other.lo, other.hi) <= 0


def _offset_class(base: Direction2, d: Direction2) -> int:
    # Quadrant-style class of the ccw offset of d from base:
    # 0 at zero, 1 in (0, pi), 2 at exactly pi, 3 in (pi, 2*pi).
    if d == base:
        return 0
    c = cross_dd(base, d)
    if c > 0:
        return 1
    if c == 0:
        return 2
    return 3


def offset_cmp(base: Direction2, u: Direction2, v: Direction2) -> int:
    """Compare ccw angular offsets from base: -1, 0, +1 as u comes before,
    with, or after v when walking ccw from base."""
    cu = _offset_class(base, u)
    cv = _offset_class(base, v)
    if cu != cv:
        return -1 if cu < cv else 1
    if cu in (0, 2):
        return 0
    # Same open half circle relative to base: cross sign orders offsets.
    c = cross_dd(u, v)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def visibility_interval(h: Hull2, p: Point2) -> Arc:
    """Arc of outer normals of lines separating p from hull h.

    A direction d is in the arc when the halfplane {x : d.x <= d.p} contains
    every hull vertex; the boundary line passes through p.  Raises
    PointInsideHullError when p is inside or on h.
    """
    if h.contains(p) >= 0:
        raise PointInsideHullError(f"point {p} not strictly outside hull")
    vs = h.vertices
    if len(vs) == 1:
        u = _dir_from_points(p, vs[0])
        return Arc(perp_cw(u), perp_ccw(u))
    i_min, i_max = tangency_vertices(h, p)
    u_min = _dir_from_points(p, vs[i_min])
    u_max = _dir_from_points(p, vs[i_max])
    return Arc(perp_cw(u_max), perp_ccw(u_min))


def scale_to_ints(points) -> tuple[list[tuple[int, int]], int]:
    """Map rational points to a common integer grid: (int pairs, denominator).

    point == (ix / L, iy / L) exactly for each returned pair.
    """
    L = 1
    for p in points:
        L = math.lcm(L, int(p.x.denominator), int(p.y.denominator))
    out = []
    for p in points:
        out.append((int(p.x.numerator) * (L // int(p.x.denominator)),
                    int(p.y.numerator) * (L // int(p.y.denominator))))
    return out, L


def convex_hull2_ints(int_points: list[tuple[int, int]]) -> list[int]:
    """Indices of strict hull vertices of integer points, ccw from the
    lexicographic minimum.  Fast path used by bulk statistics."""
    order = sorted(range(len(int_points)), key=lambda i: int_points[i])
    uniq = []
    prev = None
    for i in order:
        if int_points[i] != prev:
            uniq.append(i)
            prev = int_points[i]
    if len(uniq) <= 2:
        return uniq

    def chain(idx_seq):
        out = []
        for i in idx_seq:
            px, py = int_points[i]
            while len(out) >= 2:
                ax, ay = int_points[out[-2]]
                bx, by = int_points[out[-1]]
                if (bx - ax) * (py - ay) - (by - ay) * (px - ax) <= 0:
                    out.pop()
                else:
                    break
            out.append(i)
        return out

    lower = chain(uniq)
    upper = chain(reversed(uniq))
    verts = lower[:-1] + upper[:-1]
    if len(verts) < 2:
        return [uniq[0], uniq[-1]]
    return verts

"""Separation oracles over concrete convex bodies.

A query either lands inside the body or comes back with a closed separating
halfplane (halfspace in 3d) that contains the whole body while the query
point sits on its boundary or strictly beyond it.  All arithmetic is exact,
so repeated queries are bit-for-bit reproducible.

Boundary convention: membership is closed (a point on the boundary is
Inside), and a separator through the query point still counts as separating.
Consumers must classify by the answer kind, never by re-testing the point
against the separator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

from .errors import BadBodyError
from .geometry import (
    Halfplane2,
    Halfspace3,
    Hull2,
    Point2,
    Point3,
    R,
    convex_hull2,
    parse_number,
)


@dataclass(frozen=True)
class Inside:
    """The query point belongs to the closed body."""


@dataclass(frozen=True)
class Outside:
    """The query point is separated from the body.

    ``separator`` is a closed halfplane (or halfspace) containing the body;
    the query point evaluates >= 0 against it.
    """

    separator: Union[Halfplane2, Halfspace3]


INSIDE = Inside()

OracleAnswer = Union[Inside, Outside]


def disk_query(center: Point2, radius_sq, p: Point2) -> OracleAnswer:
    """Exact membership in the closed disk |x - center|^2 <= radius_sq.

    The separator for an outside point has normal p - center and passes
    through p itself; the disk lies strictly inside it.
    """
    dx = p.x - center.x
    dy = p.y - center.y
    dist_sq = dx * dx + dy * dy
    if dist_sq <= radius_sq:
        return INSIDE
    # (x - center) . (p - center) <= dist_sq, rewritten in x.
    c = dx * center.x + dy * center.y + dist_sq
    return Outside(Halfplane2(dx, dy, c))


def polygon_query(hull: Hull2, p: Point2) -> OracleAnswer:
    """Exact membership in a closed convex polygon.

    For an outside point the separator is the supporting halfplane of the
    first violated edge in counter-clockwise order.  Degenerate hulls (a
    single vertex or a segment) have no proper edges; there the separator
    is the halfplane normal to p's offset from its nearest body point,
    supported at that nearest point.
    """
    if hull.contains(p) >= 0:
        return INSIDE
    verts = hull.vertices
    if len(verts) >= 3:
        for i, a in enumerate(verts):
            b = verts[(i + 1) % len(verts)]
            # outward normal of a ccw edge is its clockwise perpendicular
            nx = b.y - a.y
            ny = a.x - b.x
            c = nx * a.x + ny * a.y
            if nx * p.x + ny * p.y > c:
                return Outside(Halfplane2(nx, ny, c))
        raise AssertionError("point outside polygon violates no edge")
    if len(verts) == 2:
        a, b = verts
        dx = b.x - a.x
        dy = b.y - a.y
        t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy)
        t = min(max(t, R(0)), R(1))
        nearest = Point2(a.x + t * dx, a.y + t * dy)
    else:
        nearest = verts[0]
    ux = p.x - nearest.x
    uy = p.y - nearest.y
    return Outside(Halfplane2(ux, uy, ux * nearest.x + uy * nearest.y))


def ellipse_query(center: Point2, m11, m12, m22, p: Point2) -> OracleAnswer:
    """Exact membership in {x : (x-c)^T M (x-c) <= 1} for symmetric M.

    M must be positive definite (leading minors positive).  The separator
    for an outside point is the gradient halfplane through p; it contains
    the ellipse by Cauchy-Schwarz in the M inner product.
    """
    if not (m11 > 0 and m11 * m22 - m12 * m12 > 0):
        raise BadBodyError("ellipse matrix is not positive definite")
    dx = p.x - center.x
    dy = p.y - center.y
    gx = m11 * dx + m12 * dy
    gy = m12 * dx + m22 * dy
    value = dx * gx + dy * gy
    if value <= 1:
        return INSIDE
    return Outside(Halfplane2(gx, gy, gx * center.x + gy * center.y + value))


def ball3_query(center: Point3, radius_sq, p: Point3) -> OracleAnswer:
    """Exact membership in the closed ball; separator through p as for disks."""
    dx = p.x - center.x
    dy = p.y - center.y
    dz = p.z - center.z
    dist_sq = dx * dx + dy * dy + dz * dz
    if dist_sq <= radius_sq:
        return INSIDE
    d = dx * center.x + dy * center.y + dz * center.z + dist_sq
    return Outside(Halfspace3(dx, dy, dz, d))


def polytope3_query(halfspaces: Sequence[Halfspace3], p: Point3) -> OracleAnswer:
    """Exact membership in an intersection of closed halfspaces.

    The separator is the first violated defining halfspace, which contains
    the polytope by construction.
    """
    for h in halfspaces:
        if h.value(p) > 0:
            return Outside(h)
    return INSIDE


class DiskBody2:
    """Closed disk given by center and squared radius."""

    dim = 2

    def __init__(self, center: Point2, radius_sq):
        radius_sq = R(radius_sq)
        if radius_sq <= 0:
            raise BadBodyError("disk needs a positive squared radius")
        self.center = center
        self.radius_sq = radius_sq

    def query(self, p: Point2) -> OracleAnswer:
        return disk_query(self.center, self.radius_sq, p)

    def contains(self, p: Point2) -> bool:
        dx = p.x - self.center.x
        dy = p.y - self.center.y
        return dx * dx + dy * dy <= self.radius_sq

    def to_text(self) -> str:
        return "disk %s %s %s" % (self.center.x, self.center.y, self.radius_sq)


class PolygonBody2:
    """Closed convex polygon; input points are normalized to their hull."""

    dim = 2

    def __init__(self, points: Sequence[Point2]):
        if not points:
            raise BadBodyError("polygon needs at least one vertex")
        self.hull = convex_hull2(points)

    def query(self, p: Point2) -> OracleAnswer:
        return polygon_query(self.hull, p)

    def contains(self, p: Point2) -> bool:
        return self.hull.contains(p) >= 0

    def to_text(self) -> str:
        coords = " ".join("%s %s" % (v.x, v.y) for v in self.hull.vertices)
        return "polygon " + coords


class EllipseBody2:
    """Closed ellipse (x-c)^T M (x-c) <= 1 with symmetric positive definite M."""

    dim = 2

    def __init__(self, center: Point2, m11, m12, m22):
        m11, m12, m22 = R(m11), R(m12), R(m22)
        if not (m11 > 0 and m11 * m22 - m12 * m12 > 0):
            raise BadBodyError("ellipse matrix is not positive definite")
        self.center = center
        self.m11, self.m12, self.m22 = m11, m12, m22

    def query(self, p: Point2) -> OracleAnswer:
        return ellipse_query(self.center, self.m11, self.m12, self.m22, p)

    def contains(self, p: Point2) -> bool:
        dx = p.x - self.center.x
        dy = p.y - self.center.y
        value = dx * (self.m11 * dx + self.m12 * dy) + dy * (self.m12 * dx + self.m22 * dy)
        return value <= 1

    def to_text(self) -> str:
        return "ellipse %s %s %s %s %s" % (
            self.center.x, self.center.y, self.m11, self.m12, self.m22)


class BallBody3:
    """Closed ball given by center and squared radius."""

    dim = 3

    def __init__(self, center: Point3, radius_sq):
        radius_sq = R(radius_sq)
        if radius_sq <= 0:
            raise BadBodyError("ball needs a positive squared radius")
        self.center = center
        self.radius_sq = radius_sq

    def query(self, p: Point3) -> OracleAnswer:
        return ball3_query(self.center, self.radius_sq, p)

    def contains(self, p: Point3) -> bool:
        dx = p.x - self.center.x
        dy = p.y - self.center.y
        dz = p.z - self.center.z
        return dx * dx + dy * dy + dz * dz <= self.radius_sq

    def to_text(self) -> str:
        return "ball3 %s %s %s %s" % (
            self.center.x, self.center.y, self.center.z, self.radius_sq)


class PolytopeBody3:
    """Intersection of closed halfspaces a*x + b*y + c*z <= d."""

    dim = 3

    def __init__(self, halfspaces: Sequence[Halfspace3]):
        if not halfspaces:
            raise BadBodyError("polytope needs at least one halfspace")
        self.halfspaces = tuple(halfspaces)

    def query(self, p: Point3) -> OracleAnswer:
        return polytope3_query(self.halfspaces, p)

    def contains(self, p: Point3) -> bool:
        return all(h.contains(p) for h in self.halfspaces)

    def to_text(self) -> str:
        rows = "\n".join("%s %s %s %s" % (h.a, h.b, h.c, h.d) for h in self.halfspaces)
        return "polytope3\n" + rows


Body = Union[DiskBody2, PolygonBody2, EllipseBody2, BallBody3, PolytopeBody3]


class InstrumentedOracle:
    """Counts and logs queries against a wrapped body.

    Single-owner: one classifier run per wrapper.  The log keeps the query
    point and the answer kind, enough to replay against the bare body.
    """

    def __init__(self, inner):
        self.inner = inner
        self.log: List[Tuple[object, str]] = []

    @property
    def count(self) -> int:
        return len(self.log)

    @property
    def dim(self) -> int:
        return self.inner.dim

    def query(self, p) -> OracleAnswer:
        answer = self.inner.query(p)
        kind = "inside" if isinstance(answer, Inside) else "outside"
        self.log.append((p, kind))
        return answer

    def contains(self, p) -> bool:
        # ground-truth access for certification; not a counted query
        return self.inner.contains(p)


def instrument(body) -> InstrumentedOracle:
    return InstrumentedOracle(body)


def stats(io: InstrumentedOracle) -> Tuple[int, Tuple[Tuple[object, str], ...]]:
    return io.count, tuple(io.log)


def parse_body_text(text: str) -> Body:
    """Parse the one-body-per-file description format.

    ``disk cx cy r2`` / ``polygon x1 y1 x2 y2 ...`` /
    ``ellipse cx cy m11 m12 m22`` / ``ball3 cx cy cz r2`` /
    ``polytope3`` followed by one ``a b c d`` row per halfspace.
    Numbers are integers, fractions ``p/q``, or decimals, parsed exactly.
    Blank lines and ``#`` comments are ignored.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise BadBodyError("empty body description")
    head = lines[0].split()
    kind = head[0]
    args = [parse_number(tok) for tok in head[1:]]
    if kind == "disk":
        if len(args) != 3 or len(lines) != 1:
            raise BadBodyError("disk takes exactly: cx cy r2")
        return DiskBody2(Point2(args[0], args[1]), args[2])
    if kind == "polygon":
        if len(lines) != 1 or not args or len(args) % 2 != 0:
            raise BadBodyError("polygon takes an even list: x1 y1 x2 y2 ...")
        pts = [Point2(args[i], args[i + 1]) for i in range(0, len(args), 2)]
        return PolygonBody2(pts)
    if kind == "ellipse":
        if len(args) != 5 or len(lines) != 1:
            raise BadBodyError("ellipse takes exactly: cx cy m11 m12 m22")
        return EllipseBody2(Point2(args[0], args[1]), args[2], args[3], args[4])
    if kind == "ball3":
        if len(args) != 4 or len(lines) != 1:
            raise BadBodyError("ball3 takes exactly: cx cy cz r2")
        return BallBody3(Point3(args[0], args[1], args[2]), args[3])
    if kind == "polytope3":
        if args:
            raise BadBodyError("polytope3 header takes no numbers")
        if len(lines) == 1:
            raise BadBodyError("polytope3 needs at least one halfspace row")
        rows = []
        for line in lines[1:]:
            toks = line.split()
            if len(toks) != 4:
                raise BadBodyError("halfspace rows are: a b c d")
            a, b, c, d = (parse_number(t) for t in toks)
            rows.append(Halfspace3(a, b, c, d))
        return PolytopeBody3(rows)
    raise BadBodyError("unknown body kind %r" % kind)


def load_body(path) -> Body:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_body_text(fh.read())


def save_body(body: Body, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(body.to_text() + "\n")

import math
import random
from fractions import Fraction
from functools import cmp_to_key

import pytest

from oracle_classify.errors import GeometryError, PointInsideHullError
from oracle_classify import geometry as g
from oracle_classify.geometry import (
    Arc,
    Direction2,
    Hull2,
    Line2,
    R,
    angular_cmp,
    angular_less,
    ccw_between,
    convex_hull2,
    convex_hull2_ints,
    direction2,
    halfplane_through,
    hull_insert,
    line_intersection,
    offset_cmp,
    opposite,
    orient2,
    parse_number,
    perp_ccw,
    perp_cw,
    point2,
    scale_to_ints,
    side_of_line,
    visibility_interval,
)


def rnd_point(rng, span=20, denom=8):
    return point2(Fraction(rng.randint(-span, span), rng.randint(1, denom)),
                  Fraction(rng.randint(-span, span), rng.randint(1, denom)))


def all_directions(limit):
    """Every reduced integer direction with |a|, |b| <= limit."""
    out = set()
    for a in range(-limit, limit + 1):
        for b in range(-limit, limit + 1):
            if a == 0 and b == 0:
                continue
            out.add(direction2(a, b))
    return sorted(out)


def membership_sign(points, p):
    """Independent membership oracle: +1 strictly inside conv(points),
    0 on the boundary, -1 outside.

    Tries every candidate separating direction: perpendiculars of point
    pairs and the offsets p - s.  The closest-point direction is always
    among them, so absence of a strict separator certifies containment.
    """
    cands = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    for i, s in enumerate(points):
        for t in points[i + 1:]:
            if s != t:
                cands.append((s.y - t.y, t.x - s.x))
                cands.append((t.y - s.y, s.x - t.x))
        if s != p:
            cands.append((p.x - s.x, p.y - s.y))
    on_boundary = False
    for ux, uy in cands:
        m = max(ux * s.x + uy * s.y for s in points)
        v = ux * p.x + uy * p.y
        if v > m:
            return -1
        if v == m:
            on_boundary = True
    return 0 if on_boundary else 1


def gift_wrap(points):
    """Independent strict-hull construction (Jarvis march, exact)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    hull = [pts[0]]
    while True:
        cur = hull[-1]
        cand = None
        for p in pts:
            if p == cur:
                continue
            if cand is None:
                cand = p
                continue
            o = orient2(cur, cand, p)
            if o < 0:
                cand = p
            elif o == 0:
                # collinear: keep the farther one so midpoints drop out
                dc = (cand.x - cur.x) ** 2 + (cand.y - cur.y) ** 2
                dp = (p.x - cur.x) ** 2 + (p.y - cur.y) ** 2
                if dp > dc:
                    cand = p
        if cand == hull[0]:
            break
        hull.append(cand)
    if len(hull) == 2 and hull[0] > hull[1]:
        hull.reverse()
    return hull


def float_angle(d):
    a = math.atan2(d.b, d.a)
    return a + 2 * math.pi if a < 0 else a


def test_parse_number_exact():
    assert R(0.25) == Fraction(1, 4)
    assert parse_number("1/3") == Fraction(1, 3)
    assert parse_number(" -7 ") == -7
    assert parse_number("2.5") == Fraction(5, 2)
    assert R(Fraction(3, 7)) * 7 == 3
    # floats convert to their exact binary value, not the decimal shorthand
    assert R(0.1) == Fraction(0.1)
    assert R(0.1) != Fraction(1, 10)


def test_direction2_canonical():
    assert direction2(2, 4) == Direction2(1, 2)
    assert direction2(-3, 0) == Direction2(-1, 0)
    assert direction2(Fraction(1, 3), Fraction(1, 2)) == Direction2(2, 3)
    assert direction2(R("2/7"), R("-4/7")) == Direction2(1, -2)
    with pytest.raises(GeometryError):
        direction2(0, 0)
    d = Direction2(3, -5)
    assert opposite(opposite(d)) == d
    assert perp_cw(perp_ccw(d)) == d
    assert g.cross_dd(d, perp_ccw(d)) > 0 and g.cross_dd(d, perp_cw(d)) < 0


def test_angular_order_matches_float_angles():
    dirs = all_directions(6)
    rng = random.Random(4)
    shuffled = dirs[:]
    rng.shuffle(shuffled)
    shuffled.sort(key=cmp_to_key(angular_cmp))
    assert shuffled == sorted(dirs, key=float_angle)
    assert shuffled[0] == Direction2(1, 0)
    for u in dirs[::7]:
        assert not angular_less(u, u)
        for v in dirs[::11]:
            if u != v:
                assert angular_less(u, v) != angular_less(v, u)


def test_ccw_between_against_float():
    dirs = all_directions(4)
    rng = random.Random(11)
    for _ in range(300):
        lo, hi, d = rng.choice(dirs), rng.choice(dirs), rng.choice(dirs)
        got = ccw_between(lo, hi, d)
        if lo == hi:
            assert got == (d == lo)
            continue
        off = (float_angle(d) - float_angle(lo)) % (2 * math.pi)
        width = (float_angle(hi) - float_angle(lo)) % (2 * math.pi)
        want = d == lo or d == hi or off < width
        assert got == want, (lo, hi, d)


def test_offset_cmp_total_order():
    dirs = all_directions(4)
    rng = random.Random(5)
    for _ in range(200):
        base, u, v = rng.choice(dirs), rng.choice(dirs), rng.choice(dirs)
        ou = (float_angle(u) - float_angle(base)) % (2 * math.pi)
        ov = (float_angle(v) - float_angle(base)) % (2 * math.pi)
        if u == base:
            ou = 0.0
        if v == base:
            ov = 0.0
        want = 0 if u == v else (-1 if ou < ov else 1)
        assert offset_cmp(base, u, v) == want


def test_orient2_signs():
    a, b, c = point2(0, 0), point2(1, 0), point2(0, 1)
    assert orient2(a, b, c) == 1
    assert orient2(a, c, b) == -1
    assert orient2(a, b, point2(2, 0)) == 0


def test_lines_and_halfplanes():
    l1 = Line2(R(1), R(0), R(2))       # x = 2
    l2 = Line2(R(0), R(1), R(-1))      # y = -1
    assert line_intersection(l1, l2) == point2(2, -1)
    assert line_intersection(l1, Line2(R(2), R(0), R(0))) is None
    assert side_of_line(l1, point2(3, 5)) == 1
    assert side_of_line(l1, point2(2, 5)) == 0
    h = halfplane_through(Direction2(0, 1), point2(7, 3))  # y <= 3
    assert h.contains(point2(-10, 3))
    assert not h.contains(point2(0, R("31/10")))
    assert h.outward_normal() == Direction2(0, 1)


def test_convex_hull2_matches_gift_wrapping():
    rng = random.Random(42)
    for trial in range(60):
        n = rng.randint(1, 14)
        pts = [rnd_point(rng, span=6, denom=3) for _ in range(n)]
        if trial % 4 == 0:
            # force duplicates and collinear runs
            pts += pts[: n // 2]
            pts += [point2(k, k) for k in range(3)]
        h = convex_hull2(pts)
        assert h.vertices == gift_wrap(pts)
        m = len(h)
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    if i < j < k:
                        assert orient2(h.vertices[i], h.vertices[j],
                                       h.vertices[k]) == 1


def test_hull_contains_matches_membership_oracle():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(1, 10)
        pts = [rnd_point(rng, span=5, denom=2) for _ in range(n)]
        h = convex_hull2(pts)
        probes = [rnd_point(rng, span=6, denom=2) for _ in range(12)]
        probes += pts[:3]
        if len(pts) >= 2:  # edge midpoint lands on the boundary
            probes.append(point2((pts[0].x + pts[1].x) / 2,
                                 (pts[0].y + pts[1].y) / 2))
        for p in probes:
            assert h.contains(p) == membership_sign(pts, p), (pts, p)


def test_hull_insert_equals_recompute():
    rng = random.Random(13)
    pts = [rnd_point(rng, span=8, denom=4) for _ in range(40)]
    h = Hull2([])
    for i, p in enumerate(pts):
        h = hull_insert(h, p)
        assert h.vertices == convex_hull2(pts[: i + 1]).vertices


def test_support_and_tangent():
    h = convex_hull2([point2(0, 0), point2(4, 0), point2(4, 3), point2(0, 3)])
    i, val = h.support(Direction2(1, 0))
    assert val == 4 and h.vertices[i].x == 4
    t = h.tangent_halfplane(Direction2(0, -1))
    assert t.c == 0  # -y <= 0, i.e. the bottom edge
    for v in h.vertices:
        assert t.contains(v)
    line = g.tangent_line_in_direction(h, Direction2(1, 1))
    assert (line.a, line.b, line.c) == (1, 1, 7)  # touches (4, 3)
    with pytest.raises(g.EmptyHullError):
        g.tangent_line_in_direction(Hull2([]), Direction2(1, 0))


def arc_definition_holds(h, p, d):
    da, db = R(d.a), R(d.b)
    return all(da * (p.x - w.x) + db * (p.y - w.y) >= 0 for w in h.vertices)


def test_visibility_interval_definition():
    rng = random.Random(23)
    probe = all_directions(5)
    checked_single = checked_segment = 0
    for trial in range(50):
        n = rng.randint(1, 9)
        pts = [rnd_point(rng, span=5, denom=2) for _ in range(n)]
        if trial % 5 == 1:
            pts = [point2(k, 2 * k) for k in range(min(n, 4))]  # collinear
        h = convex_hull2(pts)
        for _ in range(6):
            p = rnd_point(rng, span=9, denom=2)
            if h.contains(p) >= 0:
                with pytest.raises(PointInsideHullError):
                    visibility_interval(h, p)
                continue
            arc = visibility_interval(h, p)
            if len(h) == 1:
                checked_single += 1
            elif len(h) == 2:
                checked_segment += 1
            for d in probe:
                assert arc.contains(d) == arc_definition_holds(h, p, d), \
                    (h.vertices, p, d)
            # both endpoints are supporting directions, not interior ones
            for end in (arc.lo, arc.hi):
                assert arc_definition_holds(h, p, end)
                ea, eb = R(end.a), R(end.b)
                assert any(ea * (p.x - w.x) + eb * (p.y - w.y) == 0
                           for w in h.vertices)
    assert checked_single and checked_segment


def test_visibility_interval_collinear_segment_is_half_circle():
    h = convex_hull2([point2(0, 0), point2(2, 0)])
    arc = visibility_interval(h, point2(5, 0))
    assert arc == Arc(Direction2(0, -1), Direction2(0, 1))
    assert arc.contains(Direction2(1, 0))
    assert not arc.contains(Direction2(-1, 0))


def test_arc_contains_arc():
    dirs = all_directions(3)
    rng = random.Random(31)

    def off(base, d):
        if d == base:
            return 0.0
        return (float_angle(d) - float_angle(base)) % (2 * math.pi)

    for _ in range(400):
        a = Arc(rng.choice(dirs), rng.choice(dirs))
        b = Arc(rng.choice(dirs), rng.choice(dirs))
        width_a = off(a.lo, a.hi)
        want = (off(a.lo, b.lo) <= off(a.lo, b.hi) <= width_a
                if a.lo != a.hi else b == a)
        assert a.contains_arc(b) == want, (a, b)
    full_minus = Arc(Direction2(1, 0), Direction2(1, -1))
    assert full_minus.contains_arc(Arc(Direction2(0, 1), Direction2(-1, 0)))
    assert not Arc(Direction2(0, 1), Direction2(-1, 0)).contains_arc(full_minus)


def test_scale_to_ints_roundtrip():
    pts = [point2(R("1/3"), R("-2/5")), point2(R("7/2"), 4)]
    ints, L = scale_to_ints(pts)
    assert L == 30
    for (ix, iy), p in zip(ints, pts):
        assert R(ix) / L == p.x and R(iy) / L == p.y


def test_int_hull_matches_rational_hull():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(1, 30)
        pts = [rnd_point(rng, span=7, denom=3) for _ in range(n)]
        ints, L = scale_to_ints(pts)
        idx = convex_hull2_ints(ints)
        got = [pts[i] for i in idx]
        want = convex_hull2(pts).vertices
        assert sorted(got) == sorted(want)
        if len(got) >= 3:
            m = len(got)
            assert all(orient2(got[i], got[(i + 1) % m], got[(i + 2) % m]) == 1
                       for i in range(m))

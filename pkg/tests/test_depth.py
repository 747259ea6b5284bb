"""Arc structure backends checked against a brute-force endpoint sweep."""

import random
from functools import cmp_to_key

import pytest

from oracle_classify.depth import NaiveArcSet, TreeArcSet, build
from oracle_classify.errors import ArcGrewError, EmptyArcSetError
from oracle_classify.geometry import (
    Arc,
    angular_cmp,
    angular_key,
    direction2,
)

BACKENDS = ["naive", "tree"]


def rnd_dir(rng, span=40):
    while True:
        a = rng.randint(-span, span)
        b = rng.randint(-span, span)
        if a or b:
            return direction2(a, b)


def rnd_arc(rng, span=40):
    lo = rnd_dir(rng, span)
    if rng.random() < 0.05:
        return Arc(lo, lo)
    return Arc(lo, rnd_dir(rng, span))


def brute_witness(arcs):
    """Smallest-rank endpoint direction of maximum depth, by direct counting."""
    endpoints = sorted({a.lo for a in arcs.values()} | {a.hi for a in arcs.values()},
                       key=angular_key)
    best = (-1, None)
    for d in endpoints:
        depth = sum(1 for a in arcs.values() if a.contains(d))
        if depth > best[0]:
            best = (depth, d)
    depth, d = best
    ids = sorted(k for k, a in arcs.items() if a.contains(d))
    return d, depth, ids


def test_angular_key_matches_angular_cmp():
    rng = random.Random(2)
    dirs = {rnd_dir(rng) for _ in range(300)}
    dirs |= {direction2(1, 0), direction2(0, 1), direction2(-1, 0), direction2(0, -1)}
    dirs = list(dirs)
    by_key = sorted(dirs, key=angular_key)
    by_cmp = sorted(dirs, key=cmp_to_key(angular_cmp))
    assert by_key == by_cmp
    keys = [angular_key(d) for d in by_key]
    assert len(set(keys)) == len(keys)  # injective on reduced directions


@pytest.mark.parametrize("backend", BACKENDS)
def test_build_trivial_examples(backend):
    disjoint = {
        1: Arc(direction2(1, 0), direction2(1, 1)),
        2: Arc(direction2(0, 1), direction2(-1, 1)),
        3: Arc(direction2(-1, -1), direction2(0, -1)),
    }
    s = build(disjoint, backend)
    _, depth, ids = s.max_depth_witness()
    assert depth == 1 and len(ids) == 1

    same = Arc(direction2(3, 4), direction2(-4, 3))
    s = build({i: same for i in range(5)}, backend)
    d, depth, ids = s.max_depth_witness()
    assert depth == 5 and ids == [0, 1, 2, 3, 4]
    assert d == same.lo  # lo enters first in angular rank order from lo


@pytest.mark.parametrize("backend", BACKENDS)
def test_single_and_overlapping_arcs(backend):
    wrap = Arc(direction2(-5, -1), direction2(5, 1))  # crosses the origin ray
    s = build({7: wrap}, backend)
    d, depth, ids = s.max_depth_witness()
    assert depth == 1 and ids == [7]
    assert d in (wrap.lo, wrap.hi)

    overlap = {
        1: Arc(direction2(1, 0), direction2(0, 1)),
        2: Arc(direction2(2, 1), direction2(-1, 2)),
    }
    s = build(overlap, backend)
    d, depth, ids = s.max_depth_witness()
    assert depth == 2 and ids == [1, 2]
    assert overlap[1].contains(d) and overlap[2].contains(d)


@pytest.mark.parametrize("backend", BACKENDS)
def test_random_arcs_match_brute_force(backend):
    rng = random.Random(11)
    for count in (200, 500):
        arcs = {i: rnd_arc(rng) for i in range(count)}
        s = build(arcs, backend)
        d, depth, ids = s.max_depth_witness()
        bd, bdepth, bids = brute_witness(arcs)
        assert (d, depth, ids) == (bd, bdepth, bids)


def shrink_of(rng, arc):
    for _ in range(8):
        d = rnd_dir(rng)
        if arc.contains(d):
            return Arc(arc.lo, d) if rng.random() < 0.5 else Arc(d, arc.hi)
    return Arc(arc.lo, arc.lo)


def test_random_op_sequences_keep_backends_identical():
    rng = random.Random(97)
    naive = NaiveArcSet()
    tree = TreeArcSet()
    live = {}
    next_id = 0
    for step in range(1500):
        r = rng.random()
        if live and r < 0.3:
            key = rng.choice(sorted(live))
            naive.delete(key)
            tree.delete(key)
            del live[key]
        elif live and r < 0.55:
            key = rng.choice(sorted(live))
            new = shrink_of(rng, live[key])
            naive.replace(key, new)
            tree.replace(key, new)
            live[key] = new
        else:
            arc = rnd_arc(rng)
            naive.insert(next_id, arc)
            tree.insert(next_id, arc)
            live[next_id] = arc
            next_id += 1
        if live:
            assert naive.max_depth_witness() == tree.max_depth_witness()
        if step % 150 == 0 and live:
            assert naive.max_depth_witness() == brute_witness(live)


@pytest.mark.parametrize("backend", BACKENDS)
def test_replace_only_shrinks(backend):
    arc = Arc(direction2(1, 0), direction2(0, 1))
    s = build({1: arc}, backend)
    with pytest.raises(ArcGrewError):
        s.replace(1, Arc(direction2(1, 0), direction2(-1, 1)))
    assert s.arcs[1] == arc  # failed replace leaves the structure alone
    assert s.max_depth_witness() == (direction2(1, 0), 1, [1])
    s.replace(1, Arc(direction2(1, 1), direction2(1, 2)))
    assert s.max_depth_witness()[1] == 1


@pytest.mark.parametrize("backend", BACKENDS)
def test_empty_and_bad_keys(backend):
    s = build({}, backend)
    with pytest.raises(EmptyArcSetError):
        s.max_depth()
    with pytest.raises(KeyError):
        s.delete(0)
    arc = Arc(direction2(2, 3), direction2(-1, 5))
    s.insert(0, arc)
    with pytest.raises(KeyError):
        s.insert(0, arc)
    s.delete(0)
    with pytest.raises(EmptyArcSetError):
        s.max_depth_witness()


@pytest.mark.parametrize("backend", BACKENDS)
def test_depth_never_increases_under_shrinks(backend):
    rng = random.Random(5)
    arcs = {i: rnd_arc(rng) for i in range(60)}
    s = build(arcs, backend)
    probes = [rnd_dir(rng) for _ in range(12)]
    last = [len(s.ids_at(d)) for d in probes]
    for _ in range(200):
        key = rng.choice(sorted(arcs))
        if rng.random() < 0.25:
            s.delete(key)
            del arcs[key]
            if not arcs:
                break
        else:
            new = shrink_of(rng, arcs[key])
            s.replace(key, new)
            arcs[key] = new
        now = [len(s.ids_at(d)) for d in probes]
        assert all(a <= b for a, b in zip(now, last))
        last = now

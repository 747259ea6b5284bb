"""Maximum-stabbing queries over a dynamic multiset of circular arcs.

Each unclassified point contributes one closed arc of outer-normal
directions; the depth of a direction is how many arcs contain it, and the
classifier repeatedly asks for a deepest direction.  Two backends answer
identically: a rebuild-and-sweep list (default) and a balanced randomized
tree with prefix-max augmentation for O(log n) updates.

Circular structure is flattened at the angular origin: an arc that wraps
past it contributes its opening event, its closing event, and one unit to
a global wrap counter standing in for the piece that covers the origin.
Depth at the k-th endpoint direction is then wrap + opens(<=k) - closes(<k),
and the maximum over the whole circle is attained at some opening endpoint,
so sweeping endpoint directions suffices.
"""

from __future__ import annotations

import random
from bisect import bisect_left, insort
from typing import Dict, Iterable, Iterator, List, Tuple, Union

import numpy as np

from .errors import ArcGrewError, EmptyArcSetError
from .geometry import Arc, Direction2, angular_cmp, angular_key, \
    direction_angle_float


def _is_wrap(arc: Arc) -> bool:
    return angular_cmp(arc.lo, arc.hi) > 0


def _angular_sorted(dirs: List[Direction2]) -> List[Direction2]:
    """Sort directions by angle: float presort, exact local repair.

    Float angles order all but near-coincident directions; one linear pass
    with the exact comparator fixes any local inversions, which certifies
    the whole order since the order is total.
    """
    if len(dirs) < 2:
        return dirs
    angles = np.fromiter((direction_angle_float(d) for d in dirs),
                         dtype=np.float64, count=len(dirs))
    order = np.argsort(angles, kind="stable")
    dirs = [dirs[i] for i in order]
    # the float angle is accurate to ~1e-15 rad, so only pairs closer than
    # the screening band can possibly be misordered
    suspect = np.nonzero(np.diff(angles[order]) <= 1e-9)[0]
    for i in suspect + 1:
        if angular_cmp(dirs[i - 1], dirs[i]) > 0:
            j = i
            while j > 0 and angular_cmp(dirs[j - 1], dirs[j]) > 0:
                dirs[j - 1], dirs[j] = dirs[j], dirs[j - 1]
                j -= 1
    return dirs


class _ArcSetBase:
    """Shared bookkeeping: the id -> arc map and the update protocol."""

    def __init__(self):
        self.arcs: Dict[int, Arc] = {}
        self._wrap = 0

    def __len__(self) -> int:
        return len(self.arcs)

    def __contains__(self, key) -> bool:
        return key in self.arcs

    def insert(self, key, arc: Arc) -> None:
        if key in self.arcs:
            raise KeyError("arc id %r already present" % (key,))
        self.arcs[key] = arc
        if _is_wrap(arc):
            self._wrap += 1
        self._add_event(arc.lo, 0)
        self._add_event(arc.hi, 1)

    def delete(self, key) -> None:
        arc = self.arcs.pop(key)
        if _is_wrap(arc):
            self._wrap -= 1
        self._remove_event(arc.lo, 0)
        self._remove_event(arc.hi, 1)

    def replace(self, key, arc: Arc) -> None:
        old = self.arcs[key]
        if not old.contains_arc(arc):
            raise ArcGrewError("replacement arc is not contained in the old arc")
        if arc == old:
            return
        self.arcs[key] = arc
        self._wrap += _is_wrap(arc) - _is_wrap(old)
        if arc.lo != old.lo:
            self._remove_event(old.lo, 0)
            self._add_event(arc.lo, 0)
        if arc.hi != old.hi:
            self._remove_event(old.hi, 1)
            self._add_event(arc.hi, 1)

    def ids_at(self, d: Direction2) -> List:
        """All ids whose arc contains d, in sorted id order.

        When d is one of the stored endpoint directions, containment reduces
        to integer comparisons of angular ranks, which avoids the exact
        predicate per arc on big sets.
        """
        arcs = self.arcs
        if len(arcs) > 64:
            rank = {e: i for i, e in enumerate(self._ordered_dirs())}
            rd = rank.get(d)
            if rd is not None:
                out = []
                for k, a in arcs.items():
                    rl = rank[a.lo]
                    rh = rank[a.hi]
                    if (rl <= rd <= rh) if rl <= rh else (rd >= rl or rd <= rh):
                        out.append(k)
                out.sort()
                return out
        return sorted(k for k, a in arcs.items() if a.contains(d))

    def max_depth_witness(self) -> Tuple[Direction2, int, List]:
        d, depth = self.max_depth()
        return d, depth, self.ids_at(d)

    def max_depth(self) -> Tuple[Direction2, int]:
        raise NotImplementedError

    def rebuild(self, arcs) -> None:
        """Replace the whole contents in linear time.

        Cheaper than itemwise updates when a large fraction of the arcs
        changed at once; answers are identical either way.
        """
        items: Iterable = arcs.items() if hasattr(arcs, "items") else arcs
        self.arcs = {}
        self._wrap = 0
        events: Dict[Direction2, List[int]] = {}
        for key, arc in items:
            if key in self.arcs:
                raise KeyError("arc id %r already present" % (key,))
            self.arcs[key] = arc
            if _is_wrap(arc):
                self._wrap += 1
            for d, kind in ((arc.lo, 0), (arc.hi, 1)):
                ev = events.get(d)
                if ev is None:
                    ev = events[d] = [0, 0]
                ev[kind] += 1
        self._bulk_load(events)

    def _ordered_dirs(self) -> Iterator[Direction2]:
        raise NotImplementedError

    def _add_event(self, d: Direction2, kind: int) -> None:
        raise NotImplementedError

    def _remove_event(self, d: Direction2, kind: int) -> None:
        raise NotImplementedError

    def _bulk_load(self, events: Dict[Direction2, List[int]]) -> None:
        raise NotImplementedError


class NaiveArcSet(_ArcSetBase):
    """Sorted endpoint list, full sweep per query."""

    def __init__(self):
        super().__init__()
        self._events: Dict[Direction2, List[int]] = {}
        self._rank: List[Direction2] = []

    def _bulk_load(self, events):
        self._events = events
        self._rank = _angular_sorted(list(events))

    def _ordered_dirs(self):
        return iter(self._rank)

    def _add_event(self, d, kind):
        ev = self._events.get(d)
        if ev is None:
            ev = self._events[d] = [0, 0]
            insort(self._rank, d, key=angular_key)
        ev[kind] += 1

    def _remove_event(self, d, kind):
        ev = self._events[d]
        ev[kind] -= 1
        if ev[0] == 0 and ev[1] == 0:
            del self._events[d]
            i = bisect_left(self._rank, angular_key(d), key=angular_key)
            del self._rank[i]

    def max_depth(self):
        if not self.arcs:
            raise EmptyArcSetError("no arcs to query")
        events = self._events
        cur = self._wrap
        best = -1
        best_dir = None
        for d in self._rank:
            opens, closes = events[d]
            at = cur + opens
            if at > best:
                best = at
                best_dir = d
            cur = at - closes
        return best_dir, best


class _Node:
    __slots__ = ("dir", "o", "c", "prio", "left", "right",
                 "sum_o", "sum_c", "best", "best_dir")

    def __init__(self, d, prio):
        self.dir = d
        self.o = 0
        self.c = 0
        self.prio = prio
        self.left = None
        self.right = None
        self.sum_o = 0
        self.sum_c = 0
        self.best = 0
        self.best_dir = d


def _pull(n: _Node) -> None:
    lo = lc = ro = rc = 0
    if n.left is not None:
        lo, lc = n.left.sum_o, n.left.sum_c
    if n.right is not None:
        ro, rc = n.right.sum_o, n.right.sum_c
    n.sum_o = lo + n.o + ro
    n.sum_c = lc + n.c + rc
    # best prefix: opens through a node minus closes strictly before it,
    # leftmost node winning ties
    best = lo + n.o - lc
    best_dir = n.dir
    if n.left is not None and n.left.best >= best:
        best = n.left.best
        best_dir = n.left.best_dir
    if n.right is not None:
        cand = n.right.best + (lo + n.o) - (lc + n.c)
        if cand > best:
            best = cand
            best_dir = n.right.best_dir
    n.best = best
    n.best_dir = best_dir


class TreeArcSet(_ArcSetBase):
    """Randomized balanced tree over endpoint directions, O(log n) updates.

    Updates are iterative: a root-to-key search, an expected O(1) run of
    rotations to restore the heap order, then one refresh sweep back up.
    """

    def __init__(self):
        super().__init__()
        self._root = None
        self._rng = random.Random(0x5EEDBA5E)

    def _bulk_load(self, events):
        ordered = _angular_sorted(list(events))
        rng = self._rng
        spine: List[_Node] = []
        for d in ordered:
            node = _Node(d, rng.random())
            node.o, node.c = events[d]
            last = None
            while spine and spine[-1].prio < node.prio:
                last = spine.pop()
            node.left = last
            if spine:
                spine[-1].right = node
            spine.append(node)
        self._root = spine[0] if spine else None
        stack = [(self._root, False)]
        while stack:
            n, ready = stack.pop()
            if n is None:
                continue
            if ready:
                _pull(n)
            else:
                stack.append((n, True))
                stack.append((n.left, False))
                stack.append((n.right, False))

    def _ordered_dirs(self):
        stack: List[_Node] = []
        n = self._root
        while stack or n is not None:
            while n is not None:
                stack.append(n)
                n = n.left
            n = stack.pop()
            yield n.dir
            n = n.right

    def _add_event(self, d, kind):
        path: List[_Node] = []
        node = self._root
        cmp = 0
        while node is not None:
            path.append(node)
            cmp = angular_cmp(d, node.dir)
            if cmp == 0:
                if kind == 0:
                    node.o += 1
                else:
                    node.c += 1
                for n in reversed(path):
                    _pull(n)
                return
            node = node.left if cmp < 0 else node.right
        child = _Node(d, self._rng.random())
        if kind == 0:
            child.o = 1
        else:
            child.c = 1
        _pull(child)
        if not path:
            self._root = child
            return
        parent = path[-1]
        if cmp < 0:
            parent.left = child
        else:
            parent.right = child
        i = len(path) - 1
        while i >= 0 and path[i].prio < child.prio:
            p = path[i]
            if p.left is child:
                p.left = child.right
                child.right = p
            else:
                p.right = child.left
                child.left = p
            _pull(p)
            _pull(child)
            i -= 1
            if i >= 0:
                g = path[i]
                if g.left is p:
                    g.left = child
                else:
                    g.right = child
            else:
                self._root = child
        while i >= 0:
            _pull(path[i])
            i -= 1

    def _remove_event(self, d, kind):
        path: List[_Node] = []
        node = self._root
        while True:
            path.append(node)
            cmp = angular_cmp(d, node.dir)
            if cmp == 0:
                break
            node = node.left if cmp < 0 else node.right
        if kind == 0:
            node.o -= 1
        else:
            node.c -= 1
        if node.o or node.c:
            for n in reversed(path):
                _pull(n)
            return
        path.pop()
        # rotate the emptied node down, keeping the heap order, then unlink
        while node.left is not None and node.right is not None:
            l, r = node.left, node.right
            child = l if l.prio > r.prio else r
            if child is l:
                node.left = child.right
                child.right = node
            else:
                node.right = child.left
                child.left = node
            if path:
                p = path[-1]
                if p.left is node:
                    p.left = child
                else:
                    p.right = child
            else:
                self._root = child
            path.append(child)
        sub = node.left if node.left is not None else node.right
        if path:
            p = path[-1]
            if p.left is node:
                p.left = sub
            else:
                p.right = sub
        else:
            self._root = sub
        for n in reversed(path):
            _pull(n)

    def max_depth(self):
        if not self.arcs:
            raise EmptyArcSetError("no arcs to query")
        root = self._root
        return root.best_dir, self._wrap + root.best


ArcSet = Union[NaiveArcSet, TreeArcSet]


def build(arcs, backend: str = "naive") -> ArcSet:
    """Build an arc structure from a mapping or iterable of (id, arc)."""
    if backend == "naive":
        s: ArcSet = NaiveArcSet()
    elif backend == "tree":
        s = TreeArcSet()
    else:
        raise ValueError("unknown backend %r" % backend)
    s.rebuild(arcs)
    return s

"""Linear-time Minkowski sums of convex polygons.

Polygons are counter-clockwise rings.  Sums are computed by merging the
edge sequences in angular order; angles are never computed, edge directions
are compared exactly with a half-plane key and a cross-product sign.
"""

import heapq
from dataclasses import dataclass
from typing import Optional, Sequence

from . import linalg
from .errors import InvalidPolygon
from .lattice import LatticeBuilder, Polytope
from .linalg import Point


def cross(a: Point, b: Point):
    return a[0] * b[1] - a[1] * b[0]


def _half(ref: Point, v: Point) -> int:
    """0 if ``v`` is at angle [0, pi) counter-clockwise from ``ref``, else 1."""
    c = cross(ref, v)
    if c > 0 or (c == 0 and linalg.dot(ref, v) > 0):
        return 0
    return 1


def _compare(ref: Point, a: Point, ha: int, b: Point, hb: int) -> int:
    """Order of ``a`` and ``b`` by angle from ``ref``; 0 if codirectional."""
    if ha != hb:
        return -1 if ha < hb else 1
    c = cross(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


@dataclass(frozen=True)
class ConvexPolygon:
    vertices: tuple

    def __post_init__(self):
        verts = tuple(linalg.as_point(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        n = len(verts)
        if n < 3:
            raise InvalidPolygon(f"a polygon needs at least 3 vertices, got {n}")
        if any(len(v) != 2 for v in verts):
            raise InvalidPolygon("polygon vertices must be 2-dimensional")
        edges = self.edges()
        ref = edges[0]
        prev_half = 0
        for i in range(n):
            if cross(edges[i], edges[(i + 1) % n]) <= 0:
                raise InvalidPolygon(f"vertex {(i + 1) % n} is not a strict left turn")
            if i:
                h = _half(ref, edges[i])
                if _compare(ref, edges[i - 1], prev_half, edges[i], h) >= 0:
                    raise InvalidPolygon("edge directions wind more than once")
                prev_half = h

    def __len__(self):
        return len(self.vertices)

    def edges(self) -> list:
        v = self.vertices
        return [linalg.sub(v[(i + 1) % len(v)], v[i]) for i in range(len(v))]

    def translated(self, t: Point) -> "ConvexPolygon":
        return ConvexPolygon(tuple(linalg.add(v, t) for v in self.vertices))


@dataclass
class SweepStats:
    """Ring-advance counters: the initial support scan plus merge steps."""

    scan_steps: int = 0
    merge_steps: int = 0

    @property
    def total(self) -> int:
        return self.scan_steps + self.merge_steps


def support_vertex_2d(P: ConvexPolygon, direction: Point, stats: Optional[SweepStats] = None) -> int:
    """Index of the vertex maximizing ``direction . v``.

    When an edge is normal to ``direction`` both endpoints tie; the one that
    comes first counter-clockwise (the edge's start) is returned.
    """
    if linalg.is_zero(direction):
        raise ValueError("direction must be nonzero")
    verts = P.vertices
    n = len(verts)
    best = None
    tied = []
    for i, v in enumerate(verts):
        val = linalg.dot(direction, v)
        if best is None or val > best:
            best, tied = val, [i]
        elif val == best:
            tied.append(i)
    if stats is not None:
        stats.scan_steps += n
    if len(tied) == 2:
        a, b = tied
        return a if (a + 1) % n == b else b
    return tied[0]


def _outward(e: Point) -> Point:
    return (e[1], -e[0])


def sum_polygons(P: ConvexPolygon, Q: ConvexPolygon, stats: Optional[SweepStats] = None) -> ConvexPolygon:
    """``P + Q`` by merging the two edge rings in angular order."""
    qe = Q.edges()
    pe = P.edges()
    n, m = len(pe), len(qe)
    ref = qe[0]
    start = support_vertex_2d(P, _outward(ref), stats)
    pe = pe[start:] + pe[:start]
    ph = [_half(ref, e) for e in pe]
    qh = [_half(ref, e) for e in qe]
    cur = linalg.add(P.vertices[start], Q.vertices[0])
    out = [cur]
    i = j = 0
    steps = 0
    while i < n or j < m:
        if i == n:
            c = 1
        elif j == m:
            c = -1
        else:
            c = _compare(ref, pe[i], ph[i], qe[j], qh[j])
        if c < 0:
            cur = linalg.add(cur, pe[i])
            i += 1
        elif c > 0:
            cur = linalg.add(cur, qe[j])
            j += 1
        else:
            cur = linalg.add(cur, linalg.add(pe[i], qe[j]))
            i += 1
            j += 1
        steps += 1
        out.append(cur)
    if stats is not None:
        stats.merge_steps += steps
    out.pop()  # closes the ring back onto the start vertex
    return ConvexPolygon(tuple(out))


@dataclass(eq=False)
class _Cursor:
    ref: Point
    edges: list
    halves: list
    pos: int = 0

    def current(self):
        return self.edges[self.pos], self.halves[self.pos]

    def __lt__(self, other: "_Cursor") -> bool:
        a, ha = self.current()
        b, hb = other.current()
        return _compare(self.ref, a, ha, b, hb) < 0


def sum_polygons_multi(polys: Sequence[ConvexPolygon], stats: Optional[SweepStats] = None) -> ConvexPolygon:
    """Sum of any number of polygons in one simultaneous angular sweep."""
    if not polys:
        raise ValueError("need at least one polygon")
    if len(polys) == 1:
        return ConvexPolygon(polys[0].vertices)
    ref = polys[0].edges()[0]
    normal = _outward(ref)
    cur = None
    heap = []
    for P in polys:
        s = support_vertex_2d(P, normal, stats)
        cur = P.vertices[s] if cur is None else linalg.add(cur, P.vertices[s])
        edges = P.edges()
        edges = edges[s:] + edges[:s]
        heap.append(_Cursor(ref, edges, [_half(ref, e) for e in edges]))
    heapq.heapify(heap)
    out = [cur]
    steps = 0
    while heap:
        first = heapq.heappop(heap)
        group = [first]
        e0, h0 = first.current()
        while heap:
            b, hb = heap[0].current()
            if _compare(ref, e0, h0, b, hb) != 0:
                break
            group.append(heapq.heappop(heap))
        for c in group:
            cur = linalg.add(cur, c.edges[c.pos])
            c.pos += 1
            if c.pos < len(c.edges):
                heapq.heappush(heap, c)
        steps += 1
        out.append(cur)
    if stats is not None:
        stats.merge_steps += steps
    out.pop()
    return ConvexPolygon(tuple(out))


def polygon_to_polytope(P: ConvexPolygon, label: str = "polygon") -> Polytope:
    n = len(P)
    b = LatticeBuilder(2)
    bottom = b.add_face(-1)
    vids = [b.add_face(0, v) for v in P.vertices]
    top = b.add_face(2)
    for i, v in enumerate(vids):
        b.link(bottom, v)
        e = b.add_face(1)
        b.link(v, e)
        b.link(vids[(i + 1) % n], e)
        b.link(e, top)
    return Polytope(b.freeze(), label)


def polytope_to_polygon(P: Polytope) -> ConvexPolygon:
    """Recover the counter-clockwise vertex ring of a 2-dimensional lattice."""
    L = P.lattice
    if L.ambient_dim != 2 or L.dim != 2:
        raise InvalidPolygon("not a full-dimensional polytope in the plane")
    nbrs = {v: [] for v in L.vertices}
    for e in L.layers[1]:
        a, b = L.nodes[e].vertex_ids
        nbrs[a].append(b)
        nbrs[b].append(a)
    start = L.vertices[0]
    ring = [start]
    prev, cur = None, start
    while True:
        nxt = next(x for x in nbrs[cur] if x != prev)
        if nxt == start:
            break
        ring.append(nxt)
        prev, cur = cur, nxt
    pts = [L.point(v) for v in ring]
    area2 = sum(cross(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts)))
    if area2 < 0:
        pts.reverse()
    return ConvexPolygon(tuple(pts))

"""Brute-force reference Minkowski sums.

The sum is computed as the convex hull of all vertex sums; the hull comes
from exhaustive facet enumeration over d-subsets of points, which is slow
but simple enough to trust.  It tolerates coplanar and collinear points, so
it also handles inputs the main algorithm rejects as degenerate.
"""

from dataclasses import dataclass
from itertools import combinations, product
from math import gcd, lcm
from typing import Sequence

from . import linalg
from .errors import NotFullDimensional
from .lattice import Polytope, from_vertex_sets, require_valid
from .linalg import Point

MAX_POINTS = 400


@dataclass(frozen=True)
class PointCloud:
    points: tuple
    dim: int


def vertex_sums(polys: Sequence[Polytope]) -> PointCloud:
    """All sums of one vertex per polytope, deduplicated in first-seen order."""
    if not polys:
        raise ValueError("need at least one polytope")
    seen = {}
    for combo in product(*(P.vertices for P in polys)):
        p = combo[0]
        for q in combo[1:]:
            p = linalg.add(p, q)
        seen.setdefault(p, None)
    return PointCloud(tuple(seen), polys[0].dim)


def _to_integers(points):
    den = 1
    for p in points:
        for c in p:
            den = lcm(den, c.denominator)
    return [tuple(int(c * den) for c in p) for p in points]


def _int_normal(vectors, d):
    if d == 2:
        (x, y), = vectors
        return (-y, x)
    if d == 3:
        (a1, a2, a3), (b1, b2, b3) = vectors
        return (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    if d == 4:
        (a0, a1, a2, a3), (b0, b1, b2, b3), (c0, c1, c2, c3) = vectors
        # 2x2 minors of the last two rows
        m01 = b0 * c1 - b1 * c0
        m02 = b0 * c2 - b2 * c0
        m03 = b0 * c3 - b3 * c0
        m12 = b1 * c2 - b2 * c1
        m13 = b1 * c3 - b3 * c1
        m23 = b2 * c3 - b3 * c2
        return (
            -(a1 * m23 - a2 * m13 + a3 * m12),
            a0 * m23 - a2 * m03 + a3 * m02,
            -(a0 * m13 - a1 * m03 + a3 * m01),
            a0 * m12 - a1 * m02 + a2 * m01,
        )
    n = []
    for i in range(d):
        minor = [[v[j] for j in range(d) if j != i] for v in vectors]
        c = linalg.determinant(minor)
        n.append(int(c) if (i + d - 1) % 2 == 0 else -int(c))
    return tuple(n)


def hull_facets(points: Sequence[Point]):
    """Facet hyperplanes of ``conv(points)`` with the indices lying on each.

    Returns a list of ``(normal, offset, on_indices)`` with integer normals
    in primitive form, oriented outward (all points satisfy
    ``normal . x <= offset`` in the scaled integer coordinates).
    """
    d = len(points[0])
    ipts = _to_integers(points)
    n = len(ipts)
    facets = {}
    member = [set() for _ in range(n)]
    for subset in combinations(range(n), d):
        # a subset inside a known facet spans that facet's hyperplane again
        common = set(member[subset[0]])
        for i in subset[1:]:
            common &= member[i]
            if not common:
                break
        if common:
            continue
        p0 = ipts[subset[0]]
        vecs = [tuple(a - b for a, b in zip(ipts[i], p0)) for i in subset[1:]]
        normal = _int_normal(vecs, d)
        if not any(normal):
            continue
        off = sum(a * b for a, b in zip(normal, p0))
        pos = neg = False
        on = []
        for j, q in enumerate(ipts):
            s = sum(a * b for a, b in zip(normal, q)) - off
            if s > 0:
                pos = True
            elif s < 0:
                neg = True
            else:
                on.append(j)
            if pos and neg:
                break
        if pos and neg:
            continue
        if pos:
            normal = tuple(-a for a in normal)
            off = -off
        g = 0
        for a in normal:
            g = gcd(g, a)
        key = (tuple(a // g for a in normal), off // g)
        if key not in facets:
            idx = len(facets)
            facets[key] = tuple(on)
            for j in on:
                member[j].add(idx)
    return [(k[0], k[1], v) for k, v in facets.items()]


def _discard_interior(points):
    """Drop points strictly inside the hull of a subset of known extreme points.

    Maximizers of a fixed set of integer directions are on the boundary; any
    point strictly inside their hull is interior to the full hull too, so it
    can be neither a vertex nor on a facet.
    """
    d = len(points[0])
    n = len(points)
    if n <= 4 * d + 8:
        return points
    ipts = _to_integers(points)
    state = 0x9E3779B97F4A7C15
    picked = set()
    for _ in range(6 * d * d + 2 * d):
        direction = []
        for _ in range(d):
            state = (state * 6364136223846793005 + 1442695040888963407) & ((1 << 64) - 1)
            direction.append((state >> 40) % 2001 - 1000)
        vals = [sum(a * b for a, b in zip(direction, q)) for q in ipts]
        best = max(vals)
        picked.update(i for i, v in enumerate(vals) if v == best)
    core = sorted(picked)
    if len(core) >= n // 2 or linalg.affine_dim([points[i] for i in core]) != d:
        return points
    hyper = hull_facets([points[i] for i in core])
    # hull_facets scaled by its own common denominator; rescale the test points
    den = 1
    for i in core:
        for c in points[i]:
            den = lcm(den, c.denominator)
    keep = []
    for i, p in enumerate(points):
        if i in picked:
            keep.append(p)
            continue
        q = [c * den for c in p]
        if any(sum(a * b for a, b in zip(nrm, q)) >= off for nrm, off, _ in hyper):
            keep.append(p)
    return keep


def brute_hull(cloud, label: str = "hull") -> Polytope:
    """Exact convex hull with its full face lattice."""
    points = list(cloud.points if isinstance(cloud, PointCloud) else cloud)
    points = [linalg.as_point(p) for p in points]
    points = list(dict.fromkeys(points))
    if len(points) > MAX_POINTS:
        raise ValueError(f"brute_hull is capped at {MAX_POINTS} points, got {len(points)}")
    if not points:
        raise NotFullDimensional("empty point set")
    d = len(points[0])
    if linalg.affine_dim(points) != d:
        raise NotFullDimensional(f"points span less than R^{d}")

    points = _discard_interior(points)
    facets = [frozenset(on) for _, _, on in hull_facets(points)]
    layers = {d - 1: set(facets)}
    for k in range(d - 1, 0, -1):
        below = set()
        faces = list(layers[k])
        for a, b in combinations(faces, 2):
            s = a & b
            if len(s) < k or s in below:
                continue
            if linalg.affine_dim([points[i] for i in s]) == k - 1:
                below.add(s)
        layers[k - 1] = below
    vertex_idx = sorted(i for (i,) in layers[0])
    renum = {old: new for new, old in enumerate(vertex_idx)}
    faces = []
    for k in range(1, d):
        for s in sorted(layers[k], key=sorted):
            faces.append((k, sorted(renum[i] for i in s if i in renum)))
    L = from_vertex_sets(d, [points[i] for i in vertex_idx], faces)
    return Polytope(require_valid(L), label)


def oracle_minkowski(polys: Sequence[Polytope], label: str = "oracle-sum") -> Polytope:
    return brute_hull(vertex_sums(polys), label)


def support_certificate_violations(P: Polytope, cloud) -> list:
    """Facets of ``P`` whose hyperplane fails to support the point cloud.

    Every cloud point must satisfy ``n . x <= n . v`` for the facet's outward
    normal ``n`` and any facet vertex ``v``, and every facet vertex must be a
    cloud point.  Returns human-readable failures (empty when all pass).
    """
    from .minkd import facet_outward_normal

    L = P.lattice
    pts = list(cloud.points if isinstance(cloud, PointCloud) else cloud)
    members = set(pts)
    bad = []
    for fid in L.layers[L.dim - 1]:
        n = facet_outward_normal(L, fid)
        verts = L.face_points(fid)
        level = linalg.dot(n, verts[0])
        if any(v not in members for v in verts):
            bad.append(f"facet {fid}: vertex not among the cloud points")
        for x in pts:
            if linalg.dot(n, x) > level:
                bad.append(f"facet {fid}: point {x} above the supporting hyperplane")
                break
    return bad

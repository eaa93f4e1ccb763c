"""Face-lattice Minkowski sum of two convex polytopes in R^d.

The sum is built in three passes:

1. for each facet of one polytope, the support vertex of the other in the
   facet's outward direction gives a facet ``v + f`` of the sum (run both
   ways round);
2. every remaining pair ``(f, g)`` with ``dim f + dim g = d - 1`` is tested
   locally: the hyperplane spanned by both faces must have the interior
   points of all immediate superfaces of ``f`` and of ``g`` strictly on one
   common side;
3. the lower faces are generated by descending from each facet pair to
   ``(f', g)`` and ``(f, g')`` for immediate subfaces, deduplicated through
   a table keyed by the face pair.

Inputs must satisfy non-degeneracy (``dim(f + g) = dim f + dim g`` for every
face pair).  Violations are detected exactly and reported, never repaired.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from . import linalg
from .errors import (
    CertificateError,
    DegeneracyError,
    DegeneracyReport,
    DegenerateSpan,
    DegenerateTie,
    NotFullDimensional,
    ValidationFailure,
    ZeroSideSign,
)
from .lattice import FaceLattice, LatticeBuilder, Polytope, validate_lattice
from .linalg import Point

log = logging.getLogger(__name__)

FAST = "fast"
PARANOID = "paranoid"


@dataclass(frozen=True)
class FacetPair:
    f_id: int
    g_id: int
    normal: Point
    dims: tuple

    @property
    def ids(self) -> tuple:
        return (self.f_id, self.g_id)


@dataclass
class SumStats:
    """Counters filled in by :func:`minkowski_sum` when passed in."""

    pairs_tested: int = 0
    facets: int = 0
    nodes: int = 0


def _check_input(P: Polytope) -> None:
    L = P.lattice
    if L.dim not in (0, L.ambient_dim):
        raise NotFullDimensional(
            f"{P.label or 'polytope'} has dimension {L.dim} in R^{L.ambient_dim}; "
            "inputs must be full-dimensional or a single point"
        )


def support_vertex(P: Polytope, direction: Point) -> int:
    """Vertex id maximizing ``direction . v``; ties are a degeneracy."""
    if linalg.is_zero(direction):
        raise ValueError("support direction must be nonzero")
    L = P.lattice
    best = None
    tied = []
    for v in L.vertices:
        val = linalg.dot(direction, L.point(v))
        if best is None or val > best:
            best = val
            tied = [v]
        elif val == best:
            tied.append(v)
    if len(tied) > 1:
        raise DegenerateTie(
            f"direction {direction} is maximized by vertices {tied}",
            tied,
            DegeneracyReport([{"kind": "tie", "polytope": P.label, "vertices": tied,
                               "direction": direction}]),
        )
    return tied[0]


def facet_outward_normal(L: FaceLattice, fid: int) -> Point:
    """Normal of facet ``fid``, oriented away from the polytope's interior."""
    node = L.nodes[fid]
    if node.dim != L.ambient_dim - 1 or L.dim != L.ambient_dim:
        raise ValueError(f"face {fid} is not a facet of a full-dimensional polytope")
    n = linalg.orthogonal_complement_1d(L.basis(fid))
    inner = L.nodes[L.top].interior_point
    if linalg.dot(n, linalg.sub(inner, node.interior_point)) > 0:
        n = linalg.neg(n)
    return n


def _superface_signs(L: FaceLattice, fid: int, n: Point, witness: dict) -> set:
    """Signs of ``n . (ip(s) - ip(f))`` over the immediate superfaces ``s``.

    Empty for a face without superfaces (the top of a point polytope).  A
    zero sign means the inputs are degenerate and raises ZeroSideSign.
    """
    node = L.nodes[fid]
    signs = set()
    for s in node.up:
        val = linalg.sign(linalg.dot(n, linalg.sub(L.nodes[s].interior_point, node.interior_point)))
        if val == 0:
            raise ZeroSideSign(
                f"superface {s} of face {fid} lies on the candidate hyperplane",
                DegeneracyReport([dict(witness, kind="zero-side", superface=s)]),
            )
        signs.add(val)
    return signs


def _tuple_facet_normal(lattices: Sequence[FaceLattice], ids: Sequence[int], witness: dict):
    """Outward normal if the face tuple spans a facet of the sum, else None."""
    vectors = []
    for L, fid in zip(lattices, ids):
        vectors.extend(L.basis(fid))
    try:
        n = linalg.orthogonal_complement_1d(vectors)
    except DegenerateSpan as exc:
        raise DegenerateSpan(
            f"faces {tuple(ids)} span less than a hyperplane",
            DegeneracyReport([dict(witness, kind="span")]),
        ) from exc
    # every slot is evaluated so zero signs are reported regardless of order
    per_slot = [_superface_signs(L, fid, n, witness) for L, fid in zip(lattices, ids)]
    if any(len(s) > 1 for s in per_slot):
        return None
    signs = set().union(*per_slot)
    if len(signs) != 1:
        return None
    # the polytopes lie on the side of sign s; the outward normal points away
    return linalg.neg(n) if signs.pop() > 0 else n


def is_sum_facet(P: Polytope, f_id: int, Q: Polytope, g_id: int) -> Optional[FacetPair]:
    """Local tangency test for a candidate facet ``f + g``."""
    fd = P.lattice.nodes[f_id].dim
    gd = Q.lattice.nodes[g_id].dim
    d = P.dim
    if fd + gd != d - 1 or fd < 0 or gd < 0:
        raise ValueError(f"face dimensions {fd} + {gd} must sum to {d - 1}")
    witness = {"f": f_id, "g": g_id}
    n = _tuple_facet_normal((P.lattice, Q.lattice), (f_id, g_id), witness)
    if n is None:
        return None
    return FacetPair(f_id, g_id, n, (fd, gd))


def stage1_facets(P: Polytope, Q: Polytope, stats: Optional[SumStats] = None) -> list:
    """Facets ``v + g`` for every facet ``g`` of Q, ``v`` the support vertex of P."""
    out = []
    LQ = Q.lattice
    if LQ.dim != LQ.ambient_dim:
        return out
    nverts = len(P.lattice.vertices)
    report = DegeneracyReport()
    for g in LQ.layers[LQ.ambient_dim - 1]:
        n = facet_outward_normal(LQ, g)
        if stats is not None:
            stats.pairs_tested += nverts
        try:
            v = support_vertex(P, n)
        except DegenerateTie as exc:
            report.witnesses.extend(dict(w, facet=g) for w in exc.report.witnesses)
            continue
        out.append(FacetPair(v, g, n, (0, LQ.ambient_dim - 1)))
    if report:
        raise DegenerateTie(str(report), [w["vertices"] for w in report.witnesses], report)
    return out


def stage2_facets(P: Polytope, Q: Polytope, ks=None, stats: Optional[SumStats] = None) -> list:
    """Facets ``f + g`` with ``f`` a k-face of P and ``g`` a (d-1-k)-face of Q.

    ``ks`` defaults to every k in 1..d-1.  Degeneracy witnesses from all
    pairs are collected and raised together.
    """
    d = P.dim
    LP, LQ = P.lattice, Q.lattice
    if ks is None:
        ks = range(1, d)
    out = []
    report = DegeneracyReport()
    for k in ks:
        fs = LP.layers.get(k, [])
        gs = LQ.layers.get(d - 1 - k, [])
        if stats is not None:
            stats.pairs_tested += len(fs) * len(gs)
        for f in fs:
            for g in gs:
                try:
                    fp = is_sum_facet(P, f, Q, g)
                except DegeneracyError as exc:
                    report.witnesses.extend(exc.report.witnesses)
                    continue
                if fp is not None:
                    out.append(fp)
    if report:
        raise DegeneracyError(str(report), report)
    return out


def verify_support(lattices: Sequence[FaceLattice], ids: Sequence[int], normal: Point) -> None:
    """Global check: each polytope touches the hyperplane exactly along its face."""
    for L, fid in zip(lattices, ids):
        face = set(L.nodes[fid].vertex_ids)
        level = linalg.dot(normal, L.nodes[fid].interior_point)
        for v in L.vertices:
            s = linalg.sign(linalg.dot(normal, L.point(v)) - level)
            if s > 0 or (s == 0) != (v in face):
                raise CertificateError(
                    f"face tuple {tuple(ids)}: vertex {v} breaks the support test (side {s})"
                )


def build_sum_lattice(polys: Sequence[Polytope], facet_keys: Sequence[tuple],
                      label: str = "sum", validate: bool = True) -> Polytope:
    """Descend from facet tuples to every face of the sum and wire incidences."""
    lattices = [P.lattice for P in polys]
    d = lattices[0].ambient_dim
    b = LatticeBuilder(d)
    table = {}

    def ip_of(key):
        p = lattices[0].nodes[key[0]].interior_point
        for L, fid in zip(lattices[1:], key[1:]):
            p = linalg.add(p, L.nodes[fid].interior_point)
        return p

    def dim_of(key):
        return sum(L.nodes[f].dim for L, f in zip(lattices, key))

    bottom = b.add_face(-1)
    top = b.add_face(d, ip_of(tuple(L.top for L in lattices)))
    generators = {top: tuple(L.top for L in lattices)}
    for key in facet_keys:
        key = tuple(key)
        if key in table:
            continue
        node = table[key] = b.add_face(d - 1, ip_of(key))
        generators[node] = key
        b.link(node, top)
        stack = [key]
        while stack:
            parent = stack.pop()
            pid = table[parent]
            if dim_of(parent) == 0:
                b.link(bottom, pid)
                continue
            for slot, L in enumerate(lattices):
                for sub in L.nodes[parent[slot]].down:
                    if L.nodes[sub].dim < 0:
                        continue
                    child = parent[:slot] + (sub,) + parent[slot + 1:]
                    cid = table.get(child)
                    if cid is None:
                        cid = table[child] = b.add_face(dim_of(child), ip_of(child))
                        generators[cid] = child
                        stack.append(child)
                    b.link(cid, pid)
    lattice = b.freeze()
    if validate:
        rep = validate_lattice(lattice)
        if not rep.ok:
            raise ValidationFailure(rep)
    return Polytope(lattice, label, generators)


def stage3_build(P: Polytope, Q: Polytope, facets: Sequence[FacetPair],
                 label: str = "sum", validate: bool = True) -> Polytope:
    return build_sum_lattice((P, Q), [fp.ids for fp in facets], label, validate)


def minkowski_sum(P: Polytope, Q: Polytope, mode: str = FAST,
                  stats: Optional[SumStats] = None, validate: bool = True) -> Polytope:
    """Face lattice of ``P + Q``.

    ``mode="paranoid"`` re-checks every accepted facet against all vertices
    of both inputs.  Raises DegeneracyError (with the aggregated report) if
    the inputs are degenerate.
    """
    if mode not in (FAST, PARANOID):
        raise ValueError(f"unknown mode {mode!r}")
    if P.dim != Q.dim:
        raise ValueError(f"ambient dimensions differ: {P.dim} vs {Q.dim}")
    _check_input(P)
    _check_input(Q)
    if P.lattice.dim == 0 and Q.lattice.dim == 0:
        raise NotFullDimensional("sum of two points is not full-dimensional")
    d = P.dim
    report = DegeneracyReport()
    facets = []
    for run in (
        lambda: stage1_facets(P, Q, stats),
        lambda: [FacetPair(fp.g_id, fp.f_id, fp.normal, fp.dims[::-1])
                 for fp in stage1_facets(Q, P, stats)],
        lambda: stage2_facets(P, Q, range(1, d - 1), stats),
    ):
        try:
            facets.extend(run())
        except DegeneracyError as exc:
            report.witnesses.extend(exc.report.witnesses)
    if report:
        raise DegeneracyError(str(report), report)
    if mode == PARANOID:
        for fp in facets:
            verify_support((P.lattice, Q.lattice), fp.ids, fp.normal)
    log.debug("%d facets found for %s + %s", len(facets), P.label, Q.label)
    out = stage3_build(P, Q, facets, f"{P.label}+{Q.label}", validate)
    if stats is not None:
        stats.facets = len(facets)
        stats.nodes = len(out.lattice.nodes)
    return out


def certificate_violations(result: Polytope, inputs: Sequence[Polytope]) -> list:
    """Check every output facet against all vertex sums of the inputs.

    Uses the face tuple recorded for each output node: the facet's normal
    must weakly dominate every vertex sum, with equality exactly for the
    sums of vertices of the generating faces.
    """
    from itertools import product

    L = result.lattice
    lattices = [P.lattice for P in inputs]
    bad = []
    for fid in L.layers[L.dim - 1]:
        key = result.generators[fid]
        n = facet_outward_normal(L, fid)
        level = linalg.dot(n, L.nodes[fid].interior_point)
        faces = [set(Li.nodes[k].vertex_ids) for Li, k in zip(lattices, key)]
        for combo in product(*(Li.vertices for Li in lattices)):
            p = lattices[0].point(combo[0])
            for Li, v in zip(lattices[1:], combo[1:]):
                p = linalg.add(p, Li.point(v))
            s = linalg.sign(linalg.dot(n, p) - level)
            on_face = all(v in f for v, f in zip(combo, faces))
            if s > 0 or (s == 0) != on_face:
                bad.append(f"facet {fid} from {key}: vertex sum {combo} has side {s}")
                break
    return bad

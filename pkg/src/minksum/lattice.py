"""Augmented face lattices of convex polytopes.

A :class:`FaceLattice` stores one :class:`FaceNode` per face, from the null
face (dimension -1) up to the single top face, with up/down incidence arcs
between adjacent layers.  Every node also carries a strict relative-interior
point; for vertices this is the vertex itself.
"""

from collections import defaultdict
from dataclasses import dataclass, field, replace
from functools import cached_property
from itertools import combinations, product
from typing import Optional, Sequence

from . import linalg
from .errors import ValidationFailure
from .linalg import Point


@dataclass(frozen=True)
class FaceNode:
    id: int
    dim: int
    interior_point: Optional[Point]
    vertex_ids: tuple = ()
    up: tuple = ()
    down: tuple = ()


@dataclass(frozen=True, eq=False)
class FaceLattice:
    ambient_dim: int
    nodes: tuple
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @cached_property
    def layers(self) -> dict:
        out = defaultdict(list)
        for n in self.nodes:
            out[n.dim].append(n.id)
        return {k: out.get(k, []) for k in range(-1, self.dim + 1)}

    @cached_property
    def dim(self) -> int:
        """Dimension of the polytope itself (the top layer)."""
        return max((n.dim for n in self.nodes), default=-1)

    @property
    def top(self) -> int:
        return self.layers[self.dim][0]

    @property
    def bottom(self) -> int:
        return self.layers[-1][0]

    @property
    def vertices(self) -> list:
        return self.layers.get(0, [])

    def point(self, vid: int) -> Point:
        return self.nodes[vid].interior_point

    def face_points(self, fid: int) -> list:
        return [self.nodes[v].interior_point for v in self.nodes[fid].vertex_ids]

    def basis(self, fid: int) -> list:
        """Affine basis of a face, memoized."""
        key = ("basis", fid)
        b = self._cache.get(key)
        if b is None:
            b = self._cache[key] = linalg.affine_basis(self.face_points(fid))
        return b

    def size(self) -> int:
        """Nodes plus incidence arcs; the complexity measure used in benchmarks."""
        return len(self.nodes) + sum(len(n.down) for n in self.nodes)

    def vertex_key(self, fid: int) -> frozenset:
        return frozenset(self.nodes[v].interior_point for v in self.nodes[fid].vertex_ids)

    def translated(self, t: Point) -> "FaceLattice":
        nodes = tuple(
            replace(n, interior_point=None if n.interior_point is None else linalg.add(n.interior_point, t))
            for n in self.nodes
        )
        return FaceLattice(self.ambient_dim, nodes)

    def mapped(self, fn) -> "FaceLattice":
        """Apply ``fn`` (an affine map on points) to every stored point."""
        nodes = tuple(
            replace(n, interior_point=None if n.interior_point is None else fn(n.interior_point))
            for n in self.nodes
        )
        return FaceLattice(self.ambient_dim, nodes)


@dataclass(frozen=True)
class Polytope:
    lattice: FaceLattice
    label: str = ""
    # node id -> tuple of input face ids, set on Minkowski sum outputs
    generators: Optional[dict] = field(default=None, compare=False, repr=False)

    @property
    def dim(self) -> int:
        return self.lattice.ambient_dim

    @property
    def vertices(self) -> list:
        L = self.lattice
        return [L.point(v) for v in L.vertices]


class LatticeBuilder:
    """Accumulates faces and arcs; :meth:`freeze` derives vertex sets."""

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self._dims = []
        self._ips = []
        self._up = []
        self._down = []

    def __len__(self):
        return len(self._dims)

    def add_face(self, dim: int, interior_point: Optional[Point] = None) -> int:
        self._dims.append(dim)
        self._ips.append(interior_point)
        self._up.append([])
        self._down.append([])
        return len(self._dims) - 1

    def link(self, sub: int, sup: int) -> None:
        self._up[sub].append(sup)
        self._down[sup].append(sub)

    def freeze(self) -> FaceLattice:
        n = len(self._dims)
        vids = [None] * n
        ips = list(self._ips)
        for i in sorted(range(n), key=self._dims.__getitem__):
            k = self._dims[i]
            if k == -1:
                vids[i] = ()
            elif k == 0:
                vids[i] = (i,)
            else:
                vids[i] = tuple(sorted({v for c in self._down[i] for v in vids[c]}))
                if ips[i] is None:
                    ips[i] = linalg.centroid([ips[v] for v in vids[i]])
        nodes = tuple(
            FaceNode(i, self._dims[i], ips[i], vids[i], tuple(self._up[i]), tuple(self._down[i]))
            for i in range(n)
        )
        return FaceLattice(self.ambient_dim, nodes)


def interior_point_of(points: Sequence[Point]) -> Point:
    """Centroid of a face's vertices; strictly inside the face's relative interior."""
    return linalg.centroid(list(points))


def from_vertex_sets(ambient_dim: int, points: Sequence[Point], faces: Sequence,
                     interior_points: Optional[dict] = None, top_point: Optional[Point] = None) -> FaceLattice:
    """Build a lattice from vertex coordinates and per-face vertex index sets.

    ``faces`` holds ``(dim, vertex_indices)`` pairs for the faces of dimension
    1 .. D-1; vertices, the null face and the top face are implicit.
    Incidences are reconstructed by vertex-set containment.
    """
    points = [linalg.as_point(p) for p in points]
    interior_points = interior_points or {}
    b = LatticeBuilder(ambient_dim)
    bottom = b.add_face(-1)
    vids = [b.add_face(0, p) for p in points]
    for v in vids:
        b.link(bottom, v)
    top_dim = linalg.affine_dim(points)
    by_dim = defaultdict(list)  # dim -> [(node id, frozenset of vertex indices)]
    by_dim[0] = [(vids[i], frozenset([i])) for i in range(len(points))]
    for idx, (k, verts) in enumerate(faces):
        if k <= 0 or k >= top_dim:
            continue
        nid = b.add_face(k, interior_points.get(idx))
        by_dim[k].append((nid, frozenset(verts)))
    if top_dim > 0:
        top = b.add_face(top_dim, top_point)
        by_dim[top_dim] = [(top, frozenset(range(len(points))))]
    for k in range(1, top_dim + 1):
        for nid, vs in by_dim[k]:
            for sid, svs in by_dim[k - 1]:
                if svs <= vs:
                    b.link(sid, nid)
    return b.freeze()


def faces_of_dim(L: FaceLattice, k: int) -> list:
    if not -1 <= k <= L.dim:
        raise ValueError(f"face dimension {k} outside [-1, {L.dim}]")
    return list(L.layers[k])


def f_vector(L: FaceLattice) -> tuple:
    return tuple(len(L.layers[k]) for k in range(L.dim))


def euler_check(L: FaceLattice) -> bool:
    D = L.dim
    layers = L.layers
    return sum((-1) ** k * len(layers.get(k, ())) for k in range(D)) == 1 - (-1) ** D


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, msg: str) -> None:
        self.violations.append(msg)


def validate_lattice(L: FaceLattice, geometric: bool = True) -> ValidationReport:
    """Check structural and geometric lattice invariants; never raises."""
    rep = ValidationReport()
    nodes = L.nodes
    n = len(nodes)
    for i, node in enumerate(nodes):
        if node.id != i:
            rep.add(f"node {i}: stored id {node.id}")
    if rep.violations:
        return rep
    D = L.dim
    layers = L.layers
    if len(layers.get(-1, ())) != 1:
        rep.add(f"expected exactly one null face, found {len(layers.get(-1, ()))}")
    if len(layers.get(D, ())) != 1:
        rep.add(f"expected exactly one top face, found {len(layers.get(D, ()))}")
    if D > L.ambient_dim:
        rep.add(f"top dimension {D} exceeds ambient dimension {L.ambient_dim}")
    if rep.violations:
        return rep

    for node in nodes:
        for u in node.up:
            if not 0 <= u < n or nodes[u].dim != node.dim + 1:
                rep.add(f"face {node.id}: up-arc to {u} skips a layer")
            elif node.id not in nodes[u].down:
                rep.add(f"face {node.id}: up-arc to {u} has no matching down-arc")
        for dn in node.down:
            if not 0 <= dn < n or nodes[dn].dim != node.dim - 1:
                rep.add(f"face {node.id}: down-arc to {dn} skips a layer")
            elif node.id not in nodes[dn].up:
                rep.add(f"face {node.id}: missing up-arc from {dn}")
        if node.dim < D and not node.up:
            rep.add(f"face {node.id} (dim {node.dim}) has no superface")
        if node.dim > -1 and not node.down:
            rep.add(f"face {node.id} (dim {node.dim}) has no subface")
        if node.dim == 0:
            if node.vertex_ids != (node.id,):
                rep.add(f"vertex {node.id}: vertex_ids {node.vertex_ids}")
            if node.interior_point is None or len(node.interior_point) != L.ambient_dim:
                rep.add(f"vertex {node.id}: missing or mis-sized coordinate")
        elif node.dim >= 1:
            union = {v for c in node.down if 0 <= c < n for v in nodes[c].vertex_ids}
            if union != set(node.vertex_ids) or len(node.vertex_ids) != len(union):
                rep.add(f"face {node.id}: vertex-union mismatch with its subfaces")
            if node.interior_point is None:
                rep.add(f"face {node.id}: missing interior point")
    if rep.violations:
        return rep

    # diamond property: every (k-1)-face below a (k+1)-face sits under exactly two k-faces
    for g in nodes:
        if g.dim < 1:
            continue
        count = defaultdict(int)
        for c in g.down:
            for f in nodes[c].down:
                count[f] += 1
        for f, c in count.items():
            if c != 2:
                rep.add(f"diamond violated between face {f} and face {g.id}: {c} middle faces")
    if not euler_check(L):
        rep.add(f"Euler relation fails for f-vector {f_vector(L)}")
    if geometric and rep.ok:
        _validate_geometry(L, rep)
    return rep


def _validate_geometry(L: FaceLattice, rep: ValidationReport) -> None:
    nodes = L.nodes
    for node in nodes:
        if node.dim < 1:
            continue
        pts = L.face_points(node.id)
        basis = L.basis(node.id)
        if len(basis) != node.dim:
            rep.add(f"face {node.id}: vertex set has affine dimension {len(basis)}, expected {node.dim}")
            continue
        ip = node.interior_point
        if linalg.solve_in_span(basis, linalg.sub(ip, pts[0])) is None:
            rep.add(f"face {node.id}: interior point outside the face's affine hull")
            continue
        for s in node.down:
            if not _strictly_beyond(L, node.id, s, ip):
                rep.add(f"face {node.id}: interior point not strictly inside w.r.t. subface {s}")
    D = L.dim
    if D == L.ambient_dim and D >= 1:
        allpts = [L.point(v) for v in L.vertices]
        for fid in L.layers[D - 1]:
            basis = L.basis(fid)
            if len(basis) != D - 1:
                continue
            normal = linalg.orthogonal_complement_1d(basis) if D > 1 else (1,)
            h = linalg.Hyperplane.through(normal, L.point(nodes[fid].vertex_ids[0]))
            on = set(nodes[fid].vertex_ids)
            signs = set()
            for v, p in zip(L.vertices, allpts):
                s = linalg.side_of(h, p)
                if (s == 0) != (v in on):
                    rep.add(f"facet {fid}: vertex {v} misplaced relative to its hyperplane")
                    break
                if s:
                    signs.add(s)
            if len(signs) > 1:
                rep.add(f"facet {fid}: vertices on both sides of its hyperplane")


def _strictly_beyond(L: FaceLattice, fid: int, sid: int, p: Point) -> bool:
    """True if ``p`` lies strictly on the face's side of subface ``sid``."""
    face_pts = L.face_points(fid)
    sub = L.nodes[sid]
    if sub.dim == -1:
        return True
    sub_pts = L.face_points(sid)
    origin = sub_pts[0]
    sub_basis = L.basis(sid)
    on = set(sub.vertex_ids)
    for v, w in zip(L.nodes[fid].vertex_ids, face_pts):
        if v in on:
            continue
        extra = linalg.sub(w, origin)
        if linalg.rank(sub_basis + [extra]) == len(sub_basis) + 1:
            break
    else:
        return False
    coeffs = linalg.solve_in_span(sub_basis + [extra], linalg.sub(p, origin))
    return coeffs is not None and coeffs[-1] > 0


def require_valid(L: FaceLattice) -> FaceLattice:
    rep = validate_lattice(L)
    if not rep.ok:
        raise ValidationFailure(rep)
    return L


def lattice_isomorphic(L1: FaceLattice, L2: FaceLattice) -> bool:
    """Compare two lattices face-by-face via their vertex-coordinate sets."""
    if L1.ambient_dim != L2.ambient_dim or L1.dim != L2.dim:
        return False
    if len(L1.nodes) != len(L2.nodes):
        return False
    keys1 = [L1.vertex_key(n.id) for n in L1.nodes]
    keys2 = [L2.vertex_key(n.id) for n in L2.nodes]
    index2 = {}
    for node, k in zip(L2.nodes, keys2):
        index2[(node.dim, k)] = node.id
    if len(index2) != len(L2.nodes):
        return False
    mapping = {}
    for node, k in zip(L1.nodes, keys1):
        other = index2.get((node.dim, k))
        if other is None:
            return False
        mapping[node.id] = other
    if len(set(mapping.values())) != len(mapping):
        return False
    for node in L1.nodes:
        image = L2.nodes[mapping[node.id]]
        if {mapping[d] for d in node.down} != set(image.down):
            return False
        if {mapping[u] for u in node.up} != set(image.up):
            return False
    return True


def point_polytope(p, label: str = "point") -> Polytope:
    """The single-point polytope ``{p}``."""
    p = linalg.as_point(p)
    b = LatticeBuilder(len(p))
    bottom = b.add_face(-1)
    v = b.add_face(0, p)
    b.link(bottom, v)
    return Polytope(b.freeze(), label)


def cuboid(lo: Sequence, hi: Sequence, label: str = "cuboid") -> Polytope:
    """Axis-aligned box in any dimension, built from its vertex sets."""
    lo = linalg.as_point(lo)
    hi = linalg.as_point(hi)
    d = len(lo)
    corners = []
    for mask in range(2 ** d):
        corners.append(tuple(hi[i] if mask >> i & 1 else lo[i] for i in range(d)))
    faces = []
    # a k-face fixes d-k coordinates to lo or hi
    for k in range(1, d):
        for fixed in combinations(range(d), d - k):
            for choice in product((0, 1), repeat=d - k):
                verts = [m for m in range(2 ** d)
                         if all((m >> i & 1) == c for i, c in zip(fixed, choice))]
                faces.append((k, verts))
    return Polytope(from_vertex_sets(d, corners, faces), label)

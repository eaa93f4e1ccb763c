"""JSON lattice files, polygon files and OFF export.

Lattice file layout (rationals are always ``"num/den"`` strings)::

    {"format": "minksum-lattice", "version": 1, "dim": 3, "label": "cube",
     "vertices": [["0/1", "0/1", "0/1"], ...],
     "faces": [{"dim": 1, "vertices": [0, 1]}, ...],
     "interior_point": [...]}

``faces`` lists the faces of dimension 1 .. D-1; vertices, the null face and
the top face are implicit.  A face may carry an ``interior_point``; missing
ones are recomputed as centroids.  Incidences are rebuilt by vertex-set
containment unless faces carry explicit ``down`` (and optionally ``up``)
lists.  Those use one id space: vertices are ``0 .. V-1`` and ``faces[i]``
is ``V + i``; the top face is ``V + len(faces)``.
"""

import json
import os
import tempfile
from collections import defaultdict
from fractions import Fraction
from pathlib import Path

from . import linalg
from .errors import ParseError, ValidationFailure
from .lattice import FaceLattice, FaceNode, Polytope, from_vertex_sets, validate_lattice
from .minkd import facet_outward_normal
from .planar import ConvexPolygon, polygon_to_polytope, polytope_to_polygon

FORMAT = "minksum-lattice"
POLYGON_FORMAT = "minksum-polygon"
VERSION = 1


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"{where}: expected a 'num/den' string or an integer, got {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: bad rational {value!r}") from exc


def _point(value, dim: int, where: str) -> tuple:
    if not isinstance(value, list) or len(value) != dim:
        raise ParseError(f"{where}: expected a list of {dim} coordinates")
    return tuple(_rational(c, f"{where}[{i}]") for i, c in enumerate(value))


def _int_list(value, bound: int, where: str) -> list:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list of ids")
    for i, x in enumerate(value):
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < bound:
            raise ParseError(f"{where}[{i}]: id {x!r} out of range [0, {bound})")
    return value


def polytope_to_dict(P: Polytope, arcs: bool = False) -> dict:
    L = P.lattice
    D = L.dim
    order = list(L.vertices)
    for k in range(1, D):
        order.extend(L.layers[k])
    file_id = {nid: i for i, nid in enumerate(order)}
    nverts = len(L.vertices)
    faces = []
    for nid in order[nverts:]:
        node = L.nodes[nid]
        entry = {
            "dim": node.dim,
            "vertices": [file_id[v] for v in node.vertex_ids],
            "interior_point": [format_rational(c) for c in node.interior_point],
        }
        if arcs:
            entry["down"] = [file_id[s] for s in node.down]
        faces.append(entry)
    doc = {
        "format": FORMAT,
        "version": VERSION,
        "dim": L.ambient_dim,
        "label": P.label,
        "vertices": [[format_rational(c) for c in L.point(v)] for v in L.vertices],
        "faces": faces,
    }
    if D > 0:
        doc["interior_point"] = [format_rational(c) for c in L.nodes[L.top].interior_point]
    return doc


def polytope_from_dict(doc, validate: bool = True) -> Polytope:
    if not isinstance(doc, dict):
        raise ParseError("top level: expected a JSON object")
    if doc.get("format") != FORMAT:
        raise ParseError(f"format: expected {FORMAT!r}, got {doc.get('format')!r}")
    if doc.get("version") != VERSION:
        raise ParseError(f"version: unsupported version {doc.get('version')!r}")
    d = doc.get("dim")
    if not isinstance(d, int) or d < 1:
        raise ParseError(f"dim: expected a positive integer, got {d!r}")
    raw_vertices = doc.get("vertices")
    if not isinstance(raw_vertices, list) or not raw_vertices:
        raise ParseError("vertices: expected a nonempty list")
    points = [_point(v, d, f"vertices[{i}]") for i, v in enumerate(raw_vertices)]
    nverts = len(points)
    raw_faces = doc.get("faces", [])
    if not isinstance(raw_faces, list):
        raise ParseError("faces: expected a list")
    faces = []
    ips = {}
    explicit = False
    for i, f in enumerate(raw_faces):
        where = f"faces[{i}]"
        if not isinstance(f, dict):
            raise ParseError(f"{where}: expected an object")
        k = f.get("dim")
        if not isinstance(k, int) or not 1 <= k < d:
            raise ParseError(f"{where}.dim: expected an integer in [1, {d - 1}], got {k!r}")
        verts = _int_list(f.get("vertices"), nverts, f"{where}.vertices")
        if "interior_point" in f and f["interior_point"] is not None:
            ips[i] = _point(f["interior_point"], d, f"{where}.interior_point")
        explicit = explicit or "down" in f
        faces.append((k, verts))
    top_ip = None
    if doc.get("interior_point") is not None:
        top_ip = _point(doc["interior_point"], d, "interior_point")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise ParseError("label: expected a string")
    if explicit:
        L = _explicit_lattice(d, points, raw_faces, faces, ips, top_ip)
    else:
        L = from_vertex_sets(d, points, faces, ips, top_ip)
    if validate:
        rep = validate_lattice(L)
        if not rep.ok:
            raise ValidationFailure(rep)
    return Polytope(L, label)


def _explicit_lattice(d, points, raw_faces, faces, ips, top_ip) -> FaceLattice:
    """Nodes exactly as declared in the file, inconsistencies included."""
    nv, nf = len(points), len(faces)
    top_fid = nv + nf
    top_dim = linalg.affine_dim(points)
    downs = {}
    ups = {}
    for i, f in enumerate(raw_faces):
        downs[nv + i] = _int_list(f.get("down", []), top_fid, f"faces[{i}].down")
        if "up" in f:
            ups[nv + i] = _int_list(f["up"], top_fid + 1, f"faces[{i}].up")
    if top_dim == 1:
        downs[top_fid] = list(range(nv))
    else:
        downs[top_fid] = [nv + i for i, (k, _) in enumerate(faces) if k == top_dim - 1]
    derived = defaultdict(list)
    for sup, subs in downs.items():
        for s in subs:
            derived[s].append(sup)

    def node_ids(fids):
        # node 0 is the null face
        return tuple(x + 1 for x in fids)

    nodes = [FaceNode(0, -1, None, (), node_ids(range(nv)), ())]
    for v, p in enumerate(points):
        nodes.append(FaceNode(v + 1, 0, p, (v + 1,), node_ids(derived[v]), (0,)))
    for i, (k, verts) in enumerate(faces):
        fid = nv + i
        ip = ips.get(i) or linalg.centroid([points[v] for v in verts])
        nodes.append(FaceNode(fid + 1, k, ip, node_ids(sorted(set(verts))),
                              node_ids(ups.get(fid, derived[fid])), node_ids(downs[fid])))
    ip = top_ip or linalg.centroid(points)
    nodes.append(FaceNode(top_fid + 1, top_dim, ip, node_ids(range(nv)), (), node_ids(downs[top_fid])))
    return FaceLattice(d, tuple(nodes))


def _atomic_write(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_polytope(P: Polytope, path, arcs: bool = False) -> None:
    _atomic_write(path, json.dumps(polytope_to_dict(P, arcs), indent=1) + "\n")


def _read_json(path):
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def load_polytope(path, validate: bool = True) -> Polytope:
    doc = _read_json(path)
    if isinstance(doc, dict) and doc.get("format") == POLYGON_FORMAT:
        return polygon_to_polytope(polygon_from_dict(doc), doc.get("label", "polygon"))
    try:
        return polytope_from_dict(doc, validate)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def polygon_from_dict(doc) -> ConvexPolygon:
    verts = doc.get("vertices")
    if not isinstance(verts, list):
        raise ParseError("vertices: expected a list")
    return ConvexPolygon(tuple(_point(v, 2, f"vertices[{i}]") for i, v in enumerate(verts)))


def polygon_to_dict(P: ConvexPolygon, label: str = "") -> dict:
    return {
        "format": POLYGON_FORMAT,
        "version": VERSION,
        "label": label,
        "vertices": [[format_rational(c) for c in v] for v in P.vertices],
    }


def load_polygon(path) -> ConvexPolygon:
    """Read a polygon from either a polygon file or a 2-d lattice file."""
    doc = _read_json(path)
    if isinstance(doc, dict) and doc.get("format") == POLYGON_FORMAT:
        return polygon_from_dict(doc)
    return polytope_to_polygon(polytope_from_dict(doc))


def save_polygon(P: ConvexPolygon, path, label: str = "") -> None:
    _atomic_write(path, json.dumps(polygon_to_dict(P, label), indent=1) + "\n")


def off_string(P: Polytope) -> str:
    """OFF text for a 3-polytope: vertices plus one outward-wound ring per facet.

    Coordinates are written as decimals, OFF readers expect floats.
    """
    L = P.lattice
    if L.ambient_dim != 3 or L.dim != 3:
        raise ValueError("OFF export needs a full-dimensional 3-polytope")
    index = {v: i for i, v in enumerate(L.vertices)}
    lines = ["OFF", f"{len(L.vertices)} {len(L.layers[2])} {len(L.layers[1])}"]
    for v in L.vertices:
        lines.append(" ".join(repr(float(c)) for c in L.point(v)))
    for fid in L.layers[2]:
        ring = _facet_ring(L, fid)
        lines.append(" ".join(str(x) for x in [len(ring)] + [index[v] for v in ring]))
    return "\n".join(lines) + "\n"


def _facet_ring(L: FaceLattice, fid: int) -> list:
    nbrs = {}
    for e in L.nodes[fid].down:
        a, b = L.nodes[e].vertex_ids
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    start = min(nbrs)
    ring, prev, cur = [start], None, start
    while True:
        nxt = next(x for x in nbrs[cur] if x != prev)
        if nxt == start:
            break
        ring.append(nxt)
        prev, cur = cur, nxt
    n = facet_outward_normal(L, fid)
    p0, p1, p2 = (L.point(v) for v in ring[:3])
    e1, e2 = linalg.sub(p1, p0), linalg.sub(p2, p1)
    turn = (e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2], e1[0] * e2[1] - e1[1] * e2[0])
    if linalg.dot(turn, n) < 0:
        ring.reverse()
    return ring


def save_off(P: Polytope, path) -> None:
    _atomic_write(path, off_string(P))


"""Simultaneous Minkowski sum of several convex polytopes.

Same three passes as the pairwise algorithm, with face tuples instead of
face pairs: stage 1 fixes one facet at a time and takes support vertices of
all other polytopes, stage 2 tests every remaining dimension composition,
and stage 3 is the shared lattice descent keyed by the whole tuple.
"""

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .errors import DegeneracyError, DegeneracyReport, DegenerateTie, NotFullDimensional
from .lattice import FaceLattice, Polytope
from .minkd import (
    FAST,
    PARANOID,
    SumStats,
    _check_input,
    _tuple_facet_normal,
    build_sum_lattice,
    facet_outward_normal,
    support_vertex,
    verify_support,
)


@dataclass(frozen=True)
class FaceTuple:
    ids: tuple
    dims: tuple
    normal: tuple


def _compositions(total: int, caps: Sequence[int]):
    """Tuples ``k`` with ``0 <= k[i] <= caps[i]`` summing to ``total``, lexicographic."""
    if not caps:
        if total == 0:
            yield ()
        return
    for k in range(min(total, caps[0]) + 1):
        for rest in _compositions(total - k, caps[1:]):
            yield (k,) + rest


def multi_stage1(polys: Sequence[Polytope], stats: Optional[SumStats] = None) -> list:
    out = []
    report = DegeneracyReport()
    for i, Pi in enumerate(polys):
        Li = Pi.lattice
        if Li.dim != Li.ambient_dim:
            continue
        d = Li.ambient_dim
        for f in Li.layers[d - 1]:
            n = facet_outward_normal(Li, f)
            ids = []
            dims = []
            try:
                for j, Pj in enumerate(polys):
                    if j == i:
                        ids.append(f)
                        dims.append(d - 1)
                    else:
                        if stats is not None:
                            stats.pairs_tested += len(Pj.lattice.vertices)
                        ids.append(support_vertex(Pj, n))
                        dims.append(0)
            except DegenerateTie as exc:
                report.witnesses.extend(dict(w, slot=i, facet=f) for w in exc.report.witnesses)
                continue
            out.append(FaceTuple(tuple(ids), tuple(dims), n))
    if report:
        raise DegenerateTie(str(report), (), report)
    return out


def multi_stage2(polys: Sequence[Polytope], stats: Optional[SumStats] = None) -> list:
    """Facet tuples whose dimension composition has two or more positive slots."""
    lattices = [P.lattice for P in polys]
    d = lattices[0].ambient_dim
    out = []
    report = DegeneracyReport()
    for comp in _compositions(d - 1, [L.dim for L in lattices]):
        if sum(1 for k in comp if k) < 2:
            continue
        layers = [L.layers[k] for L, k in zip(lattices, comp)]
        for ids in product(*layers):
            if stats is not None:
                stats.pairs_tested += 1
            try:
                n = _tuple_facet_normal(lattices, ids, {"tuple": ids})
            except DegeneracyError as exc:
                report.witnesses.extend(exc.report.witnesses)
                continue
            if n is not None:
                out.append(FaceTuple(tuple(ids), comp, n))
    if report:
        raise DegeneracyError(str(report), report)
    return out


def _copy(P: Polytope) -> Polytope:
    L = P.lattice
    return Polytope(FaceLattice(L.ambient_dim, L.nodes), P.label)


def multi_minkowski_sum(polys: Sequence[Polytope], mode: str = FAST,
                        stats: Optional[SumStats] = None, validate: bool = True) -> Polytope:
    if not polys:
        raise ValueError("need at least one polytope")
    if mode not in (FAST, PARANOID):
        raise ValueError(f"unknown mode {mode!r}")
    if len({P.dim for P in polys}) != 1:
        raise ValueError("all polytopes must share the ambient dimension")
    for P in polys:
        _check_input(P)
    if len(polys) == 1:
        return _copy(polys[0])
    if all(P.lattice.dim == 0 for P in polys):
        raise NotFullDimensional("sum of points is not full-dimensional")
    report = DegeneracyReport()
    tuples = []
    for run in (multi_stage1, multi_stage2):
        try:
            tuples.extend(run(polys, stats))
        except DegeneracyError as exc:
            report.witnesses.extend(exc.report.witnesses)
    if report:
        raise DegeneracyError(str(report), report)
    lattices = [P.lattice for P in polys]
    if mode == PARANOID:
        for t in tuples:
            verify_support(lattices, t.ids, t.normal)
    label = "+".join(P.label for P in polys)
    out = build_sum_lattice(polys, [t.ids for t in tuples], label, validate)
    if stats is not None:
        stats.facets = len(tuples)
        stats.nodes = len(out.lattice.nodes)
    return out

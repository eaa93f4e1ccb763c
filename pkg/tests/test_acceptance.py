"""Acceptance checks for the whole kernel.

Each check prints one PASS/FAIL line.  Run under pytest (lines appear in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""

import subprocess
import sys
import tempfile
import time
from fractions import Fraction as F
from pathlib import Path

import pytest

from minksum.bench import bench_pair, time_sum
from minksum.errors import DegeneracyError
from minksum.fileio import save_polytope
from minksum.gen import GenSpec, generic_rotate, random_convex_polygon, random_polytope
from minksum.lattice import (
    cuboid,
    euler_check,
    f_vector,
    lattice_isomorphic,
    point_polytope,
    validate_lattice,
)
from minksum.minkd import FAST, PARANOID, certificate_violations, minkowski_sum
from minksum.multi import multi_minkowski_sum
from minksum.oracle import brute_hull, oracle_minkowski, support_certificate_violations, vertex_sums
from minksum.planar import (
    SweepStats,
    polygon_to_polytope,
    polytope_to_polygon,
    sum_polygons,
    sum_polygons_multi,
)

RESULTS = {}
# every polytope built by a pipeline below, with the inputs it came from
PRODUCED = []


def record(num, title, check):
    t0 = time.perf_counter()
    try:
        detail = check()
    except BaseException as exc:
        line = f"[{num}] {title}: FAIL ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
        RESULTS[num] = line
        print(line)
        raise
    line = f"[{num}] {title}: PASS ({detail}; {time.perf_counter() - t0:.1f} s)"
    RESULTS[num] = line
    print(line)


def keep(out, inputs):
    PRODUCED.append((out, tuple(inputs)))
    return out


# ---------------------------------------------------------------- fixtures

def polygon_pair(seed):
    n = 6 + seed % 9
    m = 6 + (seed * 7 + 3) % 9
    P = polygon_to_polytope(random_convex_polygon(n, 2 * seed + 1, 1000), f"poly{seed}a")
    Q = polygon_to_polytope(random_convex_polygon(m, 2 * seed + 2, 1000), f"poly{seed}b")
    return P, generic_rotate(Q, seed + 1)


def random_pair(dim, max_points, seed):
    n = dim + 1 + seed % (max_points - dim)
    P = random_polytope(GenSpec(dim, n, 1000 + seed, coordinate_bound=50))
    Q = random_polytope(GenSpec(dim, n, 5000 + seed, coordinate_bound=50))
    return P, generic_rotate(Q, seed + 1)


def circle_arc(n, shift):
    """``n`` rational points on the unit circle, all with negative x."""
    out = []
    for k in range(n):
        t = F(-4, 5) + F(8, 5) * F(k, n - 1) + shift
        out.append((-(1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)))
    return out


def flat_bipyramid(n, axis, shift):
    """Circle arc in a coordinate plane plus two close apexes off that plane.

    Vertex normal cones of the arc points are thin wedges around the plane's
    normal axis; pairing an arc around z with one around y makes nearly every
    pair of wedges overlap, so the sum has about |P0| * |Q0| vertices.
    """
    h, c = F(1, 10), F(-3, 5)
    if axis == "z":
        pts = [(a, b, 0) for a, b in circle_arc(n, shift)] + [(c, 0, h), (c, 0, -h)]
    else:
        pts = [(a, 0, b) for a, b in circle_arc(n, shift)] + [(c, h, 0), (c, -h, 0)]
    return brute_hull(pts, f"lens-{axis}{n}")


# ---------------------------------------------------------------- checks

def planar_pairs_match_oracle():
    for seed in range(200):
        P, Q = polygon_pair(seed)
        O = oracle_minkowski([P, Q])
        stats = SweepStats()
        S2 = polygon_to_polytope(sum_polygons(polytope_to_polygon(P), polytope_to_polygon(Q), stats))
        assert stats.total <= 2 * (len(P.vertices) + len(Q.vertices))
        S = keep(minkowski_sum(P, Q), (P, Q))
        keep(S2, (P, Q))
        assert lattice_isomorphic(S2.lattice, O.lattice), f"sum2d differs on seed {seed}"
        assert lattice_isomorphic(S.lattice, O.lattice), f"sum differs on seed {seed}"
    return "200 pairs, sum2d and sum both isomorphic to the oracle"


def pairs_match_oracle(dim, count, max_points):
    facets = 0
    for seed in range(count):
        P, Q = random_pair(dim, max_points, seed)
        assert len(P.vertices) <= max_points and len(Q.vertices) <= max_points
        fast = keep(minkowski_sum(P, Q, FAST), (P, Q))
        careful = minkowski_sum(P, Q, PARANOID)
        O = oracle_minkowski([P, Q])
        assert lattice_isomorphic(fast.lattice, O.lattice), f"seed {seed} differs from the oracle"
        assert lattice_isomorphic(careful.lattice, fast.lattice), f"seed {seed}: paranoid disagrees"
        facets += f_vector(fast.lattice)[dim - 1]
    return f"{count} pairs, {facets} facets all verified"


def triples_are_consistent():
    for seed in range(30):
        dim = 2 + seed % 2
        polys = [generic_rotate(random_polytope(GenSpec(dim, dim + 2 + (seed + i) % 4, 300 + 3 * seed + i,
                                                         coordinate_bound=30)), seed + 10 * i + 1)
                 for i in range(3)]
        S = keep(multi_minkowski_sum(polys), polys)
        left = minkowski_sum(minkowski_sum(polys[0], polys[1]), polys[2])
        right = minkowski_sum(polys[0], minkowski_sum(polys[1], polys[2]))
        O = oracle_minkowski(polys)
        for other, name in ((left, "(P+Q)+R"), (right, "P+(Q+R)"), (O, "oracle")):
            assert lattice_isomorphic(S.lattice, other.lattice), f"seed {seed}: differs from {name}"
    return "30 triples match both pairwise orders and the oracle"


def _best_time(P, Q, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        sum_polygons(P, Q)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def planar_sum_is_linear():
    worst = 0.0
    for seed in range(200):
        P, Q = (polytope_to_polygon(X) for X in polygon_pair(seed))
        stats = SweepStats()
        sum_polygons(P, Q, stats)
        worst = max(worst, stats.total / (2 * (len(P) + len(Q))))
        stats = SweepStats()
        sum_polygons_multi([P, Q, P], stats)
        worst = max(worst, stats.total / (2 * (2 * len(P) + len(Q))))
    times = {}
    for n in (10 ** 3, 10 ** 4, 10 ** 5):
        P, Q = random_convex_polygon(n, 11), random_convex_polygon(n, 12)
        stats = SweepStats()
        sum_polygons(P, Q, stats)
        assert stats.total <= 2 * (len(P) + len(Q))
        worst = max(worst, stats.total / (2 * (len(P) + len(Q))))
        times[n] = _best_time(P, Q, 3 if n < 10 ** 5 else 2)
    assert worst <= 1
    ratios = [times[10 * n] / times[n] for n in (10 ** 3, 10 ** 4)]
    for r in ratios:
        assert 5 <= r <= 20, f"decade time ratio {r:.2f} outside [5, 20]"
    shown = ", ".join(f"{r:.1f}x" for r in ratios)
    return f"steps <= {worst:.2f} * 2(n+m), decade ratios {shown}"


def pairwise_work_scales_with_nm():
    rows = []
    for points in (10, 20, 40):
        recs = [time_sum(*bench_pair(3, points, seed, convex_position=True), repeat=2) for seed in (1, 2)]
        for r in recs:
            assert r.pairs_tested <= r.n_size * r.m_size
        nm = sum(r.n_size * r.m_size for r in recs)
        ms = sum(r.millis for r in recs)
        rows.append((nm, ms))
    for (nm0, ms0), (nm1, ms1) in zip(rows, rows[1:]):
        ratio = (ms1 / ms0) / (nm1 / nm0)
        assert 1 / 3 <= ratio <= 3, f"time grew {ms1 / ms0:.2f}x for {nm1 / nm0:.2f}x more n*m"
    P = flat_bipyramid(8, "z", F(1, 97))
    Q = flat_bipyramid(8, "y", F(1, 61))
    S = keep(minkowski_sum(P, Q, PARANOID), (P, Q))
    O = oracle_minkowski([P, Q])
    assert lattice_isomorphic(S.lattice, O.lattice)
    share = len(S.vertices) / (len(P.vertices) * len(Q.vertices))
    assert share >= 0.5
    growth = ", ".join(f"{b[1] / a[1]:.1f}x time for {b[0] / a[0]:.1f}x nm" for a, b in zip(rows, rows[1:]))
    return f"{growth}; stress pair has {len(S.vertices)} = {share:.2f} |P0||Q0| vertices"


def everything_is_structurally_sound():
    own = []
    for seed in range(4):
        for dim in (2, 3, 4):
            P, Q = random_pair(dim, dim + 4, 900 + seed)
            own.append((minkowski_sum(P, Q, PARANOID), (P, Q)))
            own.append((oracle_minkowski([P, Q]), (P, Q)))
        polys = [generic_rotate(random_polytope(GenSpec(3, 6, 70 + seed + i)), i + 1) for i in range(3)]
        own.append((multi_minkowski_sum(polys), tuple(polys)))
        tri = [polygon_to_polytope(random_convex_polygon(8, seed * 3 + i, 500)) for i in range(3)]
        own.append((polygon_to_polytope(sum_polygons_multi([polytope_to_polygon(t) for t in tri])), tuple(tri)))
    checked = certified = 0
    for out, inputs in PRODUCED + own:
        L = out.lattice
        rep = validate_lattice(L)
        assert rep.ok, rep.violations[:3]
        assert euler_check(L), f"Euler relation fails for {f_vector(L)}"
        checked += 1
        pairs = 1
        for X in inputs:
            pairs *= len(X.vertices)
        if pairs <= 10 ** 4:
            if out.generators is not None:
                assert certificate_violations(out, list(inputs)) == []
            else:
                assert support_certificate_violations(out, vertex_sums(list(inputs))) == []
            certified += 1
    return f"{checked} outputs valid, {certified} certified against all vertex sums"


def degeneracy_is_detected():
    cube = cuboid((0, 0, 0), (1, 1, 1), "cube")
    with pytest.raises(DegeneracyError) as exc:
        minkowski_sum(cube, cube)
    assert exc.value.report.witnesses
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "cube.json"
        save_polytope(cube, path)
        proc = subprocess.run([sys.executable, "-m", "minksum.cli", "sum", str(path), str(path)],
                              capture_output=True, text=True)
    assert proc.returncode == 2 and "degeneracy report" in proc.stderr
    R = generic_rotate(cube, 3)
    S = keep(minkowski_sum(cube, R, PARANOID), (cube, R))
    assert lattice_isomorphic(S.lattice, oracle_minkowski([cube, R]).lattice)
    assert f_vector(oracle_minkowski([cube, cube]).lattice) == (8, 12, 6)
    return (f"{len(exc.value.report.witnesses)} witnesses, CLI exit 2, "
            f"rotated sum {f_vector(S.lattice)} matches the oracle")


def cuboid_ground_truth():
    C = cuboid((0, 0, 0), (3, 2, 1), "cuboid")
    assert f_vector(C.lattice) == (8, 12, 6)
    q = (F(1, 2), -4, 7)
    S = keep(minkowski_sum(C, point_polytope(q)), (C, point_polytope(q)))
    moved = C.lattice.translated(q)
    assert lattice_isomorphic(S.lattice, moved)
    assert sorted(S.vertices) == sorted(moved.point(v) for v in moved.vertices)
    return "f-vector (8, 12, 6), point sum is the exact translate"


# ---------------------------------------------------------------- runners

CHECKS = {
    1: ("d=2 pairs vs oracle", planar_pairs_match_oracle),
    2: ("d=3 pairs vs oracle, paranoid agrees", lambda: pairs_match_oracle(3, 60, 10)),
    3: ("d=4 pairs vs oracle, paranoid agrees", lambda: pairs_match_oracle(4, 15, 7)),
    4: ("multi sum vs pairwise orders and oracle", triples_are_consistent),
    5: ("planar ring steps and linear time", planar_sum_is_linear),
    6: ("pairwise candidates and time vs n*m, stress output", pairwise_work_scales_with_nm),
    7: ("validation, Euler and support certificates", everything_is_structurally_sound),
    8: ("degenerate cube pair rejected, rotated pair summed", degeneracy_is_detected),
    9: ("cuboid f-vector and point translate", cuboid_ground_truth),
}


def run_check(num):
    title, check = CHECKS[num]
    record(num, title, check)


def test_planar_pairs_match_oracle():
    run_check(1)


def test_d3_pairs_match_oracle():
    run_check(2)


def test_d4_pairs_match_oracle():
    run_check(3)


def test_triples_consistent():
    run_check(4)


def test_planar_sum_is_linear():
    run_check(5)


def test_pairwise_work_scales_with_nm():
    run_check(6)


def test_structural_invariants():
    run_check(7)


def test_degeneracy_detection():
    run_check(8)


def test_cuboid_ground_truth():
    run_check(9)


if __name__ == "__main__":
    failed = 0
    for num in CHECKS:
        try:
            run_check(num)
        except Exception:
            failed += 1
    sys.exit(1 if failed else 0)

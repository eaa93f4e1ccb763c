"""Seeded generation of random polytopes and exact rational rotations.

The generator is a 64-bit LCG so that fixtures can be reproduced from the
seed alone in any language:

    state <- (state * 6364136223846793005 + 1442695040888963407) mod 2**64
    output = state >> 32                      (one 32-bit word per step)

The initial state is the seed itself, followed by one discarded step.  An
integer in ``[lo, hi]`` is ``lo + (word * (hi - lo + 1) >> 32)``.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import GenerationFailed, NotFullDimensional
from .lattice import Polytope
from .oracle import brute_hull

LCG_MULT = 6364136223846793005
LCG_INC = 1442695040888963407
MASK64 = (1 << 64) - 1
MAX_TRIES = 32


class Lcg64:
    def __init__(self, seed: int):
        self.state = seed & MASK64
        self.next_word()

    def next_word(self) -> int:
        self.state = (self.state * LCG_MULT + LCG_INC) & MASK64
        return self.state >> 32

    def randint(self, lo: int, hi: int) -> int:
        span = hi - lo + 1
        if span <= 0:
            raise ValueError("empty range")
        if span > 1 << 32:
            raise ValueError("range wider than 32 bits")
        return lo + (self.next_word() * span >> 32)


@dataclass(frozen=True)
class GenSpec:
    dim: int
    n_points: int
    seed: int
    coordinate_bound: int = 100
    denominator: int = 1
    # lift points onto a paraboloid so every drawn point is a vertex
    convex_position: bool = False

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("dim must be >= 2")
        if self.n_points < self.dim + 1:
            raise ValueError("need at least dim + 1 points")
        if self.coordinate_bound < 1 or self.denominator < 1:
            raise ValueError("coordinate_bound and denominator must be positive")


def _draw(spec: GenSpec, rng: Lcg64) -> list:
    B, den = spec.coordinate_bound, spec.denominator
    pts = []
    for _ in range(spec.n_points):
        if spec.convex_position:
            head = [rng.randint(-B, B) for _ in range(spec.dim - 1)]
            pts.append(tuple(Fraction(c, den) for c in head)
                       + (Fraction(sum(c * c for c in head), den * B),))
        else:
            pts.append(tuple(Fraction(rng.randint(-B, B), den) for _ in range(spec.dim)))
    return pts


def random_polytope(spec: GenSpec, label: str = None) -> Polytope:
    """Hull of ``n_points`` seeded random points; redraws if not full-dimensional."""
    rng = Lcg64(spec.seed)
    for _ in range(MAX_TRIES):
        pts = _draw(spec, rng)
        try:
            return brute_hull(pts, label or f"rand-d{spec.dim}-n{spec.n_points}-s{spec.seed}")
        except NotFullDimensional:
            continue
    raise GenerationFailed(f"no full-dimensional sample after {MAX_TRIES} draws for {spec}")


def _pythagorean(rng: Lcg64):
    # (a^2 - b^2, 2ab, a^2 + b^2) for 1 <= b < a; gives exact cos/sin
    a = rng.randint(2, 999)
    b = rng.randint(1, a - 1)
    c = a * a + b * b
    return Fraction(a * a - b * b, c), Fraction(2 * a * b, c)


def rotation_matrix(dim: int, seed: int) -> list:
    """Product of rational Givens rotations, one per coordinate plane.

    Seed 0 gives the identity.
    """
    m = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    if seed == 0:
        return m
    rng = Lcg64(seed)
    for i in range(dim):
        for j in range(i + 1, dim):
            c, s = _pythagorean(rng)
            for row in m:
                ri, rj = row[i], row[j]
                row[i] = c * ri - s * rj
                row[j] = s * ri + c * rj
    return m


def transpose(m: list) -> list:
    return [list(col) for col in zip(*m)]


def apply_matrix(P: Polytope, m: list, label: str = None) -> Polytope:
    def fn(p):
        return tuple(linalg.dot(tuple(row), p) for row in m)

    return Polytope(P.lattice.mapped(fn), label or P.label)


def generic_rotate(P: Polytope, seed: int, label: str = None) -> Polytope:
    """Exactly rotate every stored point; combinatorics are untouched."""
    if seed == 0:
        return Polytope(P.lattice.mapped(lambda p: p), label or P.label)
    m = rotation_matrix(P.dim, seed)
    return apply_matrix(P, m, label or f"{P.label}@rot{seed}")


def inverse_rotate(P: Polytope, seed: int, label: str = None) -> Polytope:
    return apply_matrix(P, transpose(rotation_matrix(P.dim, seed)), label)


def _shuffle(items: list, rng: Lcg64) -> None:
    for i in range(len(items) - 1, 0, -1):
        j = rng.randint(0, i)
        items[i], items[j] = items[j], items[i]


def _chain_steps(values: list, rng: Lcg64) -> list:
    """Increments walking min -> max along one chain and back along the other."""
    values = sorted(values)
    lo, hi = values[0], values[-1]
    steps = []
    last_a = last_b = lo
    for v in values[1:-1]:
        if rng.randint(0, 1):
            steps.append(v - last_a)
            last_a = v
        else:
            steps.append(last_b - v)
            last_b = v
    steps.append(hi - last_a)
    steps.append(last_b - hi)
    return steps


def _angle_key(v):
    # half-plane first, then exact cross-product order within the half
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def random_convex_polygon(n: int, seed: int, bound: int = 2 ** 31 - 1):
    """Strictly convex integer polygon with at most ``n`` vertices.

    Random x and y increments that each sum to zero are paired, sorted by
    direction and chained; codirectional steps are merged, so the vertex
    count can come out slightly below ``n``.
    """
    from functools import cmp_to_key

    from .planar import ConvexPolygon

    if n < 3:
        raise ValueError("need n >= 3")
    rng = Lcg64(seed)
    xs = _chain_steps([rng.randint(-bound, bound) for _ in range(n)], rng)
    ys = _chain_steps([rng.randint(-bound, bound) for _ in range(n)], rng)
    _shuffle(ys, rng)
    vecs = [(x, y) for x, y in zip(xs, ys) if x or y]

    def cmp(a, b):
        ha, hb = _angle_key(a), _angle_key(b)
        if ha != hb:
            return ha - hb
        c = a[0] * b[1] - a[1] * b[0]
        return -1 if c > 0 else (1 if c < 0 else 0)

    vecs.sort(key=cmp_to_key(cmp))
    merged = []
    for v in vecs:
        if merged and cmp(merged[-1], v) == 0:
            merged[-1] = (merged[-1][0] + v[0], merged[-1][1] + v[1])
        else:
            merged.append(v)
    x = y = 0
    verts = []
    for dx, dy in merged:
        verts.append((x, y))
        x += dx
        y += dy
    if len(verts) < 3:
        raise GenerationFailed(f"degenerate polygon for n={n}, seed={seed}")
    return ConvexPolygon(tuple(verts))

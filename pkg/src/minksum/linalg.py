"""Exact rational linear algebra and sign predicates.

Points and vectors are plain tuples of :class:`fractions.Fraction`.  Nothing
here ever rounds, so every sign test is decided exactly.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegenerateSpan, DimensionMismatch

Point = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)


def as_point(coords: Iterable) -> Point:
    """Coerce ints, Fractions or "num/den" strings into an exact point."""
    out = []
    for c in coords:
        if isinstance(c, float):
            raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
        out.append(Fraction(c))
    return tuple(out)


def _check(a, b):
    if len(a) != len(b):
        raise DimensionMismatch(f"length {len(a)} vs {len(b)}")


def add(a: Point, b: Point) -> Point:
    _check(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Point, b: Point) -> Point:
    _check(a, b)
    return tuple(x - y for x, y in zip(a, b))


def scale(a: Point, s) -> Point:
    return tuple(x * s for x in a)


def neg(a: Point) -> Point:
    return tuple(-x for x in a)


def dot(a: Point, b: Point) -> Fraction:
    _check(a, b)
    return sum((x * y for x, y in zip(a, b)), ZERO)


def sign(x) -> int:
    return (x > 0) - (x < 0)


def is_zero(v: Point) -> bool:
    return not any(v)


def centroid(points: Sequence[Point]) -> Point:
    if not points:
        raise ValueError("centroid of an empty point set")
    d = len(points[0])
    n = len(points)
    return tuple(sum((p[i] for p in points), ZERO) / n for i in range(d))


@dataclass(frozen=True)
class Hyperplane:
    """The set ``{x : normal . x == offset}``; the normal is not normalized."""

    normal: Point
    offset: Fraction

    def __post_init__(self):
        if is_zero(self.normal):
            raise ValueError("hyperplane normal must be nonzero")

    @classmethod
    def through(cls, normal: Point, p: Point) -> "Hyperplane":
        return cls(normal, dot(normal, p))

    def flipped(self) -> "Hyperplane":
        return Hyperplane(neg(self.normal), -self.offset)


def side_of(h: Hyperplane, p: Point) -> int:
    return sign(dot(h.normal, p) - h.offset)


class _Echelon:
    """Incrementally maintained row-echelon form over the rationals."""

    def __init__(self):
        self.rows = []  # (pivot column, row normalized so pivot == 1)

    def reduce(self, v):
        v = [Fraction(x) for x in v]
        for col, row in self.rows:
            c = v[col]
            if c:
                for j in range(len(v)):
                    if row[j]:
                        v[j] -= c * row[j]
        return v

    def insert(self, v) -> bool:
        r = self.reduce(v)
        for col, x in enumerate(r):
            if x:
                self.rows.append((col, [y / x for y in r]))
                return True
        return False


def rank(vectors: Iterable[Point]) -> int:
    ech = _Echelon()
    return sum(ech.insert(v) for v in vectors)


def affine_basis(points: Sequence[Point]) -> list:
    """Independent difference vectors ``p - points[0]`` spanning the affine hull."""
    if not points:
        raise ValueError("affine_basis needs at least one point")
    base = points[0]
    ech = _Echelon()
    basis = []
    for p in points[1:]:
        v = sub(p, base)
        if ech.insert(v):
            basis.append(v)
            if len(basis) == len(base):
                break
    return basis


def affine_dim(points: Sequence[Point]) -> int:
    return len(affine_basis(points)) if points else -1


def determinant(rows: Sequence[Sequence]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    if n == 2:
        (a, b), (c, d) = rows
        return Fraction(a * d - b * c)
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return Fraction(a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g))
    m = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det *= p
        for r in range(col + 1, n):
            f = m[r][col] / p
            if f:
                for j in range(col, n):
                    m[r][j] -= f * m[col][j]
    return det


def orthogonal_complement_1d(vectors: Sequence[Point]) -> Point:
    """Generalized cross product of ``d - 1`` vectors in R^d.

    Raises DegenerateSpan when the vectors are linearly dependent.
    """
    if not vectors:
        raise ValueError("need d - 1 >= 1 vectors")
    d = len(vectors[0])
    if len(vectors) != d - 1:
        raise DimensionMismatch(f"expected {d - 1} vectors in R^{d}, got {len(vectors)}")
    for v in vectors:
        _check(v, vectors[0])
    if d == 2:
        (x, y), = vectors
        n = (-y, x)
    elif d == 3:
        (a1, a2, a3), (b1, b2, b3) = vectors
        n = (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    else:
        n = []
        for i in range(d):
            minor = [[v[j] for j in range(d) if j != i] for v in vectors]
            c = determinant(minor)
            n.append(c if (i + d - 1) % 2 == 0 else -c)
        n = tuple(n)
    if is_zero(n):
        raise DegenerateSpan("input vectors are linearly dependent")
    return n


def solve_in_span(basis: Sequence[Point], v: Point):
    """Coefficients ``c`` with ``sum(c[i] * basis[i]) == v``, or None.

    ``basis`` must be linearly independent.
    """
    k = len(basis)
    d = len(v)
    # augmented d x (k + 1) system, columns are basis vectors
    m = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(d)]
    pivots = []
    row = 0
    for col in range(k):
        piv = next((r for r in range(row, d) if m[r][col]), None)
        if piv is None:
            raise DegenerateSpan("basis is linearly dependent")
        m[row], m[piv] = m[piv], m[row]
        p = m[row][col]
        m[row] = [x / p for x in m[row]]
        for r in range(d):
            if r != row and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
    if any(m[r][k] for r in range(row, d)):
        return None
    return [m[i][k] for i in range(k)]

"""The paired space Z = R^n x R^n with its natural coupling.

A point z = (x, y) pairs the primal coordinate x with the dual coordinate y
(the dual is identified with R^n through the dot product).  The coupling is

    z . z' = <x, y'> + <x', y>,

i.e. z . z' = z^T J z' for the block matrix J = [[0, I], [I, 0]], and the
duality form is c(z) = <x, y> = (1/2) z . z.  J is nondegenerate with
inertia (n, 0, n); everything downstream is sign analysis of c restricted
to subspaces and cones of Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

from .exact import (
    Mat,
    Q,
    QLike,
    Vec,
    is_zero_vec,
    nullspace,
    q,
    rref,
    vec,
    vzero,
)


class DimensionMismatchError(ValueError):
    """Operands live in paired spaces of different dimension."""


@dataclass(frozen=True)
class Point:
    """An element z = (x, y) of Z; both halves are exact rational vectors."""

    x: Vec
    y: Vec

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise DimensionMismatchError("primal and dual parts differ in length")

    @staticmethod
    def of(x: Iterable[QLike], y: Iterable[QLike]) -> "Point":
        return Point(vec(x), vec(y))

    @staticmethod
    def zero(n: int) -> "Point":
        return Point(vzero(n), vzero(n))

    @staticmethod
    def from_vec(v: Vec) -> "Point":
        if len(v) % 2:
            raise DimensionMismatchError("paired vector must have even length")
        n = len(v) // 2
        return Point(tuple(v[:n]), tuple(v[n:]))

    @property
    def n(self) -> int:
        return len(self.x)

    def vec(self) -> Vec:
        return self.x + self.y

    def is_zero(self) -> bool:
        return is_zero_vec(self.x) and is_zero_vec(self.y)

    def __add__(self, other: "Point") -> "Point":
        _same_dim(self, other)
        return Point(
            tuple(a + b for a, b in zip(self.x, other.x)),
            tuple(a + b for a, b in zip(self.y, other.y)),
        )

    def __sub__(self, other: "Point") -> "Point":
        _same_dim(self, other)
        return Point(
            tuple(a - b for a, b in zip(self.x, other.x)),
            tuple(a - b for a, b in zip(self.y, other.y)),
        )

    def __neg__(self) -> "Point":
        return self.scale(-1)

    def scale(self, t: QLike) -> "Point":
        t = q(t)
        return Point(tuple(t * a for a in self.x), tuple(t * a for a in self.y))


def _same_dim(z: Point, w: Point) -> None:
    if z.n != w.n:
        raise DimensionMismatchError(f"dimension mismatch: {z.n} vs {w.n}")


def jvec(v: Vec) -> Vec:
    """J applied to a paired vector: swap the primal and dual halves."""
    n = len(v) // 2
    return v[n:] + v[:n]


def pairing_matrix(n: int) -> Mat:
    """The coupling matrix J = [[0, I], [I, 0]] of Z = R^n x R^n."""
    rows = []
    for i in range(2 * n):
        r = [q(0)] * (2 * n)
        r[(i + n) % (2 * n)] = q(1)
        rows.append(r)
    return Mat.from_rows(rows, ncols=2 * n)


def couple(z: Point, w: Point) -> Q:
    """The coupling z . w = <x_z, y_w> + <x_w, y_z>; symmetric in z, w."""
    _same_dim(z, w)
    s = q(0)
    for a, b in zip(z.x, w.y):
        s += a * b
    for a, b in zip(w.x, z.y):
        s += a * b
    return s


def cval(z: Point) -> Q:
    """The duality form c(z) = <x, y> = (1/2) z . z."""
    s = q(0)
    for a, b in zip(z.x, z.y):
        s += a * b
    return s


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Z in canonical form.

    ``rows`` are the nonzero rows of the reduced row-echelon form of any
    spanning set, so two subspaces are equal iff their canonical rows are
    equal; this makes set equalities (e.g. perp(perp(a)) == a) decidable by
    plain ``==``.
    """

    n: int
    rows: tuple  # tuple of canonical basis vectors, each of length 2n

    @staticmethod
    def from_vectors(n: int, vectors: Iterable[Iterable[QLike]]) -> "Subspace":
        vs = [vec(v) for v in vectors]
        for v in vs:
            if len(v) != 2 * n:
                raise DimensionMismatchError("basis vector has wrong length")
        if not vs:
            return Subspace(n, ())
        red, pivots = rref(Mat.from_rows(vs, ncols=2 * n))
        return Subspace(n, tuple(red.rows[i] for i in range(len(pivots))))

    @staticmethod
    def from_points(n: int, points: Iterable[Point]) -> "Subspace":
        return Subspace.from_vectors(n, (p.vec() for p in points))

    @staticmethod
    def zero(n: int) -> "Subspace":
        return Subspace(n, ())

    @staticmethod
    def full(n: int) -> "Subspace":
        return Subspace.from_vectors(n, Mat.identity(2 * n).rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @cached_property
    def _pivots(self) -> tuple:
        return tuple(
            next(j for j, e in enumerate(r) if e != 0) for r in self.rows
        )

    def basis_points(self) -> tuple:
        return tuple(Point.from_vec(r) for r in self.rows)

    def basis_matrix(self) -> Mat:
        """Basis vectors as the 2n x k column matrix."""
        return Mat.from_rows(self.rows, ncols=2 * self.n).transpose()

    def reduce(self, v: Vec) -> Vec:
        """Residual of v after elimination against the canonical rows."""
        out = list(v)
        for r, p in zip(self.rows, self._pivots):
            f = out[p]
            if f != 0:
                for j in range(p, len(out)):
                    out[j] -= f * r[j]
        return tuple(out)

    def contains(self, z: Union[Point, Vec]) -> bool:
        v = z.vec() if isinstance(z, Point) else z
        if len(v) != 2 * self.n:
            raise DimensionMismatchError("vector has wrong length")
        return is_zero_vec(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def join(self, other: "Subspace") -> "Subspace":
        if self.n != other.n:
            raise DimensionMismatchError("ambient dimensions differ")
        return Subspace.from_vectors(self.n, self.rows + other.rows)

    def equations(self) -> Mat:
        """Rows e with e . v = 0 exactly for every v in the subspace."""
        if not self.rows:
            return Mat.identity(2 * self.n)
        null = nullspace(Mat.from_rows(self.rows, ncols=2 * self.n))
        return null.transpose()


def span_of(*points: Point) -> Subspace:
    if not points:
        raise ValueError("need at least one point to infer the dimension")
    return Subspace.from_points(points[0].n, points)


def perp(a: Subspace) -> Subspace:
    """Coupling-orthogonal complement: {z : b . z = 0 for all basis b}.

    Inclusion-reversing, and an involution in finite dimension because J is
    nondegenerate: dim a + dim perp(a) = 2n and perp(perp(a)) == a.
    """
    if not a.rows:
        return Subspace.full(a.n)
    m = Mat.from_rows([jvec(r) for r in a.rows], ncols=2 * a.n)
    null = nullspace(m)
    return Subspace.from_vectors(a.n, [null.col(j) for j in range(null.ncols)])

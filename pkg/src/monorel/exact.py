"""Exact rational linear algebra kernel.

Scalars are ``gmpy2.mpq`` rationals (arbitrary precision, auto-reduced,
positive denominator), so every verdict downstream is certified: the
classification criteria are sign conditions on quadratic forms, where any
rounding can flip an answer.  Floats are confined to the oracle module.

Matrices are small and dense (ambient dimension is 2n with n <= 8 in
practice), stored as immutable tuples of rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from gmpy2 import mpq

Q = mpq
QLike = Union[mpq, int, str, Fraction]
Vec = tuple  # tuple of Q

_ZERO = mpq(0)
_ONE = mpq(1)


def q(value: QLike, den: Optional[int] = None) -> Q:
    """Coerce ints, ``p/q`` strings, and Fractions to an exact rational."""
    if den is not None:
        return mpq(value, den)
    if isinstance(value, mpq):
        return value
    return mpq(value)


def qstr(value: Q) -> str:
    """Canonical serialization: ``p/q`` with q > 0 and gcd(p, q) = 1, or ``p``."""
    return str(mpq(value))


def vec(entries: Iterable[QLike]) -> Vec:
    return tuple(q(e) for e in entries)


def vzero(n: int) -> Vec:
    return (_ZERO,) * n


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(t: QLike, a: Vec) -> Vec:
    t = q(t)
    return tuple(t * x for x in a)


def vdot(a: Vec, b: Vec) -> Q:
    s = _ZERO
    for x, y in zip(a, b, strict=True):
        s += x * y
    return s


def is_zero_vec(a: Vec) -> bool:
    return all(x == 0 for x in a)


def primitive(a: Vec) -> Vec:
    """Scale to the integer vector with coprime entries and positive last
    nonzero entry.  Used to report witnesses deterministically."""
    if is_zero_vec(a):
        return a
    denom_lcm = 1
    for x in a:
        denom_lcm = _lcm(denom_lcm, int(x.denominator))
    ints = [int(x * denom_lcm) for x in a]
    g = 0
    for v in ints:
        g = _gcd(g, abs(v))
    ints = [v // g for v in ints]
    last = next(v for v in reversed(ints) if v != 0)
    if last < 0:
        ints = [-v for v in ints]
    return tuple(mpq(v) for v in ints)


def projective(a: Vec) -> Vec:
    """Scale so the first nonzero entry equals 1 (line normalization)."""
    for x in a:
        if x != 0:
            return tuple(y / x for y in a)
    return a


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _lcm(a: int, b: int) -> int:
    return a // _gcd(a, b) * b


@dataclass(frozen=True)
class Mat:
    """Immutable dense rational matrix (tuple of row tuples)."""

    rows: tuple

    @staticmethod
    def from_rows(rows: Iterable[Iterable[QLike]], ncols: Optional[int] = None) -> "Mat":
        frozen = tuple(vec(r) for r in rows)
        if frozen:
            width = len(frozen[0])
            if any(len(r) != width for r in frozen):
                raise ValueError("ragged rows")
        elif ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        else:
            width = ncols
        m = Mat(frozen)
        object.__setattr__(m, "_ncols", width)
        return m

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat.from_rows(
            [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)], ncols=n
        )

    @staticmethod
    def zero(nrows: int, ncols: int) -> "Mat":
        return Mat.from_rows([vzero(ncols)] * nrows, ncols=ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        cached = getattr(self, "_ncols", None)
        if cached is None:
            cached = len(self.rows[0]) if self.rows else 0
            object.__setattr__(self, "_ncols", cached)
        return cached

    def row(self, i: int) -> Vec:
        return self.rows[i]

    def col(self, j: int) -> Vec:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Mat":
        return Mat.from_rows(
            [self.col(j) for j in range(self.ncols)], ncols=self.nrows
        )

    def matvec(self, v: Vec) -> Vec:
        return tuple(vdot(r, v) for r in self.rows)

    def mul(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = [other.col(j) for j in range(other.ncols)]
        return Mat.from_rows(
            [[vdot(r, c) for c in cols] for r in self.rows], ncols=other.ncols
        )

    def is_zero(self) -> bool:
        return all(is_zero_vec(r) for r in self.rows)

    def is_symmetric(self) -> bool:
        if self.nrows != self.ncols:
            return False
        return all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows)
            for j in range(i + 1, self.ncols)
        )


def rref(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row-echelon form and pivot columns (Gauss-Jordan, exact)."""
    a = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        f = a[r][c]
        if f != 1:
            a[r] = [x / f for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                fi = a[i][c]
                a[i] = [x - fi * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return Mat.from_rows(a, ncols=ncols), tuple(pivots)


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def nullspace(m: Mat) -> Mat:
    """Columns form a basis of ``{v : m v = 0}`` (exact, possibly 0 columns)."""
    red, pivots = rref(m)
    ncols = m.ncols
    free = [c for c in range(ncols) if c not in pivots]
    basis_cols = []
    for f in free:
        v = [_ZERO] * ncols
        v[f] = _ONE
        for r, p in enumerate(pivots):
            v[p] = -red.rows[r][f]
        basis_cols.append(v)
    return Mat.from_rows(
        [[col[i] for col in basis_cols] for i in range(ncols)], ncols=len(basis_cols)
    )


def solve(m: Mat, b: Vec) -> Optional[Vec]:
    """One exact solution of ``m u = b`` (free variables set to 0), or None."""
    if len(b) != m.nrows:
        raise ValueError("shape mismatch")
    aug = Mat.from_rows(
        [tuple(r) + (b[i],) for i, r in enumerate(m.rows)], ncols=m.ncols + 1
    )
    red, pivots = rref(aug)
    if m.ncols in pivots:
        return None
    u = [_ZERO] * m.ncols
    for r, p in enumerate(pivots):
        u[p] = red.rows[r][m.ncols]
    return tuple(u)


def solve_in_range(g: Mat, b: Vec) -> Optional[Vec]:
    """Solve ``g u = b`` for symmetric g; None signals b outside range(g)."""
    if not g.is_symmetric():
        raise ValueError("matrix is not symmetric")
    return solve(g, b)


@dataclass(frozen=True)
class Inertia:
    """Signature of a symmetric form: eigenvalue sign counts (Sylvester)."""

    n_plus: int
    n_zero: int
    n_minus: int

    @property
    def dim(self) -> int:
        return self.n_plus + self.n_zero + self.n_minus

    def is_psd(self) -> bool:
        return self.n_minus == 0

    def is_nsd(self) -> bool:
        return self.n_plus == 0

    def is_zero(self) -> bool:
        return self.n_plus == 0 and self.n_minus == 0


def diagonalize_symmetric(g: Mat) -> tuple[tuple[Vec, ...], Vec]:
    """Rational congruence diagonalization of a symmetric matrix.

    Returns ``(cols, diag)`` with P = [cols] invertible and P^T g P =
    diag(diag), obtained by symmetric Gaussian elimination.  When the
    remaining diagonal is entirely zero but an off-diagonal entry a != 0
    survives, the hyperbolic pair is folded (col_i += col_s) so that the
    value 2a appears as the next pivot; congruence preserves inertia
    throughout and no irrational eigenvalue is ever needed.
    """
    if not g.is_symmetric():
        raise ValueError("matrix is not symmetric")
    n = g.nrows
    a = [list(r) for r in g.rows]
    p = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]

    def colop(j: int, k: int, f: Q) -> None:
        # col_j += f col_k applied congruently (columns, then rows) + record in p
        for r in range(n):
            a[r][j] += f * a[r][k]
        for c in range(n):
            a[j][c] += f * a[k][c]
        for r in range(n):
            p[r][j] += f * p[r][k]

    def colswap(i: int, j: int) -> None:
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for c in range(n):
            a[i][c], a[j][c] = a[j][c], a[i][c]
        for r in range(n):
            p[r][i], p[r][j] = p[r][j], p[r][i]

    i = 0
    while i < n:
        piv = next((j for j in range(i, n) if a[j][j] != 0), None)
        if piv is None:
            s = next((s for s in range(i + 1, n) if a[i][s] != 0), None)
            if s is None:
                i += 1  # row i fully decoupled: null direction
                continue
            colop(i, s, _ONE)  # hyperbolic 2x2 block: pivot 2a appears at (i, i)
            continue
        if piv != i:
            colswap(i, piv)
        d = a[i][i]
        for j in range(i + 1, n):
            if a[j][i] != 0:
                colop(j, i, -a[j][i] / d)
        i += 1

    cols = tuple(tuple(p[r][c] for r in range(n)) for c in range(n))
    diag = tuple(a[c][c] for c in range(n))
    return cols, diag


def inertia(g: Mat) -> Inertia:
    """Exact eigenvalue sign counts of a symmetric rational matrix."""
    _, diag = diagonalize_symmetric(g)
    n_plus = sum(1 for d in diag if d > 0)
    n_minus = sum(1 for d in diag if d < 0)
    return Inertia(n_plus, len(diag) - n_plus - n_minus, n_minus)


def negative_direction(g: Mat) -> Optional[Vec]:
    """First congruence direction v with v^T g v < 0, canonically scaled."""
    cols, diag = diagonalize_symmetric(g)
    for c, d in zip(cols, diag):
        if d < 0:
            return primitive(c)
    return None


def kernel_directions(g: Mat) -> tuple[Vec, ...]:
    """Basis of ker(g) read off the congruence diagonalization."""
    cols, diag = diagonalize_symmetric(g)
    return tuple(primitive(c) for c, d in zip(cols, diag) if d == 0)

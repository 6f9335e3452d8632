"""Engine for linear monotone subspaces L of Z = R^n x R^n.

A subspace L is monotone iff the duality form c restricted to L is positive
semidefinite; that restriction is the Gram form g = (1/2) B^T J B for any
basis B of L, so every verdict below is an inertia computation.  The key
closed forms (for monotone L, S its skew part):

* fitz(L, z)  = sup_{w in L} (z . w - c(w)) = (1/2) b . u  with
  b = B^T J z and g u = b / 2; +infinity when b is outside range(g).
  The domain of fitz is exactly perp(S) in finite dimension.
* penot(L, z) = c(z) + indicator of L (the restriction c|_L is convex and
  closed, so the closed convex hull adds nothing).
* L is NI (negative-infimum type: fitz >= c everywhere) iff the quadratic
  form (fitz - c) restricted to the fitz domain is positive semidefinite.
* maximal monotone == monotone and NI; in finite dimension every closed
  monotone subspace is representable, and dual-representability collapses
  to maximality (reflexivity).
* unique (exactly one maximal monotone extension) == NI or fitz domain
  monotone.

All functions are pure; derived data per subspace is memoized on the
canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .exact import (
    Mat,
    Q,
    Vec,
    diagonalize_symmetric,
    inertia,
    nullspace,
    primitive,
    q,
    vdot,
    vzero,
)
from .pairing import (
    DimensionMismatchError,
    Point,
    Subspace,
    couple,
    cval,
    jvec,
    perp,
)


class NotMonotoneError(ValueError):
    """Operation defined only for monotone inputs."""


class InternalInvariantError(RuntimeError):
    """A classification report violated one of its structural implications."""


# --------------------------------------------------------------------------
# Fitzpatrick values


@dataclass(frozen=True)
class FitzValue:
    """An exact rational value or +infinity (never -infinity)."""

    value: Optional[Q]
    note: str = field(default="", compare=False)

    @staticmethod
    def finite(v) -> "FitzValue":
        return FitzValue(q(v))

    @staticmethod
    def plus_inf(note: str = "") -> "FitzValue":
        return FitzValue(None, note)

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def le(self, bound: Q) -> bool:
        return self.is_finite and self.value <= bound

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


PLUS_INF = FitzValue.plus_inf()


# --------------------------------------------------------------------------
# Gram form and basic predicates


@lru_cache(maxsize=None)
def gram(l: Subspace) -> Mat:
    """g with c(sum u_i b_i) = u^T g u for the canonical basis b_i of l."""
    pts = l.basis_points()
    k = len(pts)
    half = q(1) / 2
    rows = [[half * couple(pts[i], pts[j]) for j in range(k)] for i in range(k)]
    return Mat.from_rows(rows, ncols=k)


@lru_cache(maxsize=None)
def _gram_diag(l: Subspace):
    return diagonalize_symmetric(gram(l))


def _coords_to_point(l: Subspace, u: Vec) -> Point:
    v = vzero(2 * l.n)
    out = list(v)
    for coeff, row in zip(u, l.rows):
        if coeff != 0:
            for j, e in enumerate(row):
                out[j] += coeff * e
    return Point.from_vec(tuple(out))


def is_monotone(l: Subspace) -> bool:
    """True iff c >= 0 on l, i.e. the Gram form has no negative eigenvalue."""
    _, diag = _gram_diag(l)
    return all(d >= 0 for d in diag)


def negative_witness(l: Subspace) -> Optional[Point]:
    """A point z in l with c(z) < 0, canonically scaled; None iff monotone."""
    cols, diag = _gram_diag(l)
    for c, d in zip(cols, diag):
        if d < 0:
            return Point.from_vec(primitive(_coords_to_point(l, c).vec()))
    return None


def is_skew(l: Subspace) -> bool:
    """True iff c vanishes identically on l (equivalently l <= perp(l))."""
    return gram(l).is_zero()


@lru_cache(maxsize=None)
def skew_part(l: Subspace) -> Subspace:
    """The subspace {z in l : c(z) = 0}.

    Valid because a positive semidefinite form vanishes exactly on its
    kernel; for non-monotone l the zero set is not a subspace.
    """
    if not is_monotone(l):
        raise NotMonotoneError("skew part undefined: c takes negative values")
    g = gram(l)
    null = nullspace(g)
    gens = []
    for j in range(null.ncols):
        gens.append(_coords_to_point(l, null.col(j)).vec())
    return Subspace.from_vectors(l.n, gens)


# --------------------------------------------------------------------------
# Fitzpatrick / Penot evaluation


@lru_cache(maxsize=None)
def _fitz_solver(l: Subspace):
    """Cached data to evaluate sup_{w in L} (z . w - c(w)) in O(k^2)."""
    cols, diag = _gram_diag(l)
    return cols, diag


def _fitz_from_b(l: Subspace, b: Vec) -> FitzValue:
    cols, diag = _fitz_solver(l)
    k = len(b)
    # solve g u = b/2 through the congruence: with u = P w, D w = P^T b / 2
    w = []
    for c, d in zip(cols, diag):
        t = vdot(c, b) / 2
        if d == 0:
            if t != 0:
                return PLUS_INF
            w.append(q(0))
        else:
            w.append(t / d)
    u = [q(0)] * k
    for wi, c in zip(w, cols):
        if wi != 0:
            for i in range(k):
                u[i] += wi * c[i]
    return FitzValue.finite(vdot(b, tuple(u)) / 2)


def _b_vector(l: Subspace, z: Point) -> Vec:
    jz = jvec(z.vec())
    return tuple(vdot(r, jz) for r in l.rows)


def fitz_eval(l: Subspace, z: Point) -> FitzValue:
    """Exact value of the Fitzpatrick function of l at z.

    For non-monotone l the supremum defining the function diverges along any
    negative line, so the value is +infinity everywhere (flagged in the
    note) rather than an error.
    """
    if z.n != l.n:
        raise DimensionMismatchError("point dimension differs from subspace")
    if not is_monotone(l):
        return FitzValue.plus_inf("non-monotone: function is identically +inf")
    return _fitz_from_b(l, _b_vector(l, z))


@lru_cache(maxsize=None)
def fitz_dom(l: Subspace) -> Subspace:
    """Domain of the Fitzpatrick function of monotone l.

    Equals {z : B^T J z in range(g)}, which in finite dimension is exactly
    perp(skew_part(l)).
    """
    return perp(skew_part(l))


def penot_eval(l: Subspace, z: Point) -> FitzValue:
    """Penot function of a closed monotone subspace: c + indicator of l."""
    if z.n != l.n:
        raise DimensionMismatchError("point dimension differs from subspace")
    if not is_monotone(l):
        raise NotMonotoneError("Penot function is improper for non-monotone input")
    if l.contains(z):
        return FitzValue.finite(cval(z))
    return PLUS_INF


def in_plus(l: Subspace, z: Point) -> bool:
    """Membership in l+ = {z : c(z - w) >= 0 for all w in l} = [fitz <= c]."""
    if not is_monotone(l):
        raise NotMonotoneError("monotonically-related set undefined")
    return fitz_eval(l, z).le(cval(z))


# --------------------------------------------------------------------------
# The quadratic form (fitz - c) on the fitz domain


@lru_cache(maxsize=None)
def _fitz_minus_c_form(l: Subspace) -> tuple:
    """(W, delta): W = fitz_dom(l); delta is the matrix of (fitz - c) in the
    canonical coordinates of W.  NI holds iff delta is PSD."""
    w_space = fitz_dom(l)
    w_pts = w_space.basis_points()
    r = len(w_pts)
    bs = [_b_vector(l, p) for p in w_pts]
    cols, diag = _fitz_solver(l)
    us = []
    for b in bs:
        coeffs = []
        for c, d in zip(cols, diag):
            t = vdot(c, b) / 2
            if d == 0:
                if t != 0:  # cannot happen: W was built inside the domain
                    raise InternalInvariantError("fitz domain inconsistent")
                coeffs.append(q(0))
            else:
                coeffs.append(t / d)
        u = [q(0)] * len(b)
        for t, c in zip(coeffs, cols):
            if t != 0:
                for i in range(len(b)):
                    u[i] += t * c[i]
        us.append(tuple(u))
    half = q(1) / 2
    phi = [[half * vdot(bs[i], us[j]) for j in range(r)] for i in range(r)]
    cw = gram(w_space)
    delta = Mat.from_rows(
        [
            [phi[i][j] - cw.rows[i][j] for j in range(r)]
            for i in range(r)
        ],
        ncols=r,
    )
    return w_space, delta


def ni_witness(l: Subspace) -> Optional[Point]:
    """A point with fitz(z) < c(z), canonically scaled; None iff l is NI."""
    w_space, delta = _fitz_minus_c_form(l)
    cols, diag = diagonalize_symmetric(delta)
    for c, d in zip(cols, diag):
        if d < 0:
            return Point.from_vec(primitive(_coords_to_point(w_space, c).vec()))
    return None


def is_ni(l: Subspace) -> bool:
    """Negative-infimum type: fitz >= c on all of Z (trivially true off the
    domain, an inertia test on it)."""
    if not is_monotone(l):
        raise NotMonotoneError("NI test restricted to monotone subspaces")
    _, delta = _fitz_minus_c_form(l)
    return inertia(delta).is_psd()


# --------------------------------------------------------------------------
# Classification


TIER_EXACT = "exact"


@dataclass(frozen=True)
class Verdict:
    """A single flag with provenance and an optional certifying witness."""

    value: bool
    criterion: str = ""
    witness: Optional[object] = None
    probed_samples: Optional[int] = None

    @property
    def tier(self) -> str:
        if self.probed_samples is None:
            return TIER_EXACT
        return f"probed({self.probed_samples})"

    def __bool__(self) -> bool:
        return self.value


@dataclass(frozen=True)
class ClassificationReport:
    monotone: Verdict
    skew: Verdict
    representable: Verdict
    ni: Verdict
    unique: Verdict
    dual_representable: Verdict
    maximal: Verdict

    def flags(self) -> dict:
        return {
            "monotone": self.monotone,
            "skew": self.skew,
            "representable": self.representable,
            "ni": self.ni,
            "unique": self.unique,
            "dual_representable": self.dual_representable,
            "maximal": self.maximal,
        }

    def validate(self, skew_implies_monotone: bool = True) -> None:
        """Check the structural implications between flags.

        ``skew_implies_monotone`` holds for subspaces but not for general
        double-cones (two non-orthogonal null lines are skew yet not
        monotone), so cone reports skip that check.
        """
        if self.maximal and not (self.representable.value and self.ni.value):
            raise InternalInvariantError("maximal without representable + NI")
        if self.ni and not self.unique:
            raise InternalInvariantError("NI without uniqueness")
        if skew_implies_monotone and self.skew and not self.monotone:
            raise InternalInvariantError("skew subspace not monotone")
        if self.maximal.value != (self.dual_representable.value and self.unique.value):
            raise InternalInvariantError("maximal != dual-representable and unique")


def _non_monotone_report(witness) -> ClassificationReport:
    return ClassificationReport(
        monotone=Verdict(False, "c takes a negative value", witness),
        skew=Verdict(False, "a skew subspace would be monotone"),
        representable=Verdict(False, "representable sets are monotone"),
        ni=Verdict(
            False,
            "flag reserved for monotone inputs (the function is identically "
            "+inf, so the comparison with c is vacuous)",
        ),
        unique=Verdict(False, "uniqueness presupposes monotonicity"),
        dual_representable=Verdict(False, "collapses to maximality here"),
        maximal=Verdict(False, "not monotone"),
    )


def classify(l: Subspace) -> ClassificationReport:
    """Full seven-flag classification of a linear subspace of Z."""
    neg = negative_witness(l)
    if neg is not None:
        return _non_monotone_report(neg)

    skew = is_skew(l)
    w_space, delta = _fitz_minus_c_form(l)
    ni_neg = ni_witness(l)
    ni_ok = ni_neg is None
    dom_monotone = is_monotone(w_space)

    if ni_ok:
        ni_v = Verdict(True, "(fitz - c) is positive semidefinite on its domain")
    else:
        ni_v = Verdict(False, "fitz < c somewhere on the domain", ni_neg)

    if ni_ok:
        unique_v = Verdict(True, "NI implies a unique maximal monotone extension")
    elif dom_monotone:
        unique_v = Verdict(
            True, "the fitz domain is monotone, hence the unique extension"
        )
    else:
        unique_v = Verdict(
            False, "neither NI nor a monotone fitz domain", ni_neg
        )

    maximal_v = Verdict(
        ni_ok,
        "monotone and NI" if ni_ok else "admits a proper monotone extension",
        None if ni_ok else ni_neg,
    )

    report = ClassificationReport(
        monotone=Verdict(True, "restricted c is positive semidefinite"),
        skew=Verdict(
            skew,
            "restricted c vanishes identically"
            if skew
            else "c is positive somewhere on the subspace",
        ),
        representable=Verdict(
            True, "closed monotone subspaces are representable here"
        ),
        ni=ni_v,
        unique=unique_v,
        dual_representable=Verdict(
            maximal_v.value, "collapses to maximality in finite dimension"
        ),
        maximal=maximal_v,
    )
    report.validate()
    return report


# --------------------------------------------------------------------------
# Maximal extension


def extend_maximal(l: Subspace) -> Subspace:
    """A maximal monotone linear extension of a monotone subspace.

    Repeatedly adjoins a direction along which (fitz - c) is negative (such
    a point is strictly monotonically related, so the enlarged span stays
    monotone); if the form is PSD with maximality still failing, a kernel
    direction outside the current subspace is adjoined instead.  The result
    has dimension exactly n.
    """
    if not is_monotone(l):
        raise NotMonotoneError("cannot extend a non-monotone subspace")
    cur = l
    for _ in range(2 * l.n + 1):
        if is_ni(cur):
            return cur
        w_space, delta = _fitz_minus_c_form(cur)
        cols, diag = diagonalize_symmetric(delta)
        new_pt = None
        for c, d in zip(cols, diag):
            if d < 0:
                new_pt = primitive(_coords_to_point(w_space, c).vec())
                break
        if new_pt is None:
            # PSD but not maximal: adjoin the first kernel direction not in l
            for c, d in zip(cols, diag):
                if d == 0:
                    cand = primitive(_coords_to_point(w_space, c).vec())
                    if not cur.contains(cand):
                        new_pt = cand
                        break
        if new_pt is None:
            raise InternalInvariantError("no extension direction found")
        cur = cur.join(Subspace.from_vectors(cur.n, [new_pt]))
    raise InternalInvariantError("extension failed to stabilize")


# --------------------------------------------------------------------------
# Sum composition


def sum_composition(m: Subspace, nn: Subspace, a: Mat) -> Subspace:
    """The relation {(x, x* + A^T y*) : (x, x*) in m, (A x, y*) in nn}.

    Computed as a projection of the intersection {(x, x*, y, y*) :
    (x, x*) in m, (y, y*) in nn, y = A x} inside R^(2n + 2m).
    """
    n = m.n
    p = nn.n
    if a.nrows != p or a.ncols != n:
        raise DimensionMismatchError(
            f"linear map must be {p} x {n}, got {a.nrows} x {a.ncols}"
        )
    total = 2 * n + 2 * p
    rows = []
    em = m.equations()
    for i in range(em.nrows):
        rows.append(tuple(em.rows[i]) + vzero(2 * p))
    en = nn.equations()
    for i in range(en.nrows):
        rows.append(vzero(2 * n) + tuple(en.rows[i]))
    for r in range(p):
        row = list(vzero(total))
        for c in range(n):
            row[c] = a.rows[r][c]
        row[2 * n + r] = q(-1)
        rows.append(tuple(row))
    system = Mat.from_rows(rows, ncols=total)
    null = nullspace(system)
    at = a.transpose()
    images = []
    for j in range(null.ncols):
        w = null.col(j)
        x = w[:n]
        xs = w[n : 2 * n]
        ys = w[2 * n + p :]
        shift = at.matvec(ys)
        images.append(tuple(x) + tuple(e + s for e, s in zip(xs, shift)))
    return Subspace.from_vectors(n, images)


# --------------------------------------------------------------------------
# Helpers shared with the double-cone module and the test-suite


def semidefinite_zero_locus(l: Subspace) -> Subspace:
    """{z in l : c(z) = 0} for l on which c is semidefinite (either sign).

    A semidefinite form vanishes exactly on its kernel, so the locus is a
    subspace; raises otherwise.
    """
    sig = inertia(gram(l))
    if sig.n_plus > 0 and sig.n_minus > 0:
        raise ValueError("c is indefinite on the subspace; the zero set is a cone")
    g = gram(l)
    null = nullspace(g)
    gens = [_coords_to_point(l, null.col(j)).vec() for j in range(null.ncols)]
    return Subspace.from_vectors(l.n, gens)


def unit_closure_check(l: Subspace, probes) -> bool:
    """Representability criterion in closure form, trivially satisfied here:
    every probe point of [penot = c] with c > 0 already lies in l."""
    for z in probes:
        pv = penot_eval(l, z)
        if pv.is_finite and pv.value == cval(z) and cval(z) > 0 and not l.contains(z):
            return False
    return True

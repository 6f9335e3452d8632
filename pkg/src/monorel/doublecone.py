"""Finitely generated monotone double-cones D = S u R*{z_1, ..., z_m}.

The model is a skew subspace S plus finitely many generator lines.  For a
non-negative cone the Fitzpatrick function has the closed form

    fitz(D, z) = max_i (z . z_i)^2 / (4 c(z_i))   on perp(S'),
    fitz(D, z) = +infinity                         off perp(S'),

where S' is the span of S together with the null-c generators (a null line
contributes the indicator of its own orthogonal).  Everything is kept in
squared form, so the crown support sigma^2 and the membership discriminants
stay rational; the unit vectors z_i / sqrt(c_i) never materialize.

Monotonicity is the pairwise discriminant test (z_i . z_j)^2 <= 4 c_i c_j,
which scale-invariance makes sufficient on generators.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .exact import Mat, Q, inertia, is_zero_vec, projective, q
from .linsub import (
    ClassificationReport,
    FitzValue,
    Verdict,
    classify,
    gram,
    is_monotone as subspace_is_monotone,
)
from .pairing import (
    DimensionMismatchError,
    Point,
    Subspace,
    couple,
    cval,
    perp,
)


class SkewBasisError(ValueError):
    """The declared skew part carries a nonzero value of c."""


class EmptyPositivePartError(ValueError):
    """Crown quantities need at least one positive generator."""


@dataclass(frozen=True)
class FinGenDoubleCone:
    """Skew subspace + generator lines, with generators pre-sorted by the
    sign of c: positive ones carry their cached c_i > 0."""

    n: int
    skew: Subspace
    pos: tuple  # ((Point, Q), ...) with c > 0
    zero: tuple  # (Point, ...) with c == 0, outside the skew subspace
    neg: tuple  # ((Point, Q), ...) with c < 0

    @staticmethod
    def of(
        n: int,
        skew_vectors: Iterable[Iterable] = (),
        generators: Iterable[Point] = (),
    ) -> "FinGenDoubleCone":
        skew = Subspace.from_vectors(n, skew_vectors)
        if not gram(skew).is_zero():
            raise SkewBasisError("skew part must satisfy c == 0 identically")
        seen = set()
        pos, zero, neg = [], [], []
        for z in generators:
            if z.n != n:
                raise DimensionMismatchError("generator has wrong dimension")
            v = projective(z.vec())
            if is_zero_vec(v) or v in seen:
                continue  # duplicate / parallel lines collapse
            seen.add(v)
            p = Point.from_vec(v)
            c = cval(p)
            if c > 0:
                pos.append((p, c))
            elif c == 0:
                if not skew.contains(p):
                    zero.append(p)
            else:
                neg.append((p, c))
        return FinGenDoubleCone(n, skew, tuple(pos), tuple(zero), tuple(neg))

    @cached_property
    def skew_hull(self) -> Subspace:
        """Span of the skew part and the null-c generator lines."""
        return self.skew.join(
            Subspace.from_points(self.n, self.zero)
        )

    @cached_property
    def lin_hull(self) -> Subspace:
        """Linear (= affine = convex, for a double-cone) hull of the set."""
        pts = [p for p, _ in self.pos] + list(self.zero) + [p for p, _ in self.neg]
        return self.skew.join(Subspace.from_points(self.n, pts))

    def members(self) -> tuple:
        """One point per stored component (used by probing code)."""
        return tuple(
            list(self.skew.basis_points())
            + list(self.zero)
            + [p for p, _ in self.pos]
            + [p for p, _ in self.neg]
        )

    def contains(self, z: Point) -> bool:
        """Exact membership in the point-set S u (union of lines)."""
        if self.skew.contains(z):
            return True
        if z.is_zero():
            return True
        v = projective(z.vec())
        for p in self.zero:
            if p.vec() == v:
                return True
        for p, _ in self.pos:
            if p.vec() == v:
                return True
        for p, _ in self.neg:
            if p.vec() == v:
                return True
        return False

    def point_set_is_subspace(self) -> Optional[Subspace]:
        """The linear hull when the union of lines already is a subspace.

        A subspace over an infinite field is never a finite union of proper
        subspaces, so the set equals its hull iff the hull is covered by a
        single stored component: no positive/negative lines and every null
        line inside the skew part, or a one-dimensional hull.
        """
        hull = self.lin_hull
        if hull.dim <= 1:
            return hull
        if not self.pos and not self.neg and hull == self.skew:
            return hull
        return None


def dc_lin_hull(d: FinGenDoubleCone) -> Subspace:
    return d.lin_hull


def dc_monotone_witness(d: FinGenDoubleCone) -> Optional[tuple]:
    """A pair (z, w) of cone elements with c(z - w) < 0, or None.

    Monotonicity of the cone is equivalent to: every generator couples to 0
    with the skew hull, pairs with a null generator couple to 0, and every
    positive pair passes (z_i . z_j)^2 <= 4 c_i c_j.
    """
    # negative line: z and the origin already violate monotonicity
    for p, c in d.neg:
        return (p, Point.zero(d.n))
    skew_pts = list(d.skew.basis_points()) + list(d.zero)
    # null-c elements must couple to 0 with everything in the cone
    for i, s in enumerate(skew_pts):
        for other in skew_pts[i + 1 :]:
            k = couple(s, other)
            if k != 0:
                return (s, other.scale(q(1) / k))
        for p, c in d.pos:
            k = couple(s, p)
            if k != 0:
                return (p, s.scale((c + 1) / k))
    # positive pairs: discriminant of t -> c(z_i - t z_j)
    for i in range(len(d.pos)):
        zi, ci = d.pos[i]
        for j in range(len(d.pos)):
            if i == j:
                continue
            zj, cj = d.pos[j]
            k = couple(zi, zj)
            if k * k > 4 * ci * cj:
                return (zi, zj.scale(k / (2 * cj)))
    return None


def dc_is_monotone(d: FinGenDoubleCone) -> bool:
    return dc_monotone_witness(d) is None


def _in_perp(space: Subspace, z: Point) -> bool:
    return all(couple(b, z) == 0 for b in space.basis_points())


def dc_fitz_eval(d: FinGenDoubleCone, z: Point) -> FitzValue:
    """Closed-form Fitzpatrick value of the cone at z.

    With a negative line present the defining supremum diverges everywhere;
    for a non-negative cone the formula applies whether or not the cone is
    monotone.
    """
    if z.n != d.n:
        raise DimensionMismatchError("point dimension differs from cone")
    if d.neg:
        return FitzValue.plus_inf("negative part nonempty: identically +inf")
    if not _in_perp(d.skew_hull, z):
        return FitzValue.plus_inf("outside the orthogonal of the skew part")
    best = q(0)
    for p, c in d.pos:
        k = couple(z, p)
        v = k * k / (4 * c)
        if v > best:
            best = v
    return FitzValue.finite(best)


def dc_sigma_sq(d: FinGenDoubleCone, z: Point) -> FitzValue:
    """Squared crown support: max_i (z . z_i)^2 / c_i on the skew orthogonal."""
    if not d.pos:
        raise EmptyPositivePartError("cone has no positive generator")
    if z.n != d.n:
        raise DimensionMismatchError("point dimension differs from cone")
    if not _in_perp(d.skew_hull, z):
        return FitzValue.plus_inf("outside the orthogonal of the skew part")
    best = q(0)
    for p, c in d.pos:
        k = couple(z, p)
        v = k * k / c
        if v > best:
            best = v
    return FitzValue.finite(best)


def dc_in_plus(d: FinGenDoubleCone, z: Point) -> bool:
    """Membership in D+ = {z : c(z - w) >= 0 for all w in D}, square-free.

    c(z) < 0 never qualifies (0 is in the cone); c(z) = 0 requires z
    orthogonal to the full hull; c(z) > 0 requires z orthogonal to the skew
    part and (z . z_i)^2 <= 4 c(z) c_i for every positive generator.
    """
    if z.n != d.n:
        raise DimensionMismatchError("point dimension differs from cone")
    if d.neg:
        return False  # a negative line is monotonically related to nothing
    c = cval(z)
    if c < 0:
        return False
    if c == 0:
        return _in_perp(d.lin_hull, z)
    if not _in_perp(d.skew_hull, z):
        return False
    for p, ci in d.pos:
        k = couple(z, p)
        if k * k > 4 * c * ci:
            return False
    return True


# --------------------------------------------------------------------------
# Classification


NI_PROBE_SAMPLES = 10000
NI_PROBE_RADIUS = 4
NI_PROBE_MAX_DEN = 2


def _sample_grid_scalar(rng: random.Random, radius: int, max_den: int) -> Q:
    den = rng.randint(1, max_den)
    return q(rng.randint(-radius * den, radius * den)) / den


def _probe_plus_monotone(
    d: FinGenDoubleCone, seed: int, samples: int
) -> Verdict:
    """Sampled monotonicity of D+ (hence of [fitz = c]): pairs of grid
    points inside D+ are compared; a violation is an exact counterexample,
    absence of one is only a probed verdict."""
    rng = random.Random(seed)
    accepted = list(d.members())
    accepted = [p for p in accepted if dc_in_plus(d, p)]
    checked = 0
    attempts = 0
    max_attempts = samples * 20
    while checked < samples and attempts < max_attempts:
        attempts += 1
        z = Point.of(
            [_sample_grid_scalar(rng, NI_PROBE_RADIUS, NI_PROBE_MAX_DEN) for _ in range(d.n)],
            [_sample_grid_scalar(rng, NI_PROBE_RADIUS, NI_PROBE_MAX_DEN) for _ in range(d.n)],
        )
        if not dc_in_plus(d, z):
            continue
        for w in accepted:
            if checked >= samples:
                break
            checked += 1
            if cval(z - w) < 0:
                return Verdict(
                    False,
                    "pair in [fitz <= c] with c(z - w) < 0",
                    (z, w),
                )
        accepted.append(z)
    return Verdict(
        True,
        "no violating pair among sampled members of [fitz <= c]",
        None,
        probed_samples=checked,
    )


def _representable_verdict(d: FinGenDoubleCone) -> Verdict:
    """Exact representability of a monotone cone whose set is not a subspace.

    The smallest representable extension always contains the skew hull
    shifted along each positive line, and the segment between two tangent
    generators (a pair with (z_i . z_j)^2 = 4 c_i c_j); either produces an
    exact witness point outside the set.  With a trivial skew hull and all
    pairs strictly separated the extension adds nothing.
    """
    if d.skew_hull.dim > 0 and d.pos:
        zi, _ = d.pos[0]
        s = d.skew_hull.basis_points()[0]
        for t in range(1, d.lin_hull.dim + 2):
            cand = zi + s.scale(t)
            if not d.contains(cand):
                return Verdict(
                    False,
                    "skew-shifted generator lies in the smallest representable "
                    "extension but not in the cone",
                    cand,
                )
        return Verdict(False, "skew-shifted generators escape the cone")
    if d.skew_hull.dim > 0 and not d.pos:
        # purely skew, set != hull: representable iff set == hull
        return Verdict(False, "a union of null lines is a proper subset of its span")
    for i in range(len(d.pos)):
        zi, ci = d.pos[i]
        for j in range(i + 1, len(d.pos)):
            zj, cj = d.pos[j]
            k = couple(zi, zj)
            if k * k == 4 * ci * cj and k != 0:
                # tangent pair: the whole 2-plane sector satisfies penot = c
                t = abs(k) / (2 * cj)
                cand = zi + zj.scale(t if k > 0 else -t)
                return Verdict(
                    False,
                    "tangent generator pair: the segment between the unit "
                    "vectors satisfies penot = c outside the cone",
                    cand,
                )
    return Verdict(
        True,
        "trivial skew part and strictly separated generators: the smallest "
        "representable extension adds no unit vector",
    )


def _exact_ni_on_monotone_domain(d: FinGenDoubleCone, w_space: Subspace) -> Verdict:
    """NI when the fitz domain is monotone: fitz must equal c on the whole
    domain, i.e. every generator quadric dominates from below and one of
    them matches c identically (a subspace covered by finitely many quadric
    zero-sets lies inside one of them)."""
    w_pts = w_space.basis_points()
    r = len(w_pts)
    cw = gram(w_space)
    matched = False
    for p, ci in d.pos:
        ell = tuple(couple(b, p) for b in w_pts)
        qm = [
            [ell[a] * ell[b] / (4 * ci) for b in range(r)]
            for a in range(r)
        ]
        diff = Mat.from_rows(
            [[cw.rows[a][b] - qm[a][b] for b in range(r)] for a in range(r)],
            ncols=r,
        )
        sig = inertia(diff)
        if not sig.is_psd():
            return Verdict(False, "a generator quadric exceeds c on the domain")
        if sig.is_zero():
            matched = True
    if matched:
        return Verdict(True, "some generator quadric equals c on the whole domain")
    return Verdict(False, "fitz < c strictly inside the domain")


def dc_classify(
    d: FinGenDoubleCone,
    seed: int = 0,
    samples: int = NI_PROBE_SAMPLES,
) -> ClassificationReport:
    """Seven-flag classification with a certainty tier per flag.

    Every flag is exact except NI (and the flags derived from it) for a
    non-skew cone whose fitz domain is non-monotone, where monotonicity of
    [fitz <= c] has no known exact polynomial-time test and is probed on
    ``samples`` seeded pairs; counterexamples are always exact.
    """
    witness = dc_monotone_witness(d)
    set_skew = not d.pos and not d.neg
    if witness is not None:
        return ClassificationReport(
            monotone=Verdict(False, "pair of cone elements with c(z - w) < 0", witness),
            skew=Verdict(set_skew, "c vanishes on every stored component" if set_skew else "a generator has c != 0"),
            representable=Verdict(False, "representable sets are monotone"),
            ni=Verdict(False, "flag reserved for monotone inputs"),
            unique=Verdict(False, "uniqueness presupposes monotonicity"),
            dual_representable=Verdict(False, "collapses to maximality here"),
            maximal=Verdict(False, "not monotone"),
        )

    as_subspace = d.point_set_is_subspace()
    if as_subspace is not None:
        return classify(as_subspace)

    if set_skew:
        # the cone and its hull share fitz/penot data; only the set differs
        base = classify(d.skew_hull)
        rep = Verdict(False, "a union of null lines is a proper subset of its span")
        return ClassificationReport(
            monotone=Verdict(True, "pairwise couplings vanish"),
            skew=Verdict(True, "c vanishes on every stored component"),
            representable=rep,
            ni=base.ni,
            unique=base.unique,
            dual_representable=Verdict(False, "collapses to maximality here"),
            maximal=Verdict(False, "not representable"),
        )

    rep = _representable_verdict(d)
    w_space = perp(d.skew_hull)
    if subspace_is_monotone(w_space):
        ni_v = _exact_ni_on_monotone_domain(d, w_space)
        unique_v = Verdict(True, "the fitz domain is monotone")
    else:
        ni_v = _probe_plus_monotone(d, seed, samples)
        # with a non-monotone domain, uniqueness and NI coincide
        unique_v = Verdict(
            ni_v.value,
            "coincides with NI when the fitz domain is non-monotone",
            ni_v.witness,
            probed_samples=ni_v.probed_samples,
        )
    maximal_value = rep.value and ni_v.value
    maximal_probed = ni_v.probed_samples if (rep.value and ni_v.value) else None
    maximal_v = Verdict(
        maximal_value,
        "representable and NI" if maximal_value else "fails representability or NI",
        probed_samples=maximal_probed,
    )
    report = ClassificationReport(
        monotone=Verdict(True, "pairwise generator discriminants pass"),
        skew=Verdict(False, "a generator has c > 0"),
        representable=rep,
        ni=ni_v,
        unique=unique_v,
        dual_representable=Verdict(
            maximal_v.value,
            "collapses to maximality in finite dimension",
            probed_samples=maximal_probed,
        ),
        maximal=maximal_v,
    )
    report.validate(skew_implies_monotone=False)
    return report

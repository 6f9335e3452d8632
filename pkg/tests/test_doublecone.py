import random

import pytest

from monorel.doublecone import (
    EmptyPositivePartError,
    FinGenDoubleCone,
    SkewBasisError,
    dc_classify,
    dc_fitz_eval,
    dc_in_plus,
    dc_is_monotone,
    dc_lin_hull,
    dc_monotone_witness,
    dc_sigma_sq,
)
from monorel.exact import q
from monorel.linsub import FitzValue, classify, fitz_eval, is_monotone, negative_witness
from monorel.oracle import ProbeConfig, oracle_dc_in_plus, sample_point
from monorel.pairing import Point, Subspace, cval
from monorel.randgen import random_monotone_cone

Z1 = Point.of([0, 1], [1, 1])
Z2 = Point.of([1, 1], [1, 0])
Z3 = Point.of([1, 0], [1, 0])


def three_ray():
    return FinGenDoubleCone.of(2, (), [Z1, Z2, Z3])


def line_cone():
    return FinGenDoubleCone.of(1, (), [Point.of([1], [1])])


# ---------------------------------------------------------------- construction


def test_duplicate_lines_collapse():
    d = FinGenDoubleCone.of(1, (), [Point.of([1], [1]), Point.of([2], [2])])
    assert len(d.pos) == 1
    assert dc_is_monotone(d)


def test_skew_basis_must_be_skew():
    with pytest.raises(SkewBasisError):
        FinGenDoubleCone.of(1, [(1, 1)], [])


def test_null_generators_tracked_separately():
    d = FinGenDoubleCone.of(2, [(1, 0, 0, 0)], [Point.of([0, 0], [0, 1])])
    assert len(d.zero) == 1 and not d.pos
    assert d.skew_hull.dim == 2


# ---------------------------------------------------------------- monotonicity


def test_three_ray_cone_is_monotone():
    assert dc_is_monotone(three_ray())


def test_negative_generator_rejected():
    d = FinGenDoubleCone.of(1, (), [Point.of([1], [1]), Point.of([1], [-1])])
    assert not dc_is_monotone(d)
    z, w = dc_monotone_witness(d)
    assert cval(z - w) < 0


def test_pairwise_discriminant_failure_witness():
    # two distinct positive lines in n = 1 always fail the discriminant
    d = FinGenDoubleCone.of(1, (), [Point.of([1], [1]), Point.of([1], [4])])
    assert not dc_is_monotone(d)
    z, w = dc_monotone_witness(d)
    assert cval(z - w) < 0


def test_incompatible_null_generator_witness():
    d = FinGenDoubleCone.of(1, (), [Point.of([1], [0]), Point.of([0], [1])])
    assert not dc_is_monotone(d)
    z, w = dc_monotone_witness(d)
    assert cval(z - w) < 0


# ---------------------------------------------------------------- fitz


def test_skew_cone_fitz_is_indicator(rng):
    d = FinGenDoubleCone.of(2, [(1, 0, 0, 0)], [])
    dperp = [
        Point.of([1, 0], [0, 0]),
        Point.of([0, 1], [0, 0]),
        Point.of([0, 0], [0, 1]),
    ]
    for z in dperp:
        assert dc_fitz_eval(d, z) == FitzValue.finite(0)
    assert not dc_fitz_eval(d, Point.of([0, 0], [1, 0])).is_finite


def test_line_cone_matches_subspace_fitz(rng):
    d = line_cone()
    span = Subspace.from_vectors(1, [(1, 1)])
    assert dc_fitz_eval(d, Point.of([1], [3])) == FitzValue.finite(4)
    cfg = ProbeConfig(seed=3)
    for _ in range(50):
        z = sample_point(rng, 1, cfg)
        assert dc_fitz_eval(d, z) == fitz_eval(span, z)


def test_three_ray_fitz_at_generator():
    assert dc_fitz_eval(three_ray(), Z1) == FitzValue.finite(1)


def test_fitz_plus_inf_when_negative_part():
    d = FinGenDoubleCone.of(1, (), [Point.of([1], [-1])])
    assert not dc_fitz_eval(d, Point.zero(1)).is_finite


def test_fitz_homogeneity(rng):
    cfg = ProbeConfig(seed=8)
    for _ in range(15):
        n = rng.randint(1, 3)
        d = random_monotone_cone(rng, n)
        z = sample_point(rng, n, cfg)
        t = q(rng.randint(1, 5), rng.randint(1, 3))
        f1 = dc_fitz_eval(d, z)
        f2 = dc_fitz_eval(d, z.scale(t))
        if f1.is_finite:
            assert f2 == FitzValue.finite(t * t * f1.value)
        else:
            assert not f2.is_finite


# ---------------------------------------------------------------- sigma^2


def test_sigma_sq_line():
    assert dc_sigma_sq(line_cone(), Point.of([1], [3])) == FitzValue.finite(16)


def test_sigma_sq_orthogonal_point():
    d = FinGenDoubleCone.of(2, (), [Point.of([1, 0], [1, 0])])
    z = Point.of([0, 1], [0, -1])  # couples to 0 with the generator
    assert dc_sigma_sq(d, z) == FitzValue.finite(0)


def test_sigma_sq_off_skew_orthogonal():
    d = FinGenDoubleCone.of(2, [(1, 0, 0, 0)], [Point.of([0, 1], [0, 1])])
    z = Point.of([0, 0], [1, 0])  # couples to 1 with the skew basis vector
    assert not dc_sigma_sq(d, z).is_finite


def test_sigma_sq_needs_positive_part():
    with pytest.raises(EmptyPositivePartError):
        dc_sigma_sq(FinGenDoubleCone.of(1, [(1, 0)], []), Point.zero(1))


def test_sigma_sq_is_four_fitz(rng):
    cfg = ProbeConfig(seed=14)
    for _ in range(15):
        n = rng.randint(1, 3)
        d = random_monotone_cone(rng, n)
        if not d.pos:
            continue
        z = sample_point(rng, n, cfg)
        s = dc_sigma_sq(d, z)
        f = dc_fitz_eval(d, z)
        assert s.is_finite == f.is_finite
        if s.is_finite:
            assert s.value == 4 * f.value


# ---------------------------------------------------------------- in_plus


def test_in_plus_skew_cone_is_orthogonal_nonneg():
    d = FinGenDoubleCone.of(2, [(1, 0, 0, 0)], [])
    assert dc_in_plus(d, Point.of([1, 0], [0, 0]))
    assert dc_in_plus(d, Point.of([0, 1], [0, 1]))
    assert not dc_in_plus(d, Point.of([0, 1], [0, -1]))  # c < 0
    assert not dc_in_plus(d, Point.of([0, 0], [1, 0]))  # couples to the basis


def test_in_plus_contains_the_cone(rng):
    for _ in range(15):
        n = rng.randint(1, 3)
        d = random_monotone_cone(rng, n)
        for p in d.members():
            assert dc_in_plus(d, p)
            assert dc_in_plus(d, p.scale(q(-3, 2)))


def test_in_plus_line_counterexample():
    assert not dc_in_plus(line_cone(), Point.of([1], [0]))


def test_in_plus_is_a_double_cone(rng):
    cfg = ProbeConfig(seed=17)
    for _ in range(10):
        n = rng.randint(1, 3)
        d = random_monotone_cone(rng, n)
        for _ in range(20):
            z = sample_point(rng, n, cfg)
            t = q(rng.randint(1, 4), rng.randint(1, 2))
            assert dc_in_plus(d, z) == dc_in_plus(d, z.scale(t))
            assert dc_in_plus(d, z) == dc_in_plus(d, z.scale(-t))


def test_in_plus_agrees_with_discriminant_oracle(rng):
    cfg = ProbeConfig(seed=19)
    for _ in range(20):
        n = rng.randint(1, 3)
        d = random_monotone_cone(rng, n)
        for _ in range(100):
            z = sample_point(rng, n, cfg)
            assert dc_in_plus(d, z) == oracle_dc_in_plus(d, z)


def test_oracle_agreement_even_off_monotone():
    d = FinGenDoubleCone.of(1, (), [Point.of([1], [1]), Point.of([1], [4])])
    rng = random.Random(4)
    cfg = ProbeConfig(seed=4)
    for _ in range(200):
        z = sample_point(rng, 1, cfg)
        assert dc_in_plus(d, z) == oracle_dc_in_plus(d, z)


# ---------------------------------------------------------------- hull


def test_three_ray_hull_not_monotone():
    hull = dc_lin_hull(three_ray())
    assert hull.dim == 3
    assert not is_monotone(hull)
    assert negative_witness(hull) == Z1 + Z2.scale(-2) + Z3


def test_skew_cone_hull_is_monotone():
    d = FinGenDoubleCone.of(2, [(1, 0, 0, 0), (0, 1, 0, 0)], [])
    assert is_monotone(dc_lin_hull(d))


def test_single_line_hull():
    assert dc_lin_hull(line_cone()) == Subspace.from_vectors(1, [(1, 1)])


# ---------------------------------------------------------------- classify


def test_classify_trivial_skew_cone():
    rep = dc_classify(FinGenDoubleCone.of(1, (), []))
    assert rep.skew and rep.monotone and rep.representable
    assert not rep.ni and not rep.unique and not rep.maximal
    assert all(v.tier == "exact" for v in rep.flags().values())


def test_classify_line_cone_matches_subspace():
    rep_cone = dc_classify(line_cone())
    rep_sub = classify(Subspace.from_vectors(1, [(1, 1)]))
    for name, v in rep_cone.flags().items():
        assert v.value == rep_sub.flags()[name].value


def test_classify_three_ray_probe_branch():
    rep = dc_classify(three_ray(), seed=0, samples=3000)
    assert rep.monotone.value and rep.monotone.tier == "exact"
    assert not rep.representable.value  # tangent generator pairs
    cand = rep.representable.witness
    assert cand is not None and not three_ray().contains(cand)
    # NI comes from the probe branch: either a probed verdict or an exact
    # counterexample pair in [fitz <= c]
    if rep.ni.value:
        assert rep.ni.tier.startswith("probed")
    else:
        z, w = rep.ni.witness
        assert dc_in_plus(three_ray(), z) and dc_in_plus(three_ray(), w)
        assert cval(z - w) < 0
    assert not rep.maximal.value


def test_classify_skew_cone_not_spanning():
    # two null lines with zero coupling: monotone skew cone, set != span
    d = FinGenDoubleCone.of(
        2, (), [Point.of([1, 0], [0, 0]), Point.of([0, 1], [0, 0])]
    )
    assert dc_is_monotone(d)
    rep = dc_classify(d)
    assert rep.skew.value and rep.monotone.value
    assert not rep.representable.value and not rep.maximal.value


def test_classify_skew_shifted_generator_blocks_representability():
    d = FinGenDoubleCone.of(
        2, [(1, 0, 0, 0)], [Point.of([0, 1], [0, 1])]
    )
    assert dc_is_monotone(d)
    rep = dc_classify(d)
    assert not rep.representable.value
    cand = rep.representable.witness
    assert cand is not None and not d.contains(cand)


def test_classify_non_monotone_cone():
    d = FinGenDoubleCone.of(1, (), [Point.of([1], [1]), Point.of([1], [-1])])
    rep = dc_classify(d)
    assert not rep.monotone.value and rep.monotone.witness is not None
    assert not rep.maximal.value


def test_classify_skew_non_monotone_axes():
    # the two coordinate axes: a skew double-cone that is not monotone
    d = FinGenDoubleCone.of(1, (), [Point.of([1], [0]), Point.of([0], [1])])
    rep = dc_classify(d)
    assert rep.skew.value and not rep.monotone.value


def test_strict_chain_for_zero_seed():
    # the zero subspace as a cone: related set is [c >= 0], its bidual is {0}
    d = FinGenDoubleCone.of(1, (), [])
    grid = [q(i, 5) for i in range(-10, 11)]
    splus = [
        Point.of([a], [b]) for a in grid for b in grid if a * b >= 0
    ]
    assert all(dc_in_plus(d, z) for z in splus)
    # (1,0) is in the null set but not in the bidual; (1,1) is related but
    # not null
    z_axis = Point.of([1], [0])
    assert dc_in_plus(d, z_axis) and cval(z_axis) == 0
    assert any(cval(z_axis - w) < 0 for w in splus)
    z_diag = Point.of([1], [1])
    assert dc_in_plus(d, z_diag) and cval(z_diag) > 0

import math
import random

import pytest

from monorel.doublecone import FinGenDoubleCone
from monorel.linsub import NotMonotoneError, fitz_eval, penot_eval
from monorel.oracle import (
    InfeasibleError,
    ProbeConfig,
    oracle_fitz_sup,
    oracle_maximal_probe,
    oracle_monotone_pairs,
    oracle_penot_cone,
    sample_in_span,
    sample_point,
)
from monorel.pairing import Point, Subspace, cval
from monorel.randgen import random_monotone_cone, random_monotone_subspace

DIAG = Subspace.from_vectors(1, [(1, 1)])
XAXIS = Subspace.from_vectors(1, [(1, 0)])


# ---------------------------------------------------------------- monotone pairs


def test_pairs_pass_on_monotone_line():
    cfg = ProbeConfig(seed=1, samples=300)

    def source(rng):
        return sample_in_span(rng, DIAG, cfg)

    res = oracle_monotone_pairs(source, cfg)
    assert res.passed and res.checked == 300


def test_pairs_witness_on_axes():
    cfg = ProbeConfig(seed=2, samples=500)
    axes = [Point.of([1], [0]), Point.of([0], [1])]

    def source(rng):
        return axes[rng.randrange(2)].scale(rng.randint(1, 3))

    res = oracle_monotone_pairs(source, cfg)
    assert not res.passed
    z, w = res.witness
    assert cval(z - w) < 0


def test_pairs_empty_source_vacuous():
    cfg = ProbeConfig(seed=3, samples=50)
    res = oracle_monotone_pairs(lambda rng: None, cfg)
    assert res.passed and res.checked == 0


# ---------------------------------------------------------------- fitz supremum


def test_fitz_sup_matches_exact():
    cfg = ProbeConfig(seed=4, samples=200)
    got = oracle_fitz_sup(DIAG, Point.of([1], [3]), cfg)
    assert abs(got - 4.0) <= 1e-6 * 5


def test_fitz_sup_zero_case():
    cfg = ProbeConfig(seed=5, samples=100)
    assert abs(oracle_fitz_sup(XAXIS, Point.of([5], [0]), cfg)) <= 1e-9


def test_fitz_sup_detects_divergence():
    cfg = ProbeConfig(seed=6, samples=100)
    assert math.isinf(oracle_fitz_sup(XAXIS, Point.of([1], [1]), cfg))


def test_fitz_sup_grows_with_radius():
    # without the stationary refinement the grid maximum alone grows
    small = ProbeConfig(seed=7, samples=400, grid_radius=2)
    big = ProbeConfig(seed=7, samples=400, grid_radius=40)
    z = Point.of([1], [1])
    assert math.isinf(oracle_fitz_sup(XAXIS, z, small))
    assert math.isinf(oracle_fitz_sup(XAXIS, z, big))


def test_fitz_sup_never_exceeds_exact(rng):
    cfg = ProbeConfig(seed=8, samples=60)
    for _ in range(15):
        n = rng.randint(1, 4)
        l = random_monotone_subspace(rng, n)
        z = sample_point(rng, n, cfg)
        exact = fitz_eval(l, z)
        got = oracle_fitz_sup(l, z, cfg)
        if exact.is_finite:
            bound = float(exact.value)
            assert got <= bound + 1e-6 * (1 + abs(bound))
            assert got >= bound - 1e-6 * (1 + abs(bound))  # refinement is sharp


def test_fitz_sup_rejects_non_monotone():
    with pytest.raises(NotMonotoneError):
        oracle_fitz_sup(Subspace.full(1), Point.zero(1), ProbeConfig())


# ---------------------------------------------------------------- maximality


def test_maximal_probe_passes_on_maximal():
    cfg = ProbeConfig(seed=9, samples=400)
    assert oracle_maximal_probe(DIAG, cfg).passed
    rot = Subspace.from_vectors(2, [(1, 0, 0, -1), (0, 1, 1, 0)])
    assert oracle_maximal_probe(rot, cfg).passed


def test_maximal_probe_witnesses_zero_subspace():
    cfg = ProbeConfig(seed=10, samples=400)
    res = oracle_maximal_probe(Subspace.zero(1), cfg)
    assert not res.passed
    assert cval(res.witness) >= 0  # any monotone point extends {0}


# ---------------------------------------------------------------- penot LP


def test_penot_cone_line():
    cfg = ProbeConfig(seed=11)
    d = FinGenDoubleCone.of(1, (), [Point.of([1], [1])])
    assert abs(oracle_penot_cone(d, Point.of([2], [2]), cfg) - 4.0) < 1e-6


def test_penot_cone_zero_point():
    cfg = ProbeConfig(seed=12)
    d = FinGenDoubleCone.of(1, (), [Point.of([1], [1])])
    assert abs(oracle_penot_cone(d, Point.zero(1), cfg)) < 1e-9


def test_penot_cone_infeasible():
    cfg = ProbeConfig(seed=13)
    d = FinGenDoubleCone.of(1, (), [Point.of([1], [1])])
    with pytest.raises(InfeasibleError):
        oracle_penot_cone(d, Point.of([1], [0]), cfg)


def test_penot_cone_matches_exact_on_subspace_shaped(rng):
    cfg = ProbeConfig(seed=14)
    for _ in range(10):
        n = rng.randint(1, 3)
        d = random_monotone_cone(rng, n, max_gens=1)
        shaped = d.point_set_is_subspace()
        if shaped is None:
            continue
        z = sample_in_span(rng, shaped, cfg)
        exact = penot_eval(shaped, z)
        assert exact.is_finite
        got = oracle_penot_cone(d, z, cfg)
        assert abs(got - float(exact.value)) <= 1e-6 * (1 + abs(float(exact.value)))


def test_penot_cone_skew_shift_invariance():
    # value ignores motion along the skew part
    cfg = ProbeConfig(seed=15)
    d = FinGenDoubleCone.of(2, [(1, 0, 0, 0)], [Point.of([0, 1], [0, 1])])
    base = Point.of([0, 2], [0, 2])
    shifted = Point.of([3, 2], [0, 2])
    v0 = oracle_penot_cone(d, base, cfg)
    v1 = oracle_penot_cone(d, shifted, cfg)
    assert abs(v0 - 4.0) < 1e-6 and abs(v1 - 4.0) < 1e-6

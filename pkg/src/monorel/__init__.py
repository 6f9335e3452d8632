"""Exact classification of linear monotone subspaces and finitely generated
monotone double-cones of R^n x R^n, with closed-form Fitzpatrick and Penot
evaluation, maximal monotone extension, and brute-force cross-checks."""

from .exact import (
    Inertia,
    Mat,
    Q,
    diagonalize_symmetric,
    inertia,
    nullspace,
    q,
    qstr,
    rref,
    solve_in_range,
    vec,
)
from .pairing import (
    DimensionMismatchError,
    Point,
    Subspace,
    couple,
    cval,
    pairing_matrix,
    perp,
    span_of,
)
from .linsub import (
    ClassificationReport,
    FitzValue,
    NotMonotoneError,
    Verdict,
    classify,
    extend_maximal,
    fitz_dom,
    fitz_eval,
    gram,
    in_plus,
    is_monotone,
    is_ni,
    is_skew,
    negative_witness,
    penot_eval,
    skew_part,
    sum_composition,
)
from .doublecone import (
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
from .gossez import EvConstSeq, FinSeq, check_identities, gossez_apply, pair, t1_apply
from .oracle import (
    InfeasibleError,
    ProbeConfig,
    ProbeResult,
    oracle_dc_in_plus,
    oracle_fitz_sup,
    oracle_maximal_probe,
    oracle_monotone_pairs,
    oracle_penot_cone,
)

__all__ = [name for name in dir() if not name.startswith("_")]

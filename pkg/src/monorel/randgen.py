"""Seeded random instances: skew subspaces, monotone subspaces, monotone cones.

Construction-first where a cheap certificate exists (graphs of skew or
positive-semidefinite-plus-skew matrices are monotone by construction,
growing a subspace through monotonically related points preserves
monotonicity), rejection sampling where it does not.
"""

from __future__ import annotations

import random
from typing import Optional

from .exact import Mat, q, vec
from .doublecone import FinGenDoubleCone
from .linsub import fitz_dom, in_plus
from .oracle import ProbeConfig, sample_in_span, sample_scalar
from .pairing import Point, Subspace, cval


def _rand_entry(rng: random.Random, span: int = 3) -> object:
    return q(rng.randint(-span, span))


def random_skew_matrix(rng: random.Random, n: int) -> Mat:
    a = [[q(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            e = _rand_entry(rng)
            a[i][j] = e
            a[j][i] = -e
    return Mat.from_rows(a, ncols=n)


def random_psd_matrix(rng: random.Random, n: int) -> Mat:
    """M^T D M with a nonnegative diagonal D: positive semidefinite."""
    m = Mat.from_rows(
        [[_rand_entry(rng, 2) for _ in range(n)] for _ in range(n)], ncols=n
    )
    d = [q(rng.randint(0, 3)) for _ in range(n)]
    scaled = Mat.from_rows(
        [[d[i] * e for e in m.rows[i]] for i in range(n)], ncols=n
    )
    return m.transpose().mul(scaled)


def _random_coordinate_subspace(rng: random.Random, n: int, dim: int) -> list:
    """Basis (possibly short) of a random subspace of R^n of dimension <= dim."""
    from .exact import rref

    rows = [[_rand_entry(rng) for _ in range(n)] for _ in range(dim + 1)]
    r, piv = rref(Mat.from_rows(rows, ncols=n))
    return [r.rows[i] for i in range(min(dim, len(piv)))]


def random_skew_subspace(rng: random.Random, n: int) -> Subspace:
    """A skew subspace: the graph of a skew matrix restricted to a random
    coordinate domain, in either orientation."""
    a = random_skew_matrix(rng, n)
    dim = rng.randint(0, n)
    dom = _random_coordinate_subspace(rng, n, dim)
    flip = rng.random() < 0.5
    gens = []
    for x in dom:
        ax = a.matvec(vec(x))
        gens.append(tuple(x) + tuple(ax) if not flip else tuple(ax) + tuple(x))
    return Subspace.from_vectors(n, gens)


def random_skew_subspace_ni(
    rng: random.Random, n: int, max_tries: int = 200
) -> Subspace:
    """A skew subspace whose negated orthogonal is monotone (NI case)."""
    from .exact import inertia
    from .linsub import gram
    from .pairing import perp

    for _ in range(max_tries):
        s = random_skew_subspace(rng, n)
        if inertia(gram(perp(s))).is_nsd():
            return s
    # full graphs always qualify: fall back deterministically
    a = random_skew_matrix(rng, n)
    gens = [
        tuple(vec([1 if j == i else 0 for j in range(n)]))
        + tuple(a.col(i))
        for i in range(n)
    ]
    return Subspace.from_vectors(n, gens)


def random_monotone_graph(rng: random.Random, n: int) -> Subspace:
    """Graph of (PSD + skew) over a random domain: monotone by construction."""
    a = random_psd_matrix(rng, n)
    k = random_skew_matrix(rng, n)
    total = Mat.from_rows(
        [
            [a.rows[i][j] + k.rows[i][j] for j in range(n)]
            for i in range(n)
        ],
        ncols=n,
    )
    dim = rng.randint(0, n)
    dom = _random_coordinate_subspace(rng, n, dim)
    flip = rng.random() < 0.5
    gens = []
    for x in dom:
        ax = total.matvec(vec(x))
        gens.append(tuple(x) + tuple(ax) if not flip else tuple(ax) + tuple(x))
    return Subspace.from_vectors(n, gens)


def grow_monotone_subspace(
    rng: random.Random,
    seed_space: Subspace,
    target_dim: int,
    cfg: Optional[ProbeConfig] = None,
) -> Subspace:
    """Extend a monotone seed by adjoining monotonically related points.

    Candidates are sampled inside the fitz domain (any admissible extension
    lives there); each accepted point keeps the span monotone.
    """
    cfg = cfg or ProbeConfig()
    cur = seed_space
    attempts = 0
    while cur.dim < target_dim and attempts < 400:
        attempts += 1
        dom = fitz_dom(cur)
        if dom.dim == cur.dim:
            break  # maximal already
        z = sample_in_span(rng, dom, cfg)
        if cur.contains(z):
            continue
        if in_plus(cur, z):
            cur = cur.join(Subspace.from_vectors(cur.n, [z.vec()]))
    return cur


def random_monotone_subspace(rng: random.Random, n: int) -> Subspace:
    """Mixed strategy: graphs, skew seeds, and grown extensions."""
    style = rng.randrange(3)
    if style == 0:
        return random_monotone_graph(rng, n)
    if style == 1:
        return random_skew_subspace(rng, n)
    seed_space = (
        random_skew_subspace(rng, n)
        if rng.random() < 0.5
        else random_monotone_graph(rng, n)
    )
    target = rng.randint(seed_space.dim, n)
    return grow_monotone_subspace(rng, seed_space, target)


def random_monotone_cone(
    rng: random.Random, n: int, max_gens: int = 5
) -> FinGenDoubleCone:
    """A monotone finitely generated double-cone.

    Either generators are drawn inside a random monotone subspace (any
    subset of a monotone set spans monotone lines) or free generators are
    rejection-sampled against the pairwise discriminant test; the first
    style can carry a skew part, the second one cannot.
    """
    cfg = ProbeConfig(seed=rng.randrange(1 << 30))
    if rng.random() < 0.5:
        space = random_monotone_subspace(rng, n)
        from .linsub import skew_part

        skew = skew_part(space)
        gens = []
        want = rng.randint(0, max_gens)
        tries = 0
        while len(gens) < want and tries < 200:
            tries += 1
            z = sample_in_span(rng, space, cfg)
            if cval(z) > 0:
                gens.append(z)
        return FinGenDoubleCone.of(n, skew.rows, gens)
    want = rng.randint(1, max_gens)
    for _ in range(300):
        gens = []
        tries = 0
        while len(gens) < want and tries < 200:
            tries += 1
            z = Point(
                tuple(sample_scalar(rng, cfg) for _ in range(n)),
                tuple(sample_scalar(rng, cfg) for _ in range(n)),
            )
            if cval(z) > 0:
                gens.append(z)
        cone = FinGenDoubleCone.of(n, (), gens)
        from .doublecone import dc_is_monotone

        if dc_is_monotone(cone):
            return cone
    # fall back to the subspace-backed construction
    space = random_monotone_graph(rng, n)
    gens = []
    tries = 0
    while len(gens) < want and tries < 200:
        tries += 1
        z = sample_in_span(rng, space, cfg)
        if cval(z) > 0:
            gens.append(z)
    from .linsub import skew_part

    return FinGenDoubleCone.of(n, skew_part(space).rows, gens)

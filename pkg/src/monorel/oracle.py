"""Independent brute-force and float verifiers.

Every closed form in the exact modules has a second route here: sampled
monotone pairs against the definition, a numerically maximized Fitzpatrick
supremum, a definitional membership probe for maximality, the per-generator
discriminant test for cone membership, and an LP evaluation of the cone
Penot function.  Probes draw from rational grids so the exact predicates
stay exact on probe points; floats only ever touch objective magnitudes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .exact import Q, QLike, Vec, q, vdot
from .doublecone import FinGenDoubleCone
from .linsub import NotMonotoneError, gram, in_plus, is_monotone
from .pairing import Point, Subspace, couple, cval, jvec


class InfeasibleError(ValueError):
    """The target point is outside the span: the infimum is +infinity."""


class OracleError(RuntimeError):
    """A float sub-solver failed to reach its advertised tolerance."""


@dataclass(frozen=True)
class ProbeConfig:
    """Reproducible probing parameters; identical seeds give identical runs."""

    seed: int = 0
    samples: int = 1000
    grid_radius: QLike = 4
    max_denominator: int = 3
    float_tolerance: float = 1e-9

    def rng(self) -> random.Random:
        return random.Random(self.seed)


@dataclass(frozen=True)
class ProbeResult:
    passed: bool
    checked: int
    witness: Optional[object] = None


def sample_scalar(rng: random.Random, cfg: ProbeConfig) -> Q:
    den = rng.randint(1, cfg.max_denominator)
    hi = int(q(cfg.grid_radius) * den)
    return q(rng.randint(-hi, hi)) / den


def sample_vec(rng: random.Random, dim: int, cfg: ProbeConfig) -> Vec:
    return tuple(sample_scalar(rng, cfg) for _ in range(dim))


def sample_point(rng: random.Random, n: int, cfg: ProbeConfig) -> Point:
    return Point(sample_vec(rng, n, cfg), sample_vec(rng, n, cfg))


def sample_in_span(rng: random.Random, space: Subspace, cfg: ProbeConfig) -> Point:
    """Random rational combination of the canonical basis."""
    out = [q(0)] * (2 * space.n)
    for row in space.rows:
        t = sample_scalar(rng, cfg)
        if t != 0:
            for j, e in enumerate(row):
                out[j] += t * e
    return Point.from_vec(tuple(out))


def oracle_monotone_pairs(
    point_source: Callable[[random.Random], Optional[Point]],
    cfg: ProbeConfig,
) -> ProbeResult:
    """Sample pairs from a point source and check c(z - w) >= 0 exactly."""
    rng = cfg.rng()
    seen: list = []
    checked = 0
    while checked < cfg.samples:
        z = point_source(rng)
        if z is None:
            break
        for w in seen:
            if checked >= cfg.samples:
                break
            checked += 1
            if cval(z - w) < 0:
                return ProbeResult(False, checked, (z, w))
        seen.append(z)
        if len(seen) > 4 * int(math.isqrt(cfg.samples)) + 4:
            seen.pop(0)
    return ProbeResult(True, checked)


def oracle_fitz_sup(l: Subspace, z: Point, cfg: ProbeConfig) -> float:
    """Float lower bound for sup_{w in l} (z . w - c(w)).

    Grid samples of basis coefficients are refined with a least-squares
    stationary point; when the stationary system is inconsistent the
    supremum diverges and math.inf is returned.  The result never exceeds
    the exact value by more than float roundoff.
    """
    if not is_monotone(l):
        raise NotMonotoneError("oracle supremum needs a monotone subspace")
    k = l.dim
    if k == 0:
        return 0.0
    g = gram(l)
    jz = jvec(z.vec())
    b = tuple(vdot(r, jz) for r in l.rows)
    g_f = np.array([[float(e) for e in row] for row in g.rows], dtype=float)
    b_f = np.array([float(e) for e in b], dtype=float)

    def val(u: np.ndarray) -> float:
        return float(b_f @ u - u @ g_f @ u)

    rng = cfg.rng()
    best = 0.0  # u = 0 is always admissible
    for _ in range(max(cfg.samples, 1)):
        u = np.array(
            [float(sample_scalar(rng, cfg)) for _ in range(k)], dtype=float
        )
        best = max(best, val(u))
    u_star, *_ = np.linalg.lstsq(2.0 * g_f, b_f, rcond=None)
    residual = np.max(np.abs(2.0 * g_f @ u_star - b_f)) if k else 0.0
    scale = 1.0 + float(np.max(np.abs(b_f))) if k else 1.0
    if residual > math.sqrt(cfg.float_tolerance) * scale:
        return math.inf  # divergence: b outside range(g)
    return max(best, val(u_star))


def oracle_maximal_probe(l: Subspace, cfg: ProbeConfig) -> ProbeResult:
    """Search for z outside l that is monotonically related to l.

    Samples are drawn inside the fitz domain (membership in [fitz <= c]
    forces that anyway); a hit is a counterexample to maximality.
    """
    if not is_monotone(l):
        raise NotMonotoneError("maximality probe needs a monotone subspace")
    from .linsub import fitz_dom

    dom = fitz_dom(l)
    rng = cfg.rng()
    checked = 0
    attempts = 0
    while checked < cfg.samples and attempts < 40 * cfg.samples:
        attempts += 1
        z = sample_in_span(rng, dom, cfg)
        if l.contains(z):
            continue
        checked += 1
        if in_plus(l, z):
            return ProbeResult(False, checked, z)
    return ProbeResult(True, checked)


def oracle_dc_in_plus(d: FinGenDoubleCone, z: Point) -> bool:
    """Definitional membership in D+ via one discriminant per component.

    c(z - t z_i) >= 0 for all t is a sign condition on a quadratic in t;
    c(z - s) >= 0 over the skew span forces the linear term to vanish.
    Exact, and independent of the closed-form branch logic in dc_in_plus.
    """
    c = cval(z)
    for s in list(d.skew.basis_points()) + list(d.zero):
        # c(z - t s) = c(z) - t (z . s): must be >= 0 for every t
        if couple(z, s) != 0:
            return False
    if c < 0:
        return False
    for p, ci in list(d.pos) + list(d.neg):
        k = couple(z, p)
        # c(z - t p) = ci t^2 - k t + c(z) >= 0 for all t
        if ci < 0:
            return False
        if ci == 0:
            if k != 0:
                return False
        elif k * k - 4 * ci * c > 0:
            return False
    return True


def oracle_penot_cone(d: FinGenDoubleCone, z: Point, cfg: ProbeConfig) -> float:
    """Float value of the cone Penot function at z by linear programming.

    Decomposing z = s + sum_i mu_i z_i with s in the skew span, the closed
    convex hull of c restricted to the cone evaluates to
    (min sum_i |mu_i| sqrt(c_i))^2 over all such decompositions; that is a
    weighted L1 minimization under linear constraints.  Raises
    InfeasibleError when z is outside the span of the cone.
    """
    from .doublecone import dc_is_monotone

    if not dc_is_monotone(d):
        raise NotMonotoneError("cone Penot oracle needs a monotone cone")
    if not d.lin_hull.contains(z):
        raise InfeasibleError("point outside the span: value is +inf")
    from scipy.optimize import linprog

    gens = [p for p, _ in d.pos]
    weights = [math.sqrt(float(c)) for _, c in d.pos]
    skew_rows = d.skew_hull.rows
    m = len(gens)
    s_dim = len(skew_rows)
    dim = 2 * d.n
    if m == 0:
        return 0.0  # z lies in the skew span: the value is c(z) = 0
    a_eq = np.zeros((dim, 2 * m + s_dim))
    for i, p in enumerate(gens):
        col = [float(e) for e in p.vec()]
        a_eq[:, i] = col
        a_eq[:, m + i] = [-e for e in col]
    for j, row in enumerate(skew_rows):
        a_eq[:, 2 * m + j] = [float(e) for e in row]
    b_eq = np.array([float(e) for e in z.vec()])
    cost = np.array(weights + weights + [0.0] * s_dim)
    bounds = [(0, None)] * (2 * m) + [(None, None)] * s_dim
    res = linprog(cost, A_eq=a_eq, b_eq=b_eq, bounds=bounds, method="highs")
    if not res.success:
        raise OracleError(f"LP failed: {res.message}")
    feas = float(np.max(np.abs(a_eq @ res.x - b_eq))) if dim else 0.0
    if feas > math.sqrt(cfg.float_tolerance):
        raise OracleError(f"LP feasibility residual too large: {feas}")
    return float(res.fun) ** 2

"""Exact identities for the classical skew shift-sum operator on sequences.

The operator maps a summable sequence x to y with

    y_k = sum_j x_j + x_k - 2 * sum_{j <= k} x_j.

For finitely supported rational x the image is eventually constant with
limit -sum_j x_j, so every pairing below is a finite exact sum.  The module
verifies the algebraic identities (skewness, antisymmetry, the limit
formula, membership in the orthogonal of the zero-sum restriction, and the
monotone-but-not-skew value <Tv + <v,e>e, v> = <v,e>^2); the topological
assertions that make the operator interesting in sequence spaces are not
decidable at this finite level and are out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

from .exact import Q, QLike, q


@dataclass(frozen=True)
class FinSeq:
    """Finitely supported sequence: sorted ((index >= 1, value != 0), ...)."""

    support: tuple

    @staticmethod
    def of(pairs: Iterable[Tuple[int, QLike]]) -> "FinSeq":
        acc: dict = {}
        for idx, val in pairs:
            idx = int(idx)
            if idx < 1:
                raise ValueError("indices start at 1")
            acc[idx] = acc.get(idx, q(0)) + q(val)
        items = tuple((i, v) for i, v in sorted(acc.items()) if v != 0)
        return FinSeq(items)

    @staticmethod
    def zero() -> "FinSeq":
        return FinSeq(())

    @staticmethod
    def unit(i: int) -> "FinSeq":
        return FinSeq.of([(i, 1)])

    def coeff(self, i: int) -> Q:
        for idx, val in self.support:
            if idx == i:
                return val
        return q(0)

    def total(self) -> Q:
        """<x, e>: the sum of all entries."""
        s = q(0)
        for _, val in self.support:
            s += val
        return s

    def max_index(self) -> int:
        return self.support[-1][0] if self.support else 0

    def __add__(self, other: "FinSeq") -> "FinSeq":
        return FinSeq.of(self.support + other.support)

    def scale(self, t: QLike) -> "FinSeq":
        t = q(t)
        return FinSeq.of([(i, t * v) for i, v in self.support])


@dataclass(frozen=True)
class EvConstSeq:
    """Eventually constant sequence: explicit head for 1..N, then a tail."""

    head: tuple
    tail: Q

    def value_at(self, i: int) -> Q:
        if i < 1:
            raise ValueError("indices start at 1")
        if i <= len(self.head):
            return self.head[i - 1]
        return self.tail

    @property
    def limit(self) -> Q:
        return self.tail

    def add_const(self, gamma: QLike) -> "EvConstSeq":
        gamma = q(gamma)
        return EvConstSeq(tuple(h + gamma for h in self.head), self.tail + gamma)


def gossez_apply(x: FinSeq) -> EvConstSeq:
    """Image of a finitely supported sequence; the limit is -<x, e>."""
    n = x.max_index()
    total = x.total()
    head = []
    partial = q(0)
    for i in range(1, n + 1):
        xi = x.coeff(i)
        partial += xi
        head.append(total + xi - 2 * partial)
    return EvConstSeq(tuple(head), -total)


def t1_apply(x: FinSeq) -> EvConstSeq:
    """Tx + <x, e> e, which always has a zero tail."""
    return gossez_apply(x).add_const(x.total())


def pair(x: FinSeq, y: EvConstSeq) -> Q:
    """<x, y> over the finite support of x; exact."""
    s = q(0)
    for i, v in x.support:
        s += v * y.value_at(i)
    return s


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    residual: Optional[Q]
    holds: bool
    note: str = ""


def check_identities(x: FinSeq, v: FinSeq) -> tuple:
    """Evaluate the defining identities exactly; every residual must be 0.

    The orthogonality identity <Tx, v> + <Tv + <v,e>e, x> = 0 is asserted
    only when <x, e> = 0 (in general the left side equals <x,e><v,e>).
    """
    tx = gossez_apply(x)
    tv = gossez_apply(v)
    ve = v.total()
    xe = x.total()
    tv_shift = tv.add_const(ve)

    checks = [
        IdentityCheck("skew_x", pair(x, tx), pair(x, tx) == 0),
        IdentityCheck("skew_v", pair(v, tv), pair(v, tv) == 0),
        IdentityCheck(
            "antisymmetry",
            pair(x, tv) + pair(v, tx),
            pair(x, tv) + pair(v, tx) == 0,
        ),
        IdentityCheck("limit_x", tx.limit + xe, tx.limit + xe == 0),
        IdentityCheck("limit_v", tv.limit + ve, tv.limit + ve == 0),
        IdentityCheck(
            "t1_tail_x", t1_apply(x).limit, t1_apply(x).limit == 0
        ),
        IdentityCheck(
            "nonskew_value",
            pair(v, tv_shift) - ve * ve,
            pair(v, tv_shift) - ve * ve == 0,
            note="<Tv + <v,e>e, v> = <v,e>^2 certifies a monotone, non-skew direction",
        ),
    ]
    if xe == 0:
        res = pair(v, tx) + pair(x, tv_shift)
        checks.append(
            IdentityCheck("orthogonality", res, res == 0, note="requires <x,e> = 0")
        )
    else:
        checks.append(
            IdentityCheck(
                "orthogonality",
                None,
                True,
                note="skipped: <x,e> != 0",
            )
        )
    return tuple(checks)

"""Psd completion of a symmetric matrix with one unknown off-diagonal entry.

The pattern is the doubly bordered one

    A(x) = [[A1, a, b],
            [a', alpha, x],
            [b', x, beta]]

whose fully specified principal submatrices are A2 = [[A1, a], [a', alpha]]
and A3 = [[A1, b], [b', beta]].  Under the rank assumption (A1 invertible or
rank A1 = rank A2) the psd completions form the closed interval

    x in [c - sqrt(R), c + sqrt(R)],  c = b' A1+ a,  R = (A2/A1)(A3/A1),

with rank max(rank A2, rank A3) at the endpoints and one more inside.  In
exact mode the endpoints stay symbolic (Surd) so callers can compare
rational candidates against them without numerical square roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import AssumptionViolated, InvalidInput, NotPpsd
from .linalg import (
    DEFAULT_TOL,
    SymMatrix,
    Tolerance,
    bordered,
    is_pd,
    is_psd,
    mat_vec,
    pinv_apply,
    rank,
)
from .rational import as_rational, is_rational
from .surd import Surd


@dataclass(frozen=True)
class BorderedPartial:
    """The partial matrix A(x) above; a1 has order n-2 of the full matrix."""

    a1: SymMatrix
    a: tuple
    b: tuple
    alpha: object
    beta: object

    def __post_init__(self):
        if len(self.a) != self.a1.order or len(self.b) != self.a1.order:
            raise InvalidInput("border vectors must match the core order")

    @property
    def order(self) -> int:
        return self.a1.order + 2

    @property
    def exact(self) -> bool:
        return (
            self.a1.exact
            and all(is_rational(x) for x in self.a)
            and all(is_rational(x) for x in self.b)
            and is_rational(self.alpha)
            and is_rational(self.beta)
        )

    def a2(self) -> SymMatrix:
        return bordered(self.a1, self.a, self.alpha)

    def a3(self) -> SymMatrix:
        return bordered(self.a1, self.b, self.beta)

    def matrix_at(self, x) -> SymMatrix:
        """The fully specified A(x) for a concrete value x."""
        n = self.a1.order
        if self.exact and is_rational(x):
            rows = [
                list(self.a1.rows[i]) + [as_rational(self.a[i]), as_rational(self.b[i])]
                for i in range(n)
            ]
            rows.append([as_rational(v) for v in self.a] + [as_rational(self.alpha), as_rational(x)])
            rows.append([as_rational(v) for v in self.b] + [as_rational(x), as_rational(self.beta)])
            return SymMatrix(rows, exact=True)
        arr = np.zeros((n + 2, n + 2))
        arr[:n, :n] = self.a1.to_array()
        arr[:n, n] = [float(v) for v in self.a]
        arr[n, :n] = arr[:n, n]
        arr[:n, n + 1] = [float(v) for v in self.b]
        arr[n + 1, :n] = arr[:n, n + 1]
        arr[n, n] = float(self.alpha)
        arr[n + 1, n + 1] = float(self.beta)
        arr[n, n + 1] = arr[n + 1, n] = float(x)
        return SymMatrix(arr, exact=False)


@dataclass(frozen=True)
class CompletionResult:
    x_minus: object
    x_plus: object
    rank_at_endpoint: int
    rank_interior: int
    assumption_ok: bool

    @property
    def is_point(self) -> bool:
        return self.rank_interior == self.rank_at_endpoint


def complete(
    p: BorderedPartial, tol: Tolerance = DEFAULT_TOL, trust_assumption: bool = False
) -> CompletionResult:
    """Interval of psd completions plus the rank classification.

    trust_assumption skips the rank-assumption error: the gap solvers pass
    it in float mode, where their branch conditions already imply the
    assumption but tolerance-based ranks of different submatrices can
    disagree spuriously on exactly-flat data.
    """
    a2, a3 = p.a2(), p.a3()
    if not is_psd(a2, tol):
        raise NotPpsd("A2 block is not psd", indices="rows 0..n-2 and n-1", submatrix=a2)
    if not is_psd(a3, tol):
        raise NotPpsd("A3 block is not psd", indices="rows 0..n-2 and n", submatrix=a3)
    r1, r2, r3 = rank(p.a1, tol), rank(a2, tol), rank(a3, tol)
    assumption_ok = r1 == p.a1.order or r1 == r2
    if not assumption_ok and not trust_assumption:
        raise AssumptionViolated("need A1 invertible or rank A1 = rank A2")

    plus_a = pinv_apply(p.a1, list(p.a))
    plus_b = pinv_apply(p.a1, list(p.b))
    if p.exact:
        center = sum(bi * xi for bi, xi in zip(p.b, plus_a)) if p.a1.order else as_rational(0)
        s2 = as_rational(p.alpha) - sum(ai * xi for ai, xi in zip(p.a, plus_a))
        s3 = as_rational(p.beta) - sum(bi * xi for bi, xi in zip(p.b, plus_b))
        # psd roundoff-free guard: schur complements of psd blocks are >= 0
        radicand = s2 * s3
        x_minus = Surd(center, radicand, -1)
        x_plus = Surd(center, radicand, 1)
        degenerate = radicand == 0
    else:
        center = float(np.dot([float(v) for v in p.b], plus_a)) if p.a1.order else 0.0
        s2 = float(p.alpha) - float(np.dot([float(v) for v in p.a], plus_a))
        s3 = float(p.beta) - float(np.dot([float(v) for v in p.b], plus_b))
        radicand = max(s2, 0.0) * max(s3, 0.0)
        half = math.sqrt(radicand)
        x_minus, x_plus = center - half, center + half
        scale = max(1.0, abs(float(p.alpha)), abs(float(p.beta)), p.a1.scale())
        degenerate = radicand <= (tol.eps_rank * scale) ** 2
    rank_end = max(r2, r3)
    rank_in = rank_end if degenerate else rank_end + 1
    return CompletionResult(x_minus, x_plus, rank_end, rank_in, assumption_ok)


def is_completable_pd(p: BorderedPartial, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the partial matrix is ppd; then the open interval is pd."""
    complete(p, tol)
    return is_pd(p.a2(), tol) and is_pd(p.a3(), tol)

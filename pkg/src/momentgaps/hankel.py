"""Hankel matrices and the rank calculus of truncated moment sequences.

A moment sequence is a plain sequence (beta_0, ..., beta_2k) of exact
rationals or floats, of odd length >= 3.  The sequence rank is k+1 when the
Hankel matrix is nonsingular, and otherwise the first column index whose
column lies in the span of its predecessors; for psd singular matrices this
coincides with the first singular upper-left corner, which is the cheaper
exact computation path used here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, SingularLeadCorner
from .linalg import (
    DEFAULT_TOL,
    SymMatrix,
    Tolerance,
    is_pd,
    is_psd,
    rank,
    rank_rect,
    solve_exact,
)
from .rational import as_rational, is_rational


@dataclass(frozen=True)
class GeneratingPolynomial:
    """Monic recursion x^r - phi_(r-1) x^(r-1) - ... - phi_0 for a sequence."""

    r: int
    phi: tuple

    def coefficients(self):
        """Monic coefficient vector, highest degree first."""
        return [1] + [-c for c in reversed(self.phi)]


def is_exact_sequence(s) -> bool:
    return all(is_rational(x) for x in s)


def validate_moments(s, require_positive_mass: bool = False):
    """Check odd length >= 3; optionally beta_0 > 0.  Returns a tuple."""
    seq = tuple(s)
    if len(seq) < 3 or len(seq) % 2 == 0:
        raise InvalidInput(f"moment sequence must have odd length >= 3, got {len(seq)}")
    if require_positive_mass and not seq[0] > 0:
        raise InvalidInput("beta_0 must be strictly positive")
    return seq


def hankel_matrix(s) -> SymMatrix:
    """(k+1) x (k+1) matrix with entry (i, j) = beta_(i+j)."""
    seq = validate_moments(s)
    k = (len(seq) - 1) // 2
    rows = [[seq[i + j] for j in range(k + 1)] for i in range(k + 1)]
    return SymMatrix(rows, exact=is_exact_sequence(seq))


def hankel_of(entries) -> SymMatrix:
    """Hankel matrix of an arbitrary odd-length window (order 0 allowed)."""
    seq = tuple(entries)
    if not seq:
        return SymMatrix.zeros(0)
    if len(seq) % 2 == 0:
        raise InvalidInput("Hankel window must have odd length")
    n = (len(seq) + 1) // 2
    rows = [[seq[i + j] for j in range(n)] for i in range(n)]
    return SymMatrix(rows, exact=is_exact_sequence(seq))


def corner_upper(s, m: int) -> SymMatrix:
    """Upper-left corner of size m+1."""
    seq = validate_moments(s)
    k = (len(seq) - 1) // 2
    if not 0 <= m <= k:
        raise InvalidInput(f"corner size {m} out of range 0..{k}")
    return hankel_matrix(seq).leading(m + 1)


def corner_lower(s, m: int) -> SymMatrix:
    """Lower-right corner of size m+1."""
    seq = validate_moments(s)
    k = (len(seq) - 1) // 2
    if not 0 <= m <= k:
        raise InvalidInput(f"corner size {m} out of range 0..{k}")
    return hankel_matrix(seq).principal(range(k - m, k + 1))


def reverse(s):
    """The sequence read backwards."""
    return tuple(reversed(validate_moments(s)))


def seq_rank(s, tol: Tolerance = DEFAULT_TOL) -> int:
    """Sequence rank: k+1 if nonsingular, else first dependent column index."""
    seq = validate_moments(s)
    k = (len(seq) - 1) // 2
    h = hankel_matrix(seq)
    full = rank(h, tol)
    if full == k + 1:
        return k + 1
    if is_psd(h, tol):
        # first singular upper-left corner
        for j in range(k + 1):
            if rank(h.leading(j + 1), tol) < j + 1:
                return j
        return k + 1
    # literal definition: first column in the span of its predecessors
    cols = [[h[i, j] for i in range(k + 1)] for j in range(k + 1)]
    prev_rank = 0
    for j in range(k + 1):
        block = [[cols[t][i] for t in range(j + 1)] for i in range(k + 1)]
        r = rank_rect(block, exact=h.exact, tol=tol)
        if r == prev_rank:
            return j
        prev_rank = r
    return k + 1


def generating_poly(s, tol: Tolerance = DEFAULT_TOL) -> GeneratingPolynomial:
    """Recursion coefficients phi = A(r-1)^-1 (beta_r, ..., beta_(2r-1))."""
    seq = validate_moments(s)
    k = (len(seq) - 1) // 2
    r = seq_rank(seq, tol)
    if r == k + 1:
        raise InvalidInput("nonsingular sequence has no determined recursion of length <= k")
    if r == 0:
        raise InvalidInput("zero leading column admits no generating recursion")
    lead = corner_upper(seq, r - 1)
    if not is_pd(lead, tol):
        raise SingularLeadCorner(f"leading corner of size {r} is not positive definite")
    rhs = [seq[r + i] for i in range(r)]
    if lead.exact:
        phi = solve_exact(lead.rows, [as_rational(x) for x in rhs])
    else:
        phi = list(np.linalg.solve(np.asarray(lead.rows, dtype=float), np.asarray(rhs, dtype=float)))
    return GeneratingPolynomial(r, tuple(phi))


def is_prg(s, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Positively recursively generated: pd leading corner + full recursion.

    Full-rank sequences qualify exactly when the whole Hankel matrix is pd.
    """
    seq = validate_moments(s)
    k = (len(seq) - 1) // 2
    r = seq_rank(seq, tol)
    if r == k + 1:
        return is_pd(hankel_matrix(seq), tol)
    if r == 0:
        return all(_near_zero(x, tol) for x in seq)
    try:
        gen = generating_poly(seq, tol)
    except SingularLeadCorner:
        return False
    exact = is_exact_sequence(seq)
    scale = max(1.0, max(abs(float(x)) for x in seq))
    for j in range(r, 2 * k + 1):
        predicted = sum(gen.phi[i] * seq[j - r + i] for i in range(r))
        if exact:
            if predicted != seq[j]:
                return False
        elif abs(float(predicted) - float(seq[j])) > tol.eps_rank * scale:
            return False
    return True


def _near_zero(x, tol: Tolerance) -> bool:
    if is_rational(x):
        return x == 0
    return abs(float(x)) <= tol.eps_rank

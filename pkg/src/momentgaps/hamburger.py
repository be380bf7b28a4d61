"""Classical truncated moment problem on the real line, without gaps.

Existence follows the flat rank criterion: the Hankel matrix must be psd
and its matrix rank must equal the sequence rank.  Measures are recovered
constructively: atoms are the roots of the generating recursion (companion
matrix eigenvalues, polished by Newton steps, with exact rational roots
detected by exact division), weights solve the Vandermonde system against
the leading moments.  Nonsingular sequences are extended by one canonical
moment (zero) before root extraction; any real extension yields k+1 simple
real nodes, so the choice only pins the reported measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidInput, NumericalRootFailure
from .hankel import hankel_matrix, seq_rank, validate_moments
from .linalg import DEFAULT_TOL, Tolerance, is_psd, rank, solve_exact
from .rational import QQ, as_rational, is_rational, rational_near
from .surd import Surd


@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely many distinct real atoms with strictly positive weights."""

    atoms: tuple
    weights: tuple

    def __post_init__(self):
        if len(self.atoms) != len(self.weights) or not self.atoms:
            raise InvalidInput("measure needs matching, nonempty atoms and weights")

    def __len__(self):
        return len(self.atoms)

    @property
    def exact(self) -> bool:
        return all(is_rational(x) for x in self.atoms) and all(
            is_rational(w) for w in self.weights
        )

    def moment(self, m: int):
        return sum(w * x**m for x, w in zip(self.atoms, self.weights))

    def abs_moment(self, m: int) -> float:
        """sum w |x|^m, the conditioning scale of the m-th moment."""
        return float(sum(float(w) * abs(float(x)) ** m for x, w in zip(self.atoms, self.weights)))


REASON_NOT_PSD = "not_psd"
REASON_RANK_MISMATCH = "rank_mismatch"
REASON_NOT_PRG = "not_prg"


@dataclass(frozen=True)
class ThmpVerdict:
    exists: bool
    rank: Optional[int] = None
    measure: Optional[AtomicMeasure] = None
    reason: Optional[str] = None


def moments_of(measure: AtomicMeasure, degree: int):
    """Vector (m_0, ..., m_degree) of the measure's power moments."""
    if degree < 0:
        raise InvalidInput("degree must be nonnegative")
    return [measure.moment(m) for m in range(degree + 1)]


def solve_thmp(s, tol: Tolerance = DEFAULT_TOL) -> ThmpVerdict:
    """Decide existence for a fully specified sequence and build a measure."""
    seq = validate_moments(s, require_positive_mass=True)
    h = hankel_matrix(seq)
    if not is_psd(h, tol):
        return ThmpVerdict(False, reason=REASON_NOT_PSD)
    r = seq_rank(seq, tol)
    if rank(h, tol) != r:
        return ThmpVerdict(False, reason=REASON_RANK_MISMATCH)
    measure = extract_measure(seq, tol, rank_hint=r)
    return ThmpVerdict(True, rank=r, measure=measure)


def extract_measure(s, tol: Tolerance = DEFAULT_TOL, rank_hint: Optional[int] = None) -> AtomicMeasure:
    """Recover a (sequence rank)-atomic representing measure.

    rank_hint skips the rank computation when the caller already certified
    it (gap solvers know the rank of their completions exactly, even when
    the completed values are floats).
    """
    seq = tuple(s)
    if len(seq) < 3 or len(seq) % 2 == 0:
        raise InvalidInput("moment sequence must have odd length >= 3")
    if not float(seq[0]) > 0:
        raise InvalidInput("beta_0 must be strictly positive")
    k = (len(seq) - 1) // 2
    seq = tuple(
        x.as_rational() if isinstance(x, Surd) and x.is_rational else x for x in seq
    )
    exactable = all(is_rational(x) or isinstance(x, Surd) for x in seq)
    if any(isinstance(x, Surd) for x in seq) and rank_hint is None:
        raise InvalidInput("sequences with surd entries need a certified rank")
    r = rank_hint if rank_hint is not None else seq_rank(seq, tol)
    nodes, weights = (
        _nodes_weights_exactable(seq, k, r, tol)
        if exactable
        else _nodes_weights_float(seq, k, r, tol)
    )
    order = sorted(range(len(nodes)), key=lambda i: float(nodes[i]))
    return AtomicMeasure(
        atoms=tuple(nodes[i] for i in order), weights=tuple(weights[i] for i in order)
    )


# ---------------------------------------------------------------------------
# exact extraction core.  Sequence entries live in Q(sqrt(rad)) (rad = 0 for
# plain rational data) and are carried as pairs (a, b) meaning a + b*sqrt(rad).
# Irrational atoms are refined by Newton iteration in high-precision rational
# arithmetic so that tiny-weight/large-atom measures still reproduce the top
# moments; float64 roots alone lose several digits there.

_REFINE_BITS = 320


def _pair_of(x, radicand):
    if isinstance(x, Surd):
        if x.radicand != radicand:
            raise InvalidInput("mixed radicands in one sequence")
        return (x.center, QQ(x.sign))
    return (as_rational(x), QQ(0))


def _pair_mul(p, q, rad):
    return (p[0] * q[0] + p[1] * q[1] * rad, p[0] * q[1] + p[1] * q[0])


def _pair_div(p, q, rad):
    den = q[0] * q[0] - q[1] * q[1] * rad
    if den == 0:
        raise ZeroDivisionError("division by zero field element")
    a = (p[0] * q[0] - p[1] * q[1] * rad) / den
    b = (p[1] * q[0] - p[0] * q[1]) / den
    return (a, b)


def _solve_pairs(rows, rhs, rad):
    """Gaussian elimination of a nonsingular system over Q(sqrt(rad))."""
    n = len(rows)
    zero = (QQ(0), QQ(0))
    aug = [list(rows[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != zero), None)
        if piv is None:
            raise InvalidInput("exact solve on a singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = _pair_div((QQ(1), QQ(0)), aug[col][col], rad)
        aug[col] = [_pair_mul(x, inv, rad) for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != zero:
                f = aug[i][col]
                row = aug[col]
                aug[i] = [
                    (x[0] - y[0], x[1] - y[1])
                    for x, y in ((aug[i][j], _pair_mul(f, row[j], rad)) for j in range(n + 1))
                ]
    return [aug[i][n] for i in range(n)]


def _round_bits(q, bits: int):
    scaled = q * (1 << bits)
    return QQ(scaled.numerator // scaled.denominator, 1 << bits)


def _sqrt_hp(rad, bits: int):
    """High-precision rational approximation of sqrt(rad)."""
    if rad == 0:
        return QQ(0)
    num, den = int(rad.numerator), int(rad.denominator)
    lo = math.isqrt((num << (2 * bits)) // den)
    return QQ(lo + 1, 1 << bits)


def _newton_refine(coeffs_hp, dcoeffs_hp, x0: float, bits: int = _REFINE_BITS):
    """Refine a simple real root of a monic polynomial given to high precision."""
    x = QQ(x0)  # exact dyadic value of the float
    for _ in range(6):
        p = QQ(1)
        for c in coeffs_hp:
            p = p * x - c
        dp = QQ(len(coeffs_hp))
        for c in dcoeffs_hp:
            dp = dp * x - c
        if dp == 0:
            break
        x = _round_bits(x - p / dp, bits)
    return x


def _nodes_weights_exactable(seq, k, r, tol: Tolerance):
    surds = [x for x in seq if isinstance(x, Surd)]
    rad = surds[0].radicand if surds else QQ(0)
    pairs = [_pair_of(x, rad) for x in seq]
    if r == k + 1:
        lead = [[pairs[i + j] for j in range(k + 1)] for i in range(k + 1)]
        rhs = [pairs[k + 1 + i] for i in range(k)] + [(QQ(0), QQ(0))]
        degree = k + 1
    else:
        lead = [[pairs[i + j] for j in range(r)] for i in range(r)]
        rhs = [pairs[r + i] for i in range(r)]
        degree = r
    phi = _solve_pairs(lead, rhs, rad)

    s_hp = _sqrt_hp(rad, _REFINE_BITS)
    s_float = math.sqrt(float(rad))
    phi_float = [float(a) + float(b) * s_float for a, b in phi]
    float_roots = _polished_float_roots(phi_float, degree, tol)

    # coefficients of p and p', highest degree first, to _REFINE_BITS precision
    coeffs_hp = [a + b * s_hp for a, b in reversed(phi)]
    dcoeffs_hp = [c * i for i, c in zip(range(degree - 1, 0, -1), coeffs_hp[:-1])]
    scale = max(1.0, max(abs(x) for x in float_roots))
    atoms = []
    nodes_hp = []
    for x in float_roots:
        hit = None
        for cand in rational_near(x):
            if abs(float(cand) - x) <= 1e-6 * scale and _pair_poly_zero(phi, cand, rad):
                hit = cand
                break
        if hit is not None:
            atoms.append(hit)
            nodes_hp.append(as_rational(hit))
        else:
            refined = _newton_refine(coeffs_hp, dcoeffs_hp, x)
            atoms.append(float(refined))
            nodes_hp.append(refined)
    if len(set(map(float, atoms))) != degree:
        raise NumericalRootFailure("rational root detection collapsed two atoms")

    vand = [[nodes_hp[j] ** i for j in range(degree)] for i in range(degree)]
    rhs_w = [
        as_rational(x) if is_rational(x) else _surd_hp(x) for x in seq[:degree]
    ]
    w = solve_exact(vand, rhs_w)
    all_rational = all(is_rational(x) for x in atoms) and not surds
    weights = w if all_rational else [float(x) for x in w]
    floor = 0.0 if all_rational else -tol.eps_rank
    for wt in weights:
        if not float(wt) > floor:
            raise NumericalRootFailure(f"nonpositive weight {wt} in recovered measure")
    return atoms, weights


def _surd_hp(x: Surd):
    lo, hi = x.approx(_REFINE_BITS)
    return (lo + hi) / 2


def _pair_poly_zero(phi, cand, rad) -> bool:
    """Exact test that a rational is a root of the pair-coefficient monic poly."""
    c = as_rational(cand)
    acc = (QQ(1), QQ(0))
    for a, b in reversed(phi):
        acc = (acc[0] * c - a, acc[1] * c - b)
    return acc == (QQ(0), QQ(0))


def _nodes_weights_float(seq, k, r, tol: Tolerance):
    vals = [float(x) for x in seq]
    if r == k + 1:
        lead = np.array([[vals[i + j] for j in range(k + 1)] for i in range(k + 1)])
        rhs = np.array(vals[k + 1 :] + [0.0])
        degree = k + 1
    else:
        lead = np.array([[vals[i + j] for j in range(r)] for i in range(r)])
        rhs = np.array(vals[r : 2 * r])
        degree = r
    phi = list(np.linalg.solve(lead, rhs))
    atoms = _polished_float_roots(phi, degree, tol)
    vand = np.vander(atoms, degree, increasing=True).T
    weights = list(np.linalg.solve(vand, np.asarray(vals[:degree])))
    for wt in weights:
        if not wt > -tol.eps_rank:
            raise NumericalRootFailure(f"nonpositive weight {wt} in recovered measure")
    return atoms, weights


def _poly_eval_float(phi, degree, x):
    # p(x) = x^degree - phi_(degree-1) x^(degree-1) - ... - phi_0
    acc = 1.0
    for c in reversed([float(c) for c in phi]):
        acc = acc * x - c
    return acc


def _polished_float_roots(phi, degree, tol: Tolerance):
    """Real companion-matrix roots with a few Newton steps, sorted."""
    coeffs = [1.0] + [-float(c) for c in reversed(phi)]
    roots = np.roots(coeffs) if degree > 0 else np.array([])
    scale = max(
        1.0,
        max((abs(float(c)) for c in phi), default=1.0),
        float(np.max(np.abs(roots))) if roots.size else 1.0,
    )
    if np.any(np.abs(roots.imag) > 1e-7 * scale):
        raise NumericalRootFailure("complex companion eigenvalues; roots are not cleanly real")
    vals = sorted(float(x) for x in roots.real)
    for idx, x in enumerate(vals):
        for _ in range(3):
            p = _poly_eval_float(phi, degree, x)
            dp = degree * x ** (degree - 1) - sum(
                i * float(phi[i]) * x ** (i - 1) for i in range(1, degree)
            )
            if dp == 0.0 or not np.isfinite(p / dp):
                break
            x -= p / dp
        vals[idx] = x
    for a, b in zip(vals, vals[1:]):
        if b - a <= 1e-9 * scale:
            raise NumericalRootFailure("atoms are not separated; rank certificate disagrees")
    return vals


def max_relative_error(measure: AtomicMeasure, seq_pairs) -> float:
    """Worst relative moment-reconstruction error over pairs (m, beta_m).

    Errors are measured against max(1, |beta_m|, sum w|x|^m): a moment that
    is small only through cancellation of large atoms is scaled by the size
    of the cancelling terms, which is the precision any finite-precision
    atom list can attain.
    """
    worst = 0.0
    for m, target in seq_pairs:
        got = measure.moment(m)
        denom = max(1.0, abs(float(target)), measure.abs_moment(m))
        worst = max(worst, abs(float(got) - float(target)) / denom)
    return worst

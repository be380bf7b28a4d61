"""Bivariate truncated moment problems on y=x^3, y=x^4, y^2=x^3, y^3=x^4.

Each curve admits a parametrization t -> (p(t), q(t)) by monomials, which
turns a bivariate moment multisequence into a univariate sequence via an
index substitution: the bivariate moment of X^i Y^j is the univariate
moment of t^(deg).  Under the curve's column relation and recursive
generation of M(k), every univariate index up to the target degree is hit
except the pattern's gaps, so the bivariate problem reduces to one of the
four gap solvers, and univariate atoms lift back to curve points.

The curves with even parametrization degree (y=x^4, y^3=x^4) need one
moment beyond degree 2k as input (an odd power of t that no in-degree
bivariate moment reaches); it is a mandatory input here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import HypothesisFailure, InvalidInput, MissingExtraMoment, MissingMoment
from .gaps import GapPattern, GappedSequence, GapVerdict, solve_gap
from .hamburger import AtomicMeasure
from .linalg import DEFAULT_TOL, SymMatrix, Tolerance, is_psd, mat_vec, nullspace
from .rational import QQ, as_rational, is_rational


@dataclass(frozen=True)
class CurveSpec:
    name: str
    pattern: GapPattern
    step: int  # univariate degree = 2 * step * k
    relation: dict  # column relation as {monomial: coefficient}, summing to zero
    relation_min_k: int
    small_k_equalities: dict  # k -> list of ((i,j), (i,j)) moment equalities
    index_map: Callable[[int], Optional[tuple]]  # univariate m -> (i, j) or None
    extra_index: Callable[[int], Optional[int]]  # k -> univariate m of the extra moment
    lift: Callable  # univariate atom -> curve point
    extra_name: str = ""


def _map_yx3(m):
    return (m % 3, m // 3)


def _map_yx4(m):
    return (m % 4, m // 4)


def _map_y2x3(m):
    r = m % 3
    if r == 0:
        return (0, m // 3)
    if r == 1:
        return (2, m // 3 - 1)
    return (1, m // 3)


def _map_y3x4(m):
    r = m % 4
    if r == 0:
        return (0, m // 4)
    if r == 1:
        return (3, m // 4 - 2)
    if r == 2:
        return (2, m // 4 - 1)
    return (1, m // 4)


CURVES = {
    "y=x3": CurveSpec(
        name="y=x3",
        pattern=GapPattern.LAST,
        step=3,
        relation={(0, 1): 1, (3, 0): -1},
        relation_min_k=3,
        small_k_equalities={2: [((0, 1), (3, 0)), ((1, 1), (4, 0)), ((0, 2), (3, 1))]},
        index_map=_map_yx3,
        extra_index=lambda k: None,
        lift=lambda x: (x, x**3),
    ),
    "y=x4": CurveSpec(
        name="y=x4",
        pattern=GapPattern.LAST2,
        step=4,
        relation={(0, 1): 1, (4, 0): -1},
        relation_min_k=4,
        small_k_equalities={
            3: [((0, 1), (4, 0)), ((1, 1), (5, 0)), ((2, 1), (6, 0))],
            2: [((0, 1), (4, 0))],
        },
        index_map=_map_yx4,
        extra_index=lambda k: 8 * k - 5,
        lift=lambda x: (x, x**4),
        extra_name="beta[3,2k-2]",
    ),
    "y2=x3": CurveSpec(
        name="y2=x3",
        pattern=GapPattern.FIRST,
        step=3,
        relation={(0, 2): 1, (3, 0): -1},
        relation_min_k=3,
        small_k_equalities={2: [((0, 2), (3, 0)), ((1, 2), (4, 0)), ((0, 3), (3, 1))]},
        index_map=_map_y2x3,
        extra_index=lambda k: None,
        lift=lambda x: (x**2, x**3),
    ),
    "y3=x4": CurveSpec(
        name="y3=x4",
        pattern=GapPattern.FIRST2,
        step=4,
        relation={(0, 3): 1, (4, 0): -1},
        relation_min_k=4,
        small_k_equalities={
            3: [
                ((0, 3), (4, 0)),
                ((1, 3), (5, 0)),
                ((2, 3), (6, 0)),
                ((0, 4), (4, 1)),
                ((0, 5), (4, 2)),
            ],
            2: [((0, 3), (4, 0))],
        },
        index_map=_map_y3x4,
        extra_index=lambda k: 5,
        lift=lambda x: (x**3, x**4),
        extra_name="beta[5/3,0]",
    ),
}


def degree_lex_basis(k: int):
    """Monomial exponents (i, j) for X^i Y^j, degree-lex with X before Y."""
    return [(d - j, j) for d in range(k + 1) for j in range(d + 1)]


@dataclass(frozen=True)
class BivariateSequence:
    """Moments beta[(i, j)] for i + j <= 2k, plus the optional extra moment."""

    k: int
    beta: dict
    extra: Optional[object] = None

    def __post_init__(self):
        need = {(i, j) for i in range(2 * self.k + 1) for j in range(2 * self.k + 1 - i)}
        missing = need - set(self.beta)
        if missing:
            raise MissingMoment(f"missing bivariate moments, e.g. {sorted(missing)[:3]}")
        if not self.beta[(0, 0)] > 0:
            raise InvalidInput("beta[0,0] must be strictly positive")

    @property
    def exact(self) -> bool:
        vals = list(self.beta.values()) + ([] if self.extra is None else [self.extra])
        return all(is_rational(v) for v in vals)

    @classmethod
    def from_measure_on_curve(cls, curve: str, params, weights, k: int, exact=True):
        """Moments of sum_l w_l * delta at the curve point of parameter t_l."""
        spec = CURVES[curve]
        pts = [spec.lift(as_rational(t) if exact else float(t)) for t in params]
        beta = {}
        for i in range(2 * k + 1):
            for j in range(2 * k + 1 - i):
                beta[(i, j)] = sum(
                    w * p**i * q**j for (p, q), w in zip(pts, weights)
                )
        extra = None
        m_extra = spec.extra_index(k)
        if m_extra is not None:
            extra = sum(w * (as_rational(t) if exact else float(t)) ** m_extra for t, w in zip(params, weights))
        return cls(k, beta, extra)


@dataclass(frozen=True)
class MomentMatrix:
    k: int
    matrix: SymMatrix
    basis: list
    beta: dict


@dataclass(frozen=True)
class CurveMeasure:
    """Weighted points on the curve."""

    points: tuple
    weights: tuple

    def moment(self, i: int, j: int):
        return sum(w * p**i * q**j for (p, q), w in zip(self.points, self.weights))

    def abs_moment(self, i: int, j: int) -> float:
        return float(
            sum(
                float(w) * abs(float(p)) ** i * abs(float(q)) ** j
                for (p, q), w in zip(self.points, self.weights)
            )
        )


@dataclass(frozen=True)
class CurveVerdict:
    exists: bool
    curve: str
    stage: Optional[str] = None  # failure stage: hypotheses | reduction | gap
    diagnostics: list = field(default_factory=list)
    reduced: Optional[GappedSequence] = None
    gap: Optional[GapVerdict] = None
    measure: Optional[CurveMeasure] = None


def build_M(b: BivariateSequence) -> MomentMatrix:
    """Moment matrix M(k) in the degree-lex monomial basis."""
    basis = degree_lex_basis(b.k)
    rows = [
        [b.beta[(p[0] + q[0], p[1] + q[1])] for q in basis]
        for p in basis
    ]
    return MomentMatrix(b.k, SymMatrix(rows, exact=b.exact), basis, dict(b.beta))


def check_hypotheses(m: MomentMatrix, curve: str, tol: Tolerance = DEFAULT_TOL):
    """(ok, diagnostics): psd M(k), curve relation, kernel shift closure."""
    spec = CURVES[curve]
    diags = []
    if not is_psd(m.matrix, tol):
        diags.append("moment matrix is not positive semidefinite")

    k = m.k
    if k >= spec.relation_min_k:
        vec = [QQ(0) if m.matrix.exact else 0.0] * len(m.basis)
        for mono, coeff in spec.relation.items():
            vec[m.basis.index(mono)] = coeff if not m.matrix.exact else as_rational(coeff)
        if not _in_kernel(m.matrix, vec, tol):
            diags.append(f"column relation {curve} fails in M(k)")
    else:
        for lhs, rhs in spec.small_k_equalities.get(k, []):
            a, b = m.beta[lhs], m.beta[rhs]
            if m.matrix.exact:
                ok = as_rational(a) == as_rational(b)
            else:
                ok = abs(float(a) - float(b)) <= tol.eps_rank * max(1.0, abs(float(a)), abs(float(b)))
            if not ok:
                diags.append(f"moment equality beta{lhs} = beta{rhs} fails ({a} != {b})")

    diags.extend(_shift_closure_failures(m, tol))
    return (not diags, diags)


def _in_kernel(mat: SymMatrix, vec, tol: Tolerance) -> bool:
    if mat.exact:
        return all(x == 0 for x in mat_vec(mat.rows, vec))
    arr = np.asarray(mat.rows, dtype=float)
    v = np.asarray(vec, dtype=float)
    return bool(np.linalg.norm(arr @ v) <= tol.eps_rank * mat.scale() * mat.order)


def _shift_closure_failures(m: MomentMatrix, tol: Tolerance):
    """Kernel vectors of degree <= k-1 must stay in the kernel after
    multiplying the polynomial by x or by y."""
    low = [i for i, (a, b) in enumerate(m.basis) if a + b <= m.k - 1]
    pos = {mono: i for i, mono in enumerate(m.basis)}
    out = []
    if m.matrix.exact:
        cols = [[m.matrix.rows[r][c] for c in low] for r in range(m.matrix.order)]
        basis_vectors = nullspace(cols)
    else:
        arr = np.asarray(m.matrix.rows, dtype=float)[:, low]
        _, sv, vt = np.linalg.svd(arr)
        small = [i for i in range(len(low)) if i >= len(sv) or sv[i] <= tol.eps_rank * max(1.0, sv[0] if len(sv) else 0.0) * m.matrix.order]
        basis_vectors = [vt[i] for i in small]
    for v in basis_vectors:
        for var, shift in (("x", (1, 0)), ("y", (0, 1))):
            shifted = [QQ(0) if m.matrix.exact else 0.0] * len(m.basis)
            for idx, coeff in zip(low, v):
                if coeff == 0:
                    continue
                mono = m.basis[idx]
                shifted[pos[(mono[0] + shift[0], mono[1] + shift[1])]] = coeff
            if not _in_kernel(m.matrix, shifted, tol):
                out.append(f"kernel polynomial not closed under multiplication by {var}")
    return out


def reduce(b: BivariateSequence, curve: str, tol: Tolerance = DEFAULT_TOL) -> GappedSequence:
    """Index-substitute into the univariate gapped sequence for the curve."""
    spec = CURVES[curve]
    ok, diags = check_hypotheses(build_M(b), curve, tol)
    if not ok:
        raise HypothesisFailure(f"hypotheses fail for {curve}", diagnostics=diags)
    big_k = spec.step * b.k
    missing = set(spec.pattern.missing_indices(big_k))
    extra_at = spec.extra_index(b.k)
    values = []
    for m in range(2 * big_k + 1):
        if m in missing:
            values.append(None)
            continue
        if extra_at is not None and m == extra_at:
            if b.extra is None:
                raise MissingExtraMoment(
                    f"curve {curve} needs the additional moment {spec.extra_name}"
                )
            values.append(b.extra)
            continue
        i, j = spec.index_map(m)
        if i + j > 2 * b.k or j < 0:
            raise InvalidInput(f"index map out of range at {m}")
        values.append(b.beta[(i, j)])
    return GappedSequence.from_values(spec.pattern, values)


def solve_curve(b: BivariateSequence, curve: str, tol: Tolerance = DEFAULT_TOL) -> CurveVerdict:
    """Full pipeline: hypotheses, reduction, gap solve, lift to the curve."""
    if curve not in CURVES:
        raise InvalidInput(f"unknown curve {curve!r}; choose from {sorted(CURVES)}")
    spec = CURVES[curve]
    try:
        reduced = reduce(b, curve, tol)
    except HypothesisFailure as exc:
        return CurveVerdict(False, curve, stage="hypotheses", diagnostics=list(exc.diagnostics))
    verdict = solve_gap(reduced, tol)
    if not verdict.exists:
        return CurveVerdict(
            False,
            curve,
            stage="gap",
            diagnostics=[f"univariate gap solver: {verdict.reason}"],
            reduced=reduced,
            gap=verdict,
        )
    points = tuple(spec.lift(x) for x in verdict.measure.atoms)
    measure = CurveMeasure(points, verdict.measure.weights)
    return CurveVerdict(True, curve, reduced=reduced, gap=verdict, measure=measure)


def curve_residual(measure: CurveMeasure, b: BivariateSequence, curve: str) -> float:
    """Worst relative error over all given bivariate moments (and the extra)."""
    worst = 0.0
    for (i, j), target in b.beta.items():
        got = measure.moment(i, j)
        denom = max(1.0, abs(float(target)), measure.abs_moment(i, j))
        worst = max(worst, abs(float(got) - float(target)) / denom)
    if b.extra is not None:
        spec = CURVES[curve]
        m = spec.extra_index(b.k)
        # the extra moment is an odd power of the curve parameter
        got = 0.0
        scale = 1.0
        for (p, q), w in zip(measure.points, measure.weights):
            t = _parameter_of(p, q, curve)
            got += float(w) * float(t) ** m
            scale += float(w) * abs(float(t)) ** m
        worst = max(
            worst, abs(got - float(b.extra)) / max(1.0, abs(float(b.extra)), scale)
        )
    return worst


def _parameter_of(p, q, curve: str):
    """Recover the curve parameter t from a lifted point."""
    if curve in ("y=x3", "y=x4"):
        return p
    if curve == "y2=x3":  # (t^2, t^3)
        return q / p if float(p) != 0 else 0 * q
    return q / p if float(p) != 0 else 0 * q  # y3=x4: (t^3, t^4)


def curve_equation_residual(measure: CurveMeasure, curve: str) -> float:
    """Worst |curve equation| over returned points (0 for exact points)."""
    worst = 0.0
    for p, q in measure.points:
        if curve == "y=x3":
            val = q - p**3
        elif curve == "y=x4":
            val = q - p**4
        elif curve == "y2=x3":
            val = q**2 - p**3
        else:
            val = q**3 - p**4
        worst = max(worst, abs(float(val)))
    return worst

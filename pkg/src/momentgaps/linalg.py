"""Dense symmetric linear algebra over exact rationals and over floats.

Exact mode is the authoritative decision path: positive semidefiniteness,
rank and column-space membership are decided with integer/rational
arithmetic, never with thresholds.  Float mode mirrors every operation with
tolerance-gated numpy routines and exists for speed and root finding.

Exact algorithms:

* psd test: all coefficients of det(lambda*I - A), i.e. the sums e_k of
  k-by-k principal minors, must be nonnegative.  The e_k are computed by the
  Faddeev-LeVerrier recurrence after clearing denominators, so the whole
  test runs in integer arithmetic (leading principal minors alone would
  certify definiteness only, not semidefiniteness).
* rank: fraction-free Gaussian elimination (Bareiss) with full pivoting on
  the denominator-cleared matrix.
* pseudoinverse: full-rank factorization A = B C read off the reduced row
  echelon form, then A+ = C^T (C C^T)^-1 (B^T B)^-1 B^T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput
from .rational import QQ, as_rational, is_rational


@dataclass(frozen=True)
class Tolerance:
    """Thresholds for float-mode decisions; ignored in exact mode."""

    eps_psd: float = 1e-9
    eps_rank: float = 1e-9


DEFAULT_TOL = Tolerance()


class SymMatrix:
    """A dense symmetric matrix, exact (rational entries) or float.

    Exact matrices store rationals in nested lists and must be given
    bit-exact symmetric data; float matrices are stored as numpy arrays and
    are symmetrized on construction.
    """

    __slots__ = ("order", "rows", "exact")

    def __init__(self, rows, exact: bool | None = None):
        if isinstance(rows, np.ndarray):
            exact = False if exact is None else exact
        if exact is None:
            exact = all(is_rational(x) for row in rows for x in row)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise InvalidInput("matrix rows must form a square grid")
        if exact:
            data = [[as_rational(x) for x in row] for row in rows]
            for i in range(n):
                for j in range(i):
                    if data[i][j] != data[j][i]:
                        raise InvalidInput(f"asymmetric entries at ({i},{j})")
        else:
            arr = np.asarray(rows, dtype=float)
            if not np.all(np.isfinite(arr)):
                raise InvalidInput("float matrix entries must be finite")
            data = 0.5 * (arr + arr.T)
        self.order = n
        self.rows = data
        self.exact = exact

    @classmethod
    def zeros(cls, n: int, exact: bool = True) -> "SymMatrix":
        if exact:
            return cls([[QQ(0)] * n for _ in range(n)], exact=True)
        return cls(np.zeros((n, n)), exact=False)

    @classmethod
    def identity(cls, n: int, exact: bool = True) -> "SymMatrix":
        if exact:
            return cls([[QQ(1) if i == j else QQ(0) for j in range(n)] for i in range(n)], exact=True)
        return cls(np.eye(n), exact=False)

    @classmethod
    def diag(cls, values, exact: bool | None = None) -> "SymMatrix":
        vals = list(values)
        if exact is None:
            exact = all(is_rational(v) for v in vals)
        n = len(vals)
        if exact:
            return cls(
                [[as_rational(vals[i]) if i == j else QQ(0) for j in range(n)] for i in range(n)],
                exact=True,
            )
        arr = np.zeros((n, n))
        arr[np.arange(n), np.arange(n)] = vals
        return cls(arr, exact=False)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        if self.order != other.order:
            return False
        if self.exact and other.exact:
            return self.rows == other.rows
        return np.array_equal(self.to_array(), other.to_array())

    def __repr__(self):
        return f"SymMatrix({self.rows!r})"

    def to_array(self) -> np.ndarray:
        if self.exact:
            return np.array([[float(x) for x in row] for row in self.rows], dtype=float)
        return np.array(self.rows, dtype=float)

    def to_lists(self):
        if self.exact:
            return [list(row) for row in self.rows]
        return [list(map(float, row)) for row in self.rows]

    def principal(self, indices) -> "SymMatrix":
        """Principal submatrix on the given (sorted) index set."""
        idx = list(indices)
        if any(i < 0 or i >= self.order for i in idx):
            raise InvalidInput("principal submatrix index out of range")
        if self.exact:
            return SymMatrix([[self.rows[i][j] for j in idx] for i in idx], exact=True)
        arr = self.to_array()
        return SymMatrix(arr[np.ix_(idx, idx)], exact=False)

    def leading(self, m: int) -> "SymMatrix":
        return self.principal(range(m))

    def scale(self) -> float:
        """max(1, max |entry|), used to scale float tolerances."""
        if self.order == 0:
            return 1.0
        if self.exact:
            return max(1.0, max(abs(float(x)) for row in self.rows for x in row))
        return max(1.0, float(np.max(np.abs(self.rows))))


# ---------------------------------------------------------------------------
# integer kernels (denominators cleared; signs of minor sums are unaffected
# because the matrix is scaled by a single positive integer)


def _clear_denominators(rows, with_lcm: bool = False):
    lcm = 1
    for row in rows:
        for x in row:
            d = int(x.denominator)
            lcm = lcm * d // math.gcd(lcm, d)
    ints = [[int(x.numerator) * (lcm // int(x.denominator)) for x in row] for row in rows]
    return (ints, lcm) if with_lcm else ints


def _minor_sums_int(mat):
    """Faddeev-LeVerrier: e_k = sum of k-by-k principal minors (integers).

    With p(l) = det(l*I - A) = l^n + c_1 l^(n-1) + ... + c_n the recurrence is
    M_1 = A, c_k = -tr(M_k)/k, M_k = A (M_(k-1) + c_(k-1) I); then
    e_k = (-1)^k c_k.  All divisions are exact over the integers.
    """
    n = len(mat)
    es = []
    m = [row[:] for row in mat]
    c = 0
    for k in range(1, n + 1):
        if k > 1:
            shifted = [row[:] for row in m]
            for i in range(n):
                shifted[i][i] += c
            m = [
                [sum(mat[i][t] * shifted[t][j] for t in range(n)) for j in range(n)]
                for i in range(n)
            ]
        trace = sum(m[i][i] for i in range(n))
        if trace % k:
            raise ArithmeticError("Faddeev-LeVerrier trace not divisible")
        c = -(trace // k)
        es.append(c if k % 2 == 0 else -c)
    return es


def _rank_bareiss(mat):
    """Rank by fraction-free elimination with full pivoting (any shape)."""
    m = [row[:] for row in mat]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    prev = 1
    while rank < nrows and rank < ncols:
        pivot = None
        for i in range(rank, nrows):
            for j in range(rank, ncols):
                if m[i][j]:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pi, pj = pivot
        if pi != rank:
            m[rank], m[pi] = m[pi], m[rank]
        if pj != rank:
            for row in m:
                row[rank], row[pj] = row[pj], row[rank]
        p = m[rank][rank]
        for i in range(rank + 1, nrows):
            for j in range(rank + 1, ncols):
                m[i][j] = (p * m[i][j] - m[i][rank] * m[rank][j]) // prev
            m[i][rank] = 0
        prev = p
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# rational kernels


def mat_mul(a, b):
    rows, inner = len(a), len(b)
    cols = len(b[0]) if inner else 0
    return [[sum(a[i][t] * b[t][j] for t in range(inner)) for j in range(cols)] for i in range(rows)]


def mat_vec(a, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def rref(rows):
    """Reduced row echelon form over the rationals; returns (R, pivot columns)."""
    m = [[QQ(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = QQ(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def solve_exact(a, b):
    """Solve a nonsingular rational system; raises on singular input."""
    n = len(a)
    aug = [[QQ(x) for x in row] + [QQ(b[i])] for i, row in enumerate(a)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise InvalidInput("exact solve on a singular matrix")
    return [red[i][n] for i in range(n)]


def inverse_exact(a):
    n = len(a)
    aug = [[QQ(x) for x in row] + [QQ(1) if j == i else QQ(0) for j in range(n)] for i, row in enumerate(a)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise InvalidInput("exact inverse of a singular matrix")
    return [row[n:] for row in red[:n]]


def nullspace(rows):
    """Basis of the rational kernel of a (rectangular) matrix."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [QQ(0)] * ncols
        v[f] = QQ(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# public operations


def principal_minor_sums(a: SymMatrix):
    """e_1..e_n with det(lambda*I - A) = sum_k (-1)^k e_k lambda^(n-k).

    Exact mode only; e_k is the sum of all k-by-k principal minors.
    """
    if not a.exact:
        raise InvalidInput("principal_minor_sums requires an exact matrix")
    ints, lcm = _clear_denominators(a.rows, with_lcm=True)
    es = _minor_sums_int(ints)
    return [QQ(e, lcm**k) for k, e in enumerate(es, start=1)]


def is_psd(a: SymMatrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Positive semidefiniteness; exact minor-sum signs or eigenvalue test."""
    if a.order == 0:
        return True
    if a.exact:
        ints = _clear_denominators(a.rows)
        return all(e >= 0 for e in _minor_sums_int(ints))
    eigs = np.linalg.eigvalsh(np.asarray(a.rows, dtype=float))
    return bool(eigs[0] >= -tol.eps_psd * a.scale())


def is_pd(a: SymMatrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Positive definiteness (all minor sums strictly positive)."""
    if a.order == 0:
        return True
    if a.exact:
        ints = _clear_denominators(a.rows)
        return all(e > 0 for e in _minor_sums_int(ints))
    eigs = np.linalg.eigvalsh(np.asarray(a.rows, dtype=float))
    return bool(eigs[0] > tol.eps_psd * a.scale())


def rank(a: SymMatrix, tol: Tolerance = DEFAULT_TOL) -> int:
    """Matrix rank; Bareiss elimination (exact) or singular values (float)."""
    if a.order == 0:
        return 0
    if a.exact:
        return _rank_bareiss(_clear_denominators(a.rows))
    sv = np.linalg.svd(np.asarray(a.rows, dtype=float), compute_uv=False)
    return int(np.sum(sv > tol.eps_rank * a.scale() * a.order))


def rank_rect(rows, exact: bool = True, tol: Tolerance = DEFAULT_TOL) -> int:
    """Rank of a rectangular block (used for augmented rank conditions)."""
    if not rows or not rows[0]:
        return 0
    if exact:
        return _rank_bareiss(_clear_denominators([[as_rational(x) for x in row] for row in rows]))
    arr = np.asarray(rows, dtype=float)
    sv = np.linalg.svd(arr, compute_uv=False)
    scale = max(1.0, float(np.max(np.abs(arr))))
    return int(np.sum(sv > tol.eps_rank * scale * max(arr.shape)))


def pinv(a: SymMatrix) -> SymMatrix:
    """Moore-Penrose inverse; exact via full-rank factorization."""
    n = a.order
    if not a.exact:
        return SymMatrix(np.linalg.pinv(np.asarray(a.rows, dtype=float), hermitian=True), exact=False)
    if n == 0:
        return SymMatrix.zeros(0)
    red, pivots = rref(a.rows)
    r = len(pivots)
    if r == 0:
        return SymMatrix.zeros(n)
    b = [[a.rows[i][j] for j in pivots] for i in range(n)]
    c = red[:r]
    cct = mat_mul(c, transpose(c))
    btb = mat_mul(transpose(b), b)
    mid = mat_mul(inverse_exact(cct), inverse_exact(btb))
    out = mat_mul(mat_mul(transpose(c), mid), transpose(b))
    return SymMatrix(out, exact=True)


def pinv_apply(a: SymMatrix, v):
    """A+ v without forming A+ when A is invertible; falls back to pinv."""
    if a.order == 0:
        return []
    if a.exact:
        try:
            return solve_exact(a.rows, list(v))
        except InvalidInput:
            return mat_vec(pinv(a).rows, list(v))
    return list(np.linalg.pinv(np.asarray(a.rows, dtype=float), hermitian=True) @ np.asarray(v, dtype=float))


def schur(m: SymMatrix, split: int) -> SymMatrix:
    """Generalized Schur complement of the leading split-by-split block."""
    n = m.order
    if split < 0 or split > n:
        raise InvalidInput("split outside matrix order")
    if m.exact:
        a = [row[:split] for row in m.rows[:split]]
        b = [row[split:] for row in m.rows[:split]]
        c = [row[:split] for row in m.rows[split:]]
        d = [row[split:] for row in m.rows[split:]]
        if split == 0:
            return SymMatrix(d, exact=True)
        ap = pinv(SymMatrix(a, exact=True)).rows
        out = mat_mul(mat_mul(c, ap), b)
        comp = [[d[i][j] - out[i][j] for j in range(n - split)] for i in range(n - split)]
        return SymMatrix(comp, exact=True)
    arr = np.asarray(m.rows, dtype=float)
    a, b = arr[:split, :split], arr[:split, split:]
    c, d = arr[split:, :split], arr[split:, split:]
    if split == 0:
        return SymMatrix(d, exact=False)
    return SymMatrix(d - c @ np.linalg.pinv(a, hermitian=True) @ b, exact=False)


def schur_trailing(m: SymMatrix, split: int) -> SymMatrix:
    """Schur complement of the trailing block, via index reversal."""
    n = m.order
    perm = list(range(n - 1, -1, -1))
    flipped = m.principal(perm)
    comp = schur(flipped, split)
    k = comp.order
    return comp.principal(range(k - 1, -1, -1))


def in_col_space(a: SymMatrix, v, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether v lies in the column space of A, i.e. A (A+ v) = v."""
    vec = list(v)
    if len(vec) != a.order:
        raise InvalidInput("vector length must equal matrix order")
    if a.order == 0:
        return True
    if a.exact:
        vec = [as_rational(x) for x in vec]
        return mat_vec(a.rows, pinv_apply(a, vec)) == vec
    arr = np.asarray(a.rows, dtype=float)
    w = np.asarray(vec, dtype=float)
    resid = arr @ (np.linalg.pinv(arr, hermitian=True) @ w) - w
    scale = max(a.scale(), float(np.max(np.abs(w))) if w.size else 1.0)
    return bool(np.linalg.norm(resid) <= tol.eps_rank * scale)


def bordered(core: SymMatrix, vec, corner) -> SymMatrix:
    """[[core, v], [v^T, corner]]: append one symmetric border row/column."""
    v = list(vec)
    if len(v) != core.order:
        raise InvalidInput("border length must equal core order")
    if core.exact and all(is_rational(x) for x in v) and is_rational(corner):
        rows = [list(row) + [as_rational(v[i])] for i, row in enumerate(core.rows)]
        rows.append([as_rational(x) for x in v] + [as_rational(corner)])
        return SymMatrix(rows, exact=True)
    arr = core.to_array()
    n = core.order
    out = np.zeros((n + 1, n + 1))
    out[:n, :n] = arr
    out[:n, n] = [float(x) for x in v]
    out[n, :n] = [float(x) for x in v]
    out[n, n] = float(corner)
    return SymMatrix(out, exact=False)


def embed_kernel_vector(v, rows, n: int):
    """Embed v (indexed by the set `rows`) into R^n with zeros elsewhere."""
    idx = list(rows)
    if len(idx) != len(list(v)):
        raise InvalidInput("index set size must match vector length")
    if any(i < 0 or i >= n for i in idx):
        raise InvalidInput("embedding index out of range")
    vec = list(v)
    exact = all(is_rational(x) for x in vec)
    out = [QQ(0) if exact else 0.0] * n
    for i, x in zip(idx, vec):
        out[i] = as_rational(x) if exact else float(x)
    return out

"""Exact rational scalars shared by every solver module.

Values in exact mode are arbitrary-precision rationals.  gmpy2's mpq is used
when available (noticeably faster on large numerators), with fractions.Fraction
as a drop-in fallback; both expose .numerator/.denominator and standard
arithmetic, which is all the rest of the code relies on.
"""

from __future__ import annotations

import math
from fractions import Fraction

try:
    from gmpy2 import mpq as QQ  # type: ignore[import-untyped]

    _RATIONAL_TYPES = (QQ(0).__class__, Fraction, int)
except ImportError:  # pragma: no cover - exercised only without gmpy2
    QQ = Fraction
    _RATIONAL_TYPES = (Fraction, int)

ZERO = QQ(0)
ONE = QQ(1)


def is_rational(x) -> bool:
    """True for exact scalars (ints count; floats do not)."""
    return isinstance(x, _RATIONAL_TYPES) and not isinstance(x, bool)


def as_rational(x) -> QQ:
    """Coerce ints, rationals, 'p/q' strings and decimal floats to QQ.

    Floats are read through their decimal repr, so 0.1 becomes 1/10 rather
    than the binary double closest to it.
    """
    if is_rational(x):
        return QQ(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r} in exact input")
        return QQ(Fraction(str(x)))
    if isinstance(x, str):
        return QQ(Fraction(x.strip()))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rational_str(x) -> str:
    """Canonical 'p/q' (or integer) string for serialization."""
    q = QQ(x)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def sqrt_if_square(x):
    """Exact square root of a nonnegative rational, or None if irrational."""
    q = QQ(x)
    if q < 0:
        raise ValueError("negative radicand")
    num, den = int(q.numerator), int(q.denominator)
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return QQ(rn, rd)
    return None


def rational_near(value: float, max_denominator: int = 10**12):
    """Best rational approximations of a float, smallest denominator first."""
    frac = Fraction(value)
    seen = set()
    out = []
    for bound in (1, 10, 100, 10**4, 10**6, 10**9, max_denominator):
        cand = frac.limit_denominator(bound)
        if cand not in seen:
            seen.add(cand)
            out.append(QQ(cand))
    return out

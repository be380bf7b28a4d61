"""Exact quadratic surds: values of the form center + sign * sqrt(radicand).

Completion intervals have endpoints of exactly this shape with rational
center and radicand.  Keeping them symbolic lets the gap solvers decide
membership and equality questions (is a rational candidate equal to an
endpoint? strictly inside?) by sign analysis instead of floating square
roots.  Perfect-square radicands collapse to plain rationals on creation.
"""

from __future__ import annotations

import math
from functools import total_ordering

from .rational import QQ, as_rational, is_rational, sqrt_if_square


def _sqrt_bounds(q, bits: int):
    """Rational lo <= sqrt(q) <= hi with gap below 2^-bits."""
    num, den = int(q.numerator), int(q.denominator)
    shift = 2 * bits
    lo = math.isqrt((num << shift) // den)
    return QQ(lo, 1 << bits), QQ(lo + 2, 1 << bits)


@total_ordering
class Surd:
    """center + sign*sqrt(radicand) with rational center and radicand >= 0."""

    __slots__ = ("center", "radicand", "sign")

    def __init__(self, center, radicand=0, sign=0):
        center = as_rational(center)
        radicand = as_rational(radicand)
        if radicand < 0:
            raise ValueError("negative radicand")
        if sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or 1")
        if sign == 0 or radicand == 0:
            radicand, sign = QQ(0), 0
        else:
            root = sqrt_if_square(radicand)
            if root is not None:
                center, radicand, sign = center + sign * root, QQ(0), 0
        self.center = center
        self.radicand = radicand
        self.sign = sign

    @classmethod
    def of(cls, value):
        if isinstance(value, Surd):
            return value
        return cls(value)

    @property
    def is_rational(self) -> bool:
        return self.sign == 0

    def as_rational(self):
        if not self.is_rational:
            raise ValueError("irrational surd has no rational value")
        return self.center

    def __float__(self):
        return float(self.center) + self.sign * math.sqrt(float(self.radicand))

    def __neg__(self):
        return Surd(-self.center, self.radicand, -self.sign)

    def __add__(self, other):
        if is_rational(other):
            return Surd(self.center + as_rational(other), self.radicand, self.sign)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if is_rational(other):
            return Surd(self.center - as_rational(other), self.radicand, self.sign)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def _cmp_zero(self) -> int:
        """Sign of center + s*sqrt(r), decided exactly."""
        if self.sign == 0:
            return (self.center > 0) - (self.center < 0)
        if self.sign > 0:
            if self.center >= 0:
                return 1
            # sqrt(r) vs -center > 0
            diff = self.radicand - self.center * self.center
            return (diff > 0) - (diff < 0)
        if self.center <= 0:
            return -1
        diff = self.center * self.center - self.radicand
        return (diff > 0) - (diff < 0)

    def compare(self, other) -> int:
        """Three-way comparison against a rational or another surd."""
        other = Surd.of(other)
        if other.sign == 0:
            return (self - other.center)._cmp_zero()
        if self.sign == 0:
            return -(other - self.center)._cmp_zero()
        if self.radicand == other.radicand and self.sign == other.sign:
            d = self.center - other.center
            return (d > 0) - (d < 0)
        # general case: sign of (c1 - c2) + s1*sqrt(r1) - s2*sqrt(r2);
        # compare X = c1 - c2 + s1*sqrt(r1) against Y = s2*sqrt(r2)
        x = Surd(self.center - other.center, self.radicand, self.sign)
        sx, sy = x._cmp_zero(), other.sign
        if sx != sy:
            return (sx > sy) - (sx < sy)
        # same nonzero sign: compare squares, orientation by the shared sign;
        # X^2 = (c^2 + r) + 2*c*s*sqrt(r) and Y^2 = r2 is rational
        if x.center > 0:
            sq_sign = x.sign
        elif x.center < 0:
            sq_sign = -x.sign
        else:
            sq_sign = 0
        x2 = Surd(
            x.center * x.center + x.radicand,
            x.radicand * (4 * x.center * x.center),
            sq_sign,
        )
        diff = (x2 - other.radicand)._cmp_zero()
        return diff if sx > 0 else -diff

    def __eq__(self, other):
        if isinstance(other, Surd) or is_rational(other):
            return self.compare(other) == 0
        return NotImplemented

    def __lt__(self, other):
        return self.compare(other) < 0

    def __hash__(self):
        if self.is_rational:
            return hash(self.center)
        return hash((self.center, self.radicand, self.sign))

    def __repr__(self):
        if self.is_rational:
            return f"Surd({self.center})"
        op = "+" if self.sign > 0 else "-"
        return f"Surd({self.center} {op} sqrt({self.radicand}))"

    def approx(self, bits: int = 80):
        """Rational interval (lo, hi) bracketing the value."""
        if self.is_rational:
            return self.center, self.center
        lo, hi = _sqrt_bounds(self.radicand, bits)
        if self.sign > 0:
            return self.center + lo, self.center + hi
        return self.center - hi, self.center - lo


def rational_between(lo, hi):
    """A rational strictly between lo and hi (surds or rationals); lo < hi."""
    lo, hi = Surd.of(lo), Surd.of(hi)
    if lo.compare(hi) >= 0:
        raise ValueError("empty open interval")
    bits = 8
    while bits <= 1 << 20:
        _, lo_upper = lo.approx(bits)
        hi_lower, _ = hi.approx(bits)
        if lo_upper < hi_lower:
            return as_rational((lo_upper + hi_lower) / 2)
        bits *= 2
    raise ArithmeticError("failed to separate interval endpoints")

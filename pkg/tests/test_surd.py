"""Quadratic surd values: exact comparisons and interval selection."""

import math
import random

import pytest

from momentgaps.rational import QQ
from momentgaps.surd import Surd, rational_between


def test_perfect_square_collapses():
    s = Surd(0, QQ(9, 4), 1)
    assert s.is_rational and s.as_rational() == QQ(3, 2)
    assert Surd(1, 4, -1).as_rational() == -1


def test_sqrt2_ordering():
    r2 = Surd(0, 2, 1)
    assert 1 < r2 < QQ(3, 2)
    assert r2 > QQ(141421356, 100000000)
    assert r2 < QQ(141421357, 100000000)
    assert -r2 < r2


def test_compare_matches_float_on_random_surds():
    rng = random.Random(0)
    for _ in range(5000):
        a = Surd(
            QQ(rng.randint(-20, 20), rng.randint(1, 9)),
            QQ(rng.randint(0, 30), rng.randint(1, 9)),
            rng.choice([-1, 0, 1]),
        )
        b = Surd(
            QQ(rng.randint(-20, 20), rng.randint(1, 9)),
            QQ(rng.randint(0, 30), rng.randint(1, 9)),
            rng.choice([-1, 0, 1]),
        )
        fa, fb = float(a), float(b)
        if abs(fa - fb) > 1e-9:
            assert a.compare(b) == (fa > fb) - (fa < fb)


def test_equality_and_cross_radicand_comparisons():
    assert Surd(1, 2, 1) == Surd(1, 2, 1)
    assert Surd(1, 2, 1) != Surd(1, 2, -1)
    assert Surd(3, 8, 1).compare(Surd(3, 2, 1)) > 0  # sqrt(8) > sqrt(2)
    assert Surd(0, 8, 1).compare(Surd(1, 2, 1)) > 0  # 2.83 > 2.41
    assert Surd(0, 8, -1).compare(Surd(-1, 2, -1)) < 0  # -2.83 < -2.41


def test_arithmetic_with_rationals():
    s = Surd(1, 2, 1)
    assert (s + 1).center == 2 and (s - QQ(1, 2)).center == QQ(1, 2)
    assert (-s).sign == -1
    assert float(2 - s) == pytest.approx(2 - (1 + math.sqrt(2)))


def test_rational_between():
    rng = random.Random(1)
    for _ in range(2000):
        a = Surd(
            QQ(rng.randint(-20, 20), rng.randint(1, 9)),
            QQ(rng.randint(0, 30), rng.randint(1, 9)),
            rng.choice([-1, 0, 1]),
        )
        b = Surd(
            QQ(rng.randint(-20, 20), rng.randint(1, 9)),
            QQ(rng.randint(0, 30), rng.randint(1, 9)),
            rng.choice([-1, 0, 1]),
        )
        if a.compare(b) < 0:
            mid = rational_between(a, b)
            assert a.compare(mid) < 0 and Surd.of(mid).compare(b) < 0


def test_rational_between_tight_interval():
    # interval of width ~1e-12 around sqrt(2)
    lo = Surd(0, 2, 1)
    hi = Surd(QQ(1, 10**12), 2, 1)
    mid = rational_between(lo, hi)
    assert lo.compare(mid) < 0 and Surd.of(mid).compare(hi) < 0


def test_invalid_inputs():
    with pytest.raises(ValueError):
        Surd(0, -1, 1)
    with pytest.raises(ValueError):
        rational_between(Surd(1), Surd(1))

"""Hankel construction and the sequence rank calculus."""

import random

import pytest

from momentgaps.errors import InvalidInput, SingularLeadCorner
from momentgaps.hamburger import AtomicMeasure, moments_of
from momentgaps.hankel import (
    corner_lower,
    corner_upper,
    generating_poly,
    hankel_matrix,
    is_prg,
    reverse,
    seq_rank,
)
from momentgaps.linalg import SymMatrix, is_psd, rank
from momentgaps.rational import QQ

TWO_ATOMS = (1, QQ(1, 2), QQ(5, 2), QQ(7, 2), QQ(17, 2))  # atoms -1, 2, weights 1/2


def rand_measure(rng, n, lo=-8, hi=8):
    atoms = rng.sample(range(lo, hi + 1), n)
    weights = [QQ(rng.randint(1, 8), rng.randint(1, 4)) for _ in range(n)]
    return AtomicMeasure(tuple(QQ(a) for a in atoms), tuple(weights))


def test_hankel_matrix_examples():
    assert hankel_matrix((1, 0, 1)).rows == [[1, 0], [0, 1]]
    assert hankel_matrix((1, 1, 1, 1, 1)).rows == [[1, 1, 1]] * 3
    assert hankel_matrix(TWO_ATOMS).rows == [
        [1, QQ(1, 2), QQ(5, 2)],
        [QQ(1, 2), QQ(5, 2), QQ(7, 2)],
        [QQ(5, 2), QQ(7, 2), QQ(17, 2)],
    ]


def test_corners():
    assert corner_upper((1, 0, 1), 0).rows == [[1]]
    assert corner_upper((1, 0, 2, 0, 6), 1).rows == [[1, 0], [0, 2]]
    assert corner_upper((1, 1, 1, 1, 1), 2).rows == [[1, 1, 1]] * 3
    assert corner_lower((1, 0, 1), 0).rows == [[1]]
    assert corner_lower((1, 0, 2, 0, 6), 1).rows == [[2, 0], [0, 6]]
    assert corner_lower((1, 1, 1, 1, 1), 2).rows == [[1, 1, 1]] * 3
    with pytest.raises(InvalidInput):
        corner_upper((1, 0, 1), 2)


def test_reverse():
    assert reverse((1, 2, 3)) == (3, 2, 1)
    assert reverse((1, 0, 1)) == (1, 0, 1)
    rng = random.Random(0)
    for _ in range(20):
        s = tuple(rng.randint(-5, 5) for _ in range(2 * rng.randint(1, 4) + 1))
        assert reverse(reverse(s)) == s


def test_reverse_permutation_identity():
    rng = random.Random(1)
    for _ in range(30):
        k = rng.randint(1, 4)
        s = tuple(QQ(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(2 * k + 1))
        h = hankel_matrix(s)
        flipped = hankel_matrix(reverse(s))
        assert flipped == h.principal(range(k, -1, -1))


def test_seq_rank_examples():
    assert seq_rank((1, 1, 1, 1, 1)) == 1
    assert seq_rank(TWO_ATOMS) == 2
    assert seq_rank((1, 0, 2, 0, 6)) == 3


def test_generating_poly_examples():
    g = generating_poly((1, 1, 1, 1, 1))
    assert g.r == 1 and list(g.phi) == [1]
    g = generating_poly((1, 0, 1, 0, 1))
    assert g.r == 2 and list(g.phi) == [1, 0]  # x^2 - 1
    g = generating_poly(TWO_ATOMS)
    assert g.r == 2 and list(g.phi) == [2, 1]  # x^2 - x - 2 = (x-2)(x+1)
    assert g.coefficients() == [1, -1, -2]


def test_generating_poly_needs_pd_corner():
    with pytest.raises(InvalidInput):
        generating_poly((1, 0, 1))  # nonsingular, no recursion of length <= k
    with pytest.raises(SingularLeadCorner):
        generating_poly((-1, -1, -1))  # rank 1 but leading corner not pd


def test_is_prg_examples():
    assert is_prg((1, 1, 1, 1, 1))
    assert not is_prg((1, 1, 1, 1, 2))
    assert is_prg(TWO_ATOMS)


def test_rank_principle():
    rng = random.Random(2)
    for _ in range(150):
        n = rng.randint(1, 5)
        mu = rand_measure(rng, n)
        k = n + rng.randint(1, 3)
        seq = moments_of(mu, 2 * k)
        bump = QQ(rng.choice([0, 0, 1, 3]), 2)
        seq[2 * k] = seq[2 * k] + bump
        trunc = seq[: 2 * k - 1]
        r = seq_rank(trunc)
        h = hankel_matrix(seq)
        assert is_psd(h)
        assert rank(hankel_matrix(trunc)) == r
        assert r <= rank(h) <= r + 1
        gen = generating_poly(trunc) if r <= k - 1 else None
        if gen is not None:
            predicted = sum(gen.phi[i] * seq[2 * k - r + i] for i in range(r))
            assert (rank(h) == r + 1) == (seq[2 * k] > predicted)
            assert (rank(h) == r + 1) == (bump > 0)


def test_corner_rank_chain():
    # psd singular Hankel: sequence rank equals all corner ranks from r-1 up
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 4)
        mu = rand_measure(rng, n)
        k = n + rng.randint(1, 3)
        seq = moments_of(mu, 2 * k)
        r = seq_rank(seq)
        assert r == n
        for m in range(r - 1, k):
            assert rank(corner_upper(seq, m)) == r
        # reversed chain on the lower-right corners
        rrev = seq_rank(tuple(reversed(seq[2:])))
        for m in range(max(rrev - 1, 0), k):
            assert rank(corner_lower(seq, m)) == rrev


def test_float_mode_seq_rank():
    seq = [float(x) for x in moments_of(rand_measure(random.Random(4), 3, -3, 3), 8)]
    assert seq_rank(seq) == 3

"""Oracle helpers: deterministic measures, scan behavior."""

import pytest

from momentgaps.errors import InvalidInput
from momentgaps.gaps import GapPattern, GappedSequence
from momentgaps.hamburger import moments_of, solve_thmp
from momentgaps.oracle import random_measure, scan_gap
from momentgaps.rational import QQ


def test_random_measure_contracts():
    m = random_measure(1, (-1, 1), seed=7)
    assert len(m) == 1 and m.weights[0] > 0
    assert random_measure(3, (-5, 5), seed=1) == random_measure(3, (-5, 5), seed=1)
    m = random_measure(3, (-5, 5), seed=1)
    assert len(set(m.atoms)) == 3
    assert all(-5 <= float(a) <= 5 for a in m.atoms)
    assert all(0 < w <= 2 for w in m.weights)
    with pytest.raises(InvalidInput):
        random_measure(0, (-1, 1), seed=0)
    with pytest.raises(InvalidInput):
        random_measure(50, (0, 1), seed=0)


def test_random_measure_always_solvable():
    for seed in range(20):
        m = random_measure(1 + seed % 4, (-3, 3), seed=seed)
        v = solve_thmp(moments_of(m, 2 * (len(m) + 1)))
        assert v.exists and v.rank == len(m)


def test_scan_delta_one_first_gap():
    seq = moments_of(random_measure(1, (0.99, 1.01), seed=0), 4)
    seq = [QQ(1), None, QQ(1), QQ(1), QQ(1)]
    g = GappedSequence(2, GapPattern.FIRST, {0: QQ(1), 2: QQ(1), 3: QQ(1), 4: QQ(1)})
    rep = scan_gap(g, 1e-3)
    assert rep.feasible
    assert any(abs(x - 1.0) <= 1.5e-3 for x in rep.feasible_points)


def test_scan_last_k1():
    g = GappedSequence.from_values(GapPattern.LAST, [1, None, 1])
    rep = scan_gap(g, 1e-3)
    assert any(abs(x - 1.0) <= 1.5e-3 for x in rep.feasible_points)
    # the psd interval is [-1, 1]; full matrix pd inside also qualifies
    assert rep.intervals and rep.intervals[0][0] <= -0.998


def test_scan_infeasible_last2():
    g = GappedSequence.from_values(GapPattern.LAST2, [1, 2, None, None, 1])
    rep = scan_gap(g, 0.02)
    assert not rep.feasible and rep.feasible_points == []


def test_scan_box_doubles_when_needed():
    # feasible value 4 sits outside the initial box 1 + max|beta| = 2
    g = GappedSequence.from_values(GapPattern.LAST, [1, None, 1, None, 1][:3])
    rep = scan_gap(g, 1e-2)
    assert rep.box[1] >= 2.0

    seq = [QQ(1), QQ(1, 2), None, QQ(9, 8)]  # needs values past the box? smoke only
    with pytest.raises(InvalidInput):
        scan_gap(g, 0.0)

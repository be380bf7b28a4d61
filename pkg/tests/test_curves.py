"""Bivariate reductions: hypotheses, index maps, round trips, lifts."""

import random

import pytest

import fixtures
from momentgaps.curves import (
    CURVES,
    BivariateSequence,
    build_M,
    check_hypotheses,
    curve_equation_residual,
    curve_residual,
    degree_lex_basis,
    reduce,
    solve_curve,
)
from momentgaps.errors import HypothesisFailure, InvalidInput, MissingExtraMoment, MissingMoment
from momentgaps.gaps import GapPattern
from momentgaps.hamburger import moments_of
from momentgaps.oracle import random_measure
from momentgaps.rational import QQ, is_rational


def delta_beta(point, k):
    px, py = point
    return {
        (i, j): px**i * py**j for i in range(2 * k + 1) for j in range(2 * k + 1 - i)
    }


def test_degree_lex_order():
    assert degree_lex_basis(2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def test_build_M_examples():
    b = BivariateSequence(1, delta_beta((1, 1), 1))
    assert build_M(b).matrix.rows == [[1, 1, 1]] * 3

    b = BivariateSequence(1, delta_beta((0, 0), 1))
    m = build_M(b).matrix
    assert m[0, 0] == 1 and all(m[i, j] == 0 for i in range(3) for j in range(3) if (i, j) != (0, 0))

    beta = {
        (i, j): QQ(1, 2) * 1 ** (i + j) + QQ(1, 2) * (-1) ** (i + j)
        for i in range(3)
        for j in range(3 - i)
    }
    m = build_M(BivariateSequence(1, beta)).matrix
    assert m.to_lists() == [[1, 0, 0], [0, 1, 1], [0, 1, 1]]


def test_missing_moment_rejected():
    with pytest.raises(MissingMoment):
        BivariateSequence(1, {(0, 0): 1})


def test_check_hypotheses_examples():
    ok, _ = check_hypotheses(build_M(BivariateSequence(2, delta_beta((1, 1), 2))), "y=x3")
    assert ok
    ok, diags = check_hypotheses(build_M(BivariateSequence(2, delta_beta((1, 2), 2))), "y=x3")
    assert not ok and any("beta(0, 1) = beta(3, 0)" in d for d in diags)
    b = BivariateSequence.from_measure_on_curve("y2=x3", [1, 2], [QQ(1, 2), QQ(1, 2)], 2)
    ok, _ = check_hypotheses(build_M(b), "y2=x3")
    assert ok


def test_hypotheses_distinguish_curves():
    rng = random.Random(0)
    for curve in CURVES:
        params = [QQ(3, 2), QQ(-1, 2), QQ(2)]
        weights = [QQ(1), QQ(1, 2), QQ(1, 3)]
        k = max(CURVES[c].relation_min_k for c in CURVES)
        b = BivariateSequence.from_measure_on_curve(curve, params, weights, k)
        m = build_M(b)
        for other in CURVES:
            ok, _ = check_hypotheses(m, other)
            assert ok == (other == curve), (curve, other)


def test_index_maps_well_defined_up_to_k12():
    for name, spec in CURVES.items():
        for k in range(1, 13):
            big_k = spec.step * k
            skip = set(spec.pattern.missing_indices(big_k))
            extra = spec.extra_index(k)
            for m in range(2 * big_k + 1):
                if m in skip or m == extra:
                    continue
                i, j = spec.index_map(m)
                assert i >= 0 and j >= 0 and i + j <= 2 * k, (name, k, m)


def test_reduce_examples():
    g = reduce(BivariateSequence.from_measure_on_curve("y=x3", [1], [1], 1), "y=x3")
    assert g.pattern is GapPattern.LAST and g.k == 3
    assert all(v == 1 for v in g.known.values()) and 5 not in g.known

    g = reduce(BivariateSequence.from_measure_on_curve("y2=x3", [1], [1], 2), "y2=x3")
    assert g.pattern is GapPattern.FIRST and g.k == 6 and 1 not in g.known
    assert all(v == 1 for v in g.known.values())


def test_reduce_checks_hypotheses():
    with pytest.raises(HypothesisFailure):
        reduce(BivariateSequence(2, delta_beta((1, 2), 2)), "y=x3")


def test_reduce_requires_extra_moment():
    b = BivariateSequence.from_measure_on_curve("y=x4", [QQ(1, 2)], [1], 2)
    stripped = BivariateSequence(2, b.beta, None)
    with pytest.raises(MissingExtraMoment):
        reduce(stripped, "y=x4")


def test_reduce_matches_parameter_moments():
    # the reduction of measure data equals the univariate parameter moments
    rng = random.Random(1)
    for curve, spec in CURVES.items():
        params = [QQ(1, 2), QQ(-3, 2)]
        weights = [QQ(2, 3), QQ(1, 4)]
        k = spec.relation_min_k
        b = BivariateSequence.from_measure_on_curve(curve, params, weights, k)
        g = reduce(b, curve)
        univ = [
            sum(w * t**m for t, w in zip(params, weights))
            for m in range(2 * spec.step * k + 1)
        ]
        for i, v in g.known.items():
            assert v == univ[i], (curve, i)


def test_solve_curve_examples():
    v = solve_curve(BivariateSequence.from_measure_on_curve("y=x3", [1], [1], 2), "y=x3")
    assert v.exists and v.measure.points == ((1, 1),) and v.measure.weights == (1,)

    b = BivariateSequence.from_measure_on_curve("y2=x3", [1, 2], [QQ(1, 2), QQ(1, 2)], 2)
    v = solve_curve(b, "y2=x3")
    assert v.exists
    assert sorted((float(p), float(q)) for p, q in v.measure.points) == [(1, 1), (4, 8)]
    assert curve_residual(v.measure, b, "y2=x3") == 0


def test_solve_curve_unknown_curve():
    b = BivariateSequence.from_measure_on_curve("y=x3", [1], [1], 1)
    with pytest.raises(InvalidInput):
        solve_curve(b, "y=x5")


@pytest.mark.parametrize("curve", sorted(CURVES))
def test_curve_round_trips(curve):
    spec = CURVES[curve]
    rng = random.Random(10 + spec.step)
    for trial in range(6):
        n = rng.randint(1, 3)
        params = rng.sample([QQ(a, 2) for a in range(-4, 5)], n)
        weights = [QQ(rng.randint(1, 4), rng.randint(1, 3)) for _ in range(n)]
        k = rng.randint(spec.relation_min_k, spec.relation_min_k + 2)
        b = BivariateSequence.from_measure_on_curve(curve, params, weights, k)
        v = solve_curve(b, curve)
        assert v.exists, (curve, params, weights, k, v.stage, v.diagnostics)
        assert curve_residual(v.measure, b, curve) <= 1e-8
        for p, q in v.measure.points:
            if is_rational(p) and is_rational(q):
                assert curve_equation_residual(v.measure, curve) == 0


def test_lift_regression_family_A():
    # top-degree univariate family embedded on y=x^3 at k=3; the curve
    # verdicts must coincide with the univariate ones
    for values, (want_exists, want_count) in zip(
        [fixtures.LAST_GAP_A1, fixtures.LAST_GAP_A2, fixtures.LAST_GAP_A3],
        fixtures.LAST_GAP_EXPECTED,
    ):
        beta = {}
        for i in range(7):
            for j in range(7 - i):
                beta[(i, j)] = values[i + 3 * j]
        b = BivariateSequence(3, beta)
        v = solve_curve(b, "y=x3")
        assert v.exists == want_exists
        if want_exists:
            assert v.gap.atom_count == want_count
            # the reduction reproduces the original univariate data
            for i, val in enumerate(values):
                if val is None:
                    assert i not in v.reduced.known
                else:
                    assert v.reduced.known[i] == val


def test_zero_parameter_atom():
    # a parameter at 0 maps to the curve point (0, 0)
    b = BivariateSequence.from_measure_on_curve("y2=x3", [0, 1], [QQ(1, 2), QQ(1, 2)], 2)
    v = solve_curve(b, "y2=x3")
    assert v.exists
    assert sorted((float(p), float(q)) for p, q in v.measure.points) == [(0, 0), (1, 1)]

import math
from fractions import Fraction as F

import pytest

from scalerep.convergence import (
    SEQUENCES,
    cauchy_holds,
    minimal_index,
    run_convergence_check,
    run_limit_mapping,
)
from scalerep.errors import BudgetExceeded
from scalerep.structures import BaseView

EPS = [F(1, 10), F(1, 1000), F(1, 10**6)]


def harmonic_h(eps):
    # sup_{j,m>h} |1/j - 1/m| = 1/(h+1), approached but not attained
    return math.ceil(1 / eps) - 1


def geometric_h(eps):
    # sup gap is |x_{h+1} - x_{h+2}| = 3/2^(h+2)
    h = 0
    while not F(3, 2 ** (h + 2)) < eps:
        h += 1
    return h


def window_sup(seq, h, width=40):
    vals = [seq.term(j) for j in range(h + 1, h + 1 + width)]
    return max(abs(a - b) for a in vals for b in vals)


def test_gap_formulas_against_brute_force():
    g = SEQUENCES["alternating_geometric"]
    for h in range(6):
        assert window_sup(g, h) == F(3, 2 ** (h + 2))
    hs = SEQUENCES["harmonic"]
    for h in range(6):
        assert window_sup(hs, h) < F(1, h + 1)


def test_frozen_indices():
    assert [harmonic_h(e) for e in EPS] == [9, 999, 999999]
    assert [geometric_h(e) for e in EPS] == [3, 10, 20]


@pytest.mark.parametrize("r", [2, F(1, 3), -1])
def test_harmonic_index_matches(r):
    report = run_convergence_check("harmonic", r, EPS)
    assert report.passed
    for eps in EPS:
        key = f"{eps.numerator}/{eps.denominator}"
        assert set(report.details[key].values()) == {harmonic_h(eps)}


@pytest.mark.parametrize("r", [2, F(1, 3), -1])
def test_geometric_index_matches(r):
    report = run_convergence_check("alternating_geometric", r, EPS)
    assert report.passed
    for eps in EPS:
        key = f"{eps.numerator}/{eps.denominator}"
        assert set(report.details[key].values()) == {geometric_h(eps)}


def test_constant_sequence():
    report = run_convergence_check("constant", F(5, 2), EPS)
    assert all(set(v.values()) == {0} for v in report.details.values())


def test_divergent_exceeds_budget_everywhere():
    with pytest.raises(BudgetExceeded) as exc:
        run_convergence_check("linear", 2, [F(1)])
    assert exc.value.views == ("base", "external", "internal")


def test_minimal_index():
    assert minimal_index(lambda h: h >= 37) == 37
    assert minimal_index(lambda h: True) == 0
    assert minimal_index(lambda h: False, cap=100) is None
    assert minimal_index(lambda h: h >= 10**6) == 10**6


def test_cauchy_is_monotone_in_h():
    seq, v = SEQUENCES["harmonic"], BaseView()
    flags = [cauchy_holds(v, seq, h, F(1, 20)) for h in range(40)]
    assert flags == sorted(flags)


@pytest.mark.parametrize("r, expected", [(3, 3), (1, 1), (-1, -1)])
def test_limit_mapping(r, expected):
    report = run_limit_mapping("shifted_harmonic", r, 1, EPS)
    assert report.passed
    assert report.details["limit"]["external"] == expected
    assert report.details["limit"]["internal"] == expected
    # |1/(h+1)| < eps strictly
    assert report.details["1/1000"]["base"] == 1000


def test_wrong_limit_never_reached():
    with pytest.raises(BudgetExceeded):
        run_limit_mapping("shifted_harmonic", 2, 2, [F(1, 10)], cap=1000)

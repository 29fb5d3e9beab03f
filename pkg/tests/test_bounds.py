import pytest

from lsdom.bounds import (
    Structure,
    bounds_for,
    consistency_check,
    gamma_bounds,
    ktds_bounds,
)
from lsdom.errors import Infeasible, Mismatch
from lsdom.graph import VertexSet, build
from lsdom.latin import cyclic, q_step
from lsdom.solver import DOMINATING, DominationCertificate, ktuple, solve_exact


def _vals(report):
    exact = None if report.exact is None else report.exact.value
    return report.lower.value, report.upper.value, exact


def test_gamma_small_orders():
    assert _vals(gamma_bounds(2)) == (1, 1, 1)
    assert _vals(gamma_bounds(4)) == (3, 3, 3)
    assert _vals(gamma_bounds(5)) == (2, 3, 3)


def test_gamma_general_and_cyclic():
    assert _vals(gamma_bounds(10)) == (5, 8, None)
    r = gamma_bounds(9, "cyclic")
    assert _vals(r) == (4, 6, None)
    assert r.upper.label == "cyclic-gamma-upper"
    assert gamma_bounds(11).lower.formula == "(n-1)/2 = 5"
    assert gamma_bounds(12).lower.formula == "(n-1)/2 = 11/2"


def test_ktds_bounds_values():
    r = ktds_bounds(8, 1)
    assert (r.lower.value, r.upper.value) == (5, 7)
    assert r.lower.label == "1tds-lower"
    assert ktds_bounds(6, 1, Structure("qstep", 2, 3)).upper.value == 4
    assert _vals(ktds_bounds(5, 2))[2] == 5
    assert ktds_bounds(4, 9).upper.value == 16
    assert ktds_bounds(3, 1).upper.value == 2
    assert _vals(ktds_bounds(3, 3))[:2] == (4, 5)


def test_ktds_bounds_errors():
    with pytest.raises(Infeasible):
        ktds_bounds(4, 10)
    with pytest.raises(ValueError):
        ktds_bounds(1, 1)
    with pytest.raises(ValueError):
        ktds_bounds(6, 1, Structure("qstep", 2, 2))
    with pytest.raises(ValueError):
        Structure("qstep")


def test_structure_tuple_and_str():
    r = bounds_for(6, ktuple(1), ("qstep", 2, 3))
    assert str(r.structure) == "qstep(2,3)"
    assert r.structure.matches(q_step(2, 3))
    assert not r.structure.matches(cyclic(6))


def test_every_source_is_sound_where_solvable():
    for n in range(2, 6):
        g = build(cyclic(n))
        for mode in [DOMINATING] + [ktuple(k) for k in range(1, 3 * (n - 1) + 1)]:
            report = bounds_for(n, mode, "cyclic")
            size = solve_exact(g, mode).size
            assert report.lower.value <= size <= report.upper.value
            if report.exact is not None:
                assert size == report.exact.value


def test_consistency_flags_low_and_non_optimal():
    sq = cyclic(5)
    tiny = DominationCertificate(sq, DOMINATING, VertexSet.from_cells(5, [(1, 1)]), False, "manual")
    check = consistency_check(gamma_bounds(5), tiny)
    assert not check.ok
    assert "gamma-lower" in check.contradictions[0]


def test_consistency_optimal_above_upper():
    sq = cyclic(5)
    big = DominationCertificate(sq, DOMINATING, VertexSet.from_cells(5, [(1, c) for c in range(1, 5)]), True, "manual")
    check = consistency_check(gamma_bounds(5), big)
    assert len(check.contradictions) == 2  # above the upper bound and off the exact value
    # the same set, not claimed optimal, is merely a weak upper bound
    weak = DominationCertificate(sq, DOMINATING, big.vset, False, "manual")
    assert consistency_check(gamma_bounds(5), weak).ok


def test_consistency_mismatch():
    cert = solve_exact(build(cyclic(4)), DOMINATING)
    with pytest.raises(Mismatch):
        consistency_check(gamma_bounds(5), cert)
    with pytest.raises(Mismatch):
        consistency_check(ktds_bounds(4, 1), cert)
    with pytest.raises(Mismatch):
        consistency_check(gamma_bounds(4, Structure("qstep", 2, 2)), cert)

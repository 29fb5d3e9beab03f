import pytest

from lsdom.constructions import (
    CYCLIC,
    cyclic_domination_construction,
    cyclic_domination_size,
    certificate,
    general_domination_construction,
    ktds_construction,
    ktds_size,
    qstep_1tds_construction,
    qstep_1tds_size,
)
from lsdom.errors import Infeasible, NotCanonicalQStep, OrderTooSmall
from lsdom.graph import VertexSet, build
from lsdom.latin import apply_isotopy, cyclic, q_step, random_isotopy_square
from lsdom.solver import DOMINATING, ktuple, verify

from conftest import switch_intercalate


def test_ktds_sizes():
    assert [ktds_size(5, k) for k in range(1, 13)] == [4, 5, 9, 10, 13, 15, 17, 20, 25, 25, 25, 25]
    assert ktds_size(6, 1) == 5
    # k = 2a + 1 with a > n - 2 falls back to every cell
    assert ktds_size(3, 3) == 5 and ktds_size(3, 5) == 9


def test_ktds_k1_is_first_row_prefix():
    assert ktds_construction(cyclic(5), 1).cells() == [(1, 1), (1, 2), (1, 3), (1, 4)]


def test_ktds_even_is_symbol_classes():
    sq = q_step(2, 3)
    vset = ktds_construction(sq, 4)
    assert {sq.at(r, c) for r, c in vset} == {1, 2}
    assert len(vset) == 12


def test_ktds_odd_adds_row_one():
    sq = cyclic(5)
    vset = ktds_construction(sq, 5)
    assert {(r, c) for r, c in vset if sq.at(r, c) > 2} == {(1, 3), (1, 4), (1, 5)}


def test_ktds_errors():
    with pytest.raises(OrderTooSmall):
        ktds_construction(cyclic(2), 1)
    with pytest.raises(Infeasible):
        ktds_construction(cyclic(4), 10)
    with pytest.raises(Infeasible):
        ktds_construction(cyclic(4), 0)


@pytest.mark.parametrize("n", range(3, 9))
def test_ktds_all_k_on_non_group_square(n):
    sq = switch_intercalate(cyclic(n)) if n % 2 == 0 else random_isotopy_square(n, seed=n)[0]
    g = build(sq)
    for k in range(1, 3 * (n - 1) + 1):
        vset = ktds_construction(sq, k)
        assert len(vset) == ktds_size(n, k)
        assert verify(g, vset, ktuple(k)).ok


def test_qstep_examples():
    cells = qstep_1tds_construction(2, 3).triples(q_step(2, 3))
    assert cells == [(1, 1, 1), (1, 2, 2), (2, 3, 4), (2, 4, 3)]
    cells = qstep_1tds_construction(3, 3).triples(q_step(3, 3))
    assert sorted(cells) == sorted([(1, 1, 1), (1, 2, 2), (1, 3, 3), (2, 4, 5), (2, 5, 6), (2, 6, 4), (3, 6, 5)])


def test_qstep_sizes():
    assert qstep_1tds_size(2, 3) == 4
    assert qstep_1tds_size(3, 3) == 7
    assert qstep_1tds_size(1, 5) == 4
    assert qstep_1tds_size(3, 4) == 9


def test_qstep_rejects_non_canonical():
    shuffled = random_isotopy_square(q=2, m=3, seed=4)[0]
    with pytest.raises(NotCanonicalQStep):
        qstep_1tds_construction(2, 3, shuffled)
    with pytest.raises(OrderTooSmall):
        qstep_1tds_construction(1, 2)


def test_cyclic_small_cases():
    assert cyclic_domination_construction(3).cells() == [(1, 3), (3, 1)]
    assert cyclic_domination_size(7) == 5
    with pytest.raises(OrderTooSmall):
        cyclic_domination_construction(2)


@pytest.mark.parametrize("n", range(31, 41))
def test_cyclic_beyond_acceptance_range(n):
    vset = cyclic_domination_construction(n)
    assert len(vset) == cyclic_domination_size(n)


@pytest.mark.parametrize(
    "sq",
    [cyclic(6), q_step(2, 4), q_step(3, 3), switch_intercalate(cyclic(8)), switch_intercalate(q_step(2, 5))],
    ids=["c6", "q24", "q33", "sw8", "sw10"],
)
def test_general_construction(sq):
    vset, iso = general_domination_construction(sq)
    n = sq.n
    assert len(vset) == n - 2
    assert verify(build(sq), vset, DOMINATING).ok
    # the normalising isotopy puts two 1s at (n-1, n) and (n, n-1)
    norm = apply_isotopy(sq, iso)
    assert norm.at(n - 1, n) == 1 and norm.at(n, n - 1) == 1


def test_general_construction_is_seed_deterministic():
    sq = random_isotopy_square(9, seed=2)[0]
    assert general_domination_construction(sq, seed=5) == general_domination_construction(sq, seed=5)


def test_general_construction_order_too_small():
    with pytest.raises(OrderTooSmall):
        general_domination_construction(cyclic(5))


def test_certificate_never_claims_optimality():
    cert = certificate(cyclic(6), cyclic_domination_construction(6), DOMINATING, CYCLIC)
    assert not cert.optimal and cert.method == CYCLIC and cert.size == 4

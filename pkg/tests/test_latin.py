import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lsdom.errors import BadShape, DimensionMismatch, FormatError, NotLatin
from lsdom.latin import (
    Isotopy,
    apply_isotopy,
    cyclic,
    detect_structure,
    find_intercalate,
    from_grid,
    is_group_isotope,
    is_latin,
    parse_text,
    q_step,
    random_isotopy,
    random_isotopy_square,
)

from conftest import NON_GROUP_5, switch_intercalate

FIGURE_3 = [
    [1, 2, 3, 4, 5, 6],
    [2, 1, 4, 3, 6, 5],
    [3, 4, 5, 6, 1, 2],
    [4, 3, 6, 5, 2, 1],
    [5, 6, 1, 2, 3, 4],
    [6, 5, 2, 1, 4, 3],
]


def test_from_grid_order_3():
    sq = from_grid([[1, 2, 3], [2, 3, 1], [3, 1, 2]])
    assert sq.n == 3
    assert sq.rows() == [[1, 2, 3], [2, 3, 1], [3, 1, 2]]


def test_from_grid_order_1():
    assert from_grid([[1]]).n == 1


def test_from_grid_reports_duplicate_column():
    with pytest.raises(NotLatin) as info:
        from_grid([[1, 2], [1, 2]])
    assert (info.value.kind, info.value.index, info.value.symbol) == ("column", 1, 1)


def test_from_grid_reports_duplicate_row():
    with pytest.raises(NotLatin) as info:
        from_grid([[1, 1], [2, 2]])
    assert (info.value.kind, info.value.index, info.value.symbol) == ("row", 1, 1)


@pytest.mark.parametrize("grid", [[], [[1, 2]], [[1, 2], [2]], [[1, 3], [3, 1]], [[0]]])
def test_from_grid_bad_shape(grid):
    with pytest.raises(BadShape):
        from_grid(grid)


def test_cyclic_small():
    assert cyclic(3).rows() == [[1, 2, 3], [2, 3, 1], [3, 1, 2]]
    assert cyclic(1).rows() == [[1]]
    six = cyclic(6).rows()
    assert six[0] == [1, 2, 3, 4, 5, 6]
    assert six[1] == [2, 3, 4, 5, 6, 1]


@pytest.mark.parametrize("n", range(1, 65))
def test_cyclic_validates(n):
    assert from_grid(cyclic(n).grid) == cyclic(n)


def test_q_step_matches_figure_3():
    assert q_step(2, 3).rows() == FIGURE_3


@pytest.mark.parametrize("m", range(1, 9))
def test_q_step_one_is_cyclic(m):
    assert q_step(1, m) == cyclic(m)


def test_q_step_3_3_circled_cells():
    sq = q_step(3, 3)
    assert [sq.at(2, 4), sq.at(2, 5), sq.at(2, 6), sq.at(3, 6)] == [5, 6, 4, 5]
    # the canonical row 3 starts 3, 1, 2
    assert sq.rows()[2][:3] == [3, 1, 2]


@pytest.mark.parametrize("q,m", [(q, m) for q in range(1, 5) for m in range(1, 5)])
def test_q_step_block_bands(q, m):
    sq = q_step(q, m)
    assert is_latin(sq.grid)
    for i in range(m):
        for j in range(m):
            block = {sq.grid[i * q + a][j * q + b] for a in range(q) for b in range(q)}
            band = (i + j) % m
            assert block == set(range(band * q + 1, band * q + q + 1))


def test_isotopy_identity_and_row_swap():
    L = cyclic(3)
    assert apply_isotopy(L, Isotopy.identity(3)) == L
    swap = Isotopy.from_cycles(3, sigma=[(1, 2)])
    assert apply_isotopy(L, swap).rows() == [[2, 3, 1], [1, 2, 3], [3, 1, 2]]


def test_isotopy_rejects_wrong_order():
    with pytest.raises(DimensionMismatch):
        apply_isotopy(cyclic(3), Isotopy.identity(4))
    with pytest.raises(DimensionMismatch):
        Isotopy((1, 1), (1, 2), (1, 2))


def test_isotopy_preserves_latinness_100_pairs():
    rng = random.Random(2024)
    for _ in range(100):
        n = rng.randint(1, 9)
        base = cyclic(n) if rng.random() < 0.5 else NON_GROUP_5
        iso = random_isotopy(base.n, rng)
        assert is_latin(apply_isotopy(base, iso).grid)


@given(st.integers(1, 8), st.integers(0, 10**6))
def test_isotopy_inverse_round_trip(n, seed):
    L = cyclic(n)
    iso = random_isotopy(n, random.Random(seed))
    assert apply_isotopy(apply_isotopy(L, iso), iso.inverse()) == L
    assert iso.then(iso.inverse()) == Isotopy.identity(n)


def test_isotopy_cell_mapping():
    L = cyclic(4)
    iso = random_isotopy(4, random.Random(5))
    out = apply_isotopy(L, iso)
    for r, c, s in L.cells():
        assert out.at(iso.sigma[r - 1], iso.tau[c - 1]) == iso.delta[s - 1]


def test_random_isotopy_square_is_deterministic():
    a = random_isotopy_square(5, seed=7)
    b = random_isotopy_square(5, seed=7)
    assert a == b
    assert random_isotopy_square(5, seed=8)[0] != a[0]


@given(st.integers(0, 10**6))
def test_random_isotopy_square_rows_are_permutations(seed):
    sq, iso = random_isotopy_square(5, seed=seed)
    assert is_latin(sq.grid)
    for row in sq.grid:
        assert sorted(row) == [1, 2, 3, 4, 5]
    assert apply_isotopy(cyclic(5), iso) == sq


def test_random_isotopy_square_qstep_base():
    sq, iso = random_isotopy_square(q=2, m=3, seed=1)
    assert apply_isotopy(q_step(2, 3), iso) == sq


def _brute_intercalate(sq):
    n = sq.n
    for r1, r2 in itertools.combinations(range(1, n + 1), 2):
        for c1, c2 in itertools.combinations(range(1, n + 1), 2):
            a, b = sq.at(r1, c1), sq.at(r1, c2)
            if a != b and sq.at(r2, c2) == a and sq.at(r2, c1) == b:
                return (r1, r2, c1, c2)
    return None


def test_intercalate_examples():
    assert find_intercalate(cyclic(4)) == (1, 3, 1, 3)
    assert {cyclic(4).at(1, 1), cyclic(4).at(1, 3)} == {1, 3}
    assert find_intercalate(cyclic(3)) is None
    assert _brute_intercalate(cyclic(3)) is None
    assert find_intercalate(cyclic(2)) == (1, 2, 1, 2)


@pytest.mark.parametrize("n", range(1, 7))
def test_intercalate_agrees_with_brute_force(n):
    rng = random.Random(n)
    squares = [cyclic(n)] + [apply_isotopy(cyclic(n), random_isotopy(n, rng)) for _ in range(15)]
    if n % 2 == 0:
        squares.append(q_step(2, n // 2))
    if n == 5:
        squares.append(NON_GROUP_5)
    for sq in squares:
        assert find_intercalate(sq) == _brute_intercalate(sq)


def test_text_round_trip():
    sq = q_step(2, 3)
    text = sq.to_text()
    assert text.splitlines()[0] == "6"
    assert parse_text(text) == sq
    assert parse_text(text).to_text() == text


@pytest.mark.parametrize("text", ["", "2\n1 2\n", "x\n", "2 2\n1 2\n2 1\n", "2\n1 a\n2 1\n"])
def test_text_format_errors(text):
    with pytest.raises(FormatError):
        parse_text(text)


def test_text_non_latin_rejected():
    with pytest.raises(NotLatin):
        parse_text("2\n1 2\n1 2\n")


def test_group_isotope_detection():
    for n in range(1, 9):
        assert is_group_isotope(cyclic(n))
    assert is_group_isotope(q_step(2, 3))
    assert is_group_isotope(random_isotopy_square(6, seed=3)[0])
    assert not is_group_isotope(NON_GROUP_5)
    assert not is_group_isotope(switch_intercalate(cyclic(6)))


def test_detect_structure():
    assert detect_structure(cyclic(5)) == ("cyclic", 1, 5)
    assert detect_structure(q_step(2, 3)) == ("qstep", 2, 3)
    assert detect_structure(NON_GROUP_5)[0] == "general"

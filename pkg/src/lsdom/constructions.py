"""Explicit dominating / kTDS sets of known size.

Every builder checks its own output with :func:`lsdom.solver.verify` and
raises rather than return a set that fails.
"""

from __future__ import annotations

import random
from typing import List, Optional, Sequence, Tuple

from .errors import ConstructionFailed, Infeasible, NotCanonicalQStep, OrderTooSmall
from .graph import LatinSquareGraph, VertexSet
from .latin import Isotopy, LatinSquare, apply_isotopy, cyclic, q_step
from .solver import DOMINATING, DominationCertificate, DominationMode, ktuple, verify

KTDS = "ktds-construction"
QSTEP = "qstep-1tds-construction"
CYCLIC = "cyclic-domination-construction"
GENERAL = "general-domination-construction"


def _checked(square: LatinSquare, vset: VertexSet, mode: DominationMode, what: str) -> VertexSet:
    result = verify(LatinSquareGraph(square), vset, mode)
    if not result.ok:
        raise ConstructionFailed(f"{what} produced a set failing {mode}: {result.violations[:5]}")
    return vset


def ktds_size(n: int, k: int) -> int:
    """Size of :func:`ktds_construction` output for order n and demand k."""
    if k == 1:
        return n - 1
    a, odd = divmod(k, 2)
    if not odd and a <= n:
        return a * n
    if odd and a <= n - 2:
        return a * n + n - a
    return n * n


def ktds_construction(square: LatinSquare, k: int) -> VertexSet:
    """A k-tuple total dominating set built from symbol classes and row 1.

    * k = 1: the first n-1 cells of row 1.
    * k = 2a: every cell holding one of the symbols 1..a.
    * k = 2a+1 (a <= n-2): those cells plus the rest of row 1.
    * anything else: all n^2 cells.
    """
    n = square.n
    cap = 3 * (n - 1)
    if n < 3:
        raise OrderTooSmall(f"construction needs n >= 3, got {n}; solve n = 2 exactly")
    if not 1 <= k <= cap:
        raise Infeasible(k, cap)
    a, odd = divmod(k, 2)
    if k == 1:
        cells = [(1, c) for c in range(1, n)]
    elif not odd and a <= n:
        cells = [(r, c) for r, c, s in square.cells() if s <= a]
    elif odd and a <= n - 2:
        cells = [(r, c) for r, c, s in square.cells() if s <= a or r == 1]
    else:
        cells = [(r, c) for r, c, _ in square.cells()]
    vset = VertexSet.from_cells(n, cells)
    return _checked(square, vset, ktuple(k), KTDS)


def qstep_1tds_size(q: int, m: int) -> int:
    n = q * m
    return n - q if m >= q + 1 else n - m + 1


def qstep_1tds_construction(q: int, m: int, square: Optional[LatinSquare] = None) -> VertexSet:
    """A 1TDS of the canonical q-step square of order n = mq.

    When m >= q+1: row r of block (1, r) for r = 1..q, plus the first row
    of blocks (1, q+1) .. (1, m-1); size n - q. When m <= q: row r of block
    (1, r) for r = 1..m-1, plus column (m-1)q in rows m..q; size n - m + 1.
    """
    n = q * m
    if n < 3:
        raise OrderTooSmall(f"construction needs n = mq >= 3, got {n}")
    canonical = q_step(q, m)
    if square is None:
        square = canonical
    elif square != canonical:
        raise NotCanonicalQStep(f"square is not the canonical q-step square with q={q}, m={m}")
    if m >= q + 1:
        cells = [(r, c) for r in range(1, q + 1) for c in range((r - 1) * q + 1, r * q + 1)]
        cells += [(1, c) for c in range(q * q + 1, n - q + 1)]
    else:
        cells = [(r, c) for r in range(1, m) for c in range((r - 1) * q + 1, r * q + 1)]
        cells += [(r, (m - 1) * q) for r in range(m, q + 1)]
    vset = VertexSet.from_cells(n, cells)
    return _checked(square, vset, ktuple(1), QSTEP)


def cyclic_domination_size(n: int) -> int:
    f, g = divmod(n, 3)
    return 2 * f + g


def cyclic_domination_construction(n: int) -> VertexSet:
    """A dominating set of size 2f+g for the cyclic square of order n = 3f+g.

    Splits the leading 3f x 3f part into a 3 x 3 grid of f x f regions and
    takes the diagonal just above the main one in the bottom-left region
    with that region's bottom-left corner, the main diagonal of the
    top-right region, and the last g cells of the main diagonal.
    """
    if n < 3:
        raise OrderTooSmall(f"construction needs n >= 3, got {n}")
    f, g = divmod(n, 3)
    cells = [(2 * f + i, i + 1) for i in range(1, f)]
    cells.append((3 * f, 1))
    cells += [(i, 2 * f + i) for i in range(1, f + 1)]
    cells += [(3 * f + i, 3 * f + i) for i in range(1, g + 1)]
    vset = VertexSet.from_cells(n, cells)
    return _checked(cyclic(n), vset, DOMINATING, CYCLIC)


def general_domination_construction(
    square: LatinSquare, seed: int = 0, restarts: int = 64
) -> Tuple[VertexSet, Isotopy]:
    """A dominating set of size n - 2 for any latin square of order n >= 6.

    The square is first normalised by row and column permutations so that
    two cells holding 1 sit at (n-1, n) and (n, n-1); the bottom-right 2x2
    block is then [[a, 1], [1, b]]. Inside the leading (n-2) x (n-2) part
    we pick cells with symbols a, b and 1 in distinct rows and columns and
    complete them to n-2 cells using every remaining row and column once.
    Rows 1..n-2 and columns 1..n-2 are then dominated along lines and the
    2x2 block by symbol.

    Returns:
        The set (in the coordinates of ``square``) and the normalising
        isotopy (identity on symbols).

    Raises:
        OrderTooSmall: n < 6.
        ConstructionFailed: no anchor choice, including ``restarts``
            seeded random normalisations, gave a verified set.
    """
    n = square.n
    if n < 6:
        raise OrderTooSmall(f"construction needs n >= 6, got {n}; use the exact solver")
    ones = [(r, c) for r, c, s in square.cells() if s == 1]
    anchors = [(p, q) for p in ones for q in ones if p[0] != q[0]]
    for p, q in anchors:
        found = _try_anchor(square, p, q)
        if found is not None:
            return found
    rng = random.Random(seed)
    for _ in range(restarts):
        p, q = rng.choice(anchors)
        found = _try_anchor(square, p, q, rng)
        if found is not None:
            return found
    raise ConstructionFailed(f"no normalisation of this order-{n} square gave a dominating set of size {n - 2}")


def _normalising_isotopy(n, p, q, rng=None) -> Isotopy:
    # row p[0] -> n-1, row q[0] -> n; column p[1] -> n, column q[1] -> n-1
    rest_rows = [r for r in range(1, n + 1) if r not in (p[0], q[0])]
    rest_cols = [c for c in range(1, n + 1) if c not in (p[1], q[1])]
    if rng is not None:
        rng.shuffle(rest_rows)
        rng.shuffle(rest_cols)
    sigma = [0] * n
    tau = [0] * n
    for i, r in enumerate(rest_rows, start=1):
        sigma[r - 1] = i
    for i, c in enumerate(rest_cols, start=1):
        tau[c - 1] = i
    sigma[p[0] - 1], sigma[q[0] - 1] = n - 1, n
    tau[p[1] - 1], tau[q[1] - 1] = n, n - 1
    return Isotopy(tuple(sigma), tuple(tau), tuple(range(1, n + 1)))


def _try_anchor(square, p, q, rng=None):
    n = square.n
    iso = _normalising_isotopy(n, p, q, rng)
    norm = apply_isotopy(square, iso)
    cells = _pick_in_normal_form(norm)
    if cells is None:
        return None
    inv = iso.inverse()
    vset = VertexSet.from_cells(n, [(inv.sigma[r - 1], inv.tau[c - 1]) for r, c in cells])
    if len(vset) != n - 2 or not verify(LatinSquareGraph(square), vset, DOMINATING).ok:
        return None
    return vset, iso


def _pick_in_normal_form(L: LatinSquare) -> Optional[List[Tuple[int, int]]]:
    """Choose the n-2 cells in a square already normalised as above."""
    n = L.n
    m = n - 2
    a, b = L.at(n - 1, n - 1), L.at(n, n)
    inner = range(1, m + 1)

    def one_in_row(r):
        return next((c for c in inner if L.at(r, c) == 1), None)

    def one_in_col(c):
        return next((r for r in inner if L.at(r, c) == 1), None)

    def v1_ok(r1, c1):
        # at most one of (n-1, c', b), (r', n-1, b), for the 1s in row r1 / column c1
        cp, rp = one_in_row(r1), one_in_col(c1)
        if cp is None or rp is None:
            return True
        return not (L.at(n - 1, cp) == b and L.at(rp, n - 1) == b)

    a_cells = [(r, c) for r in inner for c in inner if L.at(r, c) == a]
    b_cells = [(r, c) for r in inner for c in inner if L.at(r, c) == b]
    one_cells = [(r, c) for r in inner for c in inner if L.at(r, c) == 1]

    preferred = [v for v in a_cells if v1_ok(*v)]
    for strict in (True, False):
        firsts = preferred if strict else a_cells
        for r1, c1 in firsts:
            for r2, c2 in b_cells:
                if r2 == r1 or c2 == c1:
                    continue
                if strict and not (L.at(r1, c2) == 1 or L.at(r2, c1) == 1):
                    continue
                for r3, c3 in one_cells:
                    if r3 in (r1, r2) or c3 in (c1, c2):
                        continue
                    used_r, used_c = {r1, r2, r3}, {c1, c2, c3}
                    rows = [r for r in inner if r not in used_r]
                    cols = [c for c in inner if c not in used_c]
                    return [(r1, c1), (r2, c2), (r3, c3)] + list(zip(rows, cols))
    return None


def certificate(square: LatinSquare, vset: VertexSet, mode: DominationMode, method: str) -> DominationCertificate:
    return DominationCertificate(square, mode, vset, optimal=False, method=method)

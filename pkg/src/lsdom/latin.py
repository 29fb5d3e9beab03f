"""Latin squares: construction, validation, isotopy and intercalates.

All public coordinates and symbols are 1-based. Internally a square is a
tuple of row tuples, so ``grid[r - 1][c - 1]`` is the symbol in cell (r, c).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Sequence, Tuple

from .errors import BadShape, DimensionMismatch, FormatError, NotLatin

Grid = Tuple[Tuple[int, ...], ...]


class CellTriple(NamedTuple):
    """A cell (r, c) together with its symbol s, all 1-based."""

    r: int
    c: int
    s: int


@dataclass(frozen=True)
class LatinSquare:
    """An order-n latin square over the symbols 1..n.

    Use :func:`from_grid` (or the generators below) rather than calling the
    constructor directly; the constructor trusts its input.
    """

    n: int
    grid: Grid

    def at(self, r: int, c: int) -> int:
        return self.grid[r - 1][c - 1]

    def cell(self, r: int, c: int) -> CellTriple:
        return CellTriple(r, c, self.grid[r - 1][c - 1])

    def cells(self) -> Iterator[CellTriple]:
        """Yield every cell in row-major order."""
        for r, row in enumerate(self.grid, start=1):
            for c, s in enumerate(row, start=1):
                yield CellTriple(r, c, s)

    def rows(self) -> list[list[int]]:
        return [list(row) for row in self.grid]

    def to_text(self) -> str:
        """Render in the text grid format (order line, then one line per row)."""
        lines = [str(self.n)]
        lines.extend(" ".join(str(s) for s in row) for row in self.grid)
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        width = len(str(self.n))
        return "\n".join(" ".join(str(s).rjust(width) for s in row) for row in self.grid)


def from_grid(grid: Sequence[Sequence[int]]) -> LatinSquare:
    """Validate ``grid`` and wrap it as a :class:`LatinSquare`.

    Raises:
        BadShape: empty or non-square grid, or a symbol outside 1..n.
        NotLatin: a row (checked first) or column repeats a symbol.
    """
    n = len(grid)
    if n == 0:
        raise BadShape("grid is empty")
    rows = []
    for i, row in enumerate(grid, start=1):
        row = tuple(int(s) for s in row)
        if len(row) != n:
            raise BadShape(f"row {i} has {len(row)} entries, expected {n}")
        for s in row:
            if not 1 <= s <= n:
                raise BadShape(f"symbol {s} in row {i} is outside 1..{n}")
        rows.append(row)
    for i, row in enumerate(rows, start=1):
        dup = _first_duplicate(row)
        if dup is not None:
            raise NotLatin("row", i, dup)
    for j in range(n):
        dup = _first_duplicate(row[j] for row in rows)
        if dup is not None:
            raise NotLatin("column", j + 1, dup)
    return LatinSquare(n, tuple(rows))


def _first_duplicate(values) -> Optional[int]:
    seen = set()
    for v in values:
        if v in seen:
            return v
        seen.add(v)
    return None


def is_latin(grid: Sequence[Sequence[int]]) -> bool:
    try:
        from_grid(grid)
    except (BadShape, NotLatin):
        return False
    return True


def parse_text(text: str) -> LatinSquare:
    """Parse the text grid format produced by :meth:`LatinSquare.to_text`."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty grid document")
    try:
        header = lines[0]
        if len(header) != 1:
            raise FormatError("first line must hold the order n alone")
        n = int(header[0])
        body = [[int(tok) for tok in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise FormatError(f"non-integer token: {exc}") from None
    if len(body) != n:
        raise FormatError(f"expected {n} grid rows, found {len(body)}")
    return from_grid(body)


def read_square(path) -> LatinSquare:
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read())


def cyclic(n: int) -> LatinSquare:
    """The cyclic square with ``L[r][c] = ((r + c - 2) mod n) + 1``."""
    if n < 1:
        raise BadShape(f"order must be >= 1, got {n}")
    return LatinSquare(n, tuple(tuple((r + c) % n + 1 for c in range(n)) for r in range(n)))


def q_step(q: int, m: int) -> LatinSquare:
    """The canonical q-step square of order ``m * q``.

    Block (i, j) carries the symbol band ``b*q+1 .. b*q+q`` with
    ``b = (i + j - 2) mod m``, and inside a block the entry at local position
    (r', c') is ``b*q + ((r' + c' - 2) mod q) + 1``.
    """
    if q < 1 or m < 1:
        raise BadShape(f"q and m must be >= 1, got q={q}, m={m}")
    n = q * m
    rows = []
    for r in range(n):
        bi, lr = divmod(r, q)
        row = []
        for c in range(n):
            bj, lc = divmod(c, q)
            band = (bi + bj) % m
            row.append(band * q + (lr + lc) % q + 1)
        rows.append(tuple(row))
    return LatinSquare(n, tuple(rows))


@dataclass(frozen=True)
class Isotopy:
    """Row, column and symbol permutations of [n].

    Each component is stored as a tuple of images: ``sigma[i - 1]`` is the
    image of row i.
    """

    sigma: Tuple[int, ...]
    tau: Tuple[int, ...]
    delta: Tuple[int, ...]

    def __post_init__(self):
        n = len(self.sigma)
        if len(self.tau) != n or len(self.delta) != n:
            raise DimensionMismatch("isotopy components have different sizes")
        target = set(range(1, n + 1))
        for name in ("sigma", "tau", "delta"):
            if set(getattr(self, name)) != target:
                raise DimensionMismatch(f"{name} is not a permutation of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.sigma)

    @classmethod
    def identity(cls, n: int) -> "Isotopy":
        ident = tuple(range(1, n + 1))
        return cls(ident, ident, ident)

    @classmethod
    def from_cycles(cls, n: int, sigma=(), tau=(), delta=()) -> "Isotopy":
        """Build an isotopy from cycle notation, e.g. ``sigma=[(1, 2)]``."""
        return cls(_perm_from_cycles(n, sigma), _perm_from_cycles(n, tau), _perm_from_cycles(n, delta))

    def inverse(self) -> "Isotopy":
        return Isotopy(_invert(self.sigma), _invert(self.tau), _invert(self.delta))

    def then(self, other: "Isotopy") -> "Isotopy":
        """Composition: apply ``self`` first, then ``other``."""
        if other.n != self.n:
            raise DimensionMismatch("cannot compose isotopies of different orders")
        return Isotopy(
            tuple(other.sigma[x - 1] for x in self.sigma),
            tuple(other.tau[x - 1] for x in self.tau),
            tuple(other.delta[x - 1] for x in self.delta),
        )


def _perm_from_cycles(n: int, cycles) -> Tuple[int, ...]:
    perm = list(range(1, n + 1))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a - 1] = b
    return tuple(perm)


def _invert(perm: Sequence[int]) -> Tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm, start=1):
        inv[p - 1] = i
    return tuple(inv)


def apply_isotopy(square: LatinSquare, iso: Isotopy) -> LatinSquare:
    """Carry ``square`` through ``iso``: cell (r, c, s) lands at (σ(r), τ(c), δ(s))."""
    n = square.n
    if iso.n != n:
        raise DimensionMismatch(f"isotopy of order {iso.n} applied to a square of order {n}")
    out = [[0] * n for _ in range(n)]
    for r, row in enumerate(square.grid):
        rr = iso.sigma[r] - 1
        for c, s in enumerate(row):
            out[rr][iso.tau[c] - 1] = iso.delta[s - 1]
    return LatinSquare(n, tuple(tuple(row) for row in out))


def random_isotopy(n: int, rng: random.Random) -> Isotopy:
    perms = []
    for _ in range(3):
        p = list(range(1, n + 1))
        rng.shuffle(p)
        perms.append(tuple(p))
    return Isotopy(*perms)


def random_isotopy_square(
    n: Optional[int] = None,
    seed: int = 0,
    q: Optional[int] = None,
    m: Optional[int] = None,
) -> Tuple[LatinSquare, Isotopy]:
    """Shuffle a structured base square by a seeded random isotopy.

    The base is ``q_step(q, m)`` when both are given, otherwise ``cyclic(n)``.
    Not uniform over latin squares of the order.
    """
    if q is not None and m is not None:
        base = q_step(q, m)
    elif n is not None:
        base = cyclic(n)
    else:
        raise BadShape("give either n or both q and m")
    rng = random.Random(seed)
    iso = random_isotopy(base.n, rng)
    return apply_isotopy(base, iso), iso


def find_intercalate(square: LatinSquare) -> Optional[Tuple[int, int, int, int]]:
    """Return the row-major-first 2x2 latin subsquare as ``(r1, r2, c1, c2)``.

    Rows are scanned as pairs r1 < r2, then column pairs c1 < c2; ``None``
    when the square has no intercalate.
    """
    g = square.grid
    n = square.n
    for r1 in range(n):
        row1 = g[r1]
        for r2 in range(r1 + 1, n):
            row2 = g[r2]
            for c1 in range(n):
                # c2 is forced: the column where row1 holds row2[c1]
                if row1[c1] == row2[c1]:
                    continue
                for c2 in range(c1 + 1, n):
                    if row1[c1] == row2[c2] and row1[c2] == row2[c1]:
                        return (r1 + 1, r2 + 1, c1 + 1, c2 + 1)
    return None


def detect_structure(square: LatinSquare) -> Tuple[str, Optional[int], Optional[int]]:
    """Classify a square as ``cyclic``, ``qstep`` (with q, m) or ``general``.

    Only exact matches of the canonical generators are recognised.
    """
    n = square.n
    if square == cyclic(n):
        return ("cyclic", 1, n)
    for q in range(2, n + 1):
        if n % q == 0 and square == q_step(q, n // q):
            return ("qstep", q, n // q)
    return ("general", None, None)


def is_group_isotope(square: LatinSquare) -> bool:
    """True iff ``square`` is isotopic to the Cayley table of a group.

    Checks that the maps ``R_i o R_1^-1`` (row i as a permutation, after
    undoing row 1) are closed under composition. Such squares have a
    vertex-transitive latin square graph.
    """
    n = square.n
    g = square.grid
    inv_first = [0] * n
    for c, s in enumerate(g[0]):
        inv_first[s - 1] = c
    maps = [tuple(row[inv_first[s]] - 1 for s in range(n)) for row in g]
    table = set(maps)
    for a in maps:
        for b in maps:
            if tuple(a[b[s]] for s in range(n)) not in table:
                return False
    return True

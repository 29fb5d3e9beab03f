"""The latin square graph and vertex sets over it.

Vertex ``i`` is the cell ``(i // n + 1, i % n + 1)``; sets of vertices are
Python ints used as bit masks, which keeps coverage counting cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Tuple

from .errors import DimensionMismatch, SameVertex
from .latin import CellTriple, Isotopy, LatinSquare

Cell = Tuple[int, int]


@dataclass(frozen=True)
class VertexSet:
    """A set of cells of an order-n square, stored as a bit mask."""

    n: int
    mask: int = 0

    def __post_init__(self):
        if self.mask < 0 or self.mask >> (self.n * self.n):
            raise DimensionMismatch(f"mask has bits outside the {self.n * self.n} cells")

    @classmethod
    def from_cells(cls, n: int, cells: Iterable) -> "VertexSet":
        """Build from (r, c) pairs or (r, c, s) triples; symbols are ignored."""
        mask = 0
        for cell in cells:
            r, c = cell[0], cell[1]
            if not (1 <= r <= n and 1 <= c <= n):
                raise DimensionMismatch(f"cell ({r}, {c}) outside an order-{n} square")
            mask |= 1 << ((r - 1) * n + (c - 1))
        return cls(n, mask)

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "VertexSet":
        mask = 0
        for i in indices:
            mask |= 1 << i
        return cls(n, mask)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, (1 << (n * n)) - 1)

    def indices(self) -> List[int]:
        out = []
        m = self.mask
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def cells(self) -> List[Cell]:
        n = self.n
        return [(i // n + 1, i % n + 1) for i in self.indices()]

    def triples(self, square: LatinSquare) -> List[CellTriple]:
        if square.n != self.n:
            raise DimensionMismatch("vertex set and square have different orders")
        return [square.cell(r, c) for r, c in self.cells()]

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, cell) -> bool:
        r, c = cell[0], cell[1]
        return bool(self.mask >> ((r - 1) * self.n + (c - 1)) & 1)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells())

    def add(self, *cells) -> "VertexSet":
        return VertexSet(self.n, self.mask | VertexSet.from_cells(self.n, cells).mask)

    def remove(self, *cells) -> "VertexSet":
        return VertexSet(self.n, self.mask & ~VertexSet.from_cells(self.n, cells).mask)


class LatinSquareGraph:
    """Γ(L): cells of ``square`` adjacent iff they share a row, column or symbol.

    Neighbour masks are computed once at construction.
    """

    def __init__(self, square: LatinSquare):
        self.square = square
        self.n = n = square.n
        self.num_vertices = n * n
        g = square.grid
        row_mask = [0] * n
        col_mask = [0] * n
        sym_mask = [0] * n
        for r in range(n):
            for c in range(n):
                bit = 1 << (r * n + c)
                row_mask[r] |= bit
                col_mask[c] |= bit
                sym_mask[g[r][c] - 1] |= bit
        self._nbr = tuple(
            (row_mask[r] | col_mask[c] | sym_mask[g[r][c] - 1]) & ~(1 << (r * n + c))
            for r in range(n)
            for c in range(n)
        )
        self._nbr_lists = None

    def index(self, cell) -> int:
        r, c = cell[0], cell[1]
        if not (1 <= r <= self.n and 1 <= c <= self.n):
            raise DimensionMismatch(f"cell ({r}, {c}) outside an order-{self.n} square")
        return (r - 1) * self.n + (c - 1)

    def triple(self, index: int) -> CellTriple:
        r, c = divmod(index, self.n)
        return self.square.cell(r + 1, c + 1)

    def neighbor_mask(self, index: int) -> int:
        return self._nbr[index]

    @property
    def neighbor_masks(self) -> Tuple[int, ...]:
        return self._nbr

    def neighbor_lists(self) -> List[List[int]]:
        """Ascending neighbour indices for every vertex."""
        if self._nbr_lists is None:
            self._nbr_lists = [VertexSet(self.n, m).indices() for m in self._nbr]
        return self._nbr_lists

    def adjacent(self, u, v) -> bool:
        """True iff cells ``u`` and ``v`` share a row, a column or a symbol."""
        ur, uc = u[0], u[1]
        vr, vc = v[0], v[1]
        if (ur, uc) == (vr, vc):
            raise SameVertex(f"({ur}, {uc}) compared with itself")
        return ur == vr or uc == vc or self.square.at(ur, uc) == self.square.at(vr, vc)

    def neighbors(self, v) -> VertexSet:
        return VertexSet(self.n, self._nbr[self.index(v)])

    def degree(self, v) -> int:
        return bin(self._nbr[self.index(v)]).count("1")

    def common_neighbor_count(self, u, v) -> int:
        iu, iv = self.index(u), self.index(v)
        if iu == iv:
            raise SameVertex(f"({u[0]}, {u[1]}) compared with itself")
        return bin(self._nbr[iu] & self._nbr[iv]).count("1")

    def num_edges(self) -> int:
        return sum(bin(m).count("1") for m in self._nbr) // 2

    def edges(self) -> Iterator[Tuple[Cell, Cell]]:
        """Each edge once, as ((r1, c1), (r2, c2)) with the first endpoint smaller."""
        n = self.n
        for i, m in enumerate(self._nbr):
            hi = m >> (i + 1)
            j = i + 1
            while hi:
                if hi & 1:
                    yield (i // n + 1, i % n + 1), (j // n + 1, j % n + 1)
                hi >>= 1
                j += 1

    def edge_list_text(self) -> str:
        return "".join(f"{a[0]} {a[1]} {b[0]} {b[1]}\n" for a, b in self.edges())

    def stats(self) -> Dict[str, int]:
        degrees = {bin(m).count("1") for m in self._nbr}
        return {
            "order": self.n,
            "vertices": self.num_vertices,
            "edges": self.num_edges(),
            "min_degree": min(degrees),
            "max_degree": max(degrees),
        }


def build(square: LatinSquare) -> LatinSquareGraph:
    return LatinSquareGraph(square)


def vertex_map_under_isotopy(graph: LatinSquareGraph, iso: Isotopy) -> Dict[Cell, Cell]:
    """The cell bijection (r, c) -> (σ(r), τ(c)) induced by an isotopy.

    It is an isomorphism from ``graph`` onto the graph of the isotopic square.
    """
    n = graph.n
    if iso.n != n:
        raise DimensionMismatch(f"isotopy of order {iso.n} on a graph of order {n}")
    return {
        (r, c): (iso.sigma[r - 1], iso.tau[c - 1])
        for r in range(1, n + 1)
        for c in range(1, n + 1)
    }

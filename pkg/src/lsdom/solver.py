"""Verification and exact/heuristic search for dominating and kTDS sets.

Both problems are set multicover instances over the latin square graph:

* dominating: every vertex must be hit once by a pick in its closed
  neighbourhood (a member of S covers itself);
* k-tuple total: every vertex, members included, must be hit ``k`` times by
  picks in its open neighbourhood.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from . import kernel as _kernel
from .errors import BudgetExceeded, DimensionMismatch, FormatError, Infeasible, TooLarge
from .graph import LatinSquareGraph, VertexSet
from .latin import CellTriple, LatinSquare, from_grid, is_group_isotope

DOM = "dom"
KTT = "ktt"


@dataclass(frozen=True)
class DominationMode:
    """``kind`` is ``"dom"`` (k is always 1) or ``"ktt"`` (k-tuple total)."""

    kind: str
    k: int = 1

    def __post_init__(self):
        if self.kind not in (DOM, KTT):
            raise ValueError(f"unknown mode {self.kind!r}; use 'dom' or 'ktt'")
        if self.kind == DOM and self.k != 1:
            raise ValueError("dominating mode always has k = 1")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")

    @property
    def is_total(self) -> bool:
        return self.kind == KTT

    def __str__(self) -> str:
        return "dominating" if self.kind == DOM else f"{self.k}-tuple total"


DOMINATING = DominationMode(DOM)


def ktuple(k: int) -> DominationMode:
    return DominationMode(KTT, k)


def check_feasible(graph: LatinSquareGraph, mode: DominationMode) -> None:
    cap = 3 * (graph.n - 1)
    if mode.is_total and mode.k > cap:
        raise Infeasible(mode.k, cap)


@dataclass(frozen=True)
class Violation:
    vertex: CellTriple
    shortfall: int


@dataclass(frozen=True)
class VerifyResult:
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def verify(graph: LatinSquareGraph, vset: VertexSet, mode: DominationMode) -> VerifyResult:
    """List every vertex whose coverage by ``vset`` falls short of ``mode``.

    Dominating: vertices outside the set need one neighbour inside.
    k-tuple total: every vertex needs ``k`` neighbours inside.
    """
    if vset.n != graph.n:
        raise DimensionMismatch(f"vertex set of order {vset.n} on a graph of order {graph.n}")
    s = vset.mask
    bad = []
    for v, nbr in enumerate(graph.neighbor_masks):
        if mode.kind == DOM:
            if s >> v & 1 or nbr & s:
                continue
            bad.append(Violation(graph.triple(v), 1))
        else:
            got = (nbr & s).bit_count()
            if got < mode.k:
                bad.append(Violation(graph.triple(v), mode.k - got))
    return VerifyResult(tuple(bad))


@dataclass(frozen=True)
class DominationCertificate:
    """A vertex set with its claimed mode, optimality and provenance."""

    square: LatinSquare
    mode: DominationMode
    vset: VertexSet
    optimal: bool
    method: str
    nodes: int = field(default=0, compare=False)

    @property
    def size(self) -> int:
        return len(self.vset)

    def triples(self) -> List[CellTriple]:
        return self.vset.triples(self.square)

    def to_text(self) -> str:
        """Serialise as a JSON document with one grid row / set cell per line."""
        def line(key, value, last=False):
            return f'  "{key}": {value}' + ("" if last else ",")

        grid = ",\n".join("    " + json.dumps(list(row)) for row in self.square.grid)
        cells = ",\n".join("    " + json.dumps(list(t)) for t in self.triples())
        parts = [
            "{",
            line("order", self.square.n),
            line("grid", "[\n" + grid + "\n  ]"),
            line("mode", json.dumps(self.mode.kind)),
            line("k", self.mode.k),
            line("set", "[\n" + cells + "\n  ]" if cells else "[]"),
            line("size", self.size),
            line("optimal", json.dumps(self.optimal)),
            line("method", json.dumps(self.method), last=True),
            "}",
        ]
        return "\n".join(parts) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "DominationCertificate":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"certificate is not valid JSON: {exc}") from None
        required = ("order", "grid", "mode", "k", "set", "size", "optimal", "method")
        if not isinstance(doc, dict) or any(key not in doc for key in required):
            raise FormatError(f"certificate must have the fields {', '.join(required)}")
        square = from_grid(doc["grid"])
        if square.n != doc["order"]:
            raise FormatError(f"order {doc['order']} does not match a {square.n}x{square.n} grid")
        try:
            mode = DominationMode(doc["mode"], int(doc["k"]))
        except ValueError as exc:
            raise FormatError(str(exc)) from None
        cells = []
        for entry in doc["set"]:
            if len(entry) != 3:
                raise FormatError(f"set entry {entry} is not an [r, c, s] triple")
            r, c, s = (int(x) for x in entry)
            if not (1 <= r <= square.n and 1 <= c <= square.n) or square.at(r, c) != s:
                raise FormatError(f"set entry {entry} is not a cell of the grid")
            cells.append((r, c))
        vset = VertexSet.from_cells(square.n, cells)
        if len(vset) != len(cells):
            raise FormatError("set lists a cell twice")
        if doc["size"] != len(vset):
            raise FormatError(f"size {doc['size']} does not match the {len(vset)} listed cells")
        if not isinstance(doc["optimal"], bool):
            raise FormatError("optimal must be true or false")
        return cls(square, mode, vset, doc["optimal"], str(doc["method"]))


def _cover_lists(graph: LatinSquareGraph, mode: DominationMode):
    nbr = graph.neighbor_lists()
    if mode.kind == DOM:
        cover = [sorted(nbr[v] + [v]) for v in range(graph.num_vertices)]
        demand = [1] * graph.num_vertices
    else:
        cover = [list(x) for x in nbr]
        demand = [mode.k] * graph.num_vertices
    # every cover relation here is symmetric, so hits == cover
    return cover, demand


def greedy_upper(graph: LatinSquareGraph, mode: DominationMode) -> DominationCertificate:
    """Add the vertex meeting the most outstanding demand until none is left."""
    check_feasible(graph, mode)
    cover, demand = _cover_lists(graph, mode)
    nv = graph.num_vertices
    need = list(demand)
    chosen = [False] * nv
    picks = []
    while any(d > 0 for d in need):
        best, best_gain = -1, 0
        for c in range(nv):
            if chosen[c]:
                continue
            gain = sum(1 for u in cover[c] if need[u] > 0)
            if gain > best_gain:
                best, best_gain = c, gain
        # positive gain always exists while k <= degree
        chosen[best] = True
        picks.append(best)
        for u in cover[best]:
            need[u] -= 1
    vset = VertexSet.from_indices(graph.n, picks)
    return DominationCertificate(graph.square, mode, vset, optimal=False, method="greedy")


def brute_force_oracle(graph: LatinSquareGraph, mode: DominationMode) -> DominationCertificate:
    """First valid set in (size, lexicographic) order, by plain enumeration.

    Independent of the search kernel. Refuses graphs with more than 25
    vertices.
    """
    if graph.num_vertices > 25:
        raise TooLarge(f"{graph.num_vertices} vertices is beyond exhaustive enumeration (max 25)")
    check_feasible(graph, mode)
    nv = graph.num_vertices
    nbr = graph.neighbor_masks
    full = (1 << nv) - 1
    for size in range(1, nv + 1):
        for combo in combinations(range(nv), size):
            s = 0
            for v in combo:
                s |= 1 << v
            if mode.kind == DOM:
                dominated = s
                for v in combo:
                    dominated |= nbr[v]
                ok = dominated == full
            else:
                ok = all((m & s).bit_count() >= mode.k for m in nbr)
            if ok:
                vset = VertexSet(graph.n, s)
                return DominationCertificate(graph.square, mode, vset, optimal=True, method="brute-force")
    raise AssertionError("the full vertex set always qualifies for a feasible mode")


class _Search:
    """One exact solve: owns the node budget and the kernel call pattern."""

    def __init__(self, graph, mode, budget, threads, backend, symmetry=True):
        self.graph = graph
        self.mode = mode
        self.cover, self.demand = _cover_lists(graph, mode)
        self.kernel = _kernel.get(backend)
        self.budget = budget
        self.threads = max(1, threads)
        self.nodes = 0
        # on a vertex-transitive graph some optimum contains vertex 0
        self.anchor = symmetry and graph.num_vertices > 0 and is_group_isotope(graph.square)

    def _limit(self) -> int:
        if self.budget is None:
            return -1
        return max(0, self.budget - self.nodes)

    def call(self, budget, forced_in=(), forced_out=()):
        status, picks, nodes = self.kernel.search(
            self.cover, self.cover, self.demand, budget, list(forced_in), list(forced_out), self._limit()
        )
        self.nodes += nodes
        return status, picks

    def decide(self, t: int):
        """Is there a valid set of size <= t?  Returns (status, picks)."""
        forced = [0] if self.anchor else []
        budget = t - len(forced)
        if budget < 0:
            return _kernel.EXHAUSTED, []
        if self.threads == 1:
            return self.call(budget, forced)
        return self._decide_parallel(budget, forced)

    def _decide_parallel(self, budget, forced):
        # Split on the candidates for the lowest-index vertex still short of
        # demand: branch j picks its j-th candidate and bans the earlier ones.
        cnt = [0] * len(self.demand)
        for c in forced:
            for u in self.cover[c]:
                cnt[u] += 1
        short = [u for u in range(len(self.demand)) if cnt[u] < self.demand[u]]
        if not short or budget == 0:
            return self.call(budget, forced)
        u = short[0]
        need = self.demand[u] - cnt[u]
        cands = [c for c in self.cover[u] if c not in forced]
        tasks = []
        for j, c in enumerate(cands):
            if len(cands) - j < need:
                break
            tasks.append((forced + [c], cands[:j]))
        limit = self._limit()
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            futures = [
                pool.submit(self.kernel.search, self.cover, self.cover, self.demand, budget - 1, fin, fout, limit)
                for fin, fout in tasks
            ]
            results = [f.result() for f in futures]
        self.nodes += sum(r[2] for r in results)
        for status, picks, _ in results:
            if status == _kernel.FOUND:
                return status, picks
        if any(r[0] == _kernel.LIMIT for r in results):
            return _kernel.LIMIT, []
        return _kernel.EXHAUSTED, []


def _start_depth(graph: LatinSquareGraph, mode: DominationMode) -> int:
    # generic counting bound: each pick meets at most max|cover| demand units
    nv = graph.num_vertices
    if mode.kind == DOM:
        return max(1, math.ceil(nv / (3 * (graph.n - 1) + 1)))
    return max(mode.k + 1, math.ceil(nv * mode.k / (3 * (graph.n - 1))))


def solve_exact(
    graph: LatinSquareGraph,
    mode: DominationMode,
    budget: Optional[int] = None,
    deterministic: bool = True,
    threads: int = 1,
    strict: bool = False,
    backend: Optional[str] = None,
    symmetry: bool = True,
) -> DominationCertificate:
    """Minimum dominating / k-tuple total dominating set by branch and bound.

    Iterative deepening on the set size; each depth is a kernel decision
    search. In deterministic mode the minimum set returned is the
    lexicographically smallest one under row-major vertex order, fixed by
    deciding vertices 0, 1, ... in turn.

    Args:
        budget: node limit over the whole solve; ``None`` means unlimited.
        threads: worker threads for each decision search. Never changes the
            result of a solve that finishes within budget.
        strict: raise :class:`BudgetExceeded` instead of returning the
            incumbent when the budget runs out.
        backend: ``"cython"`` or ``"python"``; default is the import-time pick.
        symmetry: force vertex 0 into the set when the square is a group
            isotope (its graph is then vertex-transitive). Off gives the
            same answer, only slower.

    Returns:
        A certificate with ``optimal=True``; on budget exhaustion the best
        known set with ``optimal=False`` (the greedy set if no optimum size
        was reached yet).
    """
    check_feasible(graph, mode)
    search = _Search(graph, mode, budget, threads, backend, symmetry)
    nv = graph.num_vertices
    opt = None
    witness: List[int] = []
    for t in range(_start_depth(graph, mode), nv + 1):
        status, picks = search.decide(t)
        if status == _kernel.LIMIT:
            return _incumbent(graph, mode, search, strict)
        if status == _kernel.FOUND:
            opt, witness = t, picks
            break
    if opt is None:
        raise AssertionError("the full vertex set always qualifies for a feasible mode")
    if len(witness) < opt:
        raise AssertionError(f"search found a set of size {len(witness)} below the proven optimum {opt}")

    if deterministic:
        witness = _lex_smallest(search, opt, witness)
    vset = VertexSet.from_indices(graph.n, witness)
    return DominationCertificate(graph.square, mode, vset, optimal=True, method="exact", nodes=search.nodes)


def _lex_smallest(search: _Search, opt: int, witness: List[int]) -> List[int]:
    # Invariant: ``witness`` is an optimum consistent with every decision so
    # far; a vertex it contains can be fixed in for free.
    taken: List[int] = []
    banned: List[int] = []
    current = set(witness)
    for v in range(search.graph.num_vertices):
        if len(taken) == opt:
            break
        if v in current:
            taken.append(v)
            continue
        status, picks = search.call(opt - len(taken) - 1, taken + [v], banned)
        if status == _kernel.LIMIT:
            # budget gone: keep the optimum we have, lex order not certified
            return sorted(current)
        if status == _kernel.FOUND:
            current = set(picks)
            taken.append(v)
        else:
            banned.append(v)
    return sorted(taken)


def _incumbent(graph, mode, search, strict) -> DominationCertificate:
    greedy = greedy_upper(graph, mode)
    cert = DominationCertificate(graph.square, mode, greedy.vset, optimal=False, method="greedy", nodes=search.nodes)
    if strict:
        raise BudgetExceeded(cert)
    return cert

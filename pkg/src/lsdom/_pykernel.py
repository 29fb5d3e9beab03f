"""Pure-Python multicover search kernel.

Reference implementation of the decision search used by the exact solver.
``_kernel.pyx`` implements the same algorithm node for node; both must
return identical results (including node counts) on identical input.

Problem: pick exactly ``budget`` more vertices (on top of ``forced_in``,
never any of ``forced_out``) such that every vertex u is hit at least
``demand[u]`` times, where picking c hits every u in ``hits[c]``.
``cover[u]`` is the transpose: the vertices whose pick hits u. Having
fewer than ``budget`` picks suffice is also accepted (the caller pads).

Search: pick the deficient vertex with the least slack (available
candidates minus deficit; ties to the lowest index) and branch on which of
its candidates (ascending) enters next, excluding earlier ones on
backtrack. A node is pruned when some deficit exceeds its slack or the
remaining picks, or when the remaining picks' best total gain cannot meet
the total deficit.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

FOUND = 1
EXHAUSTED = 0
LIMIT = -1

NAME = "python"


class _Abort(Exception):
    pass


def search(
    cover: Sequence[Sequence[int]],
    hits: Sequence[Sequence[int]],
    demand: Sequence[int],
    budget: int,
    forced_in: Sequence[int] = (),
    forced_out: Sequence[int] = (),
    node_limit: int = -1,
) -> Tuple[int, List[int], int]:
    """Decide whether ``budget`` more picks can meet every demand.

    Returns ``(status, picks, nodes)`` where ``picks`` lists the chosen
    vertices (forced ones included, ascending) when ``status == FOUND``.
    """
    nv = len(demand)
    hit_masks = []
    for c in range(nv):
        m = 0
        for u in hits[c]:
            m |= 1 << u
        hit_masks.append(m)
    cnt = [0] * nv
    avail = [True] * nv
    availcnt = [len(cover[u]) for u in range(nv)]
    chosen: List[int] = []

    def take_out(c):
        avail[c] = False
        for u in hits[c]:
            availcnt[u] -= 1

    def put_back(c):
        avail[c] = True
        for u in hits[c]:
            availcnt[u] += 1

    for c in forced_out:
        if avail[c]:
            take_out(c)
    for c in forced_in:
        if avail[c]:
            take_out(c)
        chosen.append(c)
        for u in hits[c]:
            cnt[u] += 1

    nodes = 0

    def rec(r: int) -> bool:
        nonlocal nodes
        nodes += 1
        if node_limit >= 0 and nodes > node_limit:
            raise _Abort
        total = 0
        best_u = -1
        best_slack = nv + 1
        defmask = 0
        for u in range(nv):
            d = demand[u] - cnt[u]
            if d > 0:
                if d > r:
                    return False
                slack = availcnt[u] - d
                if slack < 0:
                    return False
                if slack < best_slack:
                    best_slack = slack
                    best_u = u
                total += d
                defmask |= 1 << u
        if total == 0:
            return True
        # the r best remaining picks must be able to absorb the total deficit
        gains = sorted(
            ((hit_masks[c] & defmask).bit_count() for c in range(nv) if avail[c]),
            reverse=True,
        )
        if sum(gains[:r]) < total:
            return False
        need = demand[best_u] - cnt[best_u]
        excluded = []
        found = False
        for c in cover[best_u]:
            if not avail[c]:
                continue
            if availcnt[best_u] < need:
                break
            take_out(c)
            chosen.append(c)
            for u in hits[c]:
                cnt[u] += 1
            if rec(r - 1):
                found = True
                break
            for u in hits[c]:
                cnt[u] -= 1
            chosen.pop()
            excluded.append(c)
        if found:
            return True
        for c in excluded:
            put_back(c)
        return False

    try:
        ok = rec(budget)
    except _Abort:
        return LIMIT, [], nodes
    if ok:
        return FOUND, sorted(chosen), nodes
    return EXHAUSTED, [], nodes

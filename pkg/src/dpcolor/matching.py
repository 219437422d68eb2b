"""Bipartite matching (systems of distinct representatives) and a small
max-flow used for capacity-constrained Hall checks."""

from __future__ import annotations

from collections import deque
from typing import Hashable, Mapping, Sequence


def sdr(sets: Sequence[tuple[Hashable, Sequence[int]]]) -> dict | None:
    """Distinct representatives for labelled sets, or None if Hall fails.

    Augmenting paths (Kuhn); sets are tried in the given order and colors in
    ascending order, so the result is deterministic.
    """
    owner: dict[int, Hashable] = {}
    choice: dict[Hashable, int] = {}
    avail = {label: sorted(s) for label, s in sets}

    def augment(label, seen):
        for c in avail[label]:
            if c in seen:
                continue
            seen.add(c)
            if c not in owner or augment(owner[c], seen):
                owner[c] = label
                choice[label] = c
                return True
        return False

    for label, _ in sets:
        if not augment(label, set()):
            return None
    return choice


def max_flow(cap: Mapping[Hashable, Mapping[Hashable, int]], source, sink) -> int:
    """Edmonds-Karp on a dict-of-dicts capacity graph."""
    res: dict = {}
    for u, row in cap.items():
        for v, c in row.items():
            res.setdefault(u, {})
            res.setdefault(v, {})
            res[u][v] = res[u].get(v, 0) + c
            res[v].setdefault(u, 0)
    if source not in res or sink not in res:
        return 0
    flow = 0
    while True:
        parent = {source: None}
        q = deque([source])
        while q and sink not in parent:
            u = q.popleft()
            for v, c in res[u].items():
                if c > 0 and v not in parent:
                    parent[v] = u
                    q.append(v)
        if sink not in parent:
            return flow
        push, v = None, sink
        while parent[v] is not None:
            u = parent[v]
            push = res[u][v] if push is None else min(push, res[u][v])
            v = u
        v = sink
        while parent[v] is not None:
            u = parent[v]
            res[u][v] -= push
            res[v][u] += push
            v = u
        flow += push

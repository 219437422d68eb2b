"""Permutations and partial injections on {0..k-1}.

A permutation is a tuple ``p`` with ``p[a]`` the image of ``a``.  A partial
injection is a dict ``a -> b``.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterable, Sequence

Perm = tuple[int, ...]


def from_cycles(cycles: Iterable[Sequence[int]], k: int, one_based: bool = False) -> Perm:
    """Expand cycle notation: (a b c) sends a->b, b->c, c->a."""
    p = list(range(k))
    shift = 1 if one_based else 0
    for cyc in cycles:
        cyc = [c - shift for c in cyc]
        for i, a in enumerate(cyc):
            p[a] = cyc[(i + 1) % len(cyc)]
    if sorted(p) != list(range(k)):
        raise ValueError("cycles overlap")
    return tuple(p)


def parse_cycles(text: str, k: int, one_based: bool = True) -> Perm:
    """Parse '(1 2 3)(4)' style notation."""
    cycles = []
    for chunk in text.replace(")", "(").split("("):
        chunk = chunk.strip()
        if chunk:
            cycles.append([int(t) for t in chunk.replace("~", " ").split()])
    return from_cycles(cycles, k, one_based=one_based)


def to_cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for s in range(len(p)):
        if s in seen:
            continue
        cyc = [s]
        seen.add(s)
        x = p[s]
        while x != s:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in to_cycles(p)), reverse=True))


def identity(k: int) -> Perm:
    return tuple(range(k))


def inverse(p: Sequence[int]) -> Perm:
    q = [0] * len(p)
    for a, b in enumerate(p):
        q[b] = a
    return tuple(q)


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """(p ∘ q)(a) = p[q[a]]."""
    return tuple(p[q[a]] for a in range(len(q)))


def conjugate(m: dict[int, int], pi: Sequence[int]) -> dict[int, int]:
    """Relabel a partial injection: a->b becomes pi(a)->pi(b)."""
    return {pi[a]: pi[b] for a, b in m.items()}


def all_perms(k: int) -> list[Perm]:
    return [tuple(p) for p in permutations(range(k))]


def all_partial_injections(k: int) -> list[dict[int, int]]:
    """Every partial injection of {0..k-1} into itself, in a fixed order."""
    out = []
    for size in range(k + 1):
        for dom in combinations(range(k), size):
            for img in permutations(range(k), size):
                out.append(dict(zip(dom, img)))
    return out


def partial_key(m: dict[int, int], k: int) -> tuple[int, ...]:
    """Total order on partial injections: image list with -1 for undefined."""
    return tuple(m.get(a, -1) for a in range(k))


def conjugacy_representatives(members: list[dict[int, int]], k: int) -> list[dict[int, int]]:
    """One member per orbit of simultaneous relabeling (the key-least one),
    sorted by key."""
    group = all_perms(k)
    reps = {}
    for m in members:
        key = min(partial_key(conjugate(m, pi), k) for pi in group)
        reps.setdefault(key, None)
    out = []
    for key in sorted(reps):
        out.append({a: b for a, b in enumerate(key) if b >= 0})
    return out

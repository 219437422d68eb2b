"""Seeded random graphs and covers for property suites and the CLI."""

from __future__ import annotations

import random

from .cover import Cover
from .graph import Graph

DEFAULT_SEED = 20240601


def random_cover(g: Graph, k: int, rng: random.Random, palette: int | None = None, partial: float = 0.0) -> Cover:
    """k-cover with random lists from a palette (default: plain, lists = [k])
    and random matchings; each matched pair is dropped with prob. ``partial``."""
    palette = k if palette is None else palette
    if palette < k:
        raise ValueError("palette smaller than k")
    lists = {v: sorted(rng.sample(range(palette), k)) if palette > k else list(range(k)) for v in g.vertices}
    mats = {}
    for u, v in g.sorted_edges:
        img = list(lists[v])
        rng.shuffle(img)
        mats[(u, v)] = {a: b for a, b in zip(lists[u], img) if rng.random() >= partial}
    return Cover(g, palette, lists, mats)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_degenerate(n: int, d: int, rng: random.Random) -> Graph:
    """Each new vertex joins up to d random earlier vertices."""
    edges = []
    for v in range(1, n):
        for u in rng.sample(range(v), rng.randint(0, min(d, v))):
            edges.append((u, v))
    return Graph.from_edges(n, edges)


def random_forest(n: int, rng: random.Random, max_degree: int | None = None, p_edge: float = 0.85) -> Graph:
    """Random forest: vertex v attaches to an earlier vertex with probability p_edge
    (respecting max_degree)."""
    deg = [0] * n
    edges = []
    for v in range(1, n):
        if rng.random() >= p_edge:
            continue
        choices = [u for u in range(v) if max_degree is None or deg[u] < max_degree]
        if not choices:
            continue
        u = rng.choice(choices)
        edges.append((u, v))
        deg[u] += 1
        deg[v] += 1
    return Graph.from_edges(n, edges)


def random_max_degree_two(n: int, rng: random.Random) -> Graph:
    """Disjoint union of random paths and cycles (cycles have length >= 3)."""
    perm = list(range(n))
    rng.shuffle(perm)
    edges = []
    i = 0
    while i < n:
        size = min(rng.randint(1, 8), n - i)
        part = perm[i:i + size]
        edges += list(zip(part, part[1:]))
        if size >= 3 and rng.random() < 0.5:
            edges.append((part[-1], part[0]))
        i += size
    return Graph.from_edges(n, [(min(a, b), max(a, b)) for a, b in edges])


def random_bounded_degree(n: int, delta: int, rng: random.Random, tries: int = 4) -> Graph:
    """Random graph with maximum degree at most delta."""
    deg = [0] * n
    edges = set()
    for _ in range(tries * n * delta):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v or deg[u] >= delta or deg[v] >= delta:
            continue
        e = (min(u, v), max(u, v))
        if e in edges:
            continue
        edges.add(e)
        deg[u] += 1
        deg[v] += 1
    return Graph.from_edges(n, sorted(edges))

"""Simple undirected graphs, degeneracy orderings and the structural
helpers (stars, ends, hubs, independent sets) used by the constructions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import NotFound, PreconditionViolated


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Graph on integer vertex labels.

    Vertex labels need not be contiguous: induced subgraphs keep the labels
    of the parent graph so colorings can be merged back without remapping.
    """

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("repeated vertex label")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if u > v:
                raise ValueError(f"edge ({u}, {v}) not in canonical order")
            if u not in vs or v not in vs:
                raise ValueError(f"edge ({u}, {v}) uses unknown vertex")

    @classmethod
    def from_edges(cls, n: int | Iterable[int], edges: Iterable[tuple[int, int]]) -> "Graph":
        vertices = tuple(range(n)) if isinstance(n, int) else tuple(sorted(n))
        return cls(vertices, frozenset(_edge(u, v) for u, v in edges))

    @cached_property
    def adj(self) -> dict[int, frozenset[int]]:
        nbrs: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    @cached_property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.vertices)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def max_degree(self) -> int:
        return max((len(s) for s in self.adj.values()), default=0)

    @cached_property
    def min_degree(self) -> int:
        return min((len(s) for s in self.adj.values()), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self.edges

    def induced(self, keep: Iterable[int]) -> "Graph":
        keep = set(keep)
        return Graph(
            tuple(v for v in self.vertices if v in keep),
            frozenset(e for e in self.edges if e[0] in keep and e[1] in keep),
        )

    def remove(self, *drop: int) -> "Graph":
        return self.induced(set(self.vertices) - set(drop))

    def add_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.vertices, self.edges | {_edge(u, v) for u, v in extra})

    def edges_between(self, a: Iterable[int], b: Iterable[int]) -> int:
        """Number of edges with one end in ``a`` and the other in ``b``."""
        a, b = set(a), set(b)
        return sum(1 for u, v in self.edges if (u in a and v in b) or (u in b and v in a))

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components())

    def is_independent(self, s: Iterable[int]) -> bool:
        s = list(s)
        return not any(self.has_edge(u, v) for i, u in enumerate(s) for v in s[i + 1:])

    def relabeled(self) -> tuple["Graph", dict[int, int]]:
        """Copy on 0..n-1 plus the map old label -> new label."""
        idx = {v: i for i, v in enumerate(self.vertices)}
        return Graph.from_edges(self.n, ((idx[u], idx[v]) for u, v in self.edges)), idx


# --- standard families -------------------------------------------------------

def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def empty(n: int) -> Graph:
    return Graph.from_edges(n, ())


def star(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def join_clique_independent(d: int, s: int) -> Graph:
    """K_d joined to an independent set of size s; clique is 0..d-1."""
    edges = [(i, j) for i in range(d) for j in range(i + 1, d)]
    edges += [(i, d + j) for i in range(d) for j in range(s)]
    return Graph.from_edges(d + s, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        h, _ = g.relabeled()
        edges += [(u + offset, v + offset) for u, v in h.edges]
        offset += g.n
    return Graph.from_edges(offset, edges)


# --- orderings ---------------------------------------------------------------

@dataclass(frozen=True)
class Ordering:
    order: tuple[int, ...]
    degeneracy: int

    def back_degrees(self, g: Graph) -> list[int]:
        """|N(v_i) ∩ {v_1..v_{i-1}}| for each position."""
        seen: set[int] = set()
        out = []
        for v in self.order:
            out.append(len(g.adj[v] & seen))
            seen.add(v)
        return out


def degeneracy_ordering(g: Graph) -> Ordering:
    """Smallest-last ordering: repeatedly delete a minimum-degree vertex
    (smallest label on ties) and reverse the deletion sequence."""
    deg = {v: g.degree(v) for v in g.vertices}
    alive = set(g.vertices)
    removed = []
    d = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        d = max(d, deg[v])
        removed.append(v)
        alive.remove(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
    return Ordering(tuple(reversed(removed)), d)


def degeneracy(g: Graph) -> int:
    return degeneracy_ordering(g).degeneracy


# --- stars, ends, hubs -------------------------------------------------------

def is_star(g: Graph) -> bool:
    """Connected with a vertex adjacent to every other vertex and no other
    edges.  K_1 and K_2 count as stars; the empty graph does not."""
    if g.n == 0:
        return False
    if g.m != g.n - 1:
        return False
    return any(g.degree(v) == g.n - 1 for v in g.vertices)


def star_center(g: Graph) -> int:
    if not is_star(g):
        raise PreconditionViolated("G is not a star")
    return min(g.vertices, key=lambda v: (-g.degree(v), v))


def ends(g: Graph) -> list[int]:
    return [v for v in g.vertices if g.degree(v) <= 1]


def nonstar_ends(g: Graph) -> list[int]:
    """Ends l such that g - l is not a star."""
    return [l for l in ends(g) if not is_star(g.remove(l))]


def find_nonstar_ends(g: Graph) -> tuple[int, int]:
    """Two nonadjacent ends whose removal each leaves a non-star."""
    if not g.is_forest() or g.n < 5 or is_star(g):
        raise PreconditionViolated("need a forest on at least 5 vertices that is not a star")
    good = nonstar_ends(g)
    for i, a in enumerate(good):
        for b in good[i + 1:]:
            if not g.has_edge(a, b):
                return a, b
    raise NotFound("no pair of nonadjacent non-star ends")


def hubs(g: Graph) -> list[tuple[int, frozenset[int], int]]:
    """All (u, body, tail): body is the set of end neighbours of u, nonempty,
    and exactly one neighbour (the tail) lies outside it."""
    out = []
    for u in g.vertices:
        nb = g.adj[u]
        inner = [w for w in nb if g.degree(w) >= 2]
        if len(inner) == 1 and len(nb) >= 2:
            out.append((u, frozenset(nb - {inner[0]}), inner[0]))
    return out


def find_hub(g: Graph) -> tuple[int, frozenset[int], int]:
    """Hub of maximum degree, smallest label on ties."""
    if not (g.is_connected() and g.is_forest()) or g.max_degree < 2 or is_star(g):
        raise PreconditionViolated("need a tree with max degree >= 2 that is not a star")
    cands = hubs(g)
    if not cands:
        raise NotFound("tree has no hub")
    return min(cands, key=lambda t: (-g.degree(t[0]), t[0]))


# --- independent sets --------------------------------------------------------

def greedy_classes(g: Graph) -> list[list[int]]:
    """Color classes of first-fit coloring in label order."""
    color: dict[int, int] = {}
    for v in g.vertices:
        used = {color[w] for w in g.adj[v] if w in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    classes: dict[int, list[int]] = {}
    for v in g.vertices:
        classes.setdefault(color[v], []).append(v)
    return [classes[c] for c in sorted(classes)]


def independent_set(g: Graph, size: int) -> frozenset[int]:
    """Independent set of exactly ``size`` vertices taken from the largest
    first-fit color class (at most Δ+1 classes, so |g| >= (Δ+1)*size suffices)."""
    if size == 0:
        return frozenset()
    classes = greedy_classes(g)
    best = max(classes, key=len) if classes else []
    if len(best) < size:
        raise NotFound(f"largest greedy class has {len(best)} < {size} vertices")
    return frozenset(best[:size])

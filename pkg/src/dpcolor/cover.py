"""Covers: list assignments plus per-edge partial matchings between lists.

Colors are integers 0..palette-1.  A matching is stored once per edge in the
direction u < v; :meth:`Cover.match` returns either direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ColorNotInList
from .graph import Graph, _edge

Coloring = dict  # vertex -> color


class Cover:
    __slots__ = ("graph", "palette", "lists", "matchings", "_rev", "_key")

    def __init__(
        self,
        graph: Graph,
        palette: int,
        lists: Mapping[int, Iterable[int]],
        matchings: Mapping[tuple[int, int], Mapping[int, int]],
    ):
        self.graph = graph
        self.palette = palette
        self.lists = {v: tuple(sorted(lists[v])) for v in graph.vertices}
        self.matchings = {e: dict(matchings.get(e, {})) for e in graph.sorted_edges}
        self._rev: dict[tuple[int, int], dict[int, int]] = {}
        self._key = None

    @classmethod
    def from_directed(
        cls,
        graph: Graph,
        palette: int,
        lists: Mapping[int, Iterable[int]],
        directed: Mapping[tuple[int, int], Mapping[int, int]],
    ) -> "Cover":
        """Build from matchings given as H(u, v) in either orientation."""
        canon = {}
        for (u, v), m in directed.items():
            if not graph.has_edge(u, v):
                raise ValueError(f"({u}, {v}) is not an edge")
            canon[_edge(u, v)] = dict(m) if u < v else {b: a for a, b in m.items()}
        return cls(graph, palette, lists, canon)

    @classmethod
    def plain(cls, graph: Graph, k: int, directed: Mapping[tuple[int, int], Sequence[int] | Mapping[int, int]] | None = None,
              default: Sequence[int] | None = None) -> "Cover":
        """Plain k-cover; matchings given as permutation tuples or dicts.
        Edges not mentioned get ``default`` (identity when omitted)."""
        default = tuple(range(k)) if default is None else default
        maps = {}
        for e in graph.sorted_edges:
            maps[e] = _as_map(default)
        for (u, v), p in (directed or {}).items():
            m = _as_map(p)
            maps[_edge(u, v)] = m if u < v else {b: a for a, b in m.items()}
        return cls(graph, k, {v: range(k) for v in graph.vertices}, maps)

    def match(self, u: int, v: int) -> dict[int, int]:
        """H(u, v) as a dict from L(u) to L(v)."""
        if u < v:
            return self.matchings[(u, v)]
        m = self._rev.get((v, u))
        if m is None:
            m = {b: a for a, b in self.matchings[(v, u)].items()}
            self._rev[(v, u)] = m
        return m

    @property
    def k(self) -> int | None:
        sizes = {len(l) for l in self.lists.values()}
        return sizes.pop() if len(sizes) == 1 else None

    def key(self) -> tuple:
        if self._key is None:
            self._key = (
                self.graph.vertices,
                self.graph.sorted_edges,
                self.palette,
                tuple(self.lists[v] for v in self.graph.vertices),
                tuple(tuple(sorted(self.matchings[e].items())) for e in self.graph.sorted_edges),
            )
        return self._key

    def __eq__(self, other):
        return isinstance(other, Cover) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Cover(n={self.graph.n}, palette={self.palette}, k={self.k})"


def _as_map(p) -> dict[int, int]:
    if isinstance(p, Mapping):
        return dict(p)
    return {a: b for a, b in enumerate(p)}


# --- predicates --------------------------------------------------------------

def validate(cover: Cover) -> list[str]:
    """Every violated cover invariant, with its location; empty when valid."""
    bad = []
    g = cover.graph
    for v in g.vertices:
        lst = cover.lists.get(v)
        if lst is None:
            bad.append(f"vertex {v}: missing list")
            continue
        if len(set(lst)) != len(lst):
            bad.append(f"vertex {v}: repeated color in list")
        for c in lst:
            if not 0 <= c < cover.palette:
                bad.append(f"vertex {v}: color {c} outside palette")
    for (u, v), m in cover.matchings.items():
        if not g.has_edge(u, v):
            bad.append(f"edge ({u}, {v}): matching on a non-edge")
            continue
        lu, lv = set(cover.lists[u]), set(cover.lists[v])
        for a, b in m.items():
            if a not in lu:
                bad.append(f"edge ({u}, {v}): color {a} not in L({u})")
            if b not in lv:
                bad.append(f"edge ({u}, {v}): color {b} not in L({v})")
        if len(set(m.values())) != len(m):
            bad.append(f"edge ({u}, {v}): not injective")
    return bad


def is_derangement(cover: Cover, u: int, v: int) -> bool:
    """H(u) ⊆ H(v), H(u, v) defined on all of H(u), and no fixed point."""
    lu, lv = cover.lists[u], set(cover.lists[v])
    m = cover.match(u, v)
    return all(a in lv and a in m and m[a] != a for a in lu)


@dataclass(frozen=True)
class CoverFlags:
    plain: bool
    normal: bool
    constant: bool
    all_derangements: bool


def is_plain(cover: Cover) -> bool:
    return len(set(cover.lists.values())) <= 1


def classify(cover: Cover) -> CoverFlags:
    plain = is_plain(cover)
    normal = all(
        m == {a: a for a in set(cover.lists[u]) & set(cover.lists[v])}
        for (u, v), m in cover.matchings.items()
    )
    maps = list(cover.matchings.values())
    constant = plain and all(m == maps[0] for m in maps[1:])
    der = all(is_derangement(cover, u, v) and is_derangement(cover, v, u) for u, v in cover.matchings)
    return CoverFlags(plain, normal, constant, der)


# --- transformations ---------------------------------------------------------

def restrict(cover: Cover, keep: Iterable[int]) -> Cover:
    """H[W]: induced subgraph with lists and matchings restricted."""
    sub = cover.graph.induced(keep)
    return Cover(sub, cover.palette, {v: cover.lists[v] for v in sub.vertices},
                 {e: cover.matchings[e] for e in sub.sorted_edges})


def remove_node(cover: Cover, v: int, color: int) -> Cover:
    """H - (v, color): drop the node from L(v) and from every matching at v."""
    if color not in cover.lists[v]:
        raise ColorNotInList(f"color {color} not in L({v})")
    lists = dict(cover.lists)
    lists[v] = tuple(c for c in cover.lists[v] if c != color)
    mats = {}
    for (a, b), m in cover.matchings.items():
        if a == v:
            m = {x: y for x, y in m.items() if x != color}
        elif b == v:
            m = {x: y for x, y in m.items() if y != color}
        mats[(a, b)] = m
    return Cover(cover.graph, cover.palette, lists, mats)


def relabel_global(cover: Cover, pi: Sequence[int]) -> Cover:
    """Rename every color by pi; matchings are conjugated."""
    if sorted(pi) != list(range(cover.palette)):
        raise ValueError("pi is not a permutation of the palette")
    lists = {v: [pi[c] for c in l] for v, l in cover.lists.items()}
    mats = {e: {pi[a]: pi[b] for a, b in m.items()} for e, m in cover.matchings.items()}
    return Cover(cover.graph, cover.palette, lists, mats)


def relabel_local(cover: Cover, v: int, pi: Sequence[int]) -> Cover:
    """Rename the colors at a single vertex only."""
    lists = dict(cover.lists)
    lists[v] = [pi[c] for c in cover.lists[v]]
    mats = {}
    for (a, b), m in cover.matchings.items():
        if a == v:
            m = {pi[x]: y for x, y in m.items()}
        elif b == v:
            m = {x: pi[y] for x, y in m.items()}
        mats[(a, b)] = m
    return Cover(cover.graph, cover.palette, lists, mats)


def with_matching(cover: Cover, u: int, v: int, m: Mapping[int, int]) -> Cover:
    """Copy with H(u, v) replaced."""
    mats = dict(cover.matchings)
    mats[_edge(u, v)] = dict(m) if u < v else {b: a for a, b in m.items()}
    return Cover(cover.graph, cover.palette, cover.lists, mats)


# --- availability -------------------------------------------------------------

def blocked(cover: Cover, f: Mapping[int, int], v: int) -> set[int]:
    out = set()
    for w in cover.graph.adj[v]:
        if w in f:
            c = cover.match(w, v).get(f[w])
            if c is not None:
                out.add(c)
    return out


def availability(cover: Cover, f: Mapping[int, int], v: int) -> tuple[set[int], set[int], set[int]]:
    """(A, B, R): available, blocked and used colors for an uncolored v."""
    b = blocked(cover, f, v)
    r = set(f.values())
    a = set(cover.lists[v]) - b - r
    return a, b, r

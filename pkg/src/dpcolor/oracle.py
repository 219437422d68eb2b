"""Exact decision procedures for H-colorings under class-size modes.

The search colors vertices in the reverse of a degeneracy ordering, tracks
color-class budgets, and once the remaining vertices form an independent
set it decides the rest exactly with a flow (Hall) check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Mapping

from .cover import Cover, availability
from .errors import InternalInvariantViolation, PartialColoring, PreconditionViolated
from .graph import Graph, degeneracy_ordering
from .matching import max_flow, sdr


class Mode(str, Enum):
    PROPER = "proper"
    MBOUNDED = "mbounded"
    STRONG = "strong"
    INJECTIVE = "injective"

    @classmethod
    def parse(cls, text: str) -> "Mode":
        t = text.strip().lower().replace("_", "-")
        aliases = {
            "proper": cls.PROPER,
            "mbounded": cls.MBOUNDED, "m-bounded": cls.MBOUNDED, "equitable": cls.MBOUNDED,
            "strong": cls.STRONG, "stronglymbounded": cls.STRONG, "strongly-mbounded": cls.STRONG,
            "se": cls.STRONG, "strongly-equitable": cls.STRONG,
            "injective": cls.INJECTIVE,
        }
        if t not in aliases:
            raise ValueError(f"unknown mode {text!r}")
        return aliases[t]

    def __str__(self):
        return self.value


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class ClassProfile:
    class_sizes: dict
    n: int
    k: int
    m: int
    large_size: int
    large_count: int

    @property
    def m_bounded(self) -> bool:
        return all(s <= self.m for s in self.class_sizes.values())

    @property
    def strongly_bounded(self) -> bool:
        return self.m_bounded and self.large_count <= self.n % self.k

    @property
    def injective(self) -> bool:
        return all(s <= 1 for s in self.class_sizes.values())


def class_profile(f: Mapping[int, int], k: int) -> ClassProfile:
    sizes: dict[int, int] = {}
    for c in f.values():
        sizes[c] = sizes.get(c, 0) + 1
    n = len(f)
    large = n // k + 1
    return ClassProfile(sizes, n, k, ceil_div(n, k), large, sum(1 for s in sizes.values() if s == large))


@dataclass
class CheckResult:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def check_coloring(g: Graph, h: Cover, f: Mapping[int, int], mode: Mode, k: int) -> CheckResult:
    """Is f a total H-coloring satisfying ``mode``?  Lists every violation."""
    if k < 1:
        raise ValueError("k must be positive")
    missing = [v for v in g.vertices if v not in f]
    if missing:
        raise PartialColoring(f"uncolored vertices {missing}")
    bad = []
    for v in g.vertices:
        if f[v] not in h.lists[v]:
            bad.append(f"vertex {v}: color {f[v]} not in list")
    for u, v in g.sorted_edges:
        if h.match(u, v).get(f[u]) == f[v]:
            bad.append(f"edge ({u}, {v}): H({u},{v})({f[u]}) = {f[v]}")
    prof = class_profile({v: f[v] for v in g.vertices}, k)
    if mode in (Mode.MBOUNDED, Mode.STRONG):
        for c, s in sorted(prof.class_sizes.items()):
            if s > prof.m:
                bad.append(f"class {c}: size {s} > m = {prof.m}")
    if mode is Mode.STRONG and prof.large_count > prof.n % k:
        bad.append(f"{prof.large_count} large classes of size {prof.large_size} > {prof.n % k} allowed")
    if mode is Mode.INJECTIVE:
        for c, s in sorted(prof.class_sizes.items()):
            if s > 1:
                bad.append(f"class {c}: size {s} > 1")
    return CheckResult(not bad, bad)


@dataclass(frozen=True)
class Verdict:
    satisfiable: bool
    witness: dict | None
    nodes: int


@lru_cache(maxsize=4096)
def search_order(g: Graph) -> tuple[int, ...]:
    """Reverse of the degeneracy ordering: every vertex has at most d later
    neighbours, so most constraints bind as soon as a vertex is reached."""
    return tuple(reversed(degeneracy_ordering(g).order))


@lru_cache(maxsize=4096)
def _layout(g: Graph):
    order = search_order(g)
    pos = {v: i for i, v in enumerate(order)}
    back = [tuple(sorted(pos[w] for w in g.adj[v] if pos[w] < pos[v])) for v in order]
    tail = len(order)
    while tail > 0 and not any(pos[w] >= tail for w in g.adj[order[tail - 1]]):
        tail -= 1
    return order, pos, back, tail


class _Search:
    def __init__(self, g: Graph, h: Cover, mode: Mode, k: int, prune: bool):
        if k < 1:
            raise ValueError("k must be positive")
        self.order, pos, back, self.tail = _layout(g)
        self.n = n = len(self.order)
        self.lists = [h.lists[v] for v in self.order]
        self.back = [
            tuple((j, h.match(self.order[j], v)) for j in back[i]) for i, v in enumerate(self.order)
        ]
        self.prune = prune
        self.mode = mode
        self.cap = {Mode.PROPER: n, Mode.MBOUNDED: ceil_div(n, k), Mode.STRONG: ceil_div(n, k), Mode.INJECTIVE: 1}[mode]
        self.strong = mode is Mode.STRONG
        self.large_size = n // k + 1
        self.allowed = n % k
        self.counts = [0] * max(h.palette, 1)
        self.large = 0
        self.f = [None] * n
        self.nodes = 0

    def _avail(self, i):
        f = self.f
        forb = {m.get(f[j]) for j, m in self.back[i]}
        counts, cap = self.counts, self.cap
        return [c for c in self.lists[i] if c not in forb and counts[c] < cap]

    def _tail_feasible(self, i) -> bool:
        sets = [self._avail(x) for x in range(i, self.n)]
        if any(not s for s in sets):
            return False
        if self.mode is Mode.PROPER or len(sets) <= 1:
            return True
        counts = self.counts
        colors = sorted({c for s in sets for c in s})
        if self.mode is Mode.INJECTIVE:
            return sdr(list(enumerate(sets))) is not None
        cap: dict = {"S": {("v", x): 1 for x in range(len(sets))}}
        for x, s in enumerate(sets):
            cap[("v", x)] = {("c", c): 1 for c in s}
        pool = self.allowed - self.large if self.strong else 0
        use_pool = self.strong and self.allowed > 0
        for c in colors:
            row = {}
            if use_pool:
                free = self.large_size - 1 - counts[c]
                if free > 0:
                    row["T"] = free
                if counts[c] < self.large_size and pool > 0:
                    row["P"] = 1
            else:
                row["T"] = self.cap - counts[c]
            cap[("c", c)] = row
        if use_pool and pool > 0:
            cap["P"] = {"T": pool}
        return max_flow(cap, "S", "T") == len(sets)

    def run(self, i, counting):
        self.nodes += 1
        if i == self.n:
            return 1
        if self.prune and i >= self.tail and not self._tail_feasible(i):
            return 0
        f, counts = self.f, self.counts
        forb = {m.get(f[j]) for j, m in self.back[i]}
        total = 0
        for c in self.lists[i]:
            if c in forb:
                continue
            cnt = counts[c]
            if cnt >= self.cap:
                continue
            new_large = self.strong and cnt + 1 == self.large_size
            if new_large and self.large >= self.allowed:
                continue
            f[i] = c
            counts[c] = cnt + 1
            if new_large:
                self.large += 1
            got = self.run(i + 1, counting)
            if new_large:
                self.large -= 1
            counts[c] = cnt
            if got and not counting:
                return got
            total += got
        return total

    def witness(self):
        return {v: self.f[i] for i, v in enumerate(self.order)}


def solve(g: Graph, h: Cover, mode: Mode, k: int, prune: bool = True) -> Verdict:
    """Complete search; first witness in (vertex order, color) order."""
    s = _Search(g, h, Mode(mode), k, prune)
    if s.run(0, counting=False):
        w = s.witness()
        chk = check_coloring(g, h, w, Mode(mode), k)
        if not chk.ok:
            raise InternalInvariantViolation("oracle witness fails its own check: " + "; ".join(chk.violations))
        return Verdict(True, w, s.nodes)
    return Verdict(False, None, s.nodes)


def count_colorings(g: Graph, h: Cover, mode: Mode, k: int, prune: bool = True) -> int:
    s = _Search(g, h, Mode(mode), k, prune)
    return s.run(0, counting=True)


def hall_extend(g: Graph, h: Cover, f: Mapping[int, int], s) -> dict | None:
    """Extend f injectively onto the independent set s via an SDR of the
    available-color sets, or None when Hall's condition fails."""
    s = sorted(s)
    if not g.is_independent(s):
        raise PreconditionViolated("s is not independent")
    if any(v in f for v in s):
        raise PreconditionViolated("s meets dom(f)")
    sets = [(v, sorted(availability(h, f, v)[0])) for v in s]
    choice = sdr(sets)
    if choice is None:
        return None
    out = dict(f)
    out.update(choice)
    return out


def iter_colorings(g: Graph, h: Cover, mode: Mode = Mode.PROPER, k: int | None = None):
    """Every total coloring satisfying ``mode`` (as dicts), in search order."""
    k = k if k is not None else max(h.palette, 1)
    s = _Search(g, h, Mode(mode), k, prune=False)

    def visit(i):
        if i == s.n:
            yield {v: s.f[j] for j, v in enumerate(s.order)}
            return
        f, counts = s.f, s.counts
        forb = {m.get(f[j]) for j, m in s.back[i]}
        for c in s.lists[i]:
            if c in forb or counts[c] >= s.cap:
                continue
            new_large = s.strong and counts[c] + 1 == s.large_size
            if new_large and s.large >= s.allowed:
                continue
            f[i] = c
            counts[c] += 1
            s.large += new_large
            yield from visit(i + 1)
            s.large -= new_large
            counts[c] -= 1

    yield from visit(0)

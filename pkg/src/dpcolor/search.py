"""Exhaustive search over cover families.

A family is enumerated as a mixed-radix product (one digit per vertex list
and per edge matching), so any index range can be produced directly; that is
what sharding uses.  Only global color renamings (and optionally graph
automorphisms) are quotiented: per-vertex renaming changes class sizes and
is not a symmetry of the equitable modes.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial, prod
from typing import Iterator

from .cover import Cover
from .errors import BadParams, BudgetExceeded, InternalInvariantViolation, NotAWitness
from .graph import Graph
from .oracle import Mode, ceil_div, solve
from .perm import all_partial_injections, conjugacy_representatives, conjugate, partial_key

DEFAULT_BUDGET = 5_000_000

KINDS = ("plainFull", "plainPartial", "generalLists")
SYMMETRIES = ("none", "globalColorPerm", "globalColorPerm+graphAuto")
_KIND_ALIASES = {"plain-full": "plainFull", "plain-partial": "plainPartial", "general-lists": "generalLists"}
_SYM_ALIASES = {"global": "globalColorPerm", "global-color-perm": "globalColorPerm",
                "global+auto": "globalColorPerm+graphAuto", "global-color-perm+graph-auto": "globalColorPerm+graphAuto"}


def default_budget() -> int:
    return int(os.environ.get("DPCOLOR_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class CoverFamily:
    kind: str = "plainFull"
    palette: int | None = None      # generalLists only; defaults to k + 1
    symmetry: str = "globalColorPerm"

    def __post_init__(self):
        object.__setattr__(self, "kind", _KIND_ALIASES.get(self.kind, self.kind))
        object.__setattr__(self, "symmetry", _SYM_ALIASES.get(self.symmetry, self.symmetry))
        if self.kind not in KINDS:
            raise BadParams(f"unknown family kind {self.kind!r}")
        if self.symmetry not in SYMMETRIES:
            raise BadParams(f"unknown symmetry {self.symmetry!r}")


@dataclass(frozen=True)
class SearchResult:
    outcome: str                    # "allColorable" or "witness"
    witness: Cover | None
    covers: int                     # stream position of the witness, or the total enumerated
    family: CoverFamily
    mode: Mode
    k: int
    index: int | None = None        # 0-based stream index of the witness

    @property
    def scope(self) -> str:
        if self.outcome == "witness":
            return "the witness cover shows the graph is not colorable in this mode for every k-cover"
        return f"every cover of family {self.family.kind} admits a coloring; covers outside the family are not examined"


# --- the stream -------------------------------------------------------------

@lru_cache(maxsize=None)
def _perms(k: int) -> tuple:
    return tuple(dict(enumerate(p)) for p in permutations(range(k)))


@lru_cache(maxsize=None)
def _partials(k: int) -> tuple:
    return tuple(sorted(all_partial_injections(k), key=lambda m: partial_key(m, k)))


@lru_cache(maxsize=None)
def _reps(kind: str, k: int) -> tuple:
    if kind == "plainFull":
        return tuple(_perm_class_reps(k))
    return tuple(conjugacy_representatives(list(_partials(k)), k))


def _perm_class_reps(k: int) -> list[dict]:
    """Key-least permutation of each cycle type (one per conjugacy class of S_k)."""
    best: dict = {}
    for p in permutations(range(k)):
        # cycle type
        seen, lens = set(), []
        for s in range(k):
            if s in seen:
                continue
            n, x = 0, s
            while x not in seen:
                seen.add(x)
                x = p[x]
                n += 1
            lens.append(n)
        t = tuple(sorted(lens))
        if t not in best or p < best[t]:
            best[t] = p
    return [dict(enumerate(p)) for p in sorted(best.values())]


class _Plan:
    """Digits of the mixed-radix stream and how to turn digits into a cover."""

    def __init__(self, g: Graph, k: int, family: CoverFamily):
        self.g, self.k, self.family = g, k, family
        reduce = family.symmetry != "none"
        edges = g.sorted_edges
        if family.kind == "generalLists":
            p = family.palette if family.palette is not None else k + 1
            if p < k:
                raise BadParams("palette smaller than k")
            if p > max(g.n, 1) * k:
                raise BadParams(f"palette {p} exceeds n*k = {g.n * k}")
            self.palette = p
            self.subsets = list(combinations(range(p), k))
            self.templates = _partials(k)
            self.radix = []
            for i, _ in enumerate(g.vertices):
                self.radix.append(1 if (reduce and i == 0) else len(self.subsets))
            self.radix += [len(self.templates)] * len(edges)
        else:
            self.palette = k
            members = _perms(k) if family.kind == "plainFull" else _partials(k)
            self.members = members
            self.first = _reps(family.kind, k) if reduce else members
            self.radix = [len(self.first)] + [len(members)] * (len(edges) - 1) if edges else []

    @property
    def total(self) -> int:
        return prod(self.radix)

    def cover(self, digits) -> Cover:
        g, k = self.g, self.k
        edges = g.sorted_edges
        if self.family.kind == "generalLists":
            nv = g.n
            lists = {v: self.subsets[d] for v, d in zip(g.vertices, digits[:nv])}
            mats = {}
            for (u, v), d in zip(edges, digits[nv:]):
                lu, lv = lists[u], lists[v]
                mats[(u, v)] = {lu[a]: lv[b] for a, b in self.templates[d].items()}
            return Cover(g, self.palette, lists, mats)
        mats = {}
        for i, (e, d) in enumerate(zip(edges, digits)):
            mats[e] = (self.first if i == 0 else self.members)[d]
        return Cover(g, k, {v: range(k) for v in g.vertices}, mats)


def _digits(index: int, radix: list[int]) -> list[int]:
    out = [0] * len(radix)
    for i in range(len(radix) - 1, -1, -1):
        index, out[i] = divmod(index, radix[i])
    return out


def _odometer(radix: list[int], start: int, stop: int) -> Iterator[tuple[int, list[int]]]:
    if start >= stop:
        return
    d = _digits(start, radix)
    for idx in range(start, stop):
        yield idx, d
        i = len(radix) - 1
        while i >= 0:
            d[i] += 1
            if d[i] < radix[i]:
                break
            d[i] = 0
            i -= 1


def partition_count(k: int) -> int:
    """Number of integer partitions of k, i.e. of cycle types in S_k."""
    ways = [1] + [0] * k
    for part in range(1, k + 1):
        for total in range(part, k + 1):
            ways[total] += ways[total - part]
    return ways[k]


def estimate_count(g: Graph, k: int, family: CoverFamily) -> int:
    """Size of the stream before any automorphism filtering."""
    if family.kind == "plainFull":
        per = factorial(k)
        first = partition_count(k) if family.symmetry != "none" else per
    elif family.kind == "plainPartial":
        per = sum(comb(k, i) ** 2 * factorial(i) for i in range(k + 1))
        first = len(_reps("plainPartial", k)) if (family.symmetry != "none" and k <= 6) else per
    else:
        p = family.palette if family.palette is not None else k + 1
        per_list = comb(p, k)
        per = sum(comb(k, i) ** 2 * factorial(i) for i in range(k + 1))
        lists = per_list ** (g.n - 1 if family.symmetry != "none" and g.n else g.n)
        return lists * per ** g.m
    if g.m == 0:
        return 1
    return first * per ** (g.m - 1)


def _check_budget(g, k, family, budget):
    budget = default_budget() if budget is None else budget
    est = estimate_count(g, k, family)
    if est > budget:
        raise BudgetExceeded(est, budget)
    return est


# --- automorphism filtering ---------------------------------------------------

@lru_cache(maxsize=256)
def automorphisms(g: Graph) -> tuple[dict, ...]:
    import networkx as nx
    from networkx.algorithms.isomorphism import GraphMatcher

    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices)
    nxg.add_edges_from(g.sorted_edges)
    autos = [dict(m) for m in GraphMatcher(nxg, nxg).isomorphisms_iter()]
    return tuple(sorted(autos, key=lambda a: [a[v] for v in g.vertices]))


def _plain_key(g: Graph, mats: dict, k: int) -> tuple:
    return tuple(partial_key(mats[e], k) for e in g.sorted_edges)


def is_canonical(h: Cover, k: int) -> bool:
    """Is h key-least among its images under color renaming x automorphisms?"""
    g = h.graph
    own = _plain_key(g, h.matchings, k)
    colour_perms = [tuple(p) for p in permutations(range(k))]
    for sigma in automorphisms(g):
        moved = {}
        for (u, v), m in h.matchings.items():
            a, b = sigma[u], sigma[v]
            moved[(a, b) if a < b else (b, a)] = m if a < b else {y: x for x, y in m.items()}
        for pi in colour_perms:
            img = tuple(partial_key(conjugate(moved[e], pi), k) for e in g.sorted_edges)
            if img < own:
                return False
    return True


# --- public enumeration -----------------------------------------------------------

def enumerate_covers(g: Graph, k: int, family: CoverFamily = CoverFamily(), budget: int | None = None,
                     start: int = 0, stop: int | None = None) -> Iterator[Cover]:
    """Deterministic stream of covers (optionally a slice by stream index)."""
    for _, h in _indexed(g, k, family, budget, start, stop):
        yield h


def _indexed(g, k, family, budget, start=0, stop=None):
    _check_budget(g, k, family, budget)
    plan = _Plan(g, k, family)
    stop = plan.total if stop is None else min(stop, plan.total)
    auto = family.symmetry == "globalColorPerm+graphAuto"
    if auto and family.kind == "generalLists":
        raise BadParams("automorphism reduction is only implemented for plain families")
    for idx, digits in _odometer(plan.radix, start, stop):
        h = plan.cover(digits)
        if auto and not is_canonical(h, k):
            continue
        yield idx, h


def stream_size(g: Graph, k: int, family: CoverFamily, budget: int | None = None) -> int:
    _check_budget(g, k, family, budget)
    return _Plan(g, k, family).total


# --- deciding a family -------------------------------------------------------------

def _run_shard(args):
    g, k, mode, family, budget, start, stop = args
    for idx, h in _indexed(g, k, family, budget, start, stop):
        if not solve(g, h, mode, k).satisfiable:
            return idx, h
    return None


def shard_ranges(total: int, shards: int) -> list[tuple[int, int]]:
    shards = max(1, shards)
    step = ceil_div(total, shards) if total else 0
    return [(min(i * step, total), min((i + 1) * step, total)) for i in range(shards)]


def decide_family(g: Graph, k: int, mode: Mode, family: CoverFamily = CoverFamily(),
                  budget: int | None = None, shards: int = 1, workers: int = 1) -> SearchResult:
    """Solve every cover of the family; stop at the first uncolorable one.

    Shards are contiguous index ranges.  The reported witness is the one with
    the least stream index over all shards, so the report does not depend on
    the shard count.
    """
    mode = Mode(mode)
    if mode not in (Mode.MBOUNDED, Mode.STRONG, Mode.INJECTIVE, Mode.PROPER):
        raise BadParams(f"unsupported mode {mode}")
    total = stream_size(g, k, family, budget)
    jobs = [(g, k, mode, family, budget, a, b) for a, b in shard_ranges(total, shards)]
    found = None
    if workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as ex:
            hits = [r for r in ex.map(_run_shard, jobs) if r is not None]
        found = min(hits, key=lambda r: r[0]) if hits else None
    else:
        for job in jobs:
            found = _run_shard(job)
            if found is not None:
                break       # later shards only hold larger indices
    if found is None:
        return SearchResult("allColorable", None, total, family, mode, k)
    idx, h = found
    if solve(g, h, mode, k, prune=False).satisfiable:
        raise InternalInvariantViolation("witness did not survive the unpruned re-check")
    return SearchResult("witness", h, idx + 1, family, mode, k, idx)


# --- witness minimization ----------------------------------------------------------------

def _spanning_edges(g: Graph) -> set:
    seen, tree = set(), set()
    for root in g.vertices:
        if root in seen:
            continue
        seen.add(root)
        stack = [root]
        while stack:
            u = stack.pop()
            for w in sorted(g.adj[u]):
                if w not in seen:
                    seen.add(w)
                    tree.add((min(u, w), max(u, w)))
                    stack.append(w)
    return tree


def _identity_on(h: Cover, u: int, v: int) -> dict:
    common = sorted(set(h.lists[u]) & set(h.lists[v]))
    return {a: a for a in common}


def minimize_witness(g: Graph, k: int, mode: Mode, w: Cover) -> Cover:
    """Greedy shrinking that keeps the cover uncolorable: non-tree matchings
    become identities where possible, then pairs are deleted from the
    remaining non-identity matchings, until nothing changes."""
    mode = Mode(mode)
    if solve(g, w, mode, k).satisfiable:
        raise NotAWitness("cover admits a coloring in this mode")
    tree = _spanning_edges(g)
    cur = w
    changed = True
    while changed:
        changed = False
        for e in g.sorted_edges:
            if e in tree:
                continue
            ident = _identity_on(cur, *e)
            if cur.matchings[e] == ident:
                continue
            trial = Cover(g, cur.palette, cur.lists, {**cur.matchings, e: ident})
            if not solve(g, trial, mode, k).satisfiable:
                cur, changed = trial, True
        for e in g.sorted_edges:
            if cur.matchings[e] == _identity_on(cur, *e):
                continue
            for a in sorted(cur.matchings[e]):
                m = {x: y for x, y in cur.matchings[e].items() if x != a}
                trial = Cover(g, cur.palette, cur.lists, {**cur.matchings, e: m})
                if not solve(g, trial, mode, k).satisfiable:
                    cur, changed = trial, True
    return cur


# --- uncolorable plain covers by covering the coloring set -----------------------

def candidate_colorings(n: int, k: int, mode: Mode) -> list[tuple[int, ...]]:
    """All maps [n] -> [k] meeting the class-size rule of the mode (edges ignored)."""
    mode = Mode(mode)
    if mode is Mode.INJECTIVE:
        return list(permutations(range(k), n))
    out = []
    m = ceil_div(n, k)
    large = n // k + 1
    allowed = n % k
    from itertools import product as _product

    for f in _product(range(k), repeat=n):
        sizes = [0] * k
        for c in f:
            sizes[c] += 1
        if mode in (Mode.MBOUNDED, Mode.STRONG) and max(sizes) > m:
            continue
        if mode is Mode.STRONG and sum(1 for s in sizes if s == large) > allowed:
            continue
        out.append(f)
    return out


def unsat_plain_full(g: Graph, k: int, mode: Mode, symmetry: str = "globalColorPerm") -> Iterator[Cover]:
    """Every uncolorable cover of the plainFull stream, in stream order.

    A cover is uncolorable iff the sets of candidate colorings killed by its
    edges (pi_e(f(u)) = f(v)) cover every candidate.  Depth-first over edges
    with the bound: still-alive candidates <= sum over later edges of
    sum_a max_b |alive with f(u)=a, f(v)=b|.
    """
    mode = Mode(mode)
    if mode is Mode.PROPER:
        raise BadParams("proper mode has no class-size rule; use the oracle")
    sym = _SYM_ALIASES.get(symmetry, symmetry)
    if sym not in ("none", "globalColorPerm"):
        raise BadParams("only 'none' and 'globalColorPerm' are supported here")
    verts = list(g.vertices)
    pos = {v: i for i, v in enumerate(verts)}
    cands = candidate_colorings(g.n, k, mode)
    full = (1 << len(cands)) - 1
    edges = g.sorted_edges
    pair = []
    for u, v in edges:
        tab = [[0] * k for _ in range(k)]
        iu, iv = pos[u], pos[v]
        for j, f in enumerate(cands):
            tab[f[iu]][f[iv]] |= 1 << j
        pair.append(tab)
    perms = [tuple(p) for p in permutations(range(k))]
    first = [tuple(m[a] for a in range(k)) for m in _perm_class_reps(k)] if sym != "none" else perms
    if not edges:
        if not cands:
            yield Cover(g, k, {v: range(k) for v in verts}, {})
        return

    def bound(alive, i):
        tot = 0
        for tab in pair[i:]:
            for row in tab:
                tot += max((alive & cell).bit_count() for cell in row)
        return tot

    chosen = [None] * len(edges)

    def dfs(i, alive):
        if i == len(edges):
            if alive == 0:
                yield Cover(g, k, {v: range(k) for v in verts},
                            {e: dict(enumerate(p)) for e, p in zip(edges, chosen)})
            return
        if alive.bit_count() > bound(alive, i):
            return
        tab = pair[i]
        for p in (first if i == 0 else perms):
            killed = 0
            for a in range(k):
                killed |= tab[a][p[a]]
            chosen[i] = p
            yield from dfs(i + 1, alive & ~killed)

    yield from dfs(0, full)

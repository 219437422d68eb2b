"""Constructive colorings.

Each routine returns a coloring that is re-checked before it is handed back.
Steps that the underlying existence argument guarantees raise
InternalInvariantViolation when they fail; nothing is silently retried.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from . import graph as G
from .cover import Cover, availability, blocked, classify, is_derangement, is_plain, relabel_global, remove_node, restrict
from .errors import InternalInvariantViolation, PreconditionViolated, TheoremViolation
from .graph import Graph, Ordering, degeneracy, degeneracy_ordering
from .matching import sdr
from .oracle import Mode, ceil_div, check_coloring, hall_extend, solve

#: largest base case handed to the exhaustive oracle inside the recursions
BASE_CASE_CAP = int(os.environ.get("DPCOLOR_BASE_CAP", "20"))

D = {0: 1, 1: 2, 2: 0}
D_PRIME = {0: 2, 1: 0, 2: 1}


def list_size(h: Cover) -> int:
    """Smallest list size (the k of a k-cover)."""
    return min((len(l) for l in h.lists.values()), default=0)


def _require_k_cover(h: Cover, k: int):
    sizes = {len(l) for l in h.lists.values()}
    if sizes and sizes != {k}:
        raise PreconditionViolated(f"cover is not a {k}-cover (list sizes {sorted(sizes)})")


def _verify(g: Graph, h: Cover, f: dict, mode: Mode, k: int, what: str) -> dict:
    chk = check_coloring(g, h, f, mode, k)
    if not chk.ok:
        raise InternalInvariantViolation(f"{what}: {'; '.join(chk.violations)}")
    return f


# --- sigma first fit --------------------------------------------------------

@dataclass(frozen=True)
class FFState:
    position: int           # 1-based
    partial: dict
    A: frozenset
    B: frozenset
    R: frozenset


@dataclass(frozen=True)
class BranchFailure:
    """Step ``position`` (1-based) found no available color for ``vertex``."""
    position: int
    vertex: int
    partial: dict

    def __bool__(self):
        return False


def ff_state(h: Cover, order: Sequence[int], f: dict, i: int) -> FFState:
    a, b, r = availability(h, f, order[i - 1])
    return FFState(i, dict(f), frozenset(a), frozenset(b), frozenset(r))


def _order_of(g: Graph, sigma) -> tuple[int, ...]:
    order = tuple(sigma.order if isinstance(sigma, Ordering) else sigma)
    if sorted(order) != sorted(g.vertices):
        raise PreconditionViolated("ordering does not cover V exactly once")
    return order


def sigma_ff(g: Graph, h: Cover, sigma, policy: str = "minColor", prune: bool = True):
    """Injective first fit along sigma.

    ``minColor`` takes the least available color each step.  ``allBranches``
    explores every choice sequence and returns the least-color coloring when
    every branch completes, else the first failing branch.  With ``prune``
    a subtree is skipped once a counting bound shows that every future step
    keeps an available color whatever is chosen; ``prune=False`` walks all
    leaves literally.
    """
    order = _order_of(g, sigma)
    if policy == "minColor":
        f: dict = {}
        for i, v in enumerate(order):
            a = availability(h, f, v)[0]
            if not a:
                return BranchFailure(i + 1, v, f)
            f[v] = min(a)
        return f
    if policy != "allBranches":
        raise ValueError(f"unknown policy {policy!r}")
    pos = {v: i for i, v in enumerate(order)}
    earlier = [[pos[w] for w in g.adj[v]] for v in order]
    n = len(order)
    f = {}

    def certified(i):
        # every j >= i keeps |A_j| >= 1 on every branch
        for j in range(i, n):
            lost = (j - i) + sum(1 for p in earlier[j] if i <= p < j)
            if len(availability(h, f, order[j])[0]) - lost < 1:
                return False
        return True

    def dfs(i):
        if i == n:
            return None
        if prune and certified(i):
            return None
        a = sorted(availability(h, f, order[i])[0])
        if not a:
            return BranchFailure(i + 1, order[i], dict(f))
        for c in a:
            f[order[i]] = c
            bad = dfs(i + 1)
            del f[order[i]]
            if bad is not None:
                return bad
        return None

    bad = dfs(0)
    if bad is not None:
        return bad
    return sigma_ff(g, h, order, "minColor")


def color_ge_n_plus_d(g: Graph, h: Cover) -> dict:
    """Injective coloring by first fit on a degeneracy ordering (k >= n + d)."""
    order = degeneracy_ordering(g)
    k = list_size(h)
    if g.n and k < g.n + order.degeneracy:
        raise PreconditionViolated(f"need k >= n + d, got k = {k} < {g.n} + {order.degeneracy}")
    f = sigma_ff(g, h, order, "minColor")
    if isinstance(f, BranchFailure):
        raise InternalInvariantViolation(f"first fit failed at step {f.position} although k >= n + d")
    return _verify(g, h, f, Mode.INJECTIVE, max(k, 1), "first fit")


# --- the tight case k = n + d - 1 -------------------------------------------

def is_clique_join_independent(g: Graph, d: int) -> bool:
    """g == K_d joined to an independent set on the remaining vertices."""
    univ = [v for v in g.vertices if g.degree(v) == g.n - 1]
    if len(univ) < d:
        return False
    core = set(univ[:d])
    return g.is_independent(v for v in g.vertices if v not in core)


def _shared_incoming(g: Graph, h: Cover) -> bool:
    for x in g.vertices:
        maps = [h.match(y, x) for y in sorted(g.adj[x])]
        if any(m != maps[0] for m in maps[1:]):
            return False
    return True


@dataclass(frozen=True)
class TightCertificate:
    d: int
    structure_ok: bool
    cover_plain: bool
    all_derangements: bool
    shared_incoming: bool
    constant_when_d2: bool | None   # None when d < 2 (not required)

    def failures(self) -> list[str]:
        items = [("a", self.structure_ok), ("b-plain", self.cover_plain),
                 ("b-derangement", self.all_derangements), ("c", self.shared_incoming)]
        if self.constant_when_d2 is not None:
            items.append(("d", self.constant_when_d2))
        return [name for name, ok in items if not ok]

    @property
    def ok(self) -> bool:
        return not self.failures()


def tight_certificate(g: Graph, h: Cover, d: int | None = None) -> TightCertificate:
    d = degeneracy(g) if d is None else d
    ders = all(is_derangement(h, u, v) and is_derangement(h, v, u) for u, v in g.sorted_edges)
    return TightCertificate(
        d,
        is_clique_join_independent(g, d),
        is_plain(h),
        ders,
        _shared_incoming(g, h),
        classify(h).constant if d >= 2 else None,
    )


def solve_or_characterize_tight(g: Graph, h: Cover):
    """Injective coloring when one exists, else the structure certificate.

    Raises TheoremViolation when an uncolorable instance lacks the structure.
    """
    d = degeneracy(g)
    k = h.k
    if not 1 <= d < g.n:
        raise PreconditionViolated(f"need 1 <= d < n, got d = {d}, n = {g.n}")
    if k != g.n + d - 1:
        raise PreconditionViolated(f"need a k-cover with k = n + d - 1 = {g.n + d - 1}, got k = {k}")
    v = solve(g, h, Mode.INJECTIVE, k)
    if v.satisfiable:
        return v.witness
    cert = tight_certificate(g, h, d)
    if not cert.ok:
        raise TheoremViolation(f"uncolorable tight instance fails items {cert.failures()}")
    return cert


# --- forests: two blocks ------------------------------------------------------

def equitable_forest_two_block(g: Graph, h: Cover, k: int) -> dict:
    """Equitable (class size <= ceil(n/k)) coloring of a forest for 2k >= n + 2."""
    n = g.n
    if not g.is_forest():
        raise PreconditionViolated("G is not a forest")
    if 2 * k < n + 2:
        raise PreconditionViolated(f"need k >= (n + 2)/2, got k = {k}, n = {n}")
    _require_k_cover(h, k)
    if k == n and n >= 2 and G.is_star(g):
        raise PreconditionViolated("k = n and G is the star K_{1,n-1}")
    if n == 0:
        return {}
    if k >= n + degeneracy(g):
        return color_ge_n_plus_d(g, h)
    if k >= n:
        v = solve(g, h, Mode.INJECTIVE, k)
        if not v.satisfiable:
            raise InternalInvariantViolation("forest with k = n has no injective coloring")
        return v.witness
    order = degeneracy_ordering(g).order
    t = ceil_div(n, 2)
    f: dict = {}
    for block in (order[:t], order[t:]):
        used: set = set()
        for v in block:
            options = set(h.lists[v]) - blocked(h, f, v) - used
            if not options:
                raise InternalInvariantViolation(f"two-block first fit stuck at vertex {v}")
            c = min(options)
            f[v] = c
            used.add(c)
    return _verify(g, h, f, Mode.MBOUNDED, k, "two-block coloring")


# --- stars ----------------------------------------------------------------

@dataclass(frozen=True)
class StarCertificate:
    center: int
    u: int
    gamma: int
    lists_ok: bool          # H(u) inside Gamma and every other list equals Gamma
    derangements_ok: bool   # H(v, z) derangement for v in {u, r}, z != u
    shared_ok: bool         # H(r, x) == H(r, y) for x, y in X - u

    @property
    def ok(self) -> bool:
        return self.lists_ok and self.derangements_ok and self.shared_ok


def star_certificate(g: Graph, h: Cover, u: int, gamma: int) -> StarCertificate:
    """Evaluate the three structure items on H = H' minus (u, gamma); ``h`` is H."""
    r = G.star_center(g)
    others = [v for v in g.vertices if v != u]
    gam = set().union(*(set(h.lists[v]) for v in others)) if others else set()
    lists_ok = set(h.lists[u]) <= gam and len(gam) == g.n and all(set(h.lists[v]) == gam for v in others)
    ders = True
    for a, b in g.sorted_edges:
        for v, z in ((a, b), (b, a)):
            if v in (u, r) and z != u and not is_derangement(h, v, z):
                ders = False
    leaves = [x for x in g.vertices if x != r and x != u]
    maps = [h.match(r, x) for x in leaves]
    shared = all(m == maps[0] for m in maps[1:])
    return StarCertificate(r, u, gamma, lists_ok, ders, shared)


def star_extend(g: Graph, h_prime: Cover, u: int, gamma: int):
    """Injective coloring of a star under H' minus the node (u, gamma), or the
    structure certificate when there is none."""
    if g.n < 2 or not G.is_star(g):
        raise PreconditionViolated("G is not a star on at least 2 vertices")
    _require_k_cover(h_prime, g.n)
    h = remove_node(h_prime, u, gamma)
    r = G.star_center(g)
    leaves = [x for x in g.vertices if x != r]
    for a in h.lists[r]:
        ext = hall_extend(g, h, {r: a}, leaves)
        if ext is not None:
            chk = check_coloring(g, h, ext, Mode.INJECTIVE, g.n)
            if not chk.ok:
                raise InternalInvariantViolation("; ".join(chk.violations))
            return ext
    cert = star_certificate(g, h, u, gamma)
    if not cert.ok:
        raise TheoremViolation(f"uncolorable star without the structure: {cert}")
    return cert


# --- forests: strongly equitable recursion -----------------------------------

def linked(g: Graph) -> Graph:
    """A tree on the same vertices: components (by least label) are chained
    by joining an end of each to an end of the next.  Only ever used for
    structural choices; the cover never sees the added edges."""
    extra = []
    prev = None
    for comp in g.components():
        es = sorted(v for v in comp if g.degree(v) <= 1)
        left, right = es[0], es[-1]
        if prev is not None:
            extra.append((prev, left))
        prev = right
    return g.add_edges(extra)


def _injective_base(g: Graph, h: Cover, k: int, cap: int) -> dict:
    sub = restrict(h, g.vertices)
    if g.n == 0:
        return {}
    if k >= g.n + degeneracy(g):
        return color_ge_n_plus_d(g, sub)
    if g.n > cap:
        raise PreconditionViolated(f"base case on {g.n} vertices exceeds the cap {cap}")
    v = solve(g, sub, Mode.INJECTIVE, k)
    if not v.satisfiable:
        raise InternalInvariantViolation(f"no injective coloring of a {g.n}-vertex base case at k = {k}")
    return v.witness


def _class_sizes(f: dict) -> dict:
    out: dict = {}
    for c in f.values():
        out[c] = out.get(c, 0) + 1
    return out


def _extend_one(h: Cover, f: dict, v: int, m: int) -> dict:
    """Give v the least unblocked color whose class has fewer than m members."""
    sizes = _class_sizes(f)
    bad = blocked(h, f, v)
    for c in h.lists[v]:
        if c not in bad and sizes.get(c, 0) < m:
            out = dict(f)
            out[v] = c
            return out
    raise InternalInvariantViolation(f"no unblocked non-full color for end {v}")


def _extend_block(g: Graph, h: Cover, f: dict, u: int, rest: Sequence[int], full: int) -> dict:
    """Injectively color u + rest (rest independent) from colors whose class
    in f is below ``full`` and that are not blocked by f."""
    sizes = _class_sizes(f)
    star = {z: [c for c in h.lists[z] if sizes.get(c, 0) < full and c not in blocked(h, f, z)] for z in [u, *rest]}
    for a in star[u]:
        sets = []
        for w in rest:
            hit = h.match(u, w).get(a) if g.has_edge(u, w) else None
            sets.append((w, [c for c in star[w] if c != a and c != hit]))
        pick = sdr(sets)
        if pick is not None:
            out = dict(f)
            out[u] = a
            out.update(pick)
            return out
    raise InternalInvariantViolation(f"hub {u}: no injective extension onto {[u, *rest]}")


def _forest(g: Graph, h: Cover, k: int, cap: int) -> dict:
    n = g.n
    if n <= k:
        return _injective_base(g, h, k, cap)
    i = n % k
    if i:
        try:
            l = G.find_nonstar_ends(g)[0]
        except Exception as exc:
            raise InternalInvariantViolation(f"no non-star end: {exc}") from None
        f = _forest(g.remove(l), h, k, cap)
        return _extend_one(h, f, l, ceil_div(n, k))
    s = linked(g)
    u, body, tail = G.find_hub(s)
    body = sorted(body)
    core = [u] + (body[1:] if len(body) == k - 1 else body)
    rest = s.remove(*core)
    cands = [x for x in G.nonstar_ends(rest) if x != tail]
    if not cands:
        raise InternalInvariantViolation(f"no end l != tail with a non-star remainder after hub {u}")
    l = cands[0]
    f = _forest(g.induced(v for v in rest.vertices if v != l), h, k, cap)
    return _extend_block(g, h, f, u, [*core[1:], l], n // k)


def sedp_forest(g: Graph, h: Cover, k: int, cap: int | None = None) -> dict:
    """Strongly equitable coloring of a non-star forest for k >= max(Δ, 4)."""
    if not g.is_forest():
        raise PreconditionViolated("G is not a forest")
    if G.is_star(g):
        raise PreconditionViolated("G is a star")
    if k < max(g.max_degree, 4):
        raise PreconditionViolated(f"need k >= max(Δ, 4) = {max(g.max_degree, 4)}, got k = {k}")
    _require_k_cover(h, k)
    f = _forest(g, h, k, BASE_CASE_CAP if cap is None else cap)
    return _verify(g, h, f, Mode.STRONG, k, "forest recursion")


# --- paths --------------------------------------------------------------------

def path_order(g: Graph) -> list[int]:
    """Vertices of a path from its smaller-labelled end."""
    if g.n == 0 or not g.is_connected() or g.m != g.n - 1 or g.max_degree > 2:
        raise PreconditionViolated("G is not a path")
    if g.n == 1:
        return [g.vertices[0]]
    start = min(v for v in g.vertices if g.degree(v) == 1)
    out, prev = [start], None
    while len(out) < g.n:
        cur = out[-1]
        nxt = next(w for w in g.adj[cur] if w != prev)
        prev = cur
        out.append(nxt)
    return out


def _canonical_frame(h: Cover, seq: Sequence[int]):
    """Global relabeling sending the list of seq[1] to 0,1,2 so that
    H(seq[1], seq[2]) reads (0 1 2)."""
    lst = h.lists[seq[1]]
    m = h.match(seq[1], seq[2])
    a = lst[0]
    b = m.get(a)
    c = m.get(b) if b is not None else None
    if b is None or c is None or len({a, b, c}) != 3:
        raise InternalInvariantViolation("middle of the 6-path is not a 3-cycle derangement")
    head = [a, b, c]
    tail = [x for x in range(h.palette) if x not in head]
    pi = [0] * h.palette
    for new, old in enumerate(head + tail):
        pi[old] = new
    return pi


def _path6(g: Graph, h: Cover, o: list[int]) -> dict:
    for mid, u, rest in ((o[2:5], o[1], [o[0], o[5]]), (o[1:4], o[4], [o[5], o[0]])):
        sub = g.induced(mid)
        v = solve(sub, restrict(h, mid), Mode.INJECTIVE, 3)
        if v.satisfiable:
            return _extend_block(g, h, v.witness, u, rest, 2)
    # both middle triples are uncolorable: the middle reads D D' D in a suitable frame
    for seq in (o, o[::-1]):
        pi = _canonical_frame(h, seq)
        hc = relabel_global(h, pi)
        mids = [hc.match(seq[i], seq[i + 1]) for i in (1, 2, 3)]
        if mids != [D, D_PRIME, D]:
            raise InternalInvariantViolation(f"middle of the 6-path is not D D' D: {mids}")
        e1 = hc.match(seq[0], seq[1]) == D_PRIME
        e5 = hc.match(seq[4], seq[5]) == D_PRIME
        if e5 and not e1:
            continue
        break
    if not e1 and not e5:
        first = seq[:3]
        sub = g.induced(first)
        star = g.induced(seq[3:])
        hp = restrict(h, seq[3:])
        for cols in product(*(h.lists[v] for v in first)):
            f = dict(zip(first, cols))
            if len(set(cols)) < 3 or not check_coloring(sub, h, f, Mode.PROPER, 3).ok:
                continue
            gamma = h.match(seq[2], seq[3]).get(f[seq[2]])
            if gamma is None:
                w = solve(star, hp, Mode.INJECTIVE, 3)
                ext = w.witness if w.satisfiable else None
            else:
                ext = star_extend(star, hp, seq[3], gamma)
            if isinstance(ext, dict):
                f.update(ext)
                return f
        raise InternalInvariantViolation("no colored first triple extends over the last star")
    if e1 and e5:
        fc = (0, 0, 2, 2, 1, 1)
    elif hc.match(seq[4], seq[5]).get(1) != 1:
        fc = (0, 0, 2, 2, 1, 1)
    else:
        fc = (1, 2, 2, 0, 0, 1)
    inv = {new: old for old, new in enumerate(pi)}
    return {v: inv[c] for v, c in zip(seq, fc)}


def _path(g: Graph, h: Cover, o: list[int], k: int, cap: int) -> dict:
    t = len(o)
    sub = g.induced(o)
    if t <= k:
        return _injective_base(sub, h, k, cap)
    if k >= 4:
        return _forest(sub, h, k, cap)
    if t % 3:
        if t == 4:
            f = _injective_base(g.induced([o[0], o[1], o[3]]), h, 3, cap)
            return _extend_one(h, f, o[2], 2)
        f = _path(g, h, o[:-1], 3, cap)
        return _extend_one(h, f, o[-1], ceil_div(t, 3))
    if t == 6:
        return _path6(sub, h, o)
    f = _path(g, h, o[2:-1], 3, cap)
    return _extend_block(sub, h, f, o[1], [o[0], o[-1]], t // 3)


def sedp_path(g: Graph, h: Cover, k: int, cap: int | None = None) -> dict:
    """Strongly equitable coloring of a path on t != 3 vertices, k >= 3."""
    o = path_order(g)
    if len(o) == 3:
        raise PreconditionViolated("t = 3 is excluded (P_3 is a star)")
    if k < 3:
        raise PreconditionViolated(f"need k >= 3, got k = {k}")
    _require_k_cover(h, k)
    f = _path(g, h, o, k, BASE_CASE_CAP if cap is None else cap)
    return _verify(g, h, f, Mode.STRONG, k, "path recursion")


# --- bounded degree: promising colorings ---------------------------------------

@dataclass
class PromisingState:
    X0: frozenset
    X1: frozenset
    X2: frozenset
    f: dict                 # colors on X so far
    step: str = ""
    context: tuple | None = None    # (graph, cover, whole coloring, delta) when traced

    @property
    def X(self):
        return self.X0 | self.X1 | self.X2

    def uncolored(self, part: frozenset) -> set:
        return {v for v in part if v not in self.f}

    @property
    def R(self) -> set:
        return set(self.f.values())

    @property
    def R0(self) -> set:
        return {self.f[v] for v in self.X0 if v in self.f}


def promising_violations(g: Graph, h: Cover, full: dict, st: PromisingState, delta: int) -> list[str]:
    """Which of (A), (B), (inv2), (end2) and injectivity on X fail."""
    bad = []
    if len(set(st.f.values())) != len(st.f):
        bad.append("not injective on X")
    R, R0 = st.R, st.R0
    d0, d1, d2 = st.uncolored(st.X0), st.uncolored(st.X1), st.uncolored(st.X2)
    for x in sorted(d0):
        if not blocked(h, full, x) <= R:
            bad.append(f"(A) at {x}")
    for z in sorted(d2):
        b, lst = blocked(h, full, z), set(h.lists[z])
        if any(c in lst and c not in b for c in R0):
            bad.append(f"(B) at {z}")
    if d1:
        e01 = g.edges_between(d0, d1)
        if len(d2) < e01 + (delta - 2) * len(d0) + delta:
            bad.append("(inv2)")
        if len(d2) < delta:
            bad.append("(end2)")
    return bad


def _avail_x(h: Cover, full: dict, onx: dict, v: int) -> set:
    return set(h.lists[v]) - blocked(h, full, v) - set(onx.values())


def _promise(g: Graph, h: Cover, full: dict, X0, X1, X2, delta: int, trace) -> None:
    """Extend ``full`` onto X = X0+X1+X2, injectively on X."""
    st = PromisingState(frozenset(X0), frozenset(X1), frozenset(X2), {})

    def put(v, c):
        full[v] = c
        st.f[v] = c

    def check(step):
        st.step = step
        bad = promising_violations(g, h, full, st, delta)
        if bad:
            raise InternalInvariantViolation(f"promising invariants fail after {step}: {bad}")
        if trace is not None:
            trace.append(PromisingState(st.X0, st.X1, st.X2, dict(st.f), step, (g, h, dict(full), delta)))

    check("start")
    while True:
        d0, d1, d2 = sorted(st.uncolored(st.X0)), sorted(st.uncolored(st.X1)), sorted(st.uncolored(st.X2))
        if not (d0 or d1 or d2):
            return
        if g.edges_between(d0, d1) > 0:
            y = next(y for y in d1 if g.adj[y] & set(d0))
            ay = _avail_x(h, full, st.f, y)
            if not ay:
                raise InternalInvariantViolation(f"case 1: A({y}) is empty")
            beta = min(ay)
            alpha = {}
            for x in d0:
                if g.has_edge(x, y):
                    a = h.match(y, x).get(beta)
                    if a is not None and a != beta and a in _avail_x(h, full, st.f, x):
                        alpha[x] = a
            lam = sorted(set(alpha.values()))
            targets = [z for z in d2 if not g.has_edge(y, z)]
            lam0 = set()
            for a in lam:
                for z in targets:
                    if z not in full and a in _avail_x(h, full, st.f, z):
                        put(z, a)
                        lam0.add(a)
                        break
            missing = sorted(x for x in alpha if alpha[x] not in lam0)
            if not missing:
                if beta not in _avail_x(h, full, st.f, y):
                    raise InternalInvariantViolation(f"case 1: beta lost at {y}")
                put(y, beta)
                check("case 1, every alpha placed")
                continue
            x = missing[0]
            if alpha[x] not in _avail_x(h, full, st.f, x):
                raise InternalInvariantViolation(f"case 1: alpha_x lost at {x}")
            put(x, alpha[x])
            zp = [z for z in d2 if g.has_edge(y, z) and z not in full]
            for z in zp:
                if len(_avail_x(h, full, st.f, z)) < 2 * delta - 1:
                    raise InternalInvariantViolation(f"case 1: |A({z})| < 2Δ - 1")
            for z in zp:
                a = _avail_x(h, full, st.f, z)
                if not a:
                    raise InternalInvariantViolation(f"case 1: no color left for {z}")
                put(z, min(a))
            check("case 1, some alpha unplaced")
            continue
        v = (d1 or d2 or d0)[0]
        a = _avail_x(h, full, st.f, v)
        if not a:
            raise InternalInvariantViolation(f"case 2: A({v}) is empty")
        put(v, min(a))
        check("case 2")


def _pad(g: Graph, h: Cover, k: int) -> tuple[Graph, Cover, list[int]]:
    """Add isolated vertices with list {0..k-1} until |g| = k."""
    top = max(g.vertices, default=-1) + 1
    dummies = list(range(top, top + k - g.n))
    gp = Graph(tuple(g.vertices) + tuple(dummies), g.edges)
    lists = {v: h.lists[v] for v in g.vertices}
    lists.update({v: range(k) for v in dummies})
    hp = Cover(gp, max(h.palette, k), lists, {e: h.matchings[e] for e in g.sorted_edges})
    return gp, hp, dummies


def _delta(g: Graph, h: Cover, k: int, full: dict, trace) -> None:
    n = g.n
    if n == 0:
        return
    delta = g.max_degree
    if n <= k:
        sub = restrict(h, g.vertices)
        if n + degeneracy(g) <= k:
            full.update(color_ge_n_plus_d(g, sub))
            return
        gp, hp, dummies = _pad(g, sub, k)
        x0 = G.independent_set(gp, delta)
        x1 = set().union(*(gp.adj[x] for x in x0)) if x0 else set()
        x2 = set(gp.vertices) - x0 - x1
        local: dict = {}
        _promise(gp, hp, local, x0, x1, x2, delta, trace)
        full.update({v: c for v, c in local.items() if v not in dummies})
        return
    try:
        x0 = G.independent_set(g, delta)
    except Exception as exc:
        raise InternalInvariantViolation(f"no independent set of size {delta}: {exc}") from None
    x1 = set().union(*(g.adj[x] for x in x0)) if x0 else set()
    xs = set(x0) | x1
    pad = [v for v in g.vertices if v not in xs][: k - len(xs)]
    x2 = set(pad)
    _delta(g.remove(*(xs | x2)), h, k, full, trace)
    _promise(g, h, full, x0, x1, x2, delta, trace)


def sedp_delta_squared(g: Graph, h: Cover, k: int, trace: list | None = None) -> dict:
    """Strongly equitable coloring whenever k >= 3Δ².

    ``trace`` (optional list) receives a PromisingState snapshot after every
    extension step; the invariants are checked at each of them regardless.
    """
    delta = g.max_degree
    if k < 3 * delta * delta:
        raise PreconditionViolated(f"need k >= 3Δ² = {3 * delta * delta}, got k = {k}")
    if k < 1:
        raise PreconditionViolated("k must be positive")
    _require_k_cover(h, k)
    full: dict = {}
    _delta(g, h, k, full, trace)
    return _verify(g, h, full, Mode.STRONG, k, "promising-coloring construction")

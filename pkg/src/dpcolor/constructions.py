"""Witness covers showing graphs that are not (strongly) equitably
DP-colorable.  Colors are 0-based; cycle notation is expanded here."""

from __future__ import annotations

from dataclasses import dataclass

from . import graph as G
from .cover import Cover
from .errors import BadParams
from .oracle import Mode
from .perm import from_cycles, identity

# the two derangements of {0, 1, 2}
D = from_cycles([(0, 1, 2)], 3)
D_PRIME = from_cycles([(0, 2, 1)], 3)


@dataclass(frozen=True)
class Witness:
    name: str
    graph: G.Graph
    cover: Cover
    k: int
    mode: Mode          # the mode in which the cover admits no coloring
    locus: str

    @property
    def verdict(self) -> str:
        return {
            Mode.MBOUNDED: "no-equitable",
            Mode.STRONG: "no-strongly-equitable",
            Mode.INJECTIVE: "no-injective",
        }[self.mode]


def cyclic_shift(k: int) -> tuple[int, ...]:
    """(0 1 ... k-1)."""
    return tuple((a + 1) % k for a in range(k))


def paired_involution(k: int) -> tuple[int, ...]:
    """(0 1)(2 3)...; the last color is fixed when k is odd."""
    return from_cycles([(a, a + 1) for a in range(0, k - 1, 2)], k)


def path_witness(n: int) -> Witness:
    if n < 2:
        raise BadParams("paths need n >= 2")
    g = G.path(n)
    h = Cover.plain(g, 2, default=(1, 0))
    return Witness(f"paths-{n}-k2", g, h, 2, Mode.MBOUNDED, "Example Paths")


def c3_witness(k: int) -> Witness:
    if k == 3:
        p = from_cycles([(0, 1)], 3)
    elif k == 4:
        p = from_cycles([(0, 1), (2, 3)], 4)
    else:
        raise BadParams("C_3 witness needs k in {3, 4}")
    g = G.cycle(3)
    return Witness(f"c3-k{k}", g, Cover.plain(g, k, default=p), k, Mode.MBOUNDED, "Example Cycles (a)")


def c4_witness(k: int) -> Witness:
    g = G.cycle(4)
    if k == 3:
        odd, even, mode = D, D_PRIME, Mode.STRONG
    elif k == 4:
        odd = from_cycles([(0, 1, 2)], 4)
        even = from_cycles([(0, 2, 1)], 4)
        mode = Mode.MBOUNDED
    else:
        raise BadParams("C_4 witness needs k in {3, 4}")
    # H(v_i, v_{i+1}) with i 1-based: odd i -> odd, even i -> even
    directed = {(i, (i + 1) % 4): (odd if i % 2 == 0 else even) for i in range(4)}
    return Witness(f"c4-k{k}", g, Cover.plain(g, k, directed), k, mode, "Example Cycles (b)")


def c6_witness() -> Witness:
    g = G.cycle(6)
    ident = identity(3)
    seq = [D, D_PRIME, D, D_PRIME, ident, ident]
    directed = {(i, (i + 1) % 6): seq[i] for i in range(6)}
    return Witness("c6-k3", g, Cover.plain(g, 3, directed), 3, Mode.MBOUNDED, "Example Cycles (c)")


def double_star_witness() -> Witness:
    """Vertices u=0, u1=1, u2=2, v=3, v1=4, v2=5.  The central edge is
    oriented H(v, u) = (0 1 2); with H(u, v) = (0 1 2) the cover is colorable."""
    u, u1, u2, v, v1, v2 = range(6)
    g = G.Graph.from_edges(6, [(u, u1), (u, u2), (u, v), (v, v1), (v, v2)])
    directed = {(u, u1): D, (u2, u): D, (v, v1): D, (v, v2): D, (v, u): D}
    return Witness("doublestar-k3", g, Cover.plain(g, 3, directed), 3, Mode.MBOUNDED, "Example Forests (a)")


def forest_fk_witness(j: int) -> Witness:
    """Star K(u; u_1..u_{j+1}) plus j-1 disjoint edges x_i y_i."""
    if j < 1:
        raise BadParams("F_k needs k >= 1")
    edges = [(0, i) for i in range(1, j + 2)]
    directed = {(0, i): D for i in range(1, j + 2)}
    base = j + 2
    for i in range(j - 1):
        x, y = base + 2 * i, base + 2 * i + 1
        edges.append((x, y))
        directed[(x, y)] = identity(3)
    g = G.Graph.from_edges(base + 2 * (j - 1), edges)
    return Witness(f"fk-{j}-k3", g, Cover.plain(g, 3, directed), 3, Mode.MBOUNDED, "Example Forests (b)")


def gnd_range(n: int, d: int) -> tuple[int, int]:
    top = n + d - 1
    return n, top - top % 2


def gnd_witness(n: int, d: int, k: int) -> Witness:
    """K_d joined to an independent (n-d)-set with the paired-involution cover.

    For d = 1, odd n and k = n (the star K_{1,n-1}) the paired cover is
    colorable, so the cyclic star cover is used instead.
    """
    if not 1 <= d < n:
        raise BadParams(f"need 1 <= d < n, got d={d}, n={n}")
    g = G.join_clique_independent(d, n - d)
    lo, hi = gnd_range(n, d)
    if d == 1 and n % 2 == 1 and k == n:
        h = Cover.plain(g, k, {(0, x): cyclic_shift(k) for x in range(1, n)})
        return Witness(f"gnd-{n}-{d}-{k}", g, h, k, Mode.INJECTIVE, "Example n-vertex d-degenerate (star case)")
    if not lo <= k <= hi:
        raise BadParams(f"need {lo} <= k <= {hi} for G_{{{n},{d}}}, got k={k}")
    h = Cover.plain(g, k, default=paired_involution(k))
    return Witness(f"gnd-{n}-{d}-{k}", g, h, k, Mode.INJECTIVE, "Example n-vertex d-degenerate")


def knn_witness(n: int) -> Witness:
    if n < 1:
        raise BadParams("K_{n,n} needs n >= 1")
    g = G.complete_bipartite(n, n)
    k = 2 * n
    h = Cover.plain(g, k, {(u, n + w): cyclic_shift(k) for u in range(n) for w in range(n)})
    return Witness(f"knn-{n}", g, h, k, Mode.INJECTIVE, "Example balanced complete bipartite")


def delta_sum_witness(s: int, delta: int = 2) -> Witness:
    """F_0 + ... + F_s with every F_i = K_{delta+1}; F_0 carries the
    paired-involution cover and the other cliques are normal."""
    if s < 0 or delta < 1:
        raise BadParams("need s >= 0 and delta >= 1")
    q = delta + 1
    cliques = [G.complete(q) for _ in range(s + 1)]
    g = G.disjoint_union(*cliques)
    f0 = {(a, b): paired_involution(q) for a in range(q) for b in range(a + 1, q)}
    h = Cover.plain(g, q, f0)
    return Witness(f"deltasum-{s}-{delta}", g, h, q, Mode.MBOUNDED, "Example given maximum degree")


def star_witness(n: int, k: int) -> Witness:
    """K({x}, L) on n vertices, centre 0, H(x, l) = (0 1 ... k-1)."""
    if n < 2 or not 1 <= k <= n:
        raise BadParams(f"need n >= 2 and 1 <= k <= n, got n={n}, k={k}")
    g = G.star(n - 1)
    h = Cover.plain(g, k, {(0, l): cyclic_shift(k) for l in range(1, n)})
    return Witness(f"star-{n}-{k}", g, h, k, Mode.STRONG, "Example Stars")


def named_example(name: str, **params) -> Witness:
    """Constructor dispatch by family name."""
    table = {
        "path": lambda: path_witness(params["n"]),
        "c3": lambda: c3_witness(params["k"]),
        "c4": lambda: c4_witness(params["k"]),
        "c6": c6_witness,
        "doublestar": double_star_witness,
        "fk": lambda: forest_fk_witness(params["j"]),
        "gnd": lambda: gnd_witness(params["n"], params["d"], params["k"]),
        "knn": lambda: knn_witness(params["n"]),
        "deltasum": lambda: delta_sum_witness(params["s"], params.get("delta", 2)),
        "star": lambda: star_witness(params["n"], params["k"]),
    }
    if name not in table:
        raise BadParams(f"unknown example family {name!r}")
    try:
        return table[name]()
    except KeyError as exc:
        raise BadParams(f"missing parameter {exc}") from None

"""Registry of the published witness examples and a runner that re-derives
each verdict with the exact oracle."""

from __future__ import annotations

import re
from collections import Counter
import time
from dataclasses import dataclass
from typing import Callable

from . import constructions as C
from .cover import restrict
from .errors import BadParams, UnknownExample
from .oracle import Mode, iter_colorings, solve


@dataclass(frozen=True)
class ReproEntry:
    id: str
    family: str
    params: dict
    mode: Mode
    locus: str
    side: str = ""          # wording of the side condition, empty if none

    def build(self) -> C.Witness:
        return C.named_example(self.family, **self.params)


@dataclass
class ReproReport:
    id: str
    passed: bool
    satisfiable: bool
    side_ok: bool | None
    nodes: int
    seconds: float
    detail: str

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        side = {None: "", True: " side=ok", False: " side=FAILED"}[self.side_ok]
        verdict = "SAT" if self.satisfiable else "UNSAT"
        return f"{tag} {self.id}: {verdict} ({self.detail}) nodes={self.nodes}{side} {self.seconds:.2f}s"


# id patterns; each yields (family, params, locus)
_PATTERNS: list[tuple[str, Callable[..., tuple[str, dict, str]]]] = [
    (r"paths-(\d+)-k2", lambda n: ("path", {"n": int(n)}, "Paths")),
    (r"c3-k(3|4)", lambda k: ("c3", {"k": int(k)}, "Cycles (a)")),
    (r"c4-k(3|4)", lambda k: ("c4", {"k": int(k)}, "Cycles (b)")),
    (r"c6-k3", lambda: ("c6", {}, "Cycles (c)")),
    (r"doublestar-k3", lambda: ("doublestar", {}, "Forests (a)")),
    (r"fk-k3", lambda: ("fk", {"j": 3}, "Forests (b)")),
    (r"fk-(\d+)-k3", lambda j: ("fk", {"j": int(j)}, "Forests (b)")),
    (r"gnd-(\d+)-(\d+)-(\d+)", lambda n, d, k: ("gnd", {"n": int(n), "d": int(d), "k": int(k)}, "n-vertex d-degenerate")),
    (r"knn-(\d+)", lambda n: ("knn", {"n": int(n)}, "Balanced complete bipartite")),
    (r"deltasum-(\d+)", lambda s: ("deltasum", {"s": int(s)}, "Given maximum degree")),
    (r"deltasum-(\d+)-(\d+)", lambda s, d: ("deltasum", {"s": int(s), "delta": int(d)}, "Given maximum degree")),
    (r"star-(\d+)-(\d+)", lambda n, k: ("star", {"n": int(n), "k": int(k)}, "Stars")),
    (r"g3-k4-(\d+)", lambda k: ("gnd", {"n": 4, "d": 3, "k": int(k)}, "g(3) >= 7 remark: K_4")),
    (r"g3-k33-6", lambda: ("knn", {"n": 3}, "g(3) >= 7 remark: K_{3,3}")),
]

_SIDE = {
    "path": "every H-coloring is constant",
    "c3": "every H-coloring uses at most two colors",
    "c4": "every H-coloring uses some color twice",
    "c6": "no H-coloring uses each color exactly twice",
    "fk": "every H-coloring leaves f(u)+1 off the star leaves",
    "gnd": "H(u,v) fixes a color only when k is odd, and then only k-1",
    "star": "every H-coloring leaves f(x)+1 off the leaves",
    "deltasum": "the block F_0 alone has no injective H-coloring",
}


def lookup(id_: str) -> ReproEntry:
    for pat, make in _PATTERNS:
        m = re.fullmatch(pat, id_)
        if m:
            family, params, locus = make(*m.groups())
            try:
                w = C.named_example(family, **params)
            except BadParams as exc:
                raise UnknownExample(f"{id_}: {exc}") from None
            side = _SIDE.get(family, "")
            if family == "gnd" and w.graph.n == w.k and params["d"] == 1 and w.k % 2 == 1:
                side = _SIDE["star"]
            if family == "c4" and params["k"] == 4:
                side = ""
            # the K_4 and K_{3,3} remark instances are stated for m-bounded colorings
            mode = Mode.MBOUNDED if id_.startswith("g3-") else w.mode
            return ReproEntry(id_, family, params, mode, locus, side)
    raise UnknownExample(f"no registered example {id_!r}")


# every instance the published examples and the g(3) remark commit to
REGISTRY_IDS: tuple[str, ...] = (
    *(f"paths-{n}-k2" for n in range(2, 9)),
    "c3-k3", "c3-k4", "c4-k3", "c4-k4", "c6-k3",
    "doublestar-k3", "fk-1-k3", "fk-2-k3", "fk-3-k3",
    "gnd-4-3-4", "gnd-4-3-5", "gnd-4-3-6", "gnd-7-3-8", "gnd-5-1-5",
    "knn-2", "knn-3",
    "deltasum-1", "deltasum-2-2",
    "star-3-3", "star-5-4", "star-5-5",
    "g3-k4-4", "g3-k4-6", "g3-k33-6",
)


def registry() -> list[ReproEntry]:
    return [lookup(i) for i in REGISTRY_IDS]


def _check_side(e: ReproEntry, w: C.Witness) -> bool | None:
    g, h, k = w.graph, w.cover, w.k
    fam = e.family
    if not e.side:
        return None
    if e.side == _SIDE["star"]:
        centre = 0
        leaves = [v for v in g.vertices if v != centre]
        return all((f[centre] + 1) % k not in {f[l] for l in leaves} for f in iter_colorings(g, h))
    if fam == "path":
        return all(len(set(f.values())) == 1 for f in iter_colorings(g, h))
    if fam == "c3":
        return all(len(set(f.values())) <= 2 for f in iter_colorings(g, h))
    if fam == "c4":
        return all(len(set(f.values())) < g.n for f in iter_colorings(g, h))
    if fam == "c6":
        return not any(sorted(_sizes(f)) == [2, 2, 2] for f in iter_colorings(g, h))
    if fam == "fk":
        leaves = sorted(g.adj[0])
        return all((f[0] + 1) % 3 not in {f[l] for l in leaves} for f in iter_colorings(g, h))
    if fam == "gnd":
        want = {k - 1} if k % 2 else set()
        return all({a for a, b in m.items() if a == b} == want for m in h.matchings.values())
    if fam == "deltasum":
        q = e.params.get("delta", 2) + 1
        f0 = range(q)
        return not solve(g.induced(f0), restrict(h, f0), Mode.INJECTIVE, k).satisfiable
    return None


def _sizes(f: dict) -> list[int]:
    return list(Counter(f.values()).values())


def run(id_: str) -> ReproReport:
    e = lookup(id_)
    t0 = time.perf_counter()
    w = e.build()
    v = solve(w.graph, w.cover, e.mode, w.k)
    side = _check_side(e, w)
    dt = time.perf_counter() - t0
    passed = not v.satisfiable and side is not False
    detail = f"mode={e.mode} k={w.k} n={w.graph.n}; {e.locus}"
    return ReproReport(id_, passed, v.satisfiable, side, v.nodes, dt, detail)

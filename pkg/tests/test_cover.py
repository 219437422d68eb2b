import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from dpcolor import constructions as C
from dpcolor import graph as G
from dpcolor.cover import (Cover, CoverFlags, availability, classify, is_derangement, relabel_global, relabel_local,
                           remove_node, restrict, validate)
from dpcolor.errors import BadParams, ColorNotInList
from dpcolor.gen import random_cover
from dpcolor.matching import max_flow, sdr
from dpcolor.perm import (all_partial_injections, all_perms, compose, conjugacy_representatives, cycle_type,
                          from_cycles, inverse, parse_cycles, to_cycles)


# --- permutations and matchings ---------------------------------------------------

def test_cycle_notation():
    assert from_cycles([(0, 1, 2)], 3) == (1, 2, 0)
    assert parse_cycles("(1 2)(3 4)(5 6)(7 8)", 8) == (1, 0, 3, 2, 5, 4, 7, 6)
    assert parse_cycles("(1 2)(3)", 3) == (1, 0, 2)
    assert to_cycles((1, 2, 0, 3)) == [(0, 1, 2), (3,)]
    assert cycle_type((1, 0, 3, 2)) == (2, 2)
    p = (2, 0, 3, 1)
    assert compose(p, inverse(p)) == (0, 1, 2, 3)


def test_partial_injection_counts():
    for k in range(1, 5):
        expected = sum(1 for _ in _brute_partials(k))
        assert len(all_partial_injections(k)) == expected


def _brute_partials(k):
    import itertools
    for img in itertools.product(range(-1, k), repeat=k):
        used = [b for b in img if b >= 0]
        if len(used) == len(set(used)):
            yield img


def test_conjugacy_classes_of_s_k():
    for k, classes in [(1, 1), (2, 2), (3, 3), (4, 5)]:
        reps = conjugacy_representatives([dict(enumerate(p)) for p in all_perms(k)], k)
        assert len(reps) == classes
        assert len({cycle_type(tuple(r[a] for a in range(k))) for r in reps}) == classes


def test_sdr_against_networkx():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 6)
        sets = [(i, rng.sample(range(7), rng.randint(0, 4))) for i in range(n)]
        got = sdr(sets)
        b = nx.Graph()
        left = [("s", i) for i, _ in sets]
        b.add_nodes_from(left)
        b.add_edges_from((("s", i), ("c", c)) for i, s in sets for c in s)
        size = len(nx.bipartite.maximum_matching(b, top_nodes=left)) // 2
        assert (got is not None) == (size == n)
        if got is not None:
            assert len(set(got.values())) == n and all(got[i] in s for i, s in sets)


def test_max_flow_against_networkx():
    rng = random.Random(8)
    for _ in range(100):
        cap = {}
        d = nx.DiGraph()
        for _ in range(rng.randint(1, 15)):
            u, v = rng.randrange(6), rng.randrange(6)
            if u != v:
                c = rng.randint(1, 4)
                cap.setdefault(u, {})[v] = c
                d.add_edge(u, v, capacity=c)
        d.add_nodes_from([0, 5])
        assert max_flow(cap, 0, 5) == nx.maximum_flow_value(d, 0, 5)


# --- covers ---------------------------------------------------------------------------

def test_validate():
    g = G.cycle(3)
    assert validate(Cover.plain(g, 3)) == []
    bad = Cover(g, 3, {v: range(3) for v in g.vertices}, {(0, 1): {0: 1, 1: 1}})
    assert any("not injective" in s for s in validate(bad))
    bad = Cover(g, 3, {v: range(2) for v in g.vertices}, {(0, 1): {2: 1}})
    assert any("not in L(0)" in s for s in validate(bad))


def test_accessor_symmetry():
    rng = random.Random(3)
    for _ in range(30):
        g = G.cycle(rng.randint(3, 6))
        h = random_cover(g, 4, rng, palette=6, partial=0.3)
        for u, v in g.sorted_edges:
            for a, b in h.match(u, v).items():
                assert h.match(v, u)[b] == a


def test_restrict():
    w = C.c4_witness(3)
    h = w.cover
    assert restrict(h, h.graph.vertices) == h
    r = restrict(h, [0, 1])
    assert r.graph.sorted_edges == ((0, 1),)
    assert r.match(0, 1) == {0: 1, 1: 2, 2: 0}      # (0 1 2)
    e = restrict(h, [])
    assert e.graph.n == 0 and e.palette == h.palette
    a, b = {0, 1, 2}, {1, 2, 3}
    assert restrict(restrict(h, a), b) == restrict(h, a & b)


def test_remove_node():
    g = G.star(2)
    h = Cover.plain(g, 3, default=(1, 2, 0))
    r = remove_node(h, 0, 2)
    assert r.lists[0] == (0, 1)
    assert r.match(0, 1) == {0: 1, 1: 2} and r.match(0, 2) == {0: 1, 1: 2}
    assert validate(r) == []
    # a color unused by any matching
    p = Cover(G.path(2), 3, {0: range(3), 1: range(3)}, {(0, 1): {0: 1}})
    q = remove_node(p, 0, 2)
    assert q.lists[0] == (0, 1) and q.matchings == p.matchings
    with pytest.raises(ColorNotInList):
        remove_node(r, 0, 2)


def test_classify():
    g = G.cycle(3)
    assert classify(Cover.plain(g, 3)) == CoverFlags(plain=True, normal=True, constant=True, all_derangements=False)
    f3 = C.gnd_witness(7, 3, 8).cover
    fl = classify(f3)
    assert fl.plain and fl.constant and fl.all_derangements and not fl.normal
    c4 = classify(C.c4_witness(3).cover)
    assert c4.plain and c4.all_derangements and not c4.constant
    assert is_derangement(C.c4_witness(3).cover, 1, 0)


def test_relabel_global():
    h = C.path_witness(4).cover
    assert relabel_global(h, (0, 1)) == h
    assert relabel_global(h, (1, 0)) == h
    rng = random.Random(4)
    g = G.cycle(4)
    for _ in range(20):
        h = random_cover(g, 4, rng, palette=5, partial=0.2)
        pi = tuple(rng.sample(range(5), 5))
        rho = tuple(rng.sample(range(5), 5))
        assert relabel_global(relabel_global(h, pi), inverse(pi)) == h
        assert relabel_global(h, compose(pi, rho)) == relabel_global(relabel_global(h, rho), pi)


def test_availability():
    h = Cover.plain(G.path(3), 3)
    a, b, r = availability(h, {}, 1)
    assert (a, b, r) == ({0, 1, 2}, set(), set())
    p = Cover.plain(G.path(2), 3, default=(1, 0, 2))
    assert availability(p, {0: 0}, 1) == ({2}, {1}, {0})
    c3 = C.c3_witness(3).cover
    assert availability(c3, {0: 2}, 1) == ({0, 1}, {2}, {2})


def test_relabel_local_keeps_proper_satisfiability():
    from dpcolor.oracle import Mode, solve

    rng = random.Random(5)
    for _ in range(40):
        g = G.cycle(rng.randint(3, 5))
        h = random_cover(g, 3, rng, partial=0.2)
        pi = tuple(rng.sample(range(3), 3))
        v = rng.choice(g.vertices)
        assert solve(g, h, Mode.PROPER, 3).satisfiable == solve(g, relabel_local(h, v, pi), Mode.PROPER, 3).satisfiable


def test_relabel_local_breaks_equitability():
    from dpcolor.oracle import Mode, solve

    w = C.path_witness(2)          # P_2 with H = (0 1): only constant colorings
    assert not solve(w.graph, w.cover, Mode.MBOUNDED, 2).satisfiable
    moved = relabel_local(w.cover, 1, (1, 0))      # now the identity matching
    assert classify(moved).normal
    assert solve(w.graph, moved, Mode.MBOUNDED, 2).satisfiable


# --- witness constructors -----------------------------------------------------------

def test_constructors_validate_and_flags():
    wits = [C.path_witness(n) for n in range(2, 9)]
    wits += [C.c3_witness(3), C.c3_witness(4), C.c4_witness(3), C.c4_witness(4), C.c6_witness(),
             C.double_star_witness(), *[C.forest_fk_witness(j) for j in (1, 2, 3)],
             C.gnd_witness(4, 3, 4), C.gnd_witness(4, 3, 6), C.gnd_witness(7, 3, 8), C.gnd_witness(5, 1, 5),
             C.knn_witness(2), C.knn_witness(3), C.delta_sum_witness(2), C.star_witness(5, 4)]
    for w in wits:
        assert validate(w.cover) == [], w.name
        assert classify(w.cover).plain
        assert w.cover.k == w.k


def test_constructor_tables():
    # hand-expanded matchings, 0-based
    assert C.path_witness(4).cover.matchings == {(0, 1): {0: 1, 1: 0}, (1, 2): {0: 1, 1: 0}, (2, 3): {0: 1, 1: 0}}
    assert C.c3_witness(3).cover.match(0, 1) == {0: 1, 1: 0, 2: 2}
    c4 = C.c4_witness(3).cover
    assert c4.match(0, 1) == {0: 1, 1: 2, 2: 0}     # H(v1, v2) = (1 2 3)
    assert c4.match(1, 2) == {0: 2, 1: 0, 2: 1}     # H(v2, v3) = (1 3 2)
    assert c4.match(3, 0) == {0: 2, 1: 0, 2: 1}     # H(v4, v1) = (1 3 2)
    g73 = C.gnd_witness(7, 3, 8).cover
    assert all(m == {0: 1, 1: 0, 2: 3, 3: 2, 4: 5, 5: 4, 6: 7, 7: 6} for m in g73.matchings.values())
    g45 = C.gnd_witness(4, 3, 5).cover
    assert g45.match(0, 1) == {0: 1, 1: 0, 2: 3, 3: 2, 4: 4}
    knn = C.knn_witness(2).cover
    assert knn.match(0, 2) == {0: 1, 1: 2, 2: 3, 3: 0}
    assert C.star_witness(5, 4).cover.match(0, 3) == {0: 1, 1: 2, 2: 3, 3: 0}
    ds = C.delta_sum_witness(1)
    assert ds.cover.match(0, 1) == {0: 1, 1: 0, 2: 2}
    assert ds.cover.match(3, 4) == {0: 0, 1: 1, 2: 2}
    fk = C.forest_fk_witness(3)
    assert fk.graph.n == 9 and fk.graph.m == 6


def test_named_example_dispatch_and_ranges():
    w = C.named_example("path", n=4)
    assert w.graph == G.path(4) and w.verdict == "no-equitable"
    assert C.named_example("c4", k=3).verdict == "no-strongly-equitable"
    assert C.named_example("gnd", n=7, d=3, k=8).verdict == "no-injective"
    with pytest.raises(BadParams):
        C.named_example("gnd", n=7, d=3, k=10)          # range is 7..8
    with pytest.raises(BadParams):
        C.named_example("gnd", n=7, d=3, k=6)
    with pytest.raises(BadParams):
        C.named_example("nope")
    with pytest.raises(BadParams):
        C.named_example("path")
    assert C.gnd_range(7, 3) == (7, 8) and C.gnd_range(4, 3) == (4, 6)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000))
def test_random_covers_are_valid(seed):
    rng = random.Random(seed)
    g = G.cycle(rng.randint(3, 7))
    h = random_cover(g, 3, rng, palette=rng.randint(3, 6), partial=rng.random() / 2)
    assert validate(h) == []

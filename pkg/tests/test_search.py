import random
from itertools import permutations

import pytest

from dpcolor import constructions as C
from dpcolor import graph as G
from dpcolor.cover import Cover, relabel_global
from dpcolor.errors import BadParams, BudgetExceeded, NotAWitness
from dpcolor.gen import random_cover, random_graph
from dpcolor.oracle import Mode, class_profile, count_colorings, iter_colorings, solve
from dpcolor.search import (CoverFamily, automorphisms, decide_family, enumerate_covers, estimate_count,
                            minimize_witness, partition_count, shard_ranges, stream_size, unsat_plain_full)

NONE = CoverFamily("plainFull", symmetry="none")
GLOBAL = CoverFamily("plainFull", symmetry="globalColorPerm")
AUTO = CoverFamily("plainFull", symmetry="globalColorPerm+graphAuto")


def test_stream_sizes():
    c3 = G.cycle(3)
    assert sum(1 for _ in enumerate_covers(c3, 3, NONE)) == 216
    assert sum(1 for _ in enumerate_covers(c3, 3, GLOBAL)) == 108
    assert sum(1 for _ in enumerate_covers(G.path(2), 2, NONE)) == 2
    assert stream_size(c3, 3, GLOBAL) == 108 == estimate_count(c3, 3, GLOBAL)


def test_first_edge_uses_cycle_type_representatives():
    firsts = {tuple(sorted(h.matchings[(0, 1)].items())) for h in enumerate_covers(G.cycle(3), 3, GLOBAL)}
    assert firsts == {((0, 0), (1, 1), (2, 2)), ((0, 0), (1, 2), (2, 1)), ((0, 1), (1, 2), (2, 0))}


def _orbit(h, k):
    return {relabel_global(h, p) for p in permutations(range(k))}


def test_orbit_completeness_c3():
    c3 = G.cycle(3)
    full = set(enumerate_covers(c3, 3, NONE))
    closure = set()
    for h in enumerate_covers(c3, 3, GLOBAL):
        closure |= _orbit(h, 3)
    assert closure == full and len(full) == 216


def test_orbit_count_c3():
    # the representative stream is complete but not one-per-orbit
    full = list(enumerate_covers(G.cycle(3), 3, NONE))
    orbits = {min(x.key() for x in _orbit(h, 3)) for h in full}
    assert len(orbits) == 49


def test_graph_auto_stream():
    c3 = G.cycle(3)
    assert len(automorphisms(c3)) == 6
    auto = list(enumerate_covers(c3, 3, AUTO))
    assert len(auto) == 18
    assert decide_family(c3, 3, Mode.MBOUNDED, AUTO).outcome == "witness"


def test_partition_count():
    assert [partition_count(k) for k in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


def test_budget():
    with pytest.raises(BudgetExceeded) as exc:
        decide_family(G.complete(4), 20, Mode.MBOUNDED, GLOBAL, budget=10**6)
    assert exc.value.estimate > 10**6
    with pytest.raises(BadParams):
        CoverFamily("nope")


def test_decide_c3_witness():
    r = decide_family(G.cycle(3), 3, Mode.MBOUNDED, GLOBAL)
    assert r.outcome == "witness" and r.covers <= 108
    assert not solve(G.cycle(3), r.witness, Mode.MBOUNDED, 3, prune=False).satisfiable
    assert "family" not in r.scope or r.outcome == "witness"


def test_decide_c4_strong_witness():
    c4 = G.cycle(4)
    r = decide_family(c4, 3, Mode.STRONG, GLOBAL)
    assert r.outcome == "witness"
    assert not solve(c4, r.witness, Mode.STRONG, 3).satisfiable


def test_decide_all_colorable_scope():
    r = decide_family(G.path(4), 3, Mode.STRONG, GLOBAL)
    assert r.outcome == "allColorable" and r.covers == stream_size(G.path(4), 3, GLOBAL)
    assert "not examined" in r.scope


def test_shards_give_identical_reports():
    for g, k, mode in [(G.cycle(3), 3, Mode.MBOUNDED), (G.cycle(4), 3, Mode.STRONG), (G.path(4), 3, Mode.STRONG)]:
        base = decide_family(g, k, mode, GLOBAL)
        for shards in (2, 3, 5):
            assert decide_family(g, k, mode, GLOBAL, shards=shards) == base
    assert shard_ranges(10, 4) == [(0, 3), (3, 6), (6, 9), (9, 10)]


def test_other_families():
    p3 = G.path(3)
    partial = CoverFamily("plainPartial", symmetry="none")
    assert sum(1 for _ in enumerate_covers(p3, 2, partial)) == 7 ** 2
    gl = CoverFamily("generalLists", palette=3, symmetry="none")
    covers = list(enumerate_covers(G.path(2), 2, gl))
    assert len(covers) == 3 * 3 * 7
    assert decide_family(G.path(2), 2, Mode.MBOUNDED, gl).outcome == "witness"


def test_minimize_witness():
    w = C.c4_witness(3)
    small = minimize_witness(w.graph, 3, Mode.STRONG, w.cover)
    assert not solve(w.graph, small, Mode.STRONG, 3).satisfiable
    assert minimize_witness(w.graph, 3, Mode.STRONG, small) == small
    with pytest.raises(NotAWitness):
        minimize_witness(w.graph, 3, Mode.STRONG, Cover.plain(w.graph, 3))


def test_unsat_plain_full_matches_oracle():
    for g, k, mode in [(G.path(3), 3, Mode.INJECTIVE), (G.cycle(3), 3, Mode.MBOUNDED),
                       (G.cycle(4), 3, Mode.STRONG), (G.star(3), 4, Mode.INJECTIVE)]:
        fast = list(unsat_plain_full(g, k, mode))
        slow = [h for h in enumerate_covers(g, k, GLOBAL) if not solve(g, h, mode, k).satisfiable]
        assert fast == slow


def test_global_relabel_symmetry_soundness():
    rng = random.Random(21)
    for _ in range(30):
        g = random_graph(rng.randint(2, 5), 0.6, rng)
        h = random_cover(g, 3, rng, palette=3, partial=0.2)
        pi = tuple(rng.sample(range(3), 3))
        moved = relabel_global(h, pi)
        for mode in (Mode.MBOUNDED, Mode.STRONG):
            assert solve(g, h, mode, 3).satisfiable == solve(g, moved, mode, 3).satisfiable
            a = sorted(tuple(sorted(class_profile(f, 3).class_sizes.values())) for f in iter_colorings(g, h, mode, 3))
            b = sorted(tuple(sorted(class_profile(f, 3).class_sizes.values()))
                       for f in iter_colorings(g, moved, mode, 3))
            assert a == b and len(a) == count_colorings(g, h, mode, 3)

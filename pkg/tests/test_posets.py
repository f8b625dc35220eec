import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from oracles import is_convex_naive
from pathminimal.graphs import (LabelledGraph, complete_graph, grid_graph,
                                iter_induced_paths, path_graph)
from pathminimal.posets import (LemmaViolation, Poset, PosetError, all_posets, antichain,
                                antichain_width, block_bipartition_of_F, chain,
                                check_inc_path_monotone, comparability_graph, convex_subpath,
                                extract_isometric_path_sum, extract_path_sum, extract_uniform_block,
                                f_k, fence, incomparability_graph, ordinal_sum, oriented_partition,
                                parallel_sum,
                                path_family, path_poset, random_poset, same_colour_far_pair,
                                tau_partition, verify_isometric_sum, verify_path_sum)


def test_poset_validation():
    with pytest.raises(PosetError):
        Poset.from_pairs(2, [(0, 1), (1, 0)])
    with pytest.raises(PosetError):
        Poset.from_pairs(3, [(0, 1), (1, 2)], close=False)
    p = Poset.from_pairs(3, [(0, 1), (1, 2)])
    assert p.lt(0, 2) and p.leq(1, 1) and not p.lt(2, 0)
    assert Poset.from_dict(p.to_dict()) == p
    assert p.to_dict() == {"n": 3, "strict_pairs": [[0, 1], [0, 2], [1, 2]]}
    assert p.dual().lt(2, 0)


def test_comparability_and_incomparability():
    assert incomparability_graph(chain(4)).edge_count() == 0
    assert comparability_graph(chain(4)) == complete_graph(4)
    assert incomparability_graph(antichain(4)) == complete_graph(4)
    f = fence(4)
    assert f.lt(0, 1) and f.lt(2, 1) and f.lt(2, 3)
    assert incomparability_graph(f).has_edge(0, 2)
    rng = random.Random(1)
    for _ in range(20):
        p = random_poset(9, rng)
        inc, comp = incomparability_graph(p), comparability_graph(p)
        for a, b in combinations(range(p.n), 2):
            assert inc.has_edge(a, b) != comp.has_edge(a, b)
            assert inc.has_edge(a, b) == (not p.comparable(a, b))


def test_path_poset_and_sums():
    assert incomparability_graph(path_poset(7)) == path_graph(7)
    a, b = path_poset(3), path_poset(4)
    assert incomparability_graph(ordinal_sum(a, b)).edge_count() == 5
    assert incomparability_graph(parallel_sum(a, b)).edge_count() == 5 + 12


def test_catalog_counts():
    assert [len(all_posets(n)) for n in range(0, 8)] == [1, 1, 2, 5, 16, 63, 318, 2045]


def test_intervals_and_convexity():
    p = path_poset(8)
    iv = p.interval(0, 7)
    assert [v for v in range(8) if iv >> v & 1] == [0, 2, 3, 4, 5, 7]
    assert p.is_convex(iv) and p.is_convex([1]) and not p.is_convex([0, 7])
    rng = random.Random(5)
    for _ in range(30):
        q = random_poset(7, rng)
        for s in range(1 << 7):
            members = [v for v in range(7) if s >> v & 1]
            assert q.is_convex(s) == is_convex_naive(q.leq, 7, members)


def test_tau_examples():
    p3 = path_graph(3)
    assert tau_partition(p3, [1]).blocks == (frozenset({0, 2}),)
    assert tau_partition(p3, [0]).blocks == (frozenset({1}), frozenset({2}))
    rng = random.Random(9)
    for _ in range(20):
        n = 10
        g = LabelledGraph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < 0.4])
        f = rng.sample(range(n), 3)
        part = tau_partition(g, f)
        assert len(part.blocks) <= 8
        assert sorted(v for b in part.blocks for v in b) == sorted(set(range(n)) - set(f))


def test_block_bipartition():
    star = LabelledGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert block_bipartition_of_F(star, [0], [1, 2, 3]) == (frozenset({0}), frozenset())
    g = path_graph(5)
    part = tau_partition(g, [0, 1])
    for blk in part.blocks:
        a, a2 = block_bipartition_of_F(g, [0, 1], blk)
        assert a | a2 == {0, 1}
        for x in a:
            assert all(g.has_edge(x, y) for y in blk)
        for x in a2:
            assert not any(g.has_edge(x, y) for y in blk)
    assert block_bipartition_of_F(g, [0], [3, 4]) == (frozenset(), frozenset({0}))
    with pytest.raises(LemmaViolation):
        block_bipartition_of_F(g, [2], [1, 4])


def test_monotone_path_examples():
    p = path_poset(6)
    assert check_inc_path_monotone(p, list(range(6)))
    assert check_inc_path_monotone(p, list(range(5, -1, -1)))
    assert check_inc_path_monotone(p, [0, 1]) is True
    assert check_inc_path_monotone(parallel_sum(path_poset(2), path_poset(2)), [0, 2, 1]) is None


def test_monotone_negative_control():
    # corrupted relation: x0 < x5 kept but x0 < x2 dropped, so the conclusion must fail
    p = path_poset(6)
    down = list(p.down)
    down[2] &= ~1
    bad = Poset.unchecked(6, down)
    assert bad.lt(0, 5) and not bad.lt(0, 2)
    assert check_inc_path_monotone(bad, list(range(6))) is False
    q = Poset.from_pairs(4, [(0, 3), (1, 3)])
    assert check_inc_path_monotone(q, [0, 1, 2, 3]) is False


def test_convex_subpath():
    p = path_poset(8)
    assert convex_subpath(p, p.interval(0, 7), list(range(8))) == (2, 3, 4, 5)
    assert convex_subpath(p, (1 << 8) - 1, list(range(8))) == (2, 3, 4, 5)
    assert convex_subpath(path_poset(4), path_poset(4).interval(0, 3), [0, 1, 2, 3]) == ()
    with pytest.raises(ValueError):
        convex_subpath(p, [0, 7], list(range(8)))
    with pytest.raises(ValueError):
        convex_subpath(p, p.interval(0, 5), list(range(8)))


def test_convex_subpath_is_one_short_of_n():
    # a path of length n+3 with ends in a convex set keeps only n-1 edges of the path inside it
    p = path_poset(8)
    c = p.interval(0, 7)
    inside = [v for v in range(8) if c >> v & 1]
    longest = max(len(s) - 1 for s in iter_induced_paths(incomparability_graph(p), 1, None, c)
                  if all(v in inside for v in s)) if inside else 0
    assert longest == 3


def test_f_k_and_pigeonhole():
    assert f_k(2, 3) == 14 and f_k(1, 5) == 9
    with pytest.raises(ValueError):
        f_k(0, 1)
    for colours in product(range(2), repeat=15):
        i, j = same_colour_far_pair(colours)
        assert colours[i] == colours[j] and j - i >= 14 // 2
    for colours in product(range(3), repeat=10):
        k = len(set(colours))
        i, j = same_colour_far_pair(colours)
        assert colours[i] == colours[j] and j - i >= 9 // k


def test_uniform_block_examples():
    direct = path_family([14, 14], "direct")
    blk = extract_uniform_block(direct, 2)
    assert blk is not None and blk.mode in ("direct", "terminal") and len(blk.path) == 3
    complete = path_family([14, 14], "complete")
    blk = extract_uniform_block(complete, 2)
    assert blk.mode == "complete"
    g = incomparability_graph(complete)
    assert all(g.has_edge(x, y) for x in blk.path for y in blk.rest)
    assert complete.is_convex(blk.rest)
    assert extract_uniform_block(path_poset(5), 2) is None


def test_extract_path_sum_modes():
    p = path_family([11, 13, 15, 21], "direct")
    assert p.n == 60
    res = extract_path_sum(p, [1, 2, 3, 4])
    assert res.mode == "direct" and [len(x) - 1 for x in res.paths] == [1, 2, 3, 4]
    assert verify_path_sum(incomparability_graph(p), res.paths, "direct")
    q = path_family([11, 13, 15], "complete")
    res = extract_path_sum(q, [1, 2, 3])
    assert res.mode == "complete"
    assert verify_path_sum(incomparability_graph(q), res.paths, "complete")
    assert extract_path_sum(chain(12), [1]) is None
    with pytest.raises(ValueError):
        extract_path_sum(q, [0])


def test_verify_path_sum_rejects():
    g = path_graph(6)
    assert not verify_path_sum(g, [(0, 1), (1, 2)], "direct")
    assert not verify_path_sum(g, [(0, 1), (2, 3)], "direct")
    assert verify_path_sum(g, [(0, 1), (3, 4)], "direct")
    assert not verify_path_sum(g, [(0, 1), (3, 4)], "complete")


def test_isometric_extraction():
    for g, targets in ((path_graph(100), [1, 2, 3, 4]), (grid_graph(20, 20), [2, 4, 6]),
                       (grid_graph(20, 20), [1, 2, 3, 4])):
        paths = extract_isometric_path_sum(g, targets)
        assert [len(x) - 1 for x in paths] == targets
        assert verify_isometric_sum(g, paths)
    assert extract_isometric_path_sum(complete_graph(5), [2]) is None


def test_antichain_width():
    chain_rel = [[i <= j for j in range(4)] for i in range(4)]
    assert antichain_width(chain_rel) == 1
    anti = [[i == j for j in range(4)] for i in range(4)]
    assert antichain_width(anti) == 4
    rng = random.Random(2)
    for _ in range(15):
        p = random_poset(7, rng)
        rel = [[p.leq(i, j) for j in range(7)] for i in range(7)]
        brute = max(len(s) for r in range(1, 8) for s in combinations(range(7), r)
                    if all(not p.comparable(a, b) for a, b in combinations(s, 2)))
        assert antichain_width(rel) == brute


posets = st.integers(1, 9).flatmap(lambda n: st.integers(0, 10 ** 6).map(
    lambda seed: random_poset(n, random.Random(seed))))


def test_plain_classes_need_not_be_convex():
    p = chain(3)
    part = tau_partition(incomparability_graph(p), [1])
    assert part.blocks == (frozenset({0, 2}),) and not p.is_convex(part.blocks[0])
    assert [p.is_convex(b) for b in oriented_partition(p, [1]).blocks] == [True, True]


@settings(max_examples=80, deadline=None)
@given(posets, st.data())
def test_oriented_blocks_convex_and_refine(p, data):
    g = incomparability_graph(p)
    f = data.draw(st.sets(st.integers(0, p.n - 1), max_size=min(4, p.n)))
    plain = tau_partition(g, f)
    oriented = oriented_partition(p, f)
    assert len(plain.blocks) <= 2 ** len(f) and len(oriented.blocks) <= 3 ** len(f)
    for b in oriented.blocks:
        assert p.is_convex(b)
        assert any(b <= c for c in plain.blocks)
    assert sorted(v for b in oriented.blocks for v in b) == sorted(set(range(p.n)) - f)

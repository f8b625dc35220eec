from itertools import product

import pytest

from pathminimal.constructions import (StarTable, WindowSpecError, all_binary_stars, build_G_window,
                                       build_Gk_window, build_Q_window, build_Qk_window,
                                       claim4_witness, is_longenough_star, iter_window_paths,
                                       parse_star, read_window_spec, rows_interchangeable,
                                       sharpness_path, star_bar, star_boolean_sum, star_congruence,
                                       star_constant, star_dual, star_projection, sub_window_embedding)
from pathminimal.graphs import (age_upto, complete_sum, direct_sum, find_embedding, is_induced_path,
                                is_valid_embedding, iter_induced_paths)
from pathminimal.words import parse_word_spec, periodic_word

FIB = parse_word_spec("sturmian:cf=1,1,1,...", 80)
S2 = parse_word_spec("sturmian:cf=2,1,1,...", 80)
ALT = periodic_word(2, 80)


def rule_holds(w):
    """Pair-exhaustive check of the window adjacency rule."""
    g, names = w.graph, w.graph.names
    u, t = w.base_word, w.star.table
    for a in range(g.n):
        (r, c) = names[a]
        assert g.labels[a] == u[c]
        for b in range(a + 1, g.n):
            (r2, c2) = names[b]
            if r == r2:
                want = abs(c - c2) == 1
            else:
                lo, hi = ((r, c), (r2, c2)) if r < r2 else ((r2, c2), (r, c))
                want = t[u[lo[1]]][u[hi[1]]] == 1
            assert g.has_edge(a, b) == want, (names[a], names[b])


def test_named_stars():
    assert star_boolean_sum().to_list() == [[0, 1], [1, 0]]
    assert star_projection("second").to_list() == [[0, 1], [0, 1]]
    assert star_projection("first").to_list() == [[0, 0], [1, 1]]
    c3 = star_congruence(3).to_list()
    assert all(c3[i][j] == (i != j) for i in range(3) for j in range(3))
    with pytest.raises(ValueError):
        star_congruence(1)
    with pytest.raises(ValueError):
        StarTable(((0, 2), (1, 0)))


def test_star_transforms():
    xor = star_boolean_sum()
    assert star_dual(xor) == xor and star_bar(xor) == xor
    assert star_dual(star_projection(1)) == star_projection(2)
    for s in all_binary_stars():
        assert star_dual(star_dual(s)) == s and star_bar(star_bar(s)) == s
    assert len({s.to_list().__repr__() for s in all_binary_stars()}) == 16


def test_longenough_coverage():
    covered = [s for s in all_binary_stars() if is_longenough_star(s)]
    assert {repr(s.to_list()) for s in covered} == {
        repr(t) for t in ([[0, 1], [1, 0]], [[0, 1], [0, 1]], [[0, 0], [1, 1]],
                          [[1, 1], [0, 0]], [[1, 0], [1, 0]])}


def test_parse_star():
    assert parse_star("boolean_sum") == star_boolean_sum()
    assert parse_star("proj1") == star_projection(1)
    assert parse_star("zero") == star_constant(0)
    assert parse_star("congruence:4") == star_congruence(4)
    assert parse_star({"table": [[1, 0], [0, 1]]}).to_list() == [[1, 0], [0, 1]]
    for bad in ("nope", "congruence:x", {"table": [[2]]}, 7):
        with pytest.raises(ValueError):
            parse_star(bad)


def test_boolean_sum_window_example():
    w = build_G_window(periodic_word(2, 6), star_boolean_sum(), 2, 4)
    assert w.graph.has_edge(w.vertex(0, 0), w.vertex(1, 1))
    assert not w.graph.has_edge(w.vertex(0, 0), w.vertex(1, 2))
    rule_holds(w)


@pytest.mark.parametrize("u", [FIB, S2, ALT])
@pytest.mark.parametrize("star", [star_boolean_sum(), star_projection(1), star_projection(2),
                                  parse_star({"table": [[1, 0], [1, 1]]})])
def test_window_rule_exhaustive(u, star):
    rule_holds(build_G_window(u, star, 3, 9))
    rule_holds(build_Q_window(u, star, [(0, 4), (2, 7), (1, 9)]))


def test_constant_stars_give_sums():
    from pathminimal.graphs import path_graph
    zero = build_G_window(FIB, star_constant(0), 3, 5).graph.unlabelled()
    one = build_G_window(FIB, star_constant(1), 3, 5).graph.unlabelled()
    assert zero == direct_sum(path_graph(5), path_graph(5), path_graph(5))
    assert one == complete_sum(path_graph(5), path_graph(5), path_graph(5))


def test_window_errors():
    with pytest.raises(WindowSpecError):
        build_G_window(periodic_word(2, 5), star_boolean_sum(), 2, 6)
    with pytest.raises(WindowSpecError):
        build_Q_window(FIB, star_boolean_sum(), [(3, 3)])
    with pytest.raises(WindowSpecError):
        build_G_window(periodic_word(3, 9), star_boolean_sum(), 2, 9)


def test_q_windows():
    w = build_Q_window(FIB, star_boolean_sum(), rows=4)
    assert [hi - lo for lo, hi in w.row_intervals] == [5, 6, 7, 8]
    w = build_Qk_window(2, 4)
    assert [hi - lo for lo, hi in w.row_intervals] == [5, 6, 7, 8] and w.graph.n == 26
    single = build_Q_window(FIB, star_boolean_sum(), [(0, 7)])
    assert single.graph.edge_count() == 6


def test_gk_rule_examples():
    w = build_Gk_window(2, 3, 6)
    assert w.graph.has_edge(w.vertex(0, 0), w.vertex(1, 1))
    assert not w.graph.has_edge(w.vertex(0, 0), w.vertex(1, 2))
    w3 = build_Gk_window(3, 3, 6)
    assert w3.graph.has_edge(w3.vertex(0, 0), w3.vertex(2, 4))
    edges = 3 * 9 + 3 * sum(1 for a, b in product(range(10), repeat=2) if (a - b) % 2)
    assert build_Gk_window(2, 3, 10).graph.edge_count() == edges == 177


@pytest.mark.parametrize("k", range(2, 7))
def test_gk_matches_generic_builder(k):
    for rows, cols in ((2, 7), (5, 30)):
        direct = build_Gk_window(k, rows, cols)
        generic = build_G_window(periodic_word(k, cols), star_congruence(k), rows, cols)
        assert direct.graph.adj == generic.graph.adj
        assert direct.graph.names == generic.graph.names


@pytest.mark.parametrize("star", [star_boolean_sum(), star_projection(1), star_projection(2)])
@pytest.mark.parametrize("u", [FIB, S2, ALT])
def test_bar_identity(star, u):
    a = build_G_window(u, star, 5, 30).graph.unlabelled()
    b = build_G_window(u.complement(), star_bar(star), 5, 30).graph.unlabelled()
    assert a == b


def test_sub_window_embedding():
    big = build_G_window(FIB, star_boolean_sum(), 4, 20)
    small = build_G_window(FIB[3:], star_boolean_sum(), 2, 8)
    emb = sub_window_embedding(small, big, [1, 3], col_shift=3)
    assert is_valid_embedding(small.graph, big.graph, emb, respect_labels=True)
    with pytest.raises(ValueError):
        sub_window_embedding(small, big, [3, 1])


def test_sharpness_path():
    assert sharpness_path(2) == ((0, 0), (1, 1), (0, 2), (0, 3), (1, 4), (0, 5))
    assert sharpness_path(3) == ((0, 0), (1, 1), (0, 3), (0, 4), (1, 6), (0, 7))
    for k in range(2, 8):
        seq = sharpness_path(k)
        w = build_Gk_window(k, 2, 2 * k + 2)
        assert len(seq) == 6 and {r for r, _ in seq} == {0, 1}
        assert is_induced_path(w.graph, [w.vertex(*p) for p in seq])


def test_claim4_witness():
    w2 = claim4_witness(2, 7)
    assert w2.trace == (1, 3, 5, 7)
    assert w2.graph.n == 9
    w3 = claim4_witness(3, 7)
    assert w3.trace == (1, 2, 4, 5, 7)
    assert [b for b in w3.trace_blocks() if b[1] > b[0]] == [(1, 2), (4, 5)]
    with pytest.raises(ValueError):
        claim4_witness(3, 5)
    assert find_embedding(w2.graph, build_Gk_window(3, 4, 20).graph.unlabelled()) is None
    assert find_embedding(w2.graph, build_Gk_window(2, 2, 9).graph.unlabelled()) is not None


def test_read_window_spec():
    w = read_window_spec('{"word": "periodic:k=2", "star": "boolean_sum", "rows": 2, "cols": 4}')
    assert w.graph.n == 8
    assert read_window_spec({"kind": "Gk", "k": 2, "rows": 3, "cols": 10}).graph.n == 30
    q = read_window_spec({"kind": "Q", "word": "sturmian:cf=1,1,1,1", "star": "proj2", "rows": 3})
    assert [hi - lo for lo, hi in q.row_intervals] == [5, 6, 7]
    for bad in ({}, {"star": "boolean_sum"}, {"word": "periodic:k=2", "star": "boolean_sum", "rows": 2},
                {"kind": "X"}, "[1]", {"word": "periodic:k=2", "star": "boolean_sum", "intervals": []}):
        with pytest.raises(WindowSpecError):
            read_window_spec(bad)


def test_rows_interchangeable():
    assert rows_interchangeable(build_G_window(FIB, star_boolean_sum(), 3, 10))
    assert not rows_interchangeable(build_G_window(FIB, star_projection(2), 3, 10))
    assert not rows_interchangeable(build_Q_window(FIB, star_boolean_sum(), rows=3))


def orbit_key(w, path):
    # relabel rows in order of first appearance, then pick the canonical direction
    def key(seq):
        order = {}
        for v in seq:
            order.setdefault(w.row_of(v), len(order))
        return tuple((order[w.row_of(v)], w.graph.names[v][1]) for v in seq)
    return min(key(path), key(path[::-1]))


@pytest.mark.parametrize("u", [FIB, ALT])
def test_symmetric_enumeration_matches_plain(u):
    w = build_G_window(u, star_boolean_sum(), 3, 14)
    for length in range(1, 7):
        plain = {orbit_key(w, p) for p in iter_window_paths(w, length, length, multirow_only=True)}
        reduced = [orbit_key(w, p) for p in iter_window_paths(w, length, length, multirow_only=True,
                                                                up_to_row_symmetry=True)]
        # every orbit is hit; row swap plus reversal can hit one twice
        assert set(reduced) == plain
        assert len(reduced) <= 2 * len(plain)


def test_window_paths_plain_matches_graph_core():
    w = build_G_window(FIB, star_projection(2), 3, 10)
    assert list(iter_window_paths(w, 3, 3)) == list(iter_induced_paths(w.graph, 3, 3))


def test_shifted_intervals_same_small_age():
    # rows carrying all short factors: same <= 4-vertex age as the full window
    full = build_G_window(FIB, star_boolean_sum(), 3, 30).graph
    shifted = build_Q_window(FIB, star_boolean_sum(), [(5, 25), (11, 31), (17, 37), (23, 43)]).graph
    assert age_upto(full, 4) == age_upto(shifted, 4)

from itertools import combinations
from math import isqrt

import pytest
from hypothesis import given, settings, strategies as st

from oracles import characteristic_word, cf_value, fibonacci_by_morphism
from pathminimal.words import (FactorSet, SturmianDirective, Word, WordSpecError, ages_equivalent,
                               extended_directive, factor_set, fibonacci_morphism_word, generator_phi,
                               higman_subword_leq, is_factor, mechanical_word, parse_word_spec,
                               periodic_word, phi, recurrence_bound, run_lengths, sturmian_word,
                               word_set_A_G)

W = Word.from_string
FIB_DIRECTIVE = [1] * 30


def fib_exact(length):
    # slope (3 - sqrt 5) / 2; floor(n a) = (3n - isqrt(5n^2) - 1) // 2 since sqrt(5) n is irrational
    fl = [(3 * n - isqrt(5 * n * n) - 1) // 2 if n else 0 for n in range(length + 2)]
    return "".join(str(fl[n + 1] - fl[n]) for n in range(1, length + 1))


def test_periodic():
    assert str(periodic_word(3, 7)) == "0120120"
    assert str(periodic_word(2, 6)) == "010101"
    assert str(periodic_word(2, 1)) == "0"
    assert periodic_word(3, 7).alphabet_size == 3
    with pytest.raises(ValueError):
        periodic_word(1, 5)


def test_word_invariants():
    with pytest.raises(ValueError):
        Word((0, 2), 2)
    with pytest.raises(ValueError):
        Word((), 2)
    u = W("0110")
    assert str(u.complement()) == "1001"
    assert str(u.reversed()) == "0110"
    assert W("000").is_constant()


def test_fibonacci_three_ways():
    n = 500
    ref = fibonacci_by_morphism(n)
    assert ref == fib_exact(n)
    assert str(sturmian_word(FIB_DIRECTIVE, n)[:n]) == ref
    assert str(fibonacci_morphism_word(n)) == ref
    assert str(sturmian_word([1] * 6, 13)) == "0100101001001"


@pytest.mark.parametrize("directive", [[1] * 25, [2] + [1] * 25, [3, 2, 1, 4] + [1] * 20, [1, 2] * 12])
def test_sturmian_matches_mechanical_oracle(directive):
    d = SturmianDirective(tuple(directive))
    alpha = cf_value([directive[0] + 1, *directive[1:]])
    assert alpha == d.slope_convergent()
    # the convergent's denominator is far beyond 500, so the prefix is that of the limit word
    assert alpha.denominator > 10 ** 5
    ref = characteristic_word(alpha, 500)
    assert str(sturmian_word(d, 500)[:500]) == ref
    assert str(mechanical_word(alpha, 500)) == ref


def test_sturmian_small_cases():
    assert str(sturmian_word([1], 1)) == "0"
    # slope [0; 3, 1, 1, 1, ...]: leading run of two 0s
    assert str(sturmian_word([2, 1, 1, 1], 5))[:5] == characteristic_word(cf_value([3] + [1] * 30), 5)
    with pytest.raises(ValueError, match="extend"):
        sturmian_word([1, 1], 40)
    with pytest.raises(ValueError):
        SturmianDirective(())
    with pytest.raises(ValueError):
        SturmianDirective((1, 0))


@pytest.mark.parametrize("directive", [[1] * 20, [2] + [1] * 20, [3, 1, 2] * 6])
def test_sturmian_complexity(directive):
    u = sturmian_word(directive, 1000)
    assert factor_set(u, 20).counts() == [n + 1 for n in range(1, 21)]


def test_extended_directive():
    assert extended_directive([2, 1], 30)[:2] == [2, 1]
    q = extended_directive([1], 40)
    assert len(sturmian_word(q, 40)) >= 40 and set(q) == {1}
    assert str(parse_word_spec("sturmian:cf=1,1,1,...", 20)) == fibonacci_by_morphism(20)
    assert str(parse_word_spec("sturmian:cf=2,1,1", 12, extend=True)) == "001000100100"
    with pytest.raises(WordSpecError):
        parse_word_spec("sturmian:cf=1,1,1,1,1", 40)


def test_parse_word_spec_errors():
    for bad in ("", "periodic", "periodic:k=x", "sturmian:cf=", "explicit:", "explicit:0a1", "foo:1"):
        with pytest.raises(WordSpecError):
            parse_word_spec(bad)
    assert str(parse_word_spec("explicit:0110")) == "0110"
    assert parse_word_spec("explicit:012").alphabet_size == 3
    with pytest.raises(WordSpecError):
        parse_word_spec("explicit:01", 5)


def test_run_lengths_and_phi():
    fib = sturmian_word(FIB_DIRECTIVE, 50)[:50]
    assert run_lengths(fib) == (2, 1)
    assert run_lengths(W("010101")) == (1, 1)
    assert run_lengths(W("001100")) == (2, 2)
    assert phi(periodic_word(2, 20)) == 6
    assert phi(fib) == 7
    assert phi(W("0011" * 5)) == 7
    assert phi(parse_word_spec("sturmian:cf=2,1,1,...", 60)) == 9
    with pytest.raises(ValueError):
        run_lengths(W("0000"))
    with pytest.raises(ValueError):
        phi(W("11"))


def test_generator_phi_matches_prefix():
    for spec in ("sturmian:cf=1,1,1,...", "sturmian:cf=2,1,1,...", "sturmian:cf=3,2,1,..."):
        assert generator_phi(spec) == phi(parse_word_spec(spec, 300))
    assert generator_phi("periodic:k=2") == 6


def test_factor_sets():
    fs = factor_set(W("010101"), 2)
    assert fs[1] == {(0,), (1,)} and fs[2] == {(0, 1), (1, 0)}
    fib = sturmian_word(FIB_DIRECTIVE, 30)[:30]
    fs = factor_set(fib, 3)
    assert fs[2] == {(0, 0), (0, 1), (1, 0)}
    assert fs[3] == {(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 0, 1)}
    d = factor_set(W("000"), 2).to_dict()
    assert d["max_len"] == 2 and d["levels"] == {"1": ["0"], "2": ["00"]}
    assert FactorSet.from_dict(fs.to_dict()) == fs
    with pytest.raises(ValueError):
        factor_set(W("01"), 3)


def test_is_factor_and_higman():
    assert is_factor(W("010"), W("0100101"))
    assert not is_factor((1, 1), sturmian_word(FIB_DIRECTIVE, 200))
    assert is_factor((), W("0"))
    assert higman_subword_leq(W("011"), W("0101"))
    assert not higman_subword_leq(W("110"), W("0101"))
    assert higman_subword_leq(W("0110"), W("0110"))


def subsequence_brute(v, u):
    return any(tuple(u[i] for i in idx) == tuple(v) for idx in combinations(range(len(u)), len(v)))


binary = st.lists(st.integers(0, 1), min_size=1, max_size=8).map(lambda xs: Word(tuple(xs)))


@settings(max_examples=200, deadline=None)
@given(binary, binary)
def test_higman_agrees_with_brute_force(v, u):
    assert higman_subword_leq(v, u) == subsequence_brute(v.symbols, u.symbols)


@settings(max_examples=80, deadline=None)
@given(binary, binary, binary)
def test_higman_transitive(a, b, c):
    if higman_subword_leq(a, b) and higman_subword_leq(b, c):
        assert higman_subword_leq(a, c)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=4, max_size=30))
def test_factor_set_downward_closed(xs):
    u = Word(tuple(xs))
    fs = factor_set(u, min(6, len(u)))
    for n in range(1, fs.max_len + 1):
        assert len(fs[n]) <= min(2 ** n, len(u) - n + 1)
        for w in fs[n]:
            assert is_factor(w, u)
            for i in range(len(w)):
                for j in range(i + 1, len(w) + 1):
                    assert w[i:j] in fs[j - i]


def test_recurrence():
    fib = sturmian_word(FIB_DIRECTIVE, 200)[:200]
    assert recurrence_bound(fib, 1) == 3
    assert recurrence_bound(periodic_word(2, 40), 1) == 2
    assert recurrence_bound(W("0" * 50 + "1" * 50), 1) is None
    bounds = [recurrence_bound(fib, n) for n in range(1, 10)]
    assert bounds == sorted(bounds)
    with pytest.raises(ValueError):
        recurrence_bound(W("0110"), 2)


def test_ages_equivalent():
    assert ages_equivalent(factor_set(W("010101"), 3), factor_set(W("101010"), 3))
    fib = sturmian_word(FIB_DIRECTIVE, 100)
    assert ages_equivalent(factor_set(fib, 6), factor_set(fib.complement(), 6))
    s2 = parse_word_spec("sturmian:cf=2,1,1,...", 100)
    assert not ages_equivalent(factor_set(fib, 5), factor_set(s2, 5))


def test_ages_equivalent_is_equivalence():
    words = [W(s) for s in ("0110100110", "1001011001", "0110010110", "0101010101", "1010101010",
                            "0010010010", "1101101101", "0100100100")]
    fs = [factor_set(w, 4) for w in words]
    rel = [[ages_equivalent(a, b) for b in fs] for a in fs]
    n = len(fs)
    for i in range(n):
        assert rel[i][i]
        for j in range(n):
            assert rel[i][j] == rel[j][i]
            for k in range(n):
                if rel[i][j] and rel[j][k]:
                    assert rel[i][k]


def test_word_set_boolean_sum():
    xor = [[0, 1], [1, 0]]
    for u in (sturmian_word(FIB_DIRECTIVE, 80), parse_word_spec("sturmian:cf=2,1,1,...", 80)):
        a = word_set_A_G(u, xor, 6)
        fu, fc = factor_set(u, 6), factor_set(u.complement(), 6)
        rev = fu.transformed(reverse=True).union(fc.transformed(reverse=True))
        for n in range(1, 7):
            assert a[n] == fu[n] | fc[n] | rev[n]
        assert a == word_set_A_G(u.complement(), xor, 6)


def test_word_set_projections():
    u = sturmian_word(FIB_DIRECTIVE, 80)
    a = word_set_A_G(u, [[0, 1], [0, 1]], 5)   # second projection
    fu = factor_set(u, 5)
    for n in range(1, 6):
        const = {(0,) * n, (1,) * n}
        assert a[n] == fu[n] | const | fu.transformed(reverse=True)[n]
    first = word_set_A_G(periodic_word(2, 20), [[0, 0], [1, 1]], 2)
    assert first[2] == {(0, 0), (1, 1), (0, 1), (1, 0)}


def test_factor_set_json_round_trip():
    fs = factor_set(parse_word_spec("periodic:k=3", 30), 3)
    assert FactorSet.from_dict(fs.to_dict()) == fs
    assert fs.to_dict()["levels"]["1"] == ["0", "1", "2"]

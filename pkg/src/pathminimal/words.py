"""Finite prefixes of words, factor sets, run lengths and recurrence.

Words are immutable tuples of alphabet indices.  Everything here works on a
finite prefix: factor sets are reported level by level up to ``max_len`` and
no statement about the infinite word is implied beyond what the prefix shows.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from typing import Sequence


class WordSpecError(ValueError):
    """Raised for malformed generator specs such as ``sturmian:cf=x``."""


@dataclass(frozen=True)
class Word:
    symbols: tuple[int, ...]
    alphabet_size: int = 2
    provenance: str = "explicit"

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be positive")
        if not self.symbols:
            raise ValueError("words are nonempty; pass a tuple for the empty factor")
        for s in self.symbols:
            if not 0 <= s < self.alphabet_size:
                raise ValueError(f"symbol {s} outside alphabet of size {self.alphabet_size}")

    @classmethod
    def from_string(cls, text: str, alphabet_size: int | None = None,
                    provenance: str = "explicit") -> "Word":
        symbols = tuple(int(c) for c in text)
        if alphabet_size is None:
            alphabet_size = max(2, max(symbols, default=0) + 1)
        return cls(symbols, alphabet_size, provenance)

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.symbols[i], self.alphabet_size, self.provenance)
        return self.symbols[i]

    def __iter__(self):
        return iter(self.symbols)

    def __str__(self) -> str:
        return "".join(str(s) for s in self.symbols)

    def complement(self) -> "Word":
        """Letterwise addition of 1 mod 2 (binary words only)."""
        _require_binary(self)
        return Word(tuple(1 - s for s in self.symbols), 2, "complemented")

    def reversed(self) -> "Word":
        return Word(self.symbols[::-1], self.alphabet_size, "reversed")

    def is_constant(self) -> bool:
        return len(set(self.symbols)) <= 1


def _require_binary(u: Word) -> None:
    if u.alphabet_size != 2:
        raise ValueError("operation defined for binary words only")


@dataclass(frozen=True)
class SturmianDirective:
    """Continued-fraction directive ``d1, d2, ...`` (all entries >= 1).

    The generated word is the characteristic word of slope
    ``[0; d1 + 1, d2, d3, ...]``; the all-ones directive gives the
    Fibonacci word ``0100101001001...``.
    """

    partial_quotients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "partial_quotients", tuple(int(a) for a in self.partial_quotients))
        if not self.partial_quotients:
            raise ValueError("directive must be nonempty")
        if any(a < 1 for a in self.partial_quotients):
            raise ValueError("directive entries must be >= 1")

    def slope_convergent(self) -> Fraction:
        """The rational slope ``[0; d1+1, d2, ..., dk]`` as an exact fraction."""
        terms = [self.partial_quotients[0] + 1, *self.partial_quotients[1:]]
        x = Fraction(terms[-1])
        for a in reversed(terms[:-1]):
            x = a + 1 / x
        return 1 / x


def periodic_word(k: int, length: int) -> Word:
    if k < 2:
        raise ValueError("periodic residue word needs k >= 2")
    if length < 1:
        raise ValueError("length must be >= 1")
    return Word(tuple(n % k for n in range(length)), k, f"periodic:k={k}")


def sturmian_word(directive: SturmianDirective | Sequence[int], min_length: int) -> Word:
    """Prefix of the characteristic Sturmian word built by the standard-word recursion.

    ``s_{-1} = 1``, ``s_0 = 0`` and ``s_n = s_{n-1}^{d_n} s_{n-2}``.  Each
    ``s_n`` (n >= 1) is a prefix of the infinite word; the first one of length
    at least ``min_length`` is returned.
    """
    if not isinstance(directive, SturmianDirective):
        directive = SturmianDirective(tuple(directive))
    if min_length < 1:
        raise ValueError("min_length must be >= 1")
    prev, cur = [1], [0]
    if min_length == 1:
        return Word((0,), 2, _sturmian_provenance(directive))
    for d in directive.partial_quotients:
        prev, cur = cur, cur * d + prev
        if len(cur) >= min_length:
            return Word(tuple(cur), 2, _sturmian_provenance(directive))
    raise ValueError(
        f"directive of length {len(directive.partial_quotients)} only reaches length "
        f"{len(cur)} < {min_length}; extend the directive with more partial quotients"
    )


def _sturmian_provenance(directive: SturmianDirective) -> str:
    return "sturmian:cf=" + ",".join(map(str, directive.partial_quotients))


def mechanical_word(slope: Fraction, length: int) -> Word:
    """``c(n) = floor((n+1) a) - floor(n a)`` for ``n = 1 .. length`` in exact arithmetic."""
    out = []
    for n in range(1, length + 1):
        out.append(int((n + 1) * slope // 1) - int(n * slope // 1))
    return Word(tuple(out), 2, f"mechanical:{slope}")


def fibonacci_morphism_word(length: int) -> Word:
    """Fixed point of ``0 -> 01, 1 -> 0``, truncated."""
    w = [0]
    while len(w) < length:
        w = [x for s in w for x in ((0, 1) if s == 0 else (0,))]
    return Word(tuple(w[:length]), 2, "morphism:fibonacci")


def parse_word_spec(spec: str, length: int | None = None, extend: bool = False) -> Word:
    """Parse ``periodic:k=3``, ``sturmian:cf=1,1,1`` or ``explicit:0100101``.

    ``length`` truncates (and for generated words, sets) the prefix length.  A
    directive ending in ``...`` (or any directive when ``extend`` is set) repeats
    its last partial quotient as often as the length requires.
    """
    kind, sep, rest = spec.partition(":")
    if not sep:
        raise WordSpecError(f"malformed word spec {spec!r}")
    try:
        if kind == "periodic":
            key, _, val = rest.partition("=")
            if key != "k":
                raise WordSpecError(f"expected periodic:k=<int>, got {spec!r}")
            return periodic_word(int(val), length or 20)
        if kind == "sturmian":
            key, _, val = rest.partition("=")
            if key != "cf":
                raise WordSpecError(f"expected sturmian:cf=<ints>, got {spec!r}")
            parts = [x.strip() for x in val.split(",")]
            if parts and parts[-1] in ("...", "\u2026"):
                parts.pop()
                extend = True
            quotients = [int(x) for x in parts]
            target = length or 30
            if extend and quotients:
                quotients = extended_directive(quotients, target)
            w = sturmian_word(SturmianDirective(tuple(quotients)), target)
            return w[: length] if length else w
        if kind == "explicit":
            if not rest or any(c not in "0123456789" for c in rest):
                raise WordSpecError(f"explicit word must be digits, got {rest!r}")
            w = Word.from_string(rest)
            if length is not None and length > len(w):
                raise WordSpecError(f"explicit word has length {len(w)} < requested {length}")
            return w[: length] if length else w
    except WordSpecError:
        raise
    except ValueError as exc:
        raise WordSpecError(str(exc)) from exc
    raise WordSpecError(f"unknown word generator {kind!r}")


def extended_directive(quotients: Sequence[int], min_length: int) -> list[int]:
    """Repeat the last partial quotient until the standard word reaches ``min_length``."""
    q = list(quotients)
    while True:
        prev, cur = 1, 1
        for d in q:
            prev, cur = cur, cur * d + prev
        if cur >= min_length:
            return q
        q.append(q[-1])


def run_lengths(u: Word) -> tuple[int, int]:
    """Longest run of 0s and longest run of 1s in a binary non-constant word."""
    _require_binary(u)
    if u.is_constant():
        raise ValueError("run lengths (and phi) are defined for non-constant words only")
    best = {0: 0, 1: 0}
    for s, grp in groupby(u.symbols):
        best[s] = max(best[s], sum(1 for _ in grp))
    return best[0], best[1]


def is_alternating(u: Word) -> bool:
    """True when the prefix has neither ``00`` nor ``11`` as a factor."""
    return all(a != b for a, b in zip(u.symbols, u.symbols[1:]))


def phi(u: Word) -> int:
    """Path-locality threshold: ``2 (l(u) + 1) + 1``, or 6 for ``0101...``."""
    l0, l1 = run_lengths(u)
    if is_alternating(u):
        return 6
    return 2 * (max(l0, l1) + 1) + 1


def generator_phi(spec: str) -> int:
    """Threshold computed from the generator itself rather than a prefix.

    For a Sturmian directive ``d1, ...`` of length >= 3 the runs of 0 have
    length ``d1`` or ``d1 + 1`` and 1s are isolated, so ``l(u) = d1 + 1``.
    """
    kind, _, rest = spec.partition(":")
    if kind == "periodic":
        k = int(rest.partition("=")[2])
        if k != 2:
            raise ValueError("threshold defined for binary words only")
        return 6
    if kind == "sturmian":
        d = [int(x) for x in rest.partition("=")[2].split(",") if x.strip() not in ("...", "\u2026")]
        if len(d) < 3:
            raise ValueError("directive too short to fix the run structure")
        return 2 * (d[0] + 2) + 1
    return phi(parse_word_spec(spec))


@dataclass(frozen=True)
class FactorSet:
    """Distinct factors of each length ``1..max_len``."""

    levels: tuple[frozenset[tuple[int, ...]], ...]
    source_length: int = 0
    alphabet_size: int = 2

    @property
    def max_len(self) -> int:
        return len(self.levels)

    def __getitem__(self, n: int) -> frozenset[tuple[int, ...]]:
        return self.levels[n - 1]

    def __contains__(self, w) -> bool:
        w = tuple(w)
        if not w:
            return True
        return 0 < len(w) <= self.max_len and w in self.levels[len(w) - 1]

    def counts(self) -> list[int]:
        return [len(lv) for lv in self.levels]

    def transformed(self, reverse: bool = False, complement: bool = False) -> "FactorSet":
        def t(w):
            if complement:
                w = tuple(1 - s for s in w)
            return w[::-1] if reverse else w
        return FactorSet(tuple(frozenset(t(w) for w in lv) for lv in self.levels),
                         self.source_length, self.alphabet_size)

    def union(self, other: "FactorSet") -> "FactorSet":
        if other.max_len != self.max_len:
            raise ValueError("factor sets must share max_len")
        return FactorSet(tuple(a | b for a, b in zip(self.levels, other.levels)),
                         max(self.source_length, other.source_length), self.alphabet_size)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dict(self) -> dict:
        return {
            "max_len": self.max_len,
            "source_length": self.source_length,
            "alphabet_size": self.alphabet_size,
            "levels": {
                str(n): sorted("".join(map(str, w)) for w in self.levels[n - 1])
                for n in range(1, self.max_len + 1)
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FactorSet":
        n = int(data["max_len"])
        levels = tuple(
            frozenset(tuple(int(c) for c in s) for s in data["levels"][str(i)])
            for i in range(1, n + 1)
        )
        return cls(levels, int(data.get("source_length", 0)), int(data.get("alphabet_size", 2)))


def factor_set(u: Word, max_len: int) -> FactorSet:
    if max_len > len(u):
        raise ValueError("max_len exceeds the word length")
    s = u.symbols
    levels = tuple(
        frozenset(s[i:i + n] for i in range(len(s) - n + 1)) for n in range(1, max_len + 1)
    )
    return FactorSet(levels, len(u), u.alphabet_size)


def is_factor(v: Word | Sequence[int], u: Word) -> bool:
    if isinstance(v, Word) and len(v) and v.alphabet_size != u.alphabet_size:
        raise ValueError("alphabet mismatch")
    v = tuple(v)
    if not v:
        return True
    s, n = u.symbols, len(v)
    return any(s[i:i + n] == v for i in range(len(s) - n + 1))


def higman_subword_leq(v: Word | Sequence[int], u: Word | Sequence[int]) -> bool:
    """Scattered-subsequence embedding with equal letters (greedy is exact)."""
    it = iter(tuple(u))
    return all(any(a == b for b in it) for a in tuple(v))


def recurrence_bound(u: Word, n: int) -> int | None:
    """Smallest ``m <= len(u) // 2`` such that every length-``m`` window contains
    every length-``n`` factor of ``u``; ``None`` when no such ``m`` exists."""
    if n < 1 or n > len(u) / 4:
        raise ValueError("need 1 <= n <= len(u) / 4")
    s = u.symbols
    ids: dict[tuple[int, ...], int] = {}
    pos_id = [ids.setdefault(s[i:i + n], len(ids)) for i in range(len(s) - n + 1)]
    total = len(ids)
    for m in range(n, len(s) // 2 + 1):
        span = m - n + 1
        counts = [0] * total
        present = 0
        ok = True
        for i, f in enumerate(pos_id):
            if counts[f] == 0:
                present += 1
            counts[f] += 1
            if i >= span:
                g = pos_id[i - span]
                counts[g] -= 1
                if counts[g] == 0:
                    present -= 1
            if i >= span - 1 and present < total:
                ok = False
                break
        if ok:
            return m
    return None


def ages_equivalent(a: FactorSet, b: FactorSet) -> bool:
    """Equality up to reversal and/or complementation, level by level."""
    if a.max_len != b.max_len:
        raise ValueError("factor sets must share max_len")
    if a.alphabet_size != 2 or b.alphabet_size != 2:
        raise ValueError("age equivalence is defined for binary words only")
    return any(
        a.levels == b.transformed(reverse=r, complement=c).levels
        for r in (False, True) for c in (False, True)
    )


def _star_apply_left(table, i: int, w: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(table[i][x] for x in w)


def _star_apply_right(table, w: tuple[int, ...], i: int) -> tuple[int, ...]:
    return tuple(table[x][i] for x in w)


def word_set_A_G(u: Word, star, max_len: int) -> FactorSet:
    """Neighbourhood-trace words: ``L * Fac(u)``, ``Fac(u) * L`` and their reversals.

    ``star`` is anything with a ``table`` attribute or a nested 2x2 list.
    """
    table = getattr(star, "table", star)
    fac = factor_set(u, max_len)
    alphabet = range(len(table))
    levels = []
    for lv in fac.levels:
        out = set()
        for w in lv:
            for i in alphabet:
                out.add(_star_apply_left(table, i, w))
                out.add(_star_apply_right(table, w, i))
        out |= {w[::-1] for w in out}
        levels.append(frozenset(out))
    return FactorSet(tuple(levels), len(u), 2)

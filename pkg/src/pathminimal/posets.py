"""Finite posets, their comparability/incomparability graphs, and the convex
partition machinery used to pull sums of long paths out of Inc(P).
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Iterator, Sequence

from ._bits import iter_bits, lowest, to_mask, to_set
from .graphs import (LabelledGraph, ball, bfs_levels, connected_components, is_induced_path,
                     isometric_check, iter_induced_paths)


class LemmaViolation(AssertionError):
    """A proof step that should be unconditional failed on a concrete instance."""


class PosetError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Poset:
    """Strict order stored as bitmasks: ``down[v]`` holds every ``u < v``."""

    n: int
    down: tuple[int, ...]
    up: tuple[int, ...] = field(default=None)  # derived

    def __post_init__(self):
        if len(self.down) != self.n:
            raise PosetError("down-set list must have length n")
        up = [0] * self.n
        for v, d in enumerate(self.down):
            for u in iter_bits(d):
                up[u] |= 1 << v
        object.__setattr__(self, "up", tuple(up))

    @classmethod
    def from_pairs(cls, n: int, strict_pairs: Iterable[tuple[int, int]], close: bool = True) -> "Poset":
        """``(a, b)`` means ``a < b``.  Transitive closure is applied; cycles are rejected."""
        down = [0] * n
        for a, b in strict_pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise PosetError(f"pair ({a}, {b}) outside 0..{n - 1}")
            if a == b:
                raise PosetError(f"reflexive pair ({a}, {a}) in strict order")
            down[b] |= 1 << a
        if close:
            down = _closure(down)
        for v, d in enumerate(down):
            if d >> v & 1:
                raise PosetError(f"cycle through element {v}")
        p = cls(n, tuple(down))
        if not close:
            p.validate()
        return p

    def validate(self) -> None:
        for v, d in enumerate(self.down):
            if d >> v & 1:
                raise PosetError(f"element {v} below itself")
            for u in iter_bits(d):
                if self.down[u] & ~d:
                    raise PosetError(f"not transitive at {u} < {v}")
                if self.down[u] >> v & 1:
                    raise PosetError(f"not antisymmetric at {{{u}, {v}}}")

    @classmethod
    def unchecked(cls, n: int, down: Sequence[int]) -> "Poset":
        """Relation without any validation (negative controls only)."""
        return cls(n, tuple(down))

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and self.down == other.down

    def __hash__(self):
        return hash((self.n, self.down))

    def __repr__(self):
        return f"Poset(n={self.n}, pairs={len(self.strict_pairs())})"

    def lt(self, a: int, b: int) -> bool:
        return bool(self.down[b] >> a & 1)

    def leq(self, a: int, b: int) -> bool:
        return a == b or self.lt(a, b)

    def comparable(self, a: int, b: int) -> bool:
        return a == b or self.lt(a, b) or self.lt(b, a)

    def strict_pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for b in range(self.n) for a in iter_bits(self.down[b])]

    def inc_mask(self, v: int) -> int:
        return ((1 << self.n) - 1) & ~(self.down[v] | self.up[v] | (1 << v))

    def dual(self) -> "Poset":
        return Poset(self.n, self.up)

    def restrict(self, elements: Sequence[int]) -> tuple["Poset", list[int]]:
        elements = sorted(elements)
        pos = {v: i for i, v in enumerate(elements)}
        down = []
        for v in elements:
            down.append(to_mask(pos[u] for u in iter_bits(self.down[v]) if u in pos))
        return Poset(len(elements), tuple(down)), elements

    def interval(self, a: int, b: int) -> int:
        """Mask of ``[a, b]`` (empty unless ``a <= b``)."""
        if a == b:
            return 1 << a
        if not self.lt(a, b):
            return 0
        return (self.up[a] & self.down[b]) | (1 << a) | (1 << b)

    def is_convex(self, subset: int | Iterable[int]) -> bool:
        m = subset if isinstance(subset, int) else to_mask(subset)
        above, below = 0, 0
        for v in iter_bits(m):
            above |= self.up[v]
            below |= self.down[v]
        return (above & below & ~m) == 0

    def to_dict(self) -> dict:
        return {"n": self.n, "strict_pairs": [list(p) for p in self.strict_pairs()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "Poset":
        return cls.from_pairs(int(data["n"]), [tuple(p) for p in data["strict_pairs"]])


def _closure(down: list[int]) -> list[int]:
    n = len(down)
    down = list(down)
    changed = True
    while changed:
        changed = False
        for v in range(n):
            d = down[v]
            acc = d
            for u in iter_bits(d):
                acc |= down[u]
            if acc != d:
                down[v] = acc
                changed = True
    return down


# -- graphs of a poset ---------------------------------------------------

def incomparability_graph(p: Poset) -> LabelledGraph:
    return LabelledGraph(p.n, tuple(p.inc_mask(v) for v in range(p.n)))


def comparability_graph(p: Poset) -> LabelledGraph:
    return LabelledGraph(p.n, tuple(p.down[v] | p.up[v] for v in range(p.n)))


# -- constructors ----------------------------------------------------------

def chain(n: int) -> Poset:
    return Poset(n, tuple((1 << v) - 1 for v in range(n)))


def antichain(n: int) -> Poset:
    return Poset(n, (0,) * n)


def fence(n: int) -> Poset:
    """Zigzag ``x0 < x1 > x2 < x3 ...``."""
    pairs = []
    for i in range(n - 1):
        pairs.append((i, i + 1) if i % 2 == 0 else (i + 1, i))
    return Poset.from_pairs(n, pairs)


def path_poset(n: int) -> Poset:
    """``x_i < x_j`` iff ``j >= i + 2``; its incomparability graph is the path on n vertices."""
    return Poset.from_pairs(n, [(i, j) for i in range(n) for j in range(i + 2, n)], close=False)


def parallel_sum(*posets: Poset) -> Poset:
    """Disjoint union; elements of different summands are incomparable."""
    down, off = [], 0
    for p in posets:
        down += [d << off for d in p.down]
        off += p.n
    return Poset(off, tuple(down))


def ordinal_sum(*posets: Poset) -> Poset:
    """Stack summands: everything in an earlier summand lies below everything later."""
    down, off = [], 0
    for p in posets:
        below = (1 << off) - 1
        down += [(d << off) | below for d in p.down]
        off += p.n
    return Poset(off, tuple(down))


def path_family(sizes: Sequence[int], mode: str) -> Poset:
    """Path posets combined so that Inc is the direct (ordinal stacking) or
    complete (parallel union) sum of paths on ``sizes`` vertices."""
    parts = [path_poset(s) for s in sizes]
    if mode == "direct":
        return ordinal_sum(*parts)
    if mode == "complete":
        return parallel_sum(*parts)
    raise ValueError("mode must be 'direct' or 'complete'")


def random_poset(n: int, rng: random.Random, density: float | None = None) -> Poset:
    """Sample pairs under a random linear order, then close transitively."""
    order = list(range(n))
    rng.shuffle(order)
    p = rng.uniform(0.05, 0.5) if density is None else density
    pairs = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Poset.from_pairs(n, pairs)


# -- isomorphism-free catalogue -------------------------------------------

def _refined_colours(p: Poset) -> list[tuple]:
    col = [(p.down[v].bit_count(), p.up[v].bit_count()) for v in range(p.n)]
    for _ in range(p.n):
        new = [(col[v], tuple(sorted(col[u] for u in iter_bits(p.down[v]))),
                tuple(sorted(col[u] for u in iter_bits(p.up[v])))) for v in range(p.n)]
        ranks = {c: i for i, c in enumerate(sorted(set(new)))}
        new = [ranks[c] for c in new]
        if len(set(new)) == len(set(col)):
            col = new
            break
        col = new
    return col


def canonical_form(p: Poset) -> tuple:
    """Minimum strict-relation encoding over orderings consistent with refined colours."""
    col = _refined_colours(p)
    classes = sorted(set(col))
    groups = [[v for v in range(p.n) if col[v] == c] for c in classes]
    best = None
    for choice in product(*(permutations(g) for g in groups)):
        order = [v for grp in choice for v in grp]
        pos = {v: i for i, v in enumerate(order)}
        code = tuple(sorted((pos[a], pos[b]) for a, b in p.strict_pairs()))
        if best is None or code < best:
            best = code
    return (p.n, best or ())


def _down_sets(p: Poset) -> Iterator[int]:
    """Every down-closed subset, as a mask."""
    seen = set()
    stack = [0]
    while stack:
        m = stack.pop()
        if m in seen:
            continue
        seen.add(m)
        yield m
        for v in range(p.n):
            if not m >> v & 1 and (p.down[v] & ~m) == 0:
                stack.append(m | (1 << v))


@lru_cache(maxsize=None)
def all_posets(n: int) -> tuple[Poset, ...]:
    """One representative per isomorphism class of posets on ``n`` elements."""
    if n == 0:
        return (Poset(0, ()),)
    out: dict[tuple, Poset] = {}
    for q in all_posets(n - 1):
        for d in _down_sets(q):
            p = Poset(n, q.down + (d,))
            out.setdefault(canonical_form(p), p)
    return tuple(out[k] for k in sorted(out))


# -- convex partitions -----------------------------------------------------

@dataclass(frozen=True)
class ConvexPartition:
    blocks: tuple[frozenset[int], ...]
    anchor: frozenset[int]

    def block_of(self, v: int) -> frozenset[int] | None:
        for b in self.blocks:
            if v in b:
                return b
        return None


def tau_partition(g: LabelledGraph, anchor: Iterable[int]) -> ConvexPartition:
    """Classes of ``V \\ F`` under identical adjacency to ``F``, ordered by least element."""
    f = to_mask(anchor)
    if f & ~g.all_mask:
        raise ValueError("anchor set not inside the vertex set")
    classes: dict[int, int] = {}
    for v in iter_bits(g.all_mask & ~f):
        key = g.adj[v] & f
        classes[key] = classes.get(key, 0) | (1 << v)
    if len(classes) > 1 << f.bit_count():
        raise LemmaViolation(f"{len(classes)} classes exceed 2^{f.bit_count()}")
    blocks = sorted(classes.values(), key=lowest)
    return ConvexPartition(tuple(to_set(b) for b in blocks), to_set(f))


def oriented_partition(p: Poset, anchor: Iterable[int]) -> ConvexPartition:
    """Refinement of the incomparability-graph partition that also records which
    members of F lie below each vertex.

    Each class is an intersection of sets ``U(f)``, ``D(f)``, ``Inc(f)`` and so
    convex; there are at most ``3^|F|`` classes.  The plain partition need not
    be convex: in the chain ``0 < 1 < 2`` with ``F = {1}`` its only class is
    ``{0, 2}``.
    """
    f = to_mask(anchor)
    full = (1 << p.n) - 1
    if f & ~full:
        raise ValueError("anchor set not inside the vertex set")
    classes: dict[tuple[int, int], int] = {}
    for v in iter_bits(full & ~f):
        key = (p.down[v] & f, p.up[v] & f)
        classes[key] = classes.get(key, 0) | (1 << v)
    blocks = sorted(classes.values(), key=lowest)
    return ConvexPartition(tuple(to_set(b) for b in blocks), to_set(f))


def block_bipartition_of_F(g: LabelledGraph, anchor: Iterable[int],
                           block: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Split F into the part joined to all of ``block`` and the part joined to none.

    Raises :class:`LemmaViolation` if some member of F is joined to part of the block
    (i.e. the block is not an equivalence class).
    """
    f, b = to_mask(anchor), to_mask(block)
    if not b:
        raise ValueError("block must be nonempty")
    a = a2 = 0
    for x in iter_bits(f):
        hit = g.adj[x] & b
        if hit == b:
            a |= 1 << x
        elif hit == 0:
            a2 |= 1 << x
        else:
            raise LemmaViolation(f"vertex {x} of F splits the block")
    return to_set(a), to_set(a2)


# -- path lemmas -----------------------------------------------------------

def check_inc_path_monotone(p: Poset, path: Sequence[int]) -> bool | None:
    """Whether ``x_i < x_j`` for all ``j >= i + 2`` along an induced Inc-path.

    The path is read in the direction with ``x_0 < x_n``; ``None`` means the
    endpoints are incomparable (or equal), so the statement does not apply.
    """
    seq = list(path)
    if len(seq) <= 2:
        return True
    a, b = seq[0], seq[-1]
    if p.lt(b, a):
        seq.reverse()
    elif not p.lt(a, b):
        return None
    m = len(seq)
    return all(p.lt(seq[i], seq[j]) for i in range(m) for j in range(i + 2, m))


def convex_subpath(p: Poset, convex: Iterable[int] | int, path: Sequence[int]) -> tuple[int, ...]:
    """Middle subpath ``x_2 .. x_{len-2}`` of an induced Inc-path whose ends lie in a convex set.

    Raises :class:`LemmaViolation` if the middle part leaves the set.
    """
    c = convex if isinstance(convex, int) else to_mask(convex)
    seq = list(path)
    if len(seq) < 4:
        raise ValueError("path must have length >= 3")
    if not (c >> seq[0] & 1 and c >> seq[-1] & 1):
        raise ValueError("both endpoints must lie in the convex set")
    if not p.is_convex(c):
        raise ValueError("set is not convex")
    middle = tuple(seq[2:-2])
    bad = [v for v in middle if not c >> v & 1]
    if bad:
        raise LemmaViolation(f"middle vertices {bad} leave the convex set")
    return middle


def f_k(k: int, n: int) -> int:
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    return k * (n + 4)


def same_colour_far_pair(colours: Sequence) -> tuple[int, int]:
    """Two same-coloured positions on a path at distance >= floor(m / k)."""
    m = len(colours) - 1
    k = len(set(colours))
    step = m // k
    seen = {}
    for i in range(k + 1):
        c = colours[i * step]
        if c in seen:
            return seen[c], i * step
        seen[c] = i * step
    raise LemmaViolation("pigeonhole failed")


# -- extraction ------------------------------------------------------------

@dataclass(frozen=True)
class UniformBlock:
    path: tuple[int, ...]        # C, in the coordinates of the input poset
    rest: frozenset[int]         # V'
    mode: str                    # "direct", "complete", or "terminal" when V' is empty
    source: tuple[int, ...]      # C'


def _first_path(g: LabelledGraph, length: int, allowed: int) -> tuple[int, ...] | None:
    return next(iter_induced_paths(g, length, length, allowed), None)


def _longest_length(g: LabelledGraph, allowed: int, cap: int | None = None) -> int:
    best = 0
    while cap is None or best < cap:
        if _first_path(g, best + 1, allowed) is None:
            break
        best += 1
    return best


def _uniform_subpath(g: LabelledGraph, cprime: tuple[int, ...], part: int, n: int):
    for i in range(len(cprime) - n):
        seg = cprime[i:i + n + 1]
        if all(part >> v & 1 for v in seg):
            return seg
    return _first_path(g, n, part) if n >= 1 else next(
        ((v,) for v in iter_bits(part)), None)


def extract_uniform_block(p: Poset, n: int, within: int | None = None,
                          lookahead: int | None = None) -> UniformBlock | None:
    """Induced Inc-path C of length ``n`` and a convex V' uniformly joined or
    unjoined to C.

    C' is searched at length ``2(n+4)``; V' is the oriented class (see
    :func:`oriented_partition`) of V \\ C' holding the longest residual induced
    path (ties: smallest least element).  C' candidates
    are tried in lexicographic order until C fits inside one side of the
    bipartition of C'.  ``within`` restricts everything to a vertex mask and
    ``lookahead`` caps the residual path length that is measured.
    """
    g = incomparability_graph(p)
    allowed = g.all_mask if within is None else within
    demand = 2 * (n + 4)
    for cprime in iter_induced_paths(g, demand, demand, allowed):
        f = to_mask(cprime)
        # oriented classes: convex, and each lies inside one class of the plain partition
        classes: dict[tuple[int, int], int] = {}
        for v in iter_bits(allowed & ~f):
            key = (p.down[v] & f, p.up[v] & f)
            classes[key] = classes.get(key, 0) | (1 << v)
        if not classes:
            # nothing left over: C sits at the end of the sum, compatible with either mode
            return UniformBlock(cprime[: n + 1], frozenset(), "terminal", cprime)
        scored = sorted(classes.values(), key=lambda b: (-_longest_length(g, b, lookahead), lowest(b)))
        best = scored[0]
        if not p.is_convex(best):
            raise LemmaViolation("oriented class is not convex")
        a, a2 = block_bipartition_of_F(g, to_set(f), to_set(best))
        for side, mode in ((to_mask(a), "complete"), (to_mask(a2), "direct")):
            seg = _uniform_subpath(g, cprime, side, n)
            if seg is not None:
                return UniformBlock(tuple(seg), to_set(best), mode, cprime)
    return None


@dataclass(frozen=True)
class PathSum:
    mode: str
    paths: tuple[tuple[int, ...], ...]
    tallies: dict
    rounds: tuple[tuple[str, int], ...]


def _assign(lengths: list[int], targets: Sequence[int]) -> list[int] | None:
    """Match path indices to sorted targets (each path long enough), greedily."""
    order = sorted(range(len(lengths)), key=lambda i: lengths[i])
    used, out = set(), []
    for t in sorted(targets):
        pick = next((i for i in order if i not in used and lengths[i] >= t), None)
        if pick is None:
            return None
        used.add(pick)
        out.append(pick)
    return out


def extract_path_sum(p: Poset, target_lengths: Sequence[int], max_rounds: int | None = None,
                     lookahead: int | None = None) -> PathSum | None:
    """Iterate the uniform-block step and keep the rounds of the majority mode.

    Rounds run at the targets in ascending order, then at the largest target
    until some mode covers every target.  Returns ``None`` when the poset runs
    out of long paths first.
    """
    targets = sorted(int(t) for t in target_lengths)
    if not targets or targets[0] < 1:
        raise ValueError("targets must be positive")
    max_rounds = max_rounds or 4 * len(targets)
    region = (1 << p.n) - 1
    rounds: list[tuple[str, tuple[int, ...]]] = []
    schedule = iter(targets)
    while len(rounds) < max_rounds:
        length = next(schedule, targets[-1])
        blk = extract_uniform_block(p, length, region, lookahead)
        if blk is None:
            break
        rounds.append((blk.mode, blk.path))
        region = to_mask(blk.rest)
        covered = {}
        for mode in ("direct", "complete"):
            idx = [i for i, (m, _) in enumerate(rounds) if m in (mode, "terminal")]
            pick = _assign([len(rounds[i][1]) - 1 for i in idx], targets)
            covered[mode] = None if pick is None else [idx[j] for j in pick]
        tallies = {m: sum(1 for r, _ in rounds if r == m) for m in ("direct", "complete", "terminal")}
        winners = [m for m in ("direct", "complete") if covered[m] is not None]
        if winners and len(rounds) >= len(targets):
            mode = max(winners, key=lambda m: tallies[m])
            paths = tuple(rounds[i][1][: t + 1] for i, t in zip(covered[mode], targets))
            return PathSum(mode, paths, tallies, tuple((m, len(pth) - 1) for m, pth in rounds))
        if not region:
            break
    return None


def verify_path_sum(g: LabelledGraph, paths: Sequence[Sequence[int]], mode: str) -> bool:
    """Paths induced, pairwise disjoint, and all cross pairs joined (complete) or not (direct)."""
    want = mode == "complete"
    flat = [v for pth in paths for v in pth]
    if len(set(flat)) != len(flat):
        return False
    if not all(is_induced_path(g, pth) for pth in paths):
        return False
    for i, a in enumerate(paths):
        for b in paths[i + 1:]:
            if any(g.has_edge(x, y) != want for x in a for y in b):
                return False
    return True


def extract_isometric_path_sum(g: LabelledGraph,
                               target_lengths: Sequence[int]) -> list[tuple[int, ...]] | None:
    """Pairwise far-apart isometric paths of the requested lengths.

    For each target ``L`` a start vertex ``x`` outside ``B(X, L+1)`` (X = union of
    earlier paths) is paired with a vertex ``y`` of its component maximising
    ``d(x, y)`` (ties lexicographic); the first ``L`` edges of a BFS geodesic from
    ``x`` towards ``y`` avoid ``B(X, 1)``.
    """
    chosen: list[tuple[int, ...]] = []
    used: list[int] = []
    for length in target_lengths:
        if length < 0:
            raise ValueError("lengths must be >= 0")
        forbidden = ball(g, used, length + 1) if used else frozenset()
        best = None
        for x in range(g.n):
            if x in forbidden:
                continue
            dist = bfs_levels(g, x)
            far = max((d for d in dist if d != float("inf")), default=0)
            if far < length:
                continue
            y = dist.index(far)
            if best is None or far > best[0]:
                best = (far, x, y, dist)
        if best is None:
            return None
        _, x, y, dist = best
        # walk back from y along decreasing distance, then keep the x end
        path = [y]
        while path[-1] != x:
            v = path[-1]
            path.append(min(w for w in g.neighbors(v) if dist[w] == dist[v] - 1))
        path.reverse()
        chosen.append(tuple(path[: length + 1]))
        used.extend(path[: length + 1])
    return chosen


def verify_isometric_sum(g: LabelledGraph, paths: Sequence[Sequence[int]]) -> bool:
    for i, pth in enumerate(paths):
        if not is_induced_path(g, pth) or not isometric_check(g, pth):
            return False
        for other in paths[i + 1:]:
            if set(pth) & set(other) or any(g.has_edge(a, b) for a in pth for b in other):
                return False
    return True


def component_diameters(g: LabelledGraph) -> list[float]:
    out = []
    for comp in connected_components(g):
        out.append(max(max(d for d in bfs_levels(g, v) if d != float("inf")) for v in comp))
    return out


def antichain_width(relation: Sequence[Sequence[bool]]) -> int:
    """Largest antichain of a finite quasi-order given as a reflexive boolean matrix.

    Dilworth via bipartite matching on the strict part of its poset quotient.
    """
    n = len(relation)
    # collapse equivalent items
    reps: list[int] = []
    for i in range(n):
        if not any(relation[i][r] and relation[r][i] for r in reps):
            reps.append(i)
    m = len(reps)
    less = [[j for j in range(m) if j != i and relation[reps[i]][reps[j]]] for i in range(m)]
    match_r = [-1] * m

    def aug(i, seen):
        for j in less[i]:
            if j in seen:
                continue
            seen.add(j)
            if match_r[j] < 0 or aug(match_r[j], seen):
                match_r[j] = i
                return True
        return False

    matched = sum(1 for i in range(m) if aug(i, set()))
    return m - matched


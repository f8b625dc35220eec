"""Finite (optionally labelled) simple graphs and exhaustive structural queries.

Vertices are ``0..n-1``; adjacency is stored as one int bitmask per vertex so
that neighbourhood intersections in the search routines are single ``&``
operations.  ``names`` carries external identifiers such as grid coordinates.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import permutations, product
from typing import Hashable, Iterable, Iterator, Sequence

from ._bits import iter_bits, lowest, to_mask, to_set

INF = math.inf


@dataclass(frozen=True, eq=False)
class LabelledGraph:
    n: int
    adj: tuple[int, ...]
    labels: tuple[int, ...] | None = None
    names: tuple[Hashable, ...] | None = None

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length must equal n")
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            if row >> self.n:
                raise ValueError(f"vertex {v} has a neighbour outside 0..n-1")
            for w in iter_bits(row):
                if not self.adj[w] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at {{{v}, {w}}}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels length must equal n")
        if self.names is not None and len(self.names) != self.n:
            raise ValueError("names length must equal n")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None, names=None):
        adj = [0] * n
        for a, b in edges:
            if a == b:
                raise ValueError(f"loop at vertex {a}")
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return cls(n, tuple(adj), None if labels is None else tuple(labels),
                   None if names is None else tuple(names))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabelledGraph):
            return NotImplemented
        return (self.n, self.adj, self.labels) == (other.n, other.adj, other.labels)

    def __hash__(self):
        return hash((self.n, self.adj, self.labels))

    def __repr__(self) -> str:
        return f"LabelledGraph(n={self.n}, m={self.edge_count()})"

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(v, w) for v in range(self.n) for w in iter_bits(self.adj[v] >> (v + 1) << (v + 1))]

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def label(self, v: int) -> int | None:
        return None if self.labels is None else self.labels[v]

    def index_of(self, name: Hashable) -> int:
        if self.names is None:
            return int(name)
        try:
            return self._name_index()[name]
        except KeyError:
            raise KeyError(f"no vertex named {name!r}") from None

    def _name_index(self) -> dict:
        cache = self.__dict__.get("_names_cache")
        if cache is None:
            cache = {nm: i for i, nm in enumerate(self.names)}
            object.__setattr__(self, "_names_cache", cache)
        return cache

    def name(self, v: int) -> Hashable:
        return v if self.names is None else self.names[v]

    def induced_subgraph(self, vertices: Sequence[int]) -> "LabelledGraph":
        vertices = list(vertices)
        pos = {v: i for i, v in enumerate(vertices)}
        if len(pos) != len(vertices):
            raise ValueError("repeated vertex")
        adj = []
        for v in vertices:
            row = 0
            for w in iter_bits(self.adj[v]):
                if w in pos:
                    row |= 1 << pos[w]
            adj.append(row)
        labels = None if self.labels is None else tuple(self.labels[v] for v in vertices)
        names = None if self.names is None else tuple(self.names[v] for v in vertices)
        return LabelledGraph(len(vertices), tuple(adj), labels, names)

    def unlabelled(self) -> "LabelledGraph":
        return LabelledGraph(self.n, self.adj, None, self.names)

    # -- serialisation -------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "labels": None if self.labels is None else list(self.labels),
            "edges": [list(e) for e in self.edges()],
            "names": None if self.names is None else [_name_to_str(x) for x in self.names],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "LabelledGraph":
        names = data.get("names")
        if names is not None:
            names = [_name_from_str(x) for x in names]
        return cls.from_edges(int(data["n"]), [tuple(e) for e in data["edges"]],
                              data.get("labels"), names)

    @classmethod
    def from_json(cls, text: str) -> "LabelledGraph":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{", "  node [style=filled, fontsize=8];"]
        for v in range(self.n):
            attrs = [f'label="{_name_to_str(self.name(v))}"']
            if self.labels is not None:
                fill = {0: "white", 1: "black"}.get(self.labels[v], "gray")
                font = "white" if fill == "black" else "black"
                attrs += [f"fillcolor={fill}", f"fontcolor={font}"]
            nm = self.name(v)
            if isinstance(nm, tuple) and len(nm) == 2:
                attrs.append(f'pos="{nm[1]},{-nm[0]}!"')
            lines.append(f"  {v} [{', '.join(attrs)}];")
        for a, b in self.edges():
            lines.append(f"  {a} -- {b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _name_to_str(x) -> str:
    if isinstance(x, tuple):
        return ",".join(map(str, x))
    return str(x)


def _name_from_str(s):
    if isinstance(s, str):
        parts = s.split(",")
        if len(parts) > 1 and all(p.lstrip("-").isdigit() for p in parts):
            return tuple(int(p) for p in parts)
    return s


# -- small named graphs --------------------------------------------------

def path_graph(n: int) -> LabelledGraph:
    return LabelledGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> LabelledGraph:
    return LabelledGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> LabelledGraph:
    return LabelledGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def grid_graph(rows: int, cols: int) -> LabelledGraph:
    names = [(r, c) for r in range(rows) for c in range(cols)]
    idx = {nm: i for i, nm in enumerate(names)}
    edges = []
    for r, c in names:
        if c + 1 < cols:
            edges.append((idx[r, c], idx[r, c + 1]))
        if r + 1 < rows:
            edges.append((idx[r, c], idx[r + 1, c]))
    return LabelledGraph.from_edges(rows * cols, edges, names=names)


def direct_sum(*graphs: LabelledGraph) -> LabelledGraph:
    return _sum(graphs, complete=False)


def complete_sum(*graphs: LabelledGraph) -> LabelledGraph:
    return _sum(graphs, complete=True)


def _sum(graphs, complete: bool) -> LabelledGraph:
    edges, offset, blocks = [], 0, []
    for g in graphs:
        edges += [(a + offset, b + offset) for a, b in g.edges()]
        blocks.append(range(offset, offset + g.n))
        offset += g.n
    if complete:
        for i, bi in enumerate(blocks):
            for bj in blocks[i + 1:]:
                edges += [(a, b) for a in bi for b in bj]
    labelled = all(g.labels is not None for g in graphs)
    labels = [x for g in graphs for x in g.labels] if labelled else None
    return LabelledGraph.from_edges(offset, edges, labels)


# -- distances -----------------------------------------------------------

def bfs_levels(g: LabelledGraph, sources: int | Iterable[int]) -> list[float]:
    """Distance from a vertex (or set of vertices) to every vertex."""
    start = 1 << sources if isinstance(sources, int) else to_mask(sources)
    dist: list[float] = [INF] * g.n
    seen, frontier, d = start, start, 0
    while frontier:
        for v in iter_bits(frontier):
            dist[v] = d
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
        d += 1
    return dist


def distance_matrix(g: LabelledGraph) -> list[list[float]]:
    """All-pairs graphic distance; ``math.inf`` between components."""
    return [bfs_levels(g, v) for v in range(g.n)]


def diameter(g: LabelledGraph, vertices: Iterable[int] | None = None,
             dist: list[list[float]] | None = None) -> float:
    """Maximum distance, optionally over pairs drawn from ``vertices`` only
    (distances are still measured in all of ``g``)."""
    if g.n == 0:
        return 0
    dist = dist if dist is not None else distance_matrix(g)
    vs = list(range(g.n)) if vertices is None else list(vertices)
    return max((dist[a][b] for a in vs for b in vs), default=0)


def ball(g: LabelledGraph, centre: Iterable[int], r: int) -> frozenset[int]:
    if r < 0:
        raise ValueError("radius must be >= 0")
    centre = list(centre)
    seen = frontier = to_mask(centre)
    for _ in range(r):
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        if not frontier:
            break
        seen |= frontier
    return to_set(seen)


def connected_components(g: LabelledGraph) -> list[frozenset[int]]:
    left = g.all_mask
    comps = []
    while left:
        v = lowest(left)
        reach = frontier = 1 << v
        while frontier:
            nxt = 0
            for w in iter_bits(frontier):
                nxt |= g.adj[w]
            frontier = nxt & ~reach
            reach |= frontier
        comps.append(to_set(reach))
        left &= ~reach
    return comps


def isometric_check(g: LabelledGraph, vertices: Iterable[int]) -> bool:
    vs = sorted(set(vertices))
    sub = g.induced_subgraph(vs)
    for i, v in enumerate(vs):
        dg = bfs_levels(g, v)
        ds = bfs_levels(sub, i)
        if any(ds[j] != dg[w] for j, w in enumerate(vs)):
            return False
    return True


# -- induced paths -------------------------------------------------------

@dataclass(frozen=True)
class InducedPath:
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        """Length in edges."""
        return len(self.vertices) - 1

    def __iter__(self):
        return iter(self.vertices)


def is_induced_path(g: LabelledGraph, seq: Sequence[int]) -> bool:
    seq = list(seq)
    if len(set(seq)) != len(seq) or not seq:
        return False
    for i, a in enumerate(seq):
        for j in range(i + 1, len(seq)):
            if g.has_edge(a, seq[j]) != (j == i + 1):
                return False
    return True


def iter_induced_paths(g: LabelledGraph, min_len: int = 1, max_len: int | None = None,
                       allowed: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every induced path with ``min_len <= edges <= max_len``, once per undirected path.

    The orientation reported starts at the smaller endpoint, and the stream is
    in lexicographic order of vertex sequences.  ``allowed`` restricts the
    search to a vertex bitmask.
    """
    if min_len < 1:
        raise ValueError("min_len must be >= 1")
    adj = g.adj
    closed = [adj[v] | (1 << v) for v in range(g.n)]
    allowed = g.all_mask if allowed is None else allowed
    limit = g.n if max_len is None else max_len
    path: list[int] = []

    def extend(tail: int, blocked: int) -> Iterator[tuple[int, ...]]:
        # blocked: path vertices plus neighbours of all path vertices but the tail
        cand = adj[tail] & ~blocked & allowed
        nb = blocked | closed[tail]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            path.append(v)
            edges = len(path) - 1
            if edges >= min_len and v > path[0]:
                yield tuple(path)
            if edges < limit:
                yield from extend(v, nb)
            path.pop()

    for s in iter_bits(allowed):
        path.append(s)
        yield from extend(s, 1 << s)
        path.pop()


def enumerate_induced_paths(g: LabelledGraph, exact_len: int,
                            limit: int | None = None) -> Iterator[InducedPath]:
    if exact_len < 1:
        raise ValueError("exact_len must be >= 1")
    count = 0
    for p in iter_induced_paths(g, exact_len, exact_len):
        yield InducedPath(p)
        count += 1
        if limit is not None and count >= limit:
            return


def has_induced_path(g: LabelledGraph, length: int, allowed: int | None = None) -> bool:
    return next(iter_induced_paths(g, length, length, allowed), None) is not None


def detour(g: LabelledGraph) -> int:
    best = 0
    while has_induced_path(g, best + 1):
        best += 1
    return best


def longest_induced_path(g: LabelledGraph, allowed: int | None = None) -> tuple[int, ...] | None:
    """Lexicographically first among the longest induced paths (None if edgeless)."""
    best = None
    length = 1
    while True:
        p = next(iter_induced_paths(g, length, length, allowed), None)
        if p is None:
            return best
        best = p
        length += 1


def detour_between(g: LabelledGraph, a: int, b: int) -> float:
    """Longest induced path joining ``a`` and ``b`` (``-inf`` when none)."""
    if a == b:
        return 0
    best = -INF
    for p in iter_induced_paths(g, 1):
        if {p[0], p[-1]} == {a, b}:
            best = max(best, len(p) - 1)
    return best


# -- embeddings ----------------------------------------------------------

@dataclass(frozen=True)
class Embedding:
    map: tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.map[v]


def is_valid_embedding(pattern: LabelledGraph, host: LabelledGraph, emb: Embedding | Sequence[int],
                       respect_labels: bool = False) -> bool:
    m = emb.map if isinstance(emb, Embedding) else tuple(emb)
    if len(m) != pattern.n or len(set(m)) != len(m):
        return False
    if any(not 0 <= x < host.n for x in m):
        return False
    for a in range(pattern.n):
        if respect_labels and pattern.labels is not None and host.labels is not None:
            if pattern.labels[a] != host.labels[m[a]]:
                return False
        for b in range(a + 1, pattern.n):
            if pattern.has_edge(a, b) != host.has_edge(m[a], m[b]):
                return False
    return True


class EmbeddingSearch:
    """Exhaustive backtracking for induced (optionally label-preserving) embeddings.

    Every unplaced pattern vertex keeps a candidate mask that is narrowed after
    each assignment (forward checking); the next vertex to place is the one with
    the fewest candidates, lowest index on ties, so the search is deterministic.
    ``restrict`` maps pattern vertices to host masks they must land in.  ``nodes``
    counts assignments tried and is reported alongside absence certificates.
    """

    def __init__(self, pattern: LabelledGraph, host: LabelledGraph, respect_labels: bool = False,
                 restrict: dict[int, int] | None = None):
        self.pattern, self.host = pattern, host
        self.nodes = 0
        full = host.all_mask
        self._non = [full & ~row & ~(1 << v) for v, row in enumerate(host.adj)]
        hdeg = [host.degree(v) for v in range(host.n)]
        use_labels = respect_labels and pattern.labels is not None and host.labels is not None
        static = []
        for p in range(pattern.n):
            dp = pattern.degree(p)
            ndp = pattern.n - 1 - dp
            mask = 0
            for h in range(host.n):
                if hdeg[h] < dp or host.n - 1 - hdeg[h] < ndp:
                    continue
                if use_labels and pattern.labels[p] != host.labels[h]:
                    continue
                mask |= 1 << h
            if restrict and p in restrict:
                mask &= restrict[p]
            static.append(mask)
        self._static = static

    def __iter__(self) -> Iterator[Embedding]:
        k = self.pattern.n
        if k > self.host.n or any(d == 0 for d in self._static):
            return
        if k == 0:
            yield Embedding(())
            return
        image = [0] * k
        host_adj, non, padj = self.host.adj, self._non, self.pattern.adj

        def rec(doms: list[int], placed: int):
            j, size = -1, None
            for i in range(k):
                if not placed >> i & 1:
                    c = doms[i].bit_count()
                    if size is None or c < size:
                        j, size = i, c
            if j < 0:
                yield Embedding(tuple(image))
                return
            cand = doms[j]
            pj = padj[j]
            now = placed | (1 << j)
            while cand:
                low = cand & -cand
                h = low.bit_length() - 1
                cand ^= low
                self.nodes += 1
                image[j] = h
                hn, hx = host_adj[h], non[h]
                nd = list(doms)
                for i in range(k):
                    if now >> i & 1:
                        continue
                    d = nd[i] & (hn if pj >> i & 1 else hx)
                    if not d:
                        break
                    nd[i] = d
                else:
                    yield from rec(nd, now)

        yield from rec(list(self._static), 0)

    def first(self) -> Embedding | None:
        return next(iter(self), None)


def find_embedding(pattern: LabelledGraph, host: LabelledGraph,
                   respect_labels: bool = False) -> Embedding | None:
    return EmbeddingSearch(pattern, host, respect_labels).first()


def count_embeddings(pattern: LabelledGraph, host: LabelledGraph, respect_labels: bool = False) -> int:
    return sum(1 for _ in EmbeddingSearch(pattern, host, respect_labels))


# -- modules and primality ------------------------------------------------

def is_module(g: LabelledGraph, vertices: Iterable[int]) -> bool:
    m = to_mask(vertices)
    for v in iter_bits(g.all_mask & ~m):
        hit = g.adj[v] & m
        if hit and hit != m:
            return False
    return True


def _module_closure(g: LabelledGraph, m: int) -> int:
    outside = g.all_mask & ~m
    changed = True
    while changed:
        changed = False
        for v in iter_bits(outside):
            hit = g.adj[v] & m
            if hit and hit != m:
                m |= 1 << v
                outside &= ~(1 << v)
                changed = True
    return m


def minimal_module_containing(g: LabelledGraph, a: int, b: int) -> frozenset[int]:
    """Smallest autonomous set containing ``a`` and ``b`` (closure under splitters)."""
    if a == b:
        raise ValueError("need two distinct vertices")
    return to_set(_module_closure(g, (1 << a) | (1 << b)))


@dataclass(frozen=True)
class PrimalityResult:
    prime: bool
    witness: frozenset[int] | None
    too_small: bool = False

    def __iter__(self):
        return iter((self.prime, self.witness))


def is_prime(g: LabelledGraph) -> PrimalityResult:
    """Prime means: at least 4 vertices and only trivial modules.

    Graphs with <= 3 vertices come back with ``too_small=True``.  The witness of
    a non-prime graph is the first (lexicographic pair order) minimal module
    that is not the whole vertex set.
    """
    if g.n <= 3:
        return PrimalityResult(False, None, too_small=True)
    full = g.all_mask
    for a in range(g.n):
        for b in range(a + 1, g.n):
            m = _module_closure(g, (1 << a) | (1 << b))
            if m != full:
                return PrimalityResult(False, to_set(m))
    return PrimalityResult(True, None)


def is_disjoint_union_of_paths(g: LabelledGraph) -> tuple[bool, list[int] | None]:
    """Whether every component is a path; lengths (in edges) sorted ascending."""
    lengths = []
    for comp in connected_components(g):
        k = len(comp)
        degs = [g.degree(v) for v in comp]
        edges = sum(degs) // 2
        if max(degs) > 2 or edges != k - 1:
            return False, None
        lengths.append(k - 1)
    return True, sorted(lengths)


# -- isomorphism classes and ages ------------------------------------------

def _refined_degrees(g: LabelledGraph) -> list[int]:
    col = [(g.degree(v), g.label(v) if g.labels is not None else 0) for v in range(g.n)]
    ranks = {c: i for i, c in enumerate(sorted(set(col)))}
    col = [ranks[c] for c in col]
    while True:
        new = [(col[v], tuple(sorted(col[w] for w in iter_bits(g.adj[v])))) for v in range(g.n)]
        ranks = {c: i for i, c in enumerate(sorted(set(new)))}
        new = [ranks[c] for c in new]
        if len(set(new)) == len(set(col)):
            return new
        col = new


def canonical_form(g: LabelledGraph) -> tuple:
    """Smallest (labels, edge list) encoding over vertex orders that respect the
    colour refinement; equal exactly for isomorphic (label-preserving) graphs."""
    col = _refined_degrees(g)
    groups = [[v for v in range(g.n) if col[v] == c] for c in sorted(set(col))]
    edges = g.edges()
    best = None
    for choice in product(*(permutations(grp) for grp in groups)):
        order = [v for grp in choice for v in grp]
        pos = {v: i for i, v in enumerate(order)}
        labels = () if g.labels is None else tuple(g.labels[v] for v in order)
        code = (labels, tuple(sorted(tuple(sorted((pos[a], pos[b]))) for a, b in edges)))
        if best is None or code < best:
            best = code
    return (g.n,) + (best or ((), ()))


def graph_from_canonical(form: tuple) -> LabelledGraph:
    n, labels, edges = form
    return LabelledGraph.from_edges(n, edges, labels or None)


_CLASSES: dict[int, tuple] = {}


def iso_classes(n: int) -> tuple[tuple, ...]:
    """Canonical forms of all unlabelled graphs on ``n`` vertices."""
    if n not in _CLASSES:
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        forms = set()
        for code in range(1 << len(pairs)):
            g = LabelledGraph.from_edges(n, [p for b, p in enumerate(pairs) if code >> b & 1])
            forms.add(canonical_form(g))
        _CLASSES[n] = tuple(sorted(forms))
    return _CLASSES[n]


def age_upto(g: LabelledGraph, size: int) -> frozenset[tuple]:
    """Canonical forms of the unlabelled induced subgraphs of ``g`` on 1..size vertices,
    found by testing every isomorphism class for an embedding."""
    host = g.unlabelled()
    out = set()
    for n in range(1, size + 1):
        for form in iso_classes(n):
            if find_embedding(graph_from_canonical(form), host) is not None:
                out.add(form)
    return frozenset(out)

"""Finite windows of lexicographical sums of labelled paths over a chain of rows.

Row ``i`` is a copy of the labelled path ``P_u``; two vertices in different
rows are joined exactly when the star table evaluates to 1 on their labels.
Vertices are always named ``(row, col)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from ._bits import iter_bits
from .graphs import LabelledGraph, is_induced_path, iter_induced_paths
from .words import Word, parse_word_spec, periodic_word


class WindowSpecError(ValueError):
    """A window description that cannot be built."""


@dataclass(frozen=True)
class StarTable:
    table: tuple[tuple[int, ...], ...]
    name: str = "custom"

    def __post_init__(self):
        k = len(self.table)
        if k < 1 or any(len(r) != k for r in self.table):
            raise ValueError("star table must be square and nonempty")
        if any(x not in (0, 1) for r in self.table for x in r):
            raise ValueError("star table entries must be 0 or 1")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]], name: str = "custom") -> "StarTable":
        return cls(tuple(tuple(int(x) for x in r) for r in rows), name)

    @property
    def k(self) -> int:
        return len(self.table)

    def __call__(self, i: int, j: int) -> int:
        return self.table[i][j]

    def __eq__(self, other):
        if not isinstance(other, StarTable):
            return NotImplemented
        return self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.table]


def star_boolean_sum() -> StarTable:
    return StarTable(((0, 1), (1, 0)), "boolean_sum")


def star_projection(which: str | int) -> StarTable:
    if which in ("first", 1, "1"):
        return StarTable(((0, 0), (1, 1)), "proj1")
    if which in ("second", 2, "2"):
        return StarTable(((0, 1), (0, 1)), "proj2")
    raise ValueError(f"projection must be first or second, got {which!r}")


def star_congruence(k: int) -> StarTable:
    if k < 2:
        raise ValueError("congruence star needs k >= 2")
    return StarTable(tuple(tuple(int(i != j) for j in range(k)) for i in range(k)), f"congruence:{k}")


def star_constant(value: int, k: int = 2) -> StarTable:
    return StarTable(tuple((value,) * k for _ in range(k)), f"const{value}")


def star_dual(s: StarTable) -> StarTable:
    """``i *d j = j * i``."""
    return StarTable(tuple(zip(*s.table)), f"dual({s.name})")


def star_bar(s: StarTable) -> StarTable:
    """``i bar j = (1-i) * (1-j)``; binary tables only."""
    if s.k != 2:
        raise ValueError("bar transform is defined for binary tables")
    t = s.table
    return StarTable(((t[1][1], t[1][0]), (t[0][1], t[0][0])), f"bar({s.name})")


def all_binary_stars() -> list[StarTable]:
    out = []
    for code in range(16):
        bits = [(code >> b) & 1 for b in range(4)]
        out.append(StarTable(((bits[0], bits[1]), (bits[2], bits[3])), f"table{code:04b}"))
    return out


def _covered_tables() -> set:
    bs, p1, p2 = star_boolean_sum(), star_projection(1), star_projection(2)
    return {s.table for s in (bs, p1, p2, star_bar(p1), star_bar(p2))}


def is_longenough_star(s: StarTable) -> bool:
    """Whether the path-locality threshold is proved for this table (Boolean sum,
    the projections, and their dual/bar transforms)."""
    return s.k == 2 and s.table in _covered_tables()


def parse_star(spec) -> StarTable:
    if isinstance(spec, StarTable):
        return spec
    if isinstance(spec, dict):
        if "table" not in spec:
            raise WindowSpecError("star object needs a 'table' key")
        return StarTable.of(spec["table"])
    if not isinstance(spec, str):
        raise WindowSpecError(f"cannot read star {spec!r}")
    s = spec.strip()
    if s == "boolean_sum":
        return star_boolean_sum()
    if s in ("proj1", "first_projection"):
        return star_projection(1)
    if s in ("proj2", "second_projection"):
        return star_projection(2)
    if s in ("zero", "const0"):
        return star_constant(0)
    if s in ("one", "const1"):
        return star_constant(1)
    if s.startswith("congruence:"):
        try:
            return star_congruence(int(s.split(":", 1)[1]))
        except ValueError as exc:
            raise WindowSpecError(str(exc)) from None
    raise WindowSpecError(f"unknown star {spec!r}")


@dataclass(frozen=True)
class GridWindow:
    row_intervals: tuple[tuple[int, int], ...]
    base_word: Word
    star: StarTable
    graph: LabelledGraph

    @property
    def rows(self) -> int:
        return len(self.row_intervals)

    def vertex(self, row: int, col: int) -> int:
        return self.graph.index_of((row, col))

    def __contains__(self, rc) -> bool:
        r, c = rc
        return 0 <= r < self.rows and self.row_intervals[r][0] <= c < self.row_intervals[r][1]

    def coords(self, seq: Sequence[int]) -> list[tuple[int, int]]:
        return [self.graph.names[v] for v in seq]

    def row_of(self, v: int) -> int:
        return self.graph.names[v][0]

    def row_mask(self, row: int) -> int:
        lo, hi = self.row_intervals[row]
        return sum(1 << self.vertex(row, c) for c in range(lo, hi))

    def rows_mask(self, rows) -> int:
        m = 0
        for r in rows:
            m |= self.row_mask(r)
        return m

    def describe(self) -> dict:
        return {"rows": self.rows, "intervals": [list(iv) for iv in self.row_intervals],
                "star": self.star.to_list(), "n": self.graph.n}


def _build(u: Word, star: StarTable, intervals: Sequence[tuple[int, int]]) -> GridWindow:
    if u.alphabet_size > star.k:
        raise WindowSpecError(f"word alphabet {u.alphabet_size} exceeds star size {star.k}")
    names, labels = [], []
    for r, (lo, hi) in enumerate(intervals):
        if not 0 <= lo < hi:
            raise WindowSpecError(f"row {r}: empty or negative interval [{lo}, {hi})")
        if hi > len(u):
            raise WindowSpecError(f"row {r}: interval [{lo}, {hi}) exceeds word length {len(u)}")
        for c in range(lo, hi):
            names.append((r, c))
            labels.append(u[c])
    n = len(names)
    # vertices per (row, label), so cross-row adjacency is a few ORs
    by_row_label: dict[tuple[int, int], int] = {}
    for v, (r, c) in enumerate(names):
        by_row_label[r, labels[v]] = by_row_label.get((r, labels[v]), 0) | (1 << v)
    adj = [0] * n
    idx = {nm: v for v, nm in enumerate(names)}
    for v, (r, c) in enumerate(names):
        row = 0
        for dc in (-1, 1):
            w = idx.get((r, c + dc))
            if w is not None:
                row |= 1 << w
        a = labels[v]
        for r2 in range(len(intervals)):
            if r2 == r:
                continue
            for b in range(star.k):
                # earlier row's label on the left
                val = star(a, b) if r < r2 else star(b, a)
                if val:
                    row |= by_row_label.get((r2, b), 0)
        adj[v] = row
    g = LabelledGraph(n, tuple(adj), tuple(labels), tuple(names))
    return GridWindow(tuple(tuple(iv) for iv in intervals), u, star, g)


def build_G_window(u: Word, star: StarTable, rows: int, cols: int) -> GridWindow:
    if rows < 1 or cols < 1:
        raise WindowSpecError("rows and cols must be >= 1")
    if cols > len(u):
        raise WindowSpecError(f"cols={cols} exceeds word length {len(u)}")
    return _build(u, star, [(0, cols)] * rows)


def build_Q_window(u: Word, star: StarTable, intervals: Sequence[tuple[int, int]] | None = None,
                   rows: int | None = None, offset: int = 5) -> GridWindow:
    """Row ``n`` restricted to ``intervals[n]``; default ``[0, n+offset)`` for ``rows`` rows."""
    if intervals is None:
        if rows is None:
            raise WindowSpecError("give intervals or rows")
        intervals = [(0, n + offset) for n in range(rows)]
    if not intervals:
        raise WindowSpecError("need at least one row")
    return _build(u, star, list(intervals))


def build_Gk_window(k: int, rows: int, cols: int) -> GridWindow:
    """Congruence graph window straight from the residue rule (no star table)."""
    if k < 2:
        raise WindowSpecError("k must be >= 2")
    if rows < 1 or cols < 1:
        raise WindowSpecError("rows and cols must be >= 1")
    names = [(r, c) for r in range(rows) for c in range(cols)]
    edges = []
    for a, (x, y) in enumerate(names):
        for b in range(a + 1, len(names)):
            x2, y2 = names[b]
            if (x == x2 and abs(y - y2) == 1) or (x != x2 and (y - y2) % k != 0):
                edges.append((a, b))
    g = LabelledGraph.from_edges(len(names), edges, [c % k for _, c in names], names)
    return GridWindow(tuple((0, cols) for _ in range(rows)), periodic_word(k, cols),
                      star_congruence(k), g)


def build_Qk_window(k: int, rows: int, offset: int = 5) -> GridWindow:
    return build_Q_window(periodic_word(k, rows - 1 + offset), star_congruence(k),
                          rows=rows, offset=offset)


def sub_window_embedding(small: GridWindow, big: GridWindow, row_map: Sequence[int],
                         col_shift: int = 0) -> tuple[int, ...]:
    """Vertex map of a row-monotone inclusion of ``small`` into ``big``.

    Row ``r`` of ``small`` goes to row ``row_map[r]`` of ``big`` with columns
    shifted by ``col_shift``.
    """
    if any(b <= a for a, b in zip(row_map, row_map[1:])):
        raise ValueError("row map must be strictly increasing")
    out = []
    for v in range(small.graph.n):
        r, c = small.graph.names[v]
        out.append(big.vertex(row_map[r], c + col_shift))
    return tuple(out)


def sharpness_path(k: int, window: GridWindow | None = None) -> tuple[tuple[int, int], ...]:
    """The two-row induced path with five edges in the congruence graph."""
    if k < 2:
        raise ValueError("k must be >= 2")
    seq = ((0, 0), (1, 1), (0, k), (0, k + 1), (1, 2 * k), (0, 2 * k + 1))
    w = window if window is not None else build_Gk_window(k, 2, 2 * k + 2)
    verts = [w.vertex(*p) for p in seq]
    if not is_induced_path(w.graph, verts):
        raise AssertionError(f"sharpness sequence for k={k} is not an induced path")
    return seq


@dataclass(frozen=True)
class Claim4Witness:
    graph: LabelledGraph
    trace: tuple[int, ...]  # columns of R adjacent to x

    def trace_blocks(self) -> list[tuple[int, int]]:
        """Maximal runs of consecutive adjacent columns as (start, end) inclusive."""
        out: list[tuple[int, int]] = []
        for y in self.trace:
            if out and out[-1][1] == y - 1:
                out[-1] = (out[-1][0], y)
            else:
                out.append((y, y))
        return out


def claim4_witness(k: int, m: int) -> Claim4Witness:
    """Row-0 path on columns ``0..m`` plus the vertex ``(1, 0)``, unlabelled."""
    if m < max(k + 1, 6):
        raise ValueError(f"m must be >= max(k+1, 6) = {max(k + 1, 6)}")
    w = build_Gk_window(k, 2, m + 1)
    verts = [w.vertex(0, y) for y in range(m + 1)] + [w.vertex(1, 0)]
    g = w.graph.induced_subgraph(verts).unlabelled()
    trace = tuple(y for y in range(m + 1) if g.has_edge(m + 1, y))
    return Claim4Witness(g, trace)


def read_window_spec(data: dict | str) -> GridWindow:
    """Build from the JSON window description.

    ``kind`` is ``G`` (default: word, star, rows, cols), ``Q`` (word, star and
    either intervals or rows with an optional offset), ``Gk`` (k, rows, cols)
    or ``Qk`` (k, rows, optional offset).
    """
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict):
        raise WindowSpecError("window spec must be a JSON object")
    kind = data.get("kind", "G")
    try:
        if kind == "Gk":
            return build_Gk_window(int(data["k"]), int(data["rows"]), int(data["cols"]))
        if kind == "Qk":
            return build_Qk_window(int(data["k"]), int(data["rows"]), int(data.get("offset", 5)))
        if kind not in ("G", "Q"):
            raise WindowSpecError(f"unknown window kind {kind!r}")
        star = parse_star(data["star"])
        intervals = data.get("intervals")
        rows = data.get("rows")
        cols = data.get("cols")
        if intervals is None and kind == "Q":
            if rows is None:
                raise WindowSpecError("Q window needs rows or intervals")
            off = int(data.get("offset", 5))
            intervals = [(0, n + off) for n in range(int(rows))]
        if intervals is not None:
            intervals = [tuple(int(x) for x in iv) for iv in intervals]
            if not intervals:
                raise WindowSpecError("need at least one row")
            need = max(hi for _, hi in intervals)
        else:
            if rows is None or cols is None:
                raise WindowSpecError("need rows and cols (or intervals)")
            need = int(cols)
        u = parse_word_spec(data["word"], need, extend=True)
    except KeyError as exc:
        raise WindowSpecError(f"missing key {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, WindowSpecError):
            raise
        raise WindowSpecError(str(exc)) from None
    if intervals is not None:
        return build_Q_window(u, star, intervals)
    return build_G_window(u, star, int(rows), int(cols))


def rows_interchangeable(window: GridWindow, rows: Sequence[int] | None = None) -> bool:
    """Whether any permutation of the given rows is an automorphism: needs a
    symmetric star and identical column intervals."""
    rows = list(range(window.rows)) if rows is None else list(rows)
    t = window.star.table
    symmetric = all(t[i][j] == t[j][i] for i in range(window.star.k) for j in range(window.star.k))
    return symmetric and len({window.row_intervals[r] for r in rows}) <= 1


def iter_window_paths(window: GridWindow, min_len: int, max_len: int | None = None,
                      rows: Sequence[int] | None = None, multirow_only: bool = False,
                      up_to_row_symmetry: bool = False):
    """Induced paths of the window graph with ``min_len..max_len`` edges.

    Plain mode lists every path once (smaller endpoint first, lexicographic).
    With ``up_to_row_symmetry`` only paths whose rows, read from the start
    vertex, appear in increasing order of first occurrence are produced; every
    path is the image of one of these under a row permutation, which is an
    automorphism when :func:`rows_interchangeable` holds.
    """
    g = window.graph
    rows = list(range(window.rows)) if rows is None else sorted(set(rows))
    allowed = window.rows_mask(rows)
    row_of = [nm[0] for nm in g.names]
    if not up_to_row_symmetry:
        for p in iter_induced_paths(g, min_len, max_len, allowed):
            if multirow_only and all(row_of[v] == row_of[p[0]] for v in p):
                continue
            yield p
        return
    if not rows_interchangeable(window, rows):
        raise ValueError("row symmetry needs a symmetric star and equal row intervals")
    if min_len < 1:
        raise ValueError("min_len must be >= 1")
    limit = g.n if max_len is None else max_len
    adj = g.adj
    closed = [a | (1 << v) for v, a in enumerate(adj)]
    # prefix[j]: vertices in the first j+1 allowed rows
    prefix = [window.rows_mask(rows[: j + 1]) for j in range(len(rows))]
    rank = {r: i for i, r in enumerate(rows)}
    top = len(rows) - 1
    for s in iter_bits(window.row_mask(rows[0])):
        path = [s]
        cands = [adj[s] & prefix[min(1, top)]]
        blocked = [closed[s]]
        used = [1]
        while cands:
            c = cands[-1]
            if not c:
                cands.pop()
                blocked.pop()
                used.pop()
                path.pop()
                continue
            low = c & -c
            cands[-1] = c ^ low
            v = low.bit_length() - 1
            nused = max(used[-1], rank[row_of[v]] + 1)
            edges = len(path)
            if edges >= min_len and not (multirow_only and nused == 1):
                yield (*path, v)
            if edges < limit:
                nb = blocked[-1]
                cands.append(adj[v] & ~nb & prefix[min(nused, top)])
                blocked.append(nb | closed[v])
                used.append(nused)
                path.append(v)

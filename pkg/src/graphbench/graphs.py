"""Simple undirected graphs: construction, interchange formats, traversal.

Vertices are dense integers ``0..n-1``. A :class:`Graph` is immutable once
built, so instances can be shared freely between threads or worker
processes. Two text formats are supported:

* edge lists -- one ``"u v"`` line per edge, smaller index first, with an
  optional ``# n=<count>`` first line that preserves isolated vertices;
* graph6 -- the compact printable encoding used by small-graph corpora
  (short form only, ``n <= 62``): one byte ``n+63`` followed by the
  upper-triangle adjacency bits in column order ``(0,1),(0,2),(1,2),
  (0,3),...``, packed big-endian into 6-bit groups offset by 63 and
  zero-padded.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

UNREACHABLE = -1

_HEADER_RE = re.compile(r"#\s*n\s*=\s*(\d+)\s*$")


class GraphError(ValueError):
    """Invalid graph structure: self-loop, duplicate edge, or bad index."""


class FormatError(ValueError):
    """Malformed edge-list or graph6 payload."""


class Graph:
    """Immutable simple undirected unweighted graph on vertices 0..n-1."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        n = int(n)
        if n < 1:
            raise GraphError(f"vertex count must be >= 1, got {n}")
        seen: set[tuple[int, int]] = set()
        canon: list[tuple[int, int]] = []
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
            canon.append(e)
        canon.sort()
        self._n = n
        self._edges = tuple(canon)
        self._edge_set = seen

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def has_edge(self, u: int, v: int) -> bool:
        e = (u, v) if u < v else (v, u)
        return e in self._edge_set

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.zeros(self._n, dtype=np.int64)
        if self._edges:
            e = np.asarray(self._edges)
            np.add.at(deg, e[:, 0], 1)
            np.add.at(deg, e[:, 1], 1)
        deg.flags.writeable = False
        return deg

    @cached_property
    def adjacency_matrix(self) -> np.ndarray:
        """Symmetric 0/1 matrix as float64 with zero diagonal (read-only)."""
        a = np.zeros((self._n, self._n))
        if self._edges:
            e = np.asarray(self._edges)
            a[e[:, 0], e[:, 1]] = 1.0
            a[e[:, 1], e[:, 0]] = 1.0
        a.flags.writeable = False
        return a

    @cached_property
    def neighbors(self) -> tuple[np.ndarray, ...]:
        """Per-vertex sorted neighbor arrays."""
        lists: list[list[int]] = [[] for _ in range(self._n)]
        for u, v in self._edges:
            lists[u].append(v)
            lists[v].append(u)
        return tuple(np.asarray(sorted(l), dtype=np.int64) for l in lists)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex v renamed to perm[v]."""
        perm = [int(p) for p in perm]
        if sorted(perm) != list(range(self._n)):
            raise GraphError("relabeling is not a permutation of 0..n-1")
        return Graph(self._n, [(perm[u], perm[v]) for u, v in self._edges])

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self):
        return hash((self._n, self._edges))

    def __repr__(self):
        return f"Graph(n={self._n}, m={self.m})"

    # Keep pickles lean: derived arrays are rebuilt on demand.
    def __getstate__(self):
        return (self._n, self._edges)

    def __setstate__(self, state):
        n, edges = state
        self._n = n
        self._edges = edges
        self._edge_set = set(edges)


@dataclass(frozen=True)
class GeodesicData:
    """All-pairs hop distances and shortest-path counts.

    ``dist[i, j]`` is the hop count of a shortest i-j path, or
    ``UNREACHABLE`` when none exists; ``sigma[i, j]`` counts the distinct
    shortest paths (0 when unreachable, 1 on the diagonal). Together with
    the adjacency relation these matrices determine, level by level, how
    many shortest paths run through any given vertex.
    """

    dist: np.ndarray
    sigma: np.ndarray


def bfs_all_pairs(g: Graph) -> GeodesicData:
    """Breadth-first distances and geodesic counts from every source.

    Runs all sources simultaneously: at each level the frontier's path
    counts are pushed one step through the adjacency matrix, so the work
    per level is a single n-by-n matrix product.
    """
    n = g.n
    a = g.adjacency_matrix
    dist = np.full((n, n), UNREACHABLE, dtype=np.int32)
    sigma = np.zeros((n, n))
    np.fill_diagonal(dist, 0)
    np.fill_diagonal(sigma, 1.0)
    frontier = np.eye(n, dtype=bool)
    level = 0
    while frontier.any():
        arriving = (sigma * frontier) @ a
        newly = (arriving > 0) & (dist == UNREACHABLE)
        level += 1
        dist[newly] = level
        sigma[newly] = arriving[newly]
        frontier = newly
    dist.flags.writeable = False
    sigma.flags.writeable = False
    return GeodesicData(dist=dist, sigma=sigma)


def is_connected(g: Graph) -> bool:
    """True iff a BFS from vertex 0 reaches all n vertices."""
    n = g.n
    if n == 1:
        return True
    if g.m < n - 1:
        return False
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    reached = 1
    neighbors = g.neighbors
    while queue:
        v = queue.popleft()
        for w in neighbors[v]:
            if not seen[w]:
                seen[w] = True
                reached += 1
                queue.append(int(w))
    return reached == n


def parse_edge_list(text: str, n_hint: int | None = None) -> Graph:
    """Parse a ``"u v"``-per-line edge list into a Graph.

    The vertex count is ``n_hint`` when given, else the value of a
    ``# n=<count>`` first-line header, else ``1 + max index``. Self-loops,
    duplicate edges, and malformed tokens are rejected with the offending
    line number.
    """
    lines = text.splitlines()
    start = 0
    header_n = None
    if lines and lines[0].lstrip().startswith("#"):
        match = _HEADER_RE.match(lines[0].strip())
        if not match:
            raise FormatError("line 1: unrecognized header (expected '# n=<count>')")
        header_n = int(match.group(1))
        start = 1
    n = int(n_hint) if n_hint is not None else header_n

    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    max_idx = -1
    for lineno, raw in enumerate(lines[start:], start + 1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected two vertex indices, got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer vertex token in {raw!r}") from None
        if u < 0 or v < 0:
            raise FormatError(f"line {lineno}: negative vertex index in {raw!r}")
        if u == v:
            raise FormatError(f"line {lineno}: self-loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise FormatError(f"line {lineno}: duplicate edge {e}")
        seen.add(e)
        edges.append(e)
        max_idx = max(max_idx, e[1])

    if n is None:
        if max_idx < 0:
            raise FormatError("empty edge list and no vertex-count header or hint")
        n = max_idx + 1
    if max_idx >= n:
        raise FormatError(f"vertex index {max_idx} out of range for n={n}")
    return Graph(n, edges)


def format_edge_list(g: Graph) -> str:
    """Canonical edge-list text: header line, then one sorted edge per line."""
    lines = [f"# n={g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def _pair_order(n: int) -> list[tuple[int, int]]:
    # graph6 bit order: upper triangle by columns.
    return [(i, j) for j in range(1, n) for i in range(j)]


def parse_graph6(record: str) -> Graph:
    """Decode one short-form graph6 record (n <= 62)."""
    record = record.strip()
    if not record:
        raise FormatError("empty graph6 record")
    vals = []
    for ch in record:
        o = ord(ch)
        if o < 63 or o > 126:
            raise FormatError(f"graph6 byte {o} outside printable range 63..126")
        vals.append(o - 63)
    if vals[0] == 63:
        raise FormatError("long-form graph6 (n > 62) is not supported")
    n = vals[0]
    if n == 0:
        raise FormatError("graph6 record encodes an empty vertex set")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(vals) - 1 != nbytes:
        raise FormatError(
            f"graph6 payload has {len(vals) - 1} bytes, expected {nbytes} for n={n}"
        )
    bits = []
    for v in vals[1:]:
        bits.extend((v >> shift) & 1 for shift in (5, 4, 3, 2, 1, 0))
    if any(bits[nbits:]):
        raise FormatError("nonzero padding bits in graph6 record")
    edges = [pair for pair, bit in zip(_pair_order(n), bits) if bit]
    return Graph(n, edges)


def format_graph6(g: Graph) -> str:
    """Encode a graph (n <= 62) as one short-form graph6 record."""
    n = g.n
    if n > 62:
        raise FormatError(f"short-form graph6 supports n <= 62, got n={n}")
    bits = [1 if g.has_edge(i, j) else 0 for i, j in _pair_order(n)]
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(n + 63)]
    for k in range(0, len(bits), 6):
        group = 0
        for b in bits[k:k + 6]:
            group = (group << 1) | b
        chars.append(chr(group + 63))
    return "".join(chars)

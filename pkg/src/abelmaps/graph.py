"""Dual graphs, subset combinatorics and edge subdivision.

Vertices are ``0..p-1`` internally. Vertex subsets are Python ``int``
bitmasks (bit ``i`` set means vertex ``i`` is in the subset); use
:func:`mask_of` and :func:`vertices_of` to convert. Edges are kept in a
canonical sorted list, and an edge's id is its position in that list, so
parallel edges stay distinguishable.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import NamedTuple

import numpy as np

from .errors import (
    AbelDataError,
    AsymmetricMatrix,
    BadDiagonal,
    BadIndex,
    Disconnected,
    EmptyOrFullSubset,
    GraphTooLarge,
    GraphTooSmall,
    NegativeMultiplicity,
)

MAX_VERTICES = 24


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for i in vertices:
        mask |= 1 << i
    return mask


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class DualGraph:
    """A connected loopless multigraph on vertices ``0..p-1``.

    ``edges`` is normalized on construction: every pair is stored as
    ``(a, b)`` with ``a < b`` and the list is sorted, so equal graphs
    compare and hash equal.
    """

    p: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.p < 2:
            raise GraphTooSmall(f"need at least 2 vertices, got {self.p}")
        norm = []
        for a, b in self.edges:
            a, b = int(a), int(b)
            if not (0 <= a < self.p and 0 <= b < self.p):
                raise BadIndex(f"edge ({a}, {b}) has an end outside 0..{self.p - 1}")
            if a == b:
                raise AbelDataError(f"loop at vertex {a}: edges must have distinct ends")
            norm.append((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if not self._reaches_all():
            raise Disconnected("graph is not connected")

    def _reaches_all(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for i in vertices_of(frontier):
                nxt |= self.neighbor_masks[i]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == self.full_mask

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.p) - 1

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        nb = [0] * self.p
        for a, b in self.edges:
            nb[a] |= 1 << b
            nb[b] |= 1 << a
        return tuple(nb)

    @cached_property
    def intersection_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Edge multiplicities off the diagonal, minus the degree on it."""
        m = [[0] * self.p for _ in range(self.p)]
        for a, b in self.edges:
            m[a][b] += 1
            m[b][a] += 1
            m[a][a] -= 1
            m[b][b] -= 1
        return tuple(tuple(row) for row in m)

    def check_vertex(self, v: int) -> int:
        if not (isinstance(v, (int, np.integer)) and 0 <= v < self.p):
            raise BadIndex(f"vertex {v!r} is not in 0..{self.p - 1}")
        return int(v)

    def edge_label(self, idx: int) -> str:
        """1-based name of an edge, e.g. ``"1-2"`` or ``"2-3#2"`` for a parallel copy."""
        a, b = self.edges[idx]
        copies = [j for j, ed in enumerate(self.edges) if ed == (a, b)]
        base = f"{a + 1}-{b + 1}"
        if len(copies) == 1:
            return base
        return f"{base}#{copies.index(idx) + 1}"


def parse_intersection_matrix(matrix: Sequence[Sequence[int]]) -> DualGraph:
    """Build a :class:`DualGraph` from an intersection matrix.

    Only the off-diagonal entries define the graph; the diagonal is
    checked against them (each diagonal entry must be minus its row's
    off-diagonal sum).
    """
    rows = [list(r) for r in matrix]
    p = len(rows)
    if p < 2:
        raise GraphTooSmall(f"need at least 2 vertices, got {p}")
    _check_cap(p)
    for i, r in enumerate(rows):
        if len(r) != p:
            raise AsymmetricMatrix(f"row {i + 1} has length {len(r)}, expected {p}")
        for j, x in enumerate(r):
            if int(x) != x:
                raise AsymmetricMatrix(f"entry ({i + 1},{j + 1}) = {x!r} is not an integer")
    edges = []
    for i in range(p):
        for j in range(p):
            if i == j:
                continue
            if rows[i][j] != rows[j][i]:
                raise AsymmetricMatrix(
                    f"entry ({i + 1},{j + 1}) = {rows[i][j]} but ({j + 1},{i + 1}) = {rows[j][i]}"
                )
            if rows[i][j] < 0:
                raise NegativeMultiplicity(f"entry ({i + 1},{j + 1}) = {rows[i][j]} is negative")
            if i < j:
                edges.extend([(i, j)] * int(rows[i][j]))
    for i in range(p):
        off = sum(rows[i][j] for j in range(p) if j != i)
        if rows[i][i] != -off:
            raise BadDiagonal(f"diagonal entry ({i + 1},{i + 1}) = {rows[i][i]}, expected {-off}")
    return DualGraph(p, tuple(edges))


def boundary_count(g: DualGraph | SubdividedGraph, subset: int) -> int:
    """Number of edges with exactly one end in ``subset`` (a bitmask)."""
    g = _as_graph(g)
    if subset <= 0 or subset >= g.full_mask or subset & ~g.full_mask:
        raise EmptyOrFullSubset("subset must be a proper nonempty set of vertices")
    return sum(((subset >> a) ^ (subset >> b)) & 1 for a, b in g.edges)


def vertex_flow(g: DualGraph | SubdividedGraph, v: int) -> tuple[int, ...]:
    """The function c_v: edge multiplicities to v, and minus v's degree at v."""
    g = _as_graph(g)
    v = g.check_vertex(v)
    return g.intersection_matrix[v]


def is_connected_subset(g: DualGraph, mask: int) -> bool:
    if mask == 0:
        return False
    start = mask & -mask
    seen = start
    frontier = start
    nb = g.neighbor_masks
    while frontier:
        nxt = 0
        for i in vertices_of(frontier):
            nxt |= nb[i]
        nxt &= mask
        frontier = nxt & ~seen
        seen |= nxt
    return seen == mask


def connected_subsets(g: DualGraph | SubdividedGraph) -> tuple[int, ...]:
    """All proper nonempty vertex subsets inducing a connected subgraph.

    Returned as bitmasks in increasing order.
    """
    return _connected_subsets(_as_graph(g))


def _check_cap(p: int) -> None:
    if p > MAX_VERTICES:
        raise GraphTooLarge(f"subset enumeration supports at most {MAX_VERTICES} vertices, got {p}")


@lru_cache(maxsize=256)
def _connected_subsets(g: DualGraph) -> tuple[int, ...]:
    _check_cap(g.p)
    nb = g.neighbor_masks
    full = g.full_mask
    out: list[int] = []
    for root in range(g.p):
        # Connected sets whose minimum vertex is ``root``; each is reached
        # once because a candidate is either taken or excluded for good.
        lower = (1 << root) - 1
        stack = [(1 << root, nb[root] & ~lower, lower | (1 << root))]
        while stack:
            sub, cand, excl = stack.pop()
            if sub != full:
                out.append(sub)
            while cand:
                x = cand & -cand
                cand &= ~x
                new_sub = sub | x
                new_excl = excl | x
                xi = x.bit_length() - 1
                stack.append((new_sub, (cand | nb[xi]) & ~new_excl, new_excl))
                excl = new_excl
    out.sort()
    return tuple(out)


class SubsetTable(NamedTuple):
    """Connected proper subsets of a graph as arrays, for vectorized sums."""

    masks: tuple[int, ...]
    member: np.ndarray  # (n_subsets, p) 0/1
    k: np.ndarray  # boundary counts


@lru_cache(maxsize=256)
def subset_table(g: DualGraph) -> SubsetTable:
    masks = _connected_subsets(g)
    bits = np.arange(g.p, dtype=np.int64)
    arr = np.array(masks, dtype=np.int64)
    member = ((arr[:, None] >> bits[None, :]) & 1).astype(np.int64)
    if g.edges:
        ends = np.array(g.edges, dtype=np.int64)
        k = np.abs(member[:, ends[:, 0]] - member[:, ends[:, 1]]).sum(axis=1)
    else:
        k = np.zeros(len(masks), dtype=np.int64)
    return SubsetTable(masks, member, k)


@dataclass(frozen=True)
class SubdividedGraph:
    """Γ(i): every base edge replaced by a path through ``depth`` new vertices.

    ``chains[j]`` lists the exceptional vertices on base edge ``j`` in order
    from its first end to its second. ``chain_index[w]`` gives
    ``(edge id, position, nearer end)``; the nearer end is the original
    vertex adjacent to ``w``, or None for a vertex in the middle of a long
    chain.
    """

    base: DualGraph
    depth: int
    graph: DualGraph
    chains: tuple[tuple[int, ...], ...]
    chain_index: dict = field(compare=False, hash=False)

    @property
    def p(self) -> int:
        return self.graph.p

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self.graph.edges

    @property
    def full_mask(self) -> int:
        return self.graph.full_mask

    def is_exceptional(self, w: int) -> bool:
        return w >= self.base.p


def subdivide(g: DualGraph, depth: int) -> SubdividedGraph:
    """Replace each edge of ``g`` by a path with ``depth`` interior vertices.

    Exceptional vertices are numbered from ``g.p`` upward, edge by edge.
    """
    if depth < 0:
        raise ValueError("subdivision depth must be nonnegative")
    return _subdivide(g, depth)


@lru_cache(maxsize=256)
def _subdivide(g: DualGraph, depth: int) -> SubdividedGraph:
    nxt = g.p
    edges = []
    chains = []
    index = {}
    for j, (a, b) in enumerate(g.edges):
        chain = tuple(range(nxt, nxt + depth))
        nxt += depth
        path = (a, *chain, b)
        edges.extend(zip(path, path[1:]))
        for pos, w in enumerate(chain):
            if depth == 1:
                near = None
            elif pos == 0:
                near = a
            elif pos == depth - 1:
                near = b
            else:
                near = None
            index[w] = (j, pos, near)
        chains.append(chain)
    sub = DualGraph(nxt, tuple(edges))
    return SubdividedGraph(g, depth, sub, tuple(chains), index)


def _as_graph(g: DualGraph | SubdividedGraph) -> DualGraph:
    return g.graph if isinstance(g, SubdividedGraph) else g

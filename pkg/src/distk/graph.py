"""Simple undirected graphs on at most 64 vertices, stored as adjacency bitmasks.

Row ``rows[v]`` is an int whose bit ``u`` is set iff ``u`` and ``v`` are adjacent.
Everything here is a pure function of immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64


class GraphError(ValueError):
    pass


class _Unreachable:
    """Distance between vertices in different components."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNREACHABLE"

    def __reduce__(self):
        return (_Unreachable, ())


UNREACHABLE = _Unreachable()


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.rows) != self.n:
            raise GraphError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for v, r in enumerate(self.rows):
            if r & ~full:
                raise GraphError(f"row {v} references a vertex >= n")
            if r >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            x = r
            while x:
                b = x & -x
                u = b.bit_length() - 1
                if not self.rows[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
                x ^= b

    @classmethod
    def trusted(cls, n: int, rows: tuple[int, ...]) -> Graph:
        """Skip validation; for rows produced by this package's own generators."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", rows)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> Graph:
        return cls.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1)):
                yield u, v

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        rows = [0] * self.n
        for u, v in self.edges():
            a, b = perm[u], perm[v]
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return Graph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> Graph:
        pos = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            [(pos[u], pos[v]) for u, v in self.edges() if u in pos and v in pos],
        )

    def disjoint_union(self, other: Graph) -> Graph:
        shift = self.n
        return Graph(
            self.n + other.n,
            self.rows + tuple(r << shift for r in other.rows),
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges())})"


def iter_bits(x: int) -> Iterator[int]:
    while x:
        b = x & -x
        yield b.bit_length() - 1
        x ^= b


@dataclass(frozen=True)
class DistanceMatrix:
    n: int
    dist: tuple[tuple[int | _Unreachable, ...], ...]

    def __call__(self, u: int, v: int) -> int | _Unreachable:
        return self.dist[u][v]


def distance_layers(rows: Sequence[int], n: int, depth: int) -> list[list[int]]:
    """``out[d][v]`` is the bitmask of vertices at distance exactly ``d`` from ``v``,
    for ``d`` in ``0..depth``."""
    out = [[0] * n for _ in range(depth + 1)]
    for v in range(n):
        seen = frontier = 1 << v
        out[0][v] = frontier
        for d in range(1, depth + 1):
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                nxt |= rows[b.bit_length() - 1]
                f ^= b
            nxt &= ~seen
            if not nxt:
                break
            seen |= nxt
            out[d][v] = nxt
            frontier = nxt
    return out


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    n = g.n
    dist: list[list[int | _Unreachable]] = [[UNREACHABLE] * n for _ in range(n)]
    for d, layer in enumerate(distance_layers(g.rows, n, n - 1)):
        for v, mask in enumerate(layer):
            for u in iter_bits(mask):
                dist[v][u] = d
    return DistanceMatrix(n, tuple(tuple(r) for r in dist))


def distance_k_rows(rows: Sequence[int], n: int, k: int) -> list[int]:
    """Adjacency rows of the distance-k graph, without building a Graph."""
    if k == 2:
        out = []
        for v in range(n):
            r = rows[v]
            reach = 0
            f = r
            while f:
                b = f & -f
                reach |= rows[b.bit_length() - 1]
                f ^= b
            out.append(reach & ~r & ~(1 << v))
        return out
    out = [0] * n
    for v in range(n):
        seen = frontier = 1 << v
        for _ in range(k):
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                nxt |= rows[b.bit_length() - 1]
                f ^= b
            nxt &= ~seen
            if not nxt:
                break
            seen |= nxt
            frontier = nxt
        else:
            out[v] = frontier
    return out


def distance_k_graph(g: Graph, k: int) -> Graph:
    if k < 1:
        raise GraphError(f"distance must be >= 1, got {k}")
    return Graph(g.n, tuple(distance_k_rows(g.rows, g.n, k)))


def edge_count(g: Graph) -> int:
    return sum(r.bit_count() for r in g.rows) // 2


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~r & ~(1 << v) for v, r in enumerate(g.rows)))


def rows_triangle_free(rows: Sequence[int]) -> bool:
    for u, r in enumerate(rows):
        x = r >> (u + 1)
        while x:
            b = x & -x
            if rows[b.bit_length() + u] & r:
                return False
            x ^= b
    return True


def is_triangle_free(g: Graph) -> bool:
    return rows_triangle_free(g.rows)


def rows_bipartite(rows: Sequence[int], n: int) -> bool:
    color = [-1] * n
    for s in range(n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in iter_bits(rows[u]):
                if color[w] < 0:
                    color[w] = color[u] ^ 1
                    stack.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def is_bipartite(g: Graph) -> bool:
    return rows_bipartite(g.rows, g.n)


def is_connected(g: Graph) -> bool:
    return rows_connected(g.rows, g.n)


def rows_connected(rows: Sequence[int], n: int) -> bool:
    seen = frontier = 1
    while frontier:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= rows[u]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


def diameter(g: Graph) -> int | _Unreachable:
    dm = all_pairs_distances(g)
    best = 0
    for row in dm.dist:
        for d in row:
            if d is UNREACHABLE:
                return UNREACHABLE
            best = max(best, d)
    return best


def _greedy_colors(rows: Sequence[int], cand: int) -> tuple[list[int], list[int]]:
    # vertices in color-class order, with the running color number as bound
    order: list[int] = []
    bounds: list[int] = []
    uncolored = cand
    color = 0
    while uncolored:
        color += 1
        q = uncolored
        while q:
            b = q & -q
            v = b.bit_length() - 1
            uncolored ^= b
            q &= ~b & ~rows[v]
            order.append(v)
            bounds.append(color)
    return order, bounds


def rows_clique_number(rows: Sequence[int], n: int) -> int:
    best = 0

    def expand(cand: int, size: int) -> None:
        nonlocal best
        order, bounds = _greedy_colors(rows, cand)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best:
                return
            v = order[i]
            nxt = cand & rows[v]
            if nxt:
                expand(nxt, size + 1)
            elif size + 1 > best:
                best = size + 1
            cand &= ~(1 << v)

    expand((1 << n) - 1, 0)
    return best


def clique_number(g: Graph) -> int:
    """Exact clique number via branch and bound with greedy-coloring bounds."""
    return rows_clique_number(g.rows, g.n)


"""Simple undirected graphs on vertices 0..n-1.

Neighborhoods are kept both as sorted tuples (for deterministic iteration)
and as integer bit masks (for the subset-search kernels). Python ints are
unbounded, so the same mask code serves every n.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import (
    EndpointOutOfRange,
    Graph6Error,
    MalformedHeader,
    NonPrintableByte,
    SelfLoop,
    TruncatedBitVector,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]
    adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    masks: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (self.masks[u] >> v) & 1 == 1

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of 0..n-1")
        return from_edge_list(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def induced_edges(self, vertices: Iterable[int]) -> list[Edge]:
        vs = sorted(set(vertices))
        return [(u, v) for u, v in combinations(vs, 2) if self.has_edge(u, v)]

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def from_edge_list(n: int, pairs: Iterable[Sequence[int]]) -> Graph:
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    edges: set[Edge] = set()
    for pair in pairs:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise EndpointOutOfRange(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        edges.add((u, v) if u < v else (v, u))
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    adj = tuple(tuple(sorted(a)) for a in nbrs)
    masks = tuple(sum(1 << w for w in a) for a in adj)
    return Graph(n, frozenset(edges), adj, masks)


def from_json(obj: Mapping) -> Graph:
    return from_edge_list(int(obj["n"]), obj["edges"])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shifted = [(u + g.n, v + g.n) for u, v in h.edges]
    return from_edge_list(g.n + h.n, list(g.edges) + shifted)


# --- graph6 -----------------------------------------------------------------


def _size_header(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("graph too large for graph6")


def encode_graph6(g: Graph) -> bytes:
    out = bytearray(_size_header(g.n))
    acc = nbits = 0
    for j in range(1, g.n):
        mj = g.masks[j]
        for i in range(j):
            acc = (acc << 1) | ((mj >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def decode_graph6(text: bytes | str) -> Graph:
    data = text.encode("ascii", "replace") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    for pos, b in enumerate(data):
        if not 63 <= b <= 126:
            raise NonPrintableByte(f"byte {b!r} at offset {pos} is outside 63..126")
    if not data:
        raise MalformedHeader("empty graph6 string")
    if data[0] != 126:
        n, body = data[0] - 63, data[1:]
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise MalformedHeader("incomplete 8-byte size header")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        body = data[8:]
    else:
        if len(data) < 4:
            raise MalformedHeader("incomplete 4-byte size header")
        n = 0
        for b in data[1:4]:
            n = (n << 6) | (b - 63)
        body = data[4:]

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) < need:
        raise TruncatedBitVector(f"expected {need} data bytes for n={n}, got {len(body)}")
    if len(body) > need:
        raise Graph6Error(f"{len(body) - need} trailing bytes after the adjacency data")

    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if ((body[k // 6] - 63) >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return from_edge_list(n, edges)


# --- predicates -------------------------------------------------------------


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = 1
    frontier = 1
    full = (1 << g.n) - 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= g.masks[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen == full


def is_cubic(g: Graph) -> bool:
    return all(len(a) == 3 for a in g.adj)


def is_claw_free(g: Graph) -> bool:
    for v in range(g.n):
        for a, b, c in combinations(g.adj[v], 3):
            if not (g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c)):
                return False
    return True


def is_k4(g: Graph) -> bool:
    return g.n == 4 and g.m == 6


def triangles_at(g: Graph, v: int) -> int:
    return sum(1 for a, b in combinations(g.adj[v], 2) if g.has_edge(a, b))


def count_triangles(g: Graph) -> int:
    return sum(triangles_at(g, v) for v in range(g.n)) // 3


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


# --- isomorphism ------------------------------------------------------------


def invariant_key(g: Graph) -> tuple:
    """Hashable isomorphism invariant used to bucket candidates."""
    return (g.n, g.m, tuple(sorted(_wl_hash(g))))


def _wl_hash(g: Graph, rounds: int = 4) -> list[int]:
    labels = [hash((len(g.adj[v]), triangles_at(g, v))) for v in range(g.n)]
    for _ in range(rounds):
        labels = [hash((labels[v], tuple(sorted(labels[w] for w in g.adj[v])))) for v in range(g.n)]
    return labels


def find_isomorphism(g: Graph, h: Graph) -> dict[int, int] | None:
    """Return a vertex map ``g -> h`` preserving edges, or None.

    Backtracking over vertices of ``g`` in BFS order; candidates are
    restricted to vertices of ``h`` with the same WL label and, once a
    neighbour has been mapped, to the neighbours of its image.
    """
    if g.n != h.n or g.m != h.m:
        return None
    if sorted(map(len, g.adj)) != sorted(map(len, h.adj)):
        return None
    lg, lh = _wl_hash(g), _wl_hash(h)
    if sorted(lg) != sorted(lh):
        return None
    n = g.n
    if n == 0:
        return {}

    order: list[int] = []
    seen = [False] * n
    for comp_root in sorted(range(n), key=lambda v: (lg.count(lg[v]), v)):
        if seen[comp_root]:
            continue
        seen[comp_root] = True
        queue = deque([comp_root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)

    by_label: dict[int, list[int]] = {}
    for v in range(n):
        by_label.setdefault(lh[v], []).append(v)

    fwd = [-1] * n
    used = [False] * n

    def extend(idx: int) -> bool:
        if idx == n:
            return True
        u = order[idx]
        anchor = next((w for w in g.adj[u] if fwd[w] >= 0), None)
        pool = h.adj[fwd[anchor]] if anchor is not None else by_label[lg[u]]
        for c in pool:
            if used[c] or lh[c] != lg[u]:
                continue
            ok = True
            for w in g.adj[u]:
                if fwd[w] >= 0 and not h.has_edge(c, fwd[w]):
                    ok = False
                    break
            if not ok:
                continue
            # mapped non-neighbours must stay non-adjacent
            mapped_nbrs = sum(1 for w in g.adj[u] if fwd[w] >= 0)
            if sum(1 for x in h.adj[c] if used[x]) != mapped_nbrs:
                continue
            fwd[u] = c
            used[c] = True
            if extend(idx + 1):
                return True
            fwd[u] = -1
            used[c] = False
        return False

    if not extend(0):
        return None
    return {v: fwd[v] for v in range(n)}


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None

"""Triangle/diamond unit decomposition of claw-free cubic graphs.

Every connected claw-free cubic graph other than K4 splits uniquely into
vertex-disjoint induced triangles and diamonds (K4 minus an edge). This
module computes that partition, the unit contraction multigraph, and the
shortest cycle of a simple cubic contraction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import IsK4, NotClawFreeCubic, NotSimpleCubic, PartitionFailure
from .graph import Graph, is_claw_free, is_cubic, is_k4

TRIANGLE = "triangle"
DIAMOND = "diamond"


@dataclass(frozen=True)
class Unit:
    kind: str
    members: tuple[int, ...]
    ends: tuple[int, int] | None = None

    @property
    def interior(self) -> tuple[int, ...]:
        if self.ends is None:
            return ()
        return tuple(v for v in self.members if v not in self.ends)

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "members": list(self.members)}
        if self.ends is not None:
            out["ends"] = list(self.ends)
        return out


@dataclass(frozen=True)
class UnitPartition:
    units: tuple[Unit, ...]
    unit_of: tuple[int, ...]

    @property
    def n_triangles(self) -> int:
        return sum(1 for u in self.units if u.kind == TRIANGLE)

    @property
    def n_diamonds(self) -> int:
        return sum(1 for u in self.units if u.kind == DIAMOND)

    def unit_at(self, v: int) -> Unit:
        return self.units[self.unit_of[v]]

    def to_json(self) -> dict:
        return {"units": [u.to_json() for u in self.units]}


@dataclass(frozen=True)
class UnitMultigraph:
    kinds: tuple[str, ...]
    multiplicity: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.kinds)

    def weighted_degree(self, a: int) -> int:
        return sum(self.multiplicity[a])

    def neighbors(self, a: int) -> list[int]:
        return [b for b, c in enumerate(self.multiplicity[a]) if c]

    def is_simple_cubic(self) -> bool:
        return all(
            self.multiplicity[a][a] == 0
            and all(c <= 1 for c in self.multiplicity[a])
            and sum(self.multiplicity[a]) == 3
            for a in range(self.k)
        )


def _common_neighbors(g: Graph, u: int, v: int) -> list[int]:
    return [w for w in g.adj[u] if g.has_edge(v, w)]


def triangle_diamond_partition(g: Graph) -> UnitPartition:
    if is_k4(g):
        raise IsK4("K4 has no triangle-diamond partition")
    if not (is_cubic(g) and is_claw_free(g)):
        raise NotClawFreeCubic("graph is not claw-free cubic")

    # An edge lying in two triangles is the spine of a diamond.
    diamonds: dict[frozenset[int], Unit] = {}
    for u, v in g.sorted_edges():
        common = _common_neighbors(g, u, v)
        if len(common) < 2:
            continue
        if len(common) > 2:
            raise PartitionFailure(f"edge ({u}, {v}) lies in {len(common)} triangles")
        a, b = common
        if g.has_edge(a, b):
            raise PartitionFailure(f"vertices {sorted((u, v, a, b))} induce K4")
        key = frozenset((u, v, a, b))
        diamonds.setdefault(key, Unit(DIAMOND, tuple(sorted(key)), (min(a, b), max(a, b))))

    owner = [-1] * g.n
    units: list[Unit] = []
    for d in diamonds.values():
        for x in d.members:
            if owner[x] != -1:
                raise PartitionFailure(f"vertex {x} lies in two diamonds")
            owner[x] = len(units)
        units.append(d)

    for v in range(g.n):
        if owner[v] != -1:
            continue
        tris = [(a, b) for a, b in combinations(g.adj[v], 2) if g.has_edge(a, b)]
        if len(tris) != 1:
            raise PartitionFailure(f"vertex {v} lies in {len(tris)} triangles outside diamonds")
        a, b = tris[0]
        if owner[a] != -1 or owner[b] != -1:
            raise PartitionFailure(f"triangle {sorted((v, a, b))} overlaps a diamond")
        for x in (v, a, b):
            owner[x] = len(units)
        units.append(Unit(TRIANGLE, tuple(sorted((v, a, b)))))

    order = sorted(range(len(units)), key=lambda i: units[i].members[0])
    rank = {old: new for new, old in enumerate(order)}
    return UnitPartition(
        tuple(units[i] for i in order),
        tuple(rank[o] for o in owner),
    )


def external_neighbor(g: Graph, p: UnitPartition, v: int) -> int | None:
    """The unique neighbour of ``v`` outside its unit (None for diamond interiors)."""
    home = p.unit_of[v]
    out = [w for w in g.adj[v] if p.unit_of[w] != home]
    return out[0] if out else None


def contraction_multigraph(p: UnitPartition, g: Graph) -> UnitMultigraph:
    k = len(p.units)
    mult = [[0] * k for _ in range(k)]
    for u, v in g.edges:
        a, b = p.unit_of[u], p.unit_of[v]
        if a != b:
            mult[a][b] += 1
            mult[b][a] += 1
    return UnitMultigraph(tuple(u.kind for u in p.units), tuple(tuple(r) for r in mult))


def _bfs_dist(m: UnitMultigraph, target: int, skip: tuple[int, int]) -> list[int]:
    dist = [-1] * m.k
    dist[target] = 0
    queue = deque([target])
    while queue:
        a = queue.popleft()
        for b in m.neighbors(a):
            if {a, b} == set(skip) or dist[b] != -1:
                continue
            dist[b] = dist[a] + 1
            queue.append(b)
    return dist


def shortest_cycle(m: UnitMultigraph) -> list[int]:
    """Shortest cycle b0..bk of a simple cubic multigraph.

    Among minimum-length cycles the one with the smallest b0 wins, then the
    lexicographically smallest sequence b1, b2, ...
    """
    if not m.is_simple_cubic():
        raise NotSimpleCubic("shortest_cycle needs a loopless simple cubic multigraph")
    best: list[int] | None = None
    for s in range(m.k):
        for t in m.neighbors(s):
            dist = _bfs_dist(m, s, (s, t))
            if dist[t] == -1:
                continue
            # walk t -> s along decreasing distance, smallest id first
            path = [s, t]
            cur = t
            while dist[cur] > 1:
                cur = min(b for b in m.neighbors(cur) if dist[b] == dist[cur] - 1 and {cur, b} != {s, t})
                path.append(cur)
            if best is None or (len(path), path) < (len(best), best):
                best = path
    if best is None:
        raise NotSimpleCubic("multigraph has no cycle")
    return best


"""Zero forcing: the colour-change rule, chronicles, and exact minimum searches."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .errors import InstanceTooLarge
from .graph import Graph, is_connected

DEFAULT_CAP = 24


def solver_cap() -> int:
    """Vertex-count cap for the exponential solvers; ``ZFORCE_CAP`` overrides."""
    raw = os.environ.get("ZFORCE_CAP")
    if raw:
        cap = int(raw)
        if cap <= 0:
            raise ValueError("ZFORCE_CAP must be positive")
        return cap
    return DEFAULT_CAP


@dataclass
class Chronicle:
    """Initial coloured set plus the ordered (forcer, forced) plays."""

    initial: frozenset[int]
    plays: list[tuple[int, int]] = field(default_factory=list)

    def forcers(self) -> list[int]:
        return [u for u, _ in self.plays]

    def targets(self) -> list[int]:
        return [v for _, v in self.plays]

    def to_json(self) -> dict:
        return {"initial": sorted(self.initial), "plays": [list(p) for p in self.plays]}

    @classmethod
    def from_json(cls, obj: dict) -> Chronicle:
        return cls(frozenset(obj["initial"]), [tuple(p) for p in obj["plays"]])


def replay(g: Graph, chronicle: Chronicle) -> tuple[set[int], str | None]:
    """Replay ``chronicle`` on ``g``; return (coloured set, first error or None)."""
    colored = set(chronicle.initial)
    if any(not 0 <= v < g.n for v in colored):
        return colored, "initial set has a vertex outside the graph"
    for step, (u, v) in enumerate(chronicle.plays):
        if not (0 <= u < g.n and 0 <= v < g.n):
            return colored, f"play {step}: vertex out of range"
        if u not in colored:
            return colored, f"play {step}: forcer {u} is not coloured"
        if not g.has_edge(u, v):
            return colored, f"play {step}: {u} and {v} are not adjacent"
        white = [w for w in g.adj[u] if w not in colored]
        if white != [v]:
            return colored, f"play {step}: forcer {u} has uncoloured neighbours {white}"
        colored.add(v)
    return colored, None


def _bits(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def extend_closure(g: Graph, colored: set[int], plays: list[tuple[int, int]]) -> None:
    """Run the deterministic forcing order in place until it halts.

    Each step rescans from vertex 0 and lets the first coloured vertex with
    exactly one uncoloured neighbour play.
    """
    mask = _bits(colored)
    masks = g.masks
    while True:
        for u in range(g.n):
            if not (mask >> u) & 1:
                continue
            white = masks[u] & ~mask
            if white and white & (white - 1) == 0:
                v = white.bit_length() - 1
                plays.append((u, v))
                colored.add(v)
                mask |= white
                break
        else:
            return


def closure(g: Graph, s: Iterable[int]) -> tuple[frozenset[int], Chronicle]:
    initial = frozenset(s)
    colored = set(initial)
    plays: list[tuple[int, int]] = []
    extend_closure(g, colored, plays)
    return frozenset(colored), Chronicle(initial, plays)


def closure_mask(masks: tuple[int, ...], start: int) -> int:
    """Bitmask fixpoint of the colour-change rule (order free)."""
    colored = start
    active = start
    while active:
        gained = 0
        a = active
        while a:
            low = a & -a
            u = low.bit_length() - 1
            a ^= low
            white = masks[u] & ~colored
            if white and white & (white - 1) == 0:
                gained |= white
        if not gained:
            break
        colored |= gained
        # newly coloured vertices and their neighbours may now play
        touched = gained
        g2 = gained
        while g2:
            low = g2 & -g2
            touched |= masks[low.bit_length() - 1]
            g2 ^= low
        active = touched & colored
    return colored


def is_forcing_set(g: Graph, s: Iterable[int]) -> bool:
    full = (1 << g.n) - 1
    return closure_mask(g.masks, _bits(s)) == full


def is_total_forcing_set(g: Graph, s: Iterable[int]) -> bool:
    s = set(s)
    if not s and g.n:
        return False
    if any(not (g.masks[v] & _bits(s)) for v in s):
        return False
    return is_forcing_set(g, s)


def _check_cap(g: Graph, cap: int | None) -> None:
    limit = solver_cap() if cap is None else cap
    if g.n > limit:
        raise InstanceTooLarge(f"n={g.n} exceeds the solver cap of {limit}")


def _start_size(g: Graph) -> int:
    if g.n == 0:
        return 0
    degs = {len(a) for a in g.adj}
    if len(degs) == 1 and is_connected(g):
        return max(1, min(g.min_degree(), g.n))
    return 1


def _search(g: Graph, total: bool, cap: int | None) -> tuple[int, frozenset[int]]:
    _check_cap(g, cap)
    if g.n == 0:
        return 0, frozenset()
    full = (1 << g.n) - 1
    masks = g.masks
    vbits = [1 << v for v in range(g.n)]
    for k in range(_start_size(g), g.n + 1):
        for combo in combinations(range(g.n), k):
            start = 0
            for v in combo:
                start |= vbits[v]
            if total and any(not (masks[v] & start) for v in combo):
                continue
            if closure_mask(masks, start) == full:
                return k, frozenset(combo)
    raise ValueError("no total forcing set exists (isolated vertex present)")


def zero_forcing_number(g: Graph, cap: int | None = None) -> tuple[int, frozenset[int]]:
    """Minimum forcing set size with the lexicographically first witness."""
    return _search(g, total=False, cap=cap)


def total_forcing_number(g: Graph, cap: int | None = None) -> tuple[int, frozenset[int]]:
    if any(not a for a in g.adj):
        raise ValueError("total forcing needs a graph without isolated vertices")
    return _search(g, total=True, cap=cap)

"""Named graphs, unit-spec inflation, random sampling and small-order enumeration."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .errors import BadParameter, InstanceTooLarge, InvalidSpec, Unsatisfiable
from .graph import Graph, find_isomorphism, from_edge_list, invariant_key
from .structure import DIAMOND, TRIANGLE

ENUMERATION_CAP = 20


def prism() -> Graph:
    """C3 x K2: triangles {0,1,2} and {3,4,5} with rungs i -- i+3."""
    return from_edge_list(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)])


def k4() -> Graph:
    return from_edge_list(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])


def necklace(k: int) -> Graph:
    """Cycle of ``k`` diamonds.

    Diamond ``i`` occupies 4i..4i+3 with ends 4i and 4i+3 and interior
    4i+1, 4i+2; end 4i+3 is joined to end 4(i+1) mod 4k.
    """
    if k < 2:
        raise BadParameter(f"necklace needs k >= 2, got {k}")
    edges = []
    for i in range(k):
        a, b, c, d = 4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3
        edges += [(a, b), (a, c), (b, c), (b, d), (c, d)]
        edges.append((d, (4 * i + 4) % (4 * k)))
    return from_edge_list(4 * k, edges)


@dataclass(frozen=True)
class UnitSpec:
    """Multigraph on unit slots: triangles need weighted degree 3, diamonds 2."""

    kinds: tuple[str, ...]
    multiplicity: tuple[tuple[int, ...], ...]

    @classmethod
    def from_pairs(cls, kinds, pairs: dict[tuple[int, int], int]) -> UnitSpec:
        k = len(kinds)
        mult = [[0] * k for _ in range(k)]
        for (a, b), c in pairs.items():
            mult[a][b] += c
            if a != b:
                mult[b][a] += c
        return cls(tuple(kinds), tuple(tuple(r) for r in mult))

    @property
    def order(self) -> int:
        return sum(3 if kd == TRIANGLE else 4 for kd in self.kinds)

    def validate(self) -> None:
        k = len(self.kinds)
        if k == 0:
            raise InvalidSpec("spec has no slots")
        if len(self.multiplicity) != k or any(len(r) != k for r in self.multiplicity):
            raise InvalidSpec("multiplicity matrix shape does not match slot count")
        for a in range(k):
            if self.kinds[a] not in (TRIANGLE, DIAMOND):
                raise InvalidSpec(f"slot {a} has unknown kind {self.kinds[a]!r}")
            if self.multiplicity[a][a]:
                raise InvalidSpec(f"slot {a} has a loop")
            want = 3 if self.kinds[a] == TRIANGLE else 2
            if sum(self.multiplicity[a]) != want:
                raise InvalidSpec(f"slot {a} has weighted degree {sum(self.multiplicity[a])}, needs {want}")
            for b in range(k):
                c = self.multiplicity[a][b]
                if c < 0 or c != self.multiplicity[b][a]:
                    raise InvalidSpec("multiplicity matrix must be symmetric and non-negative")
        seen = {0}
        stack = [0]
        while stack:
            a = stack.pop()
            for b in range(k):
                if self.multiplicity[a][b] and b not in seen:
                    seen.add(b)
                    stack.append(b)
        if len(seen) != k:
            raise InvalidSpec("spec is disconnected")


def inflate(spec: UnitSpec) -> Graph:
    spec.validate()
    stubs: list[list[int]] = []
    edges: list[tuple[int, int]] = []
    base = 0
    for kind in spec.kinds:
        if kind == TRIANGLE:
            a, b, c = base, base + 1, base + 2
            edges += [(a, b), (a, c), (b, c)]
            stubs.append([a, b, c])
            base += 3
        else:
            a, b, c, d = base, base + 1, base + 2, base + 3
            edges += [(a, b), (a, c), (b, c), (b, d), (c, d)]
            stubs.append([a, d])
            base += 4
    free = [list(s) for s in stubs]
    k = len(spec.kinds)
    for a in range(k):
        for b in range(a + 1, k):
            for _ in range(spec.multiplicity[a][b]):
                edges.append((free[a].pop(0), free[b].pop(0)))
    return from_edge_list(base, edges)


def _multigraphs(degrees: list[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All loopless multigraphs (as matrices) with the given degree sequence."""
    k = len(degrees)
    mult = [[0] * k for _ in range(k)]
    rem = list(degrees)

    def place(i: int, j: int) -> Iterator[None]:
        if i == k:
            yield None
            return
        if j == k:
            if rem[i] == 0:
                yield from place(i + 1, i + 2)
            return
        top = min(rem[i], rem[j])
        for c in range(top, -1, -1):
            mult[i][j] = mult[j][i] = c
            rem[i] -= c
            rem[j] -= c
            yield from place(i, j + 1)
            rem[i] += c
            rem[j] += c
        mult[i][j] = mult[j][i] = 0

    for _ in place(0, 1):
        yield tuple(tuple(r) for r in mult)


def unit_specs(n: int) -> Iterator[UnitSpec]:
    """Connected UnitSpecs whose inflation has exactly ``n`` vertices."""
    for d in range(n // 4 + 1):
        rest = n - 4 * d
        if rest % 3:
            continue
        t = rest // 3
        if t % 2:
            continue
        kinds = (TRIANGLE,) * t + (DIAMOND,) * d
        degrees = [3] * t + [2] * d
        if not kinds:
            continue
        for mult in _multigraphs(degrees):
            spec = UnitSpec(kinds, mult)
            try:
                spec.validate()
            except InvalidSpec:
                continue
            yield spec


def dedup_isomorphic(graphs: list[Graph]) -> list[Graph]:
    buckets: dict[tuple, list[Graph]] = {}
    out: list[Graph] = []
    for g in graphs:
        bucket = buckets.setdefault(invariant_key(g), [])
        if any(find_isomorphism(g, h) is not None for h in bucket):
            continue
        bucket.append(g)
        out.append(g)
    return out


def enumerate_connected_claw_free_cubic(max_n: int, min_n: int = 6) -> list[Graph]:
    """One representative per isomorphism class, 6 <= n <= max_n, K4 excluded."""
    if max_n > ENUMERATION_CAP:
        raise InstanceTooLarge(f"max_n={max_n} exceeds the enumeration cap of {ENUMERATION_CAP}")
    out: list[Graph] = []
    for n in range(max(6, min_n), max_n + 1, 1):
        if n % 2:
            continue
        out += dedup_isomorphic([inflate(s) for s in unit_specs(n)])
    return out


def random_claw_free_cubic(units: int, diamond_fraction: float, seed: int, attempts: int = 1000) -> Graph:
    """Seeded sampler: fixed slot kinds, random stub matching with rejection."""
    if units < 1 or not 0.0 <= diamond_fraction <= 1.0:
        raise BadParameter("need units >= 1 and 0 <= diamond_fraction <= 1")
    rng = random.Random(seed)
    d = round(units * diamond_fraction)
    t = units - d
    if t % 2:
        # the number of triangle slots must be even; move one slot across
        if d > 0 and (diamond_fraction >= 0.5 or t == 0):
            d, t = d - 1, t + 1
        else:
            d, t = d + 1, t - 1
    kinds = (TRIANGLE,) * t + (DIAMOND,) * d
    stubs = [a for a, kd in enumerate(kinds) for _ in range(3 if kd == TRIANGLE else 2)]
    for _ in range(attempts):
        rng.shuffle(stubs)
        pairs: dict[tuple[int, int], int] = {}
        for i in range(0, len(stubs), 2):
            a, b = sorted((stubs[i], stubs[i + 1]))
            pairs[(a, b)] = pairs.get((a, b), 0) + 1
        if any(a == b for a, b in pairs):
            continue
        spec = UnitSpec.from_pairs(kinds, pairs)
        try:
            return inflate(spec)
        except InvalidSpec:
            continue
    raise Unsatisfiable(f"no valid spec for units={units}, diamond_fraction={diamond_fraction} after {attempts} tries")

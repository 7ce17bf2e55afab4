"""Exact independence and matching numbers, and the consolidated bounds report."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InstanceTooLarge
from .graph import Graph, are_isomorphic

INDEPENDENCE_CAP = 40


def independence_number(g: Graph, cap: int = INDEPENDENCE_CAP) -> tuple[int, frozenset[int]]:
    """Branch and bound on a maximum-degree vertex (include / exclude)."""
    if g.n > cap:
        raise InstanceTooLarge(f"n={g.n} exceeds the independence cap of {cap}")
    masks = g.masks
    best_size = 0
    best_set = 0

    def branch(cand: int, chosen: int, size: int) -> None:
        nonlocal best_size, best_set
        if not cand:
            if size > best_size:
                best_size, best_set = size, chosen
            return
        if size + cand.bit_count() <= best_size:
            return
        pick, pick_deg = -1, -1
        c = cand
        while c:
            low = c & -c
            v = low.bit_length() - 1
            c ^= low
            d = (masks[v] & cand).bit_count()
            if d > pick_deg:
                pick, pick_deg = v, d
        if pick_deg == 0:
            # remaining candidates are pairwise non-adjacent
            branch(0, chosen | cand, size + cand.bit_count())
            return
        bit = 1 << pick
        branch(cand & ~bit & ~masks[pick], chosen | bit, size + 1)
        branch(cand & ~bit, chosen, size)

    branch((1 << g.n) - 1, 0, 0)
    return best_size, frozenset(v for v in range(g.n) if (best_set >> v) & 1)


def matching_number(g: Graph) -> tuple[int, frozenset[tuple[int, int]]]:
    """Maximum cardinality matching by Edmonds' blossom algorithm."""
    n = g.n
    mate = [-1] * n
    adj = g.adj

    def find_path(root: int) -> int:
        parent = [-1] * n
        base = list(range(n))
        used = [False] * n
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if mate[a] == -1:
                    break
                a = parent[mate[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[mate[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[mate[v]]] = True
                parent[v] = child
                child = mate[v]
                v = parent[mate[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        return _augment(to, parent)
                    used[mate[to]] = True
                    queue.append(mate[to])
        return -1

    def _augment(v: int, parent: list[int]) -> int:
        while v != -1:
            pv = parent[v]
            ppv = mate[pv]
            mate[v] = pv
            mate[pv] = v
            v = ppv
        return 1

    # greedy warm start
    for u in range(n):
        if mate[u] == -1:
            for w in adj[u]:
                if mate[w] == -1:
                    mate[u], mate[w] = w, u
                    break
    for v in range(n):
        if mate[v] == -1:
            find_path(v)

    edges = frozenset((v, mate[v]) for v in range(n) if mate[v] > v)
    return len(edges), edges


# --- bounds report ----------------------------------------------------------


@dataclass
class Inequality:
    name: str
    lhs: Fraction | int
    rhs: Fraction | int
    holds: bool
    equality: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "lhs": _num(self.lhs),
            "rhs": _num(self.rhs),
            "holds": self.holds,
            "equality": self.equality,
        }


def _num(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else float(x)
    return x


def _leq(name: str, lhs, rhs) -> Inequality:
    return Inequality(name, lhs, rhs, lhs <= rhs, lhs == rhs)


@dataclass
class BoundsReport:
    n: int
    n3: int
    n4: int
    z: int
    ft: int
    alpha: int
    alpha_prime: int
    cert_size: int
    inequalities: list[Inequality] = field(default_factory=list)
    is_prism: bool = False
    is_n2: bool = False
    is_n3: bool = False
    z_equals_alpha_plus_one: bool = False
    witnesses: dict = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        return all(row.holds for row in self.inequalities)

    def failures(self) -> list[Inequality]:
        return [row for row in self.inequalities if not row.holds]

    def row(self, name: str) -> Inequality:
        return next(r for r in self.inequalities if r.name == name)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "n3": self.n3,
            "n4": self.n4,
            "z": self.z,
            "ft": self.ft,
            "alpha": self.alpha,
            "alpha_prime": self.alpha_prime,
            "cert_size": self.cert_size,
            "inequalities": [r.to_json() for r in self.inequalities],
            "flags": {
                "is_prism": self.is_prism,
                "is_n2": self.is_n2,
                "is_n3": self.is_n3,
                "z_equals_alpha_plus_one": self.z_equals_alpha_plus_one,
            },
            "witnesses": self.witnesses,
        }


def bounds_report(g: Graph, cap: int | None = None) -> BoundsReport:
    from .certify import build_certificate
    from .forcing import total_forcing_number, zero_forcing_number
    from .generators import necklace, prism
    from .structure import triangle_diamond_partition

    part = triangle_diamond_partition(g)
    z, z_wit = zero_forcing_number(g, cap)
    ft, ft_wit = total_forcing_number(g, cap)
    alpha, a_wit = independence_number(g)
    alpha_p, m_wit = matching_number(g)
    cert = build_certificate(g)
    n = g.n
    n3, n4 = part.n_triangles, part.n_diamonds
    cs = len(cert.s)
    half = Fraction(n, 2)
    two_fifths = Fraction(2 * n, 5)

    rows = [
        _leq("Thm1", alpha, two_fifths),
        _leq("Thm2", z, half + 1),
        _leq("Thm3", z, half),
        _leq("Thm4a", z, alpha + 1),
        _leq("Thm4b", z, alpha_p),
        _leq("Cor5", z, two_fifths + 1),
        _leq("Cor7a", z, n3 + n4 + 2),
        _leq("Cor7b", z, Fraction(n, 3) + 2),
        _leq("Cert4a", cs, alpha + 1),
        _leq("Cert4b", cs, alpha_p),
        _leq("CertZ", z, cs),
        _leq("Cert7a", cs, n3 + n4 + 2),
        _leq("Cert7b", cs, Fraction(n, 3) + 2),
        _leq("FtHalf", ft, half),
        _leq("ZFt", z, ft),
    ]
    is_prism = n == 6 and are_isomorphic(g, prism())
    is_n2 = n == 8 and are_isomorphic(g, necklace(2))
    is_n3 = n == 12 and are_isomorphic(g, necklace(3))
    # Thm3 is an "if and only if": equality must coincide with prism / N2.
    thm3 = rows[2]
    if thm3.equality != (is_prism or is_n2):
        thm3.holds = False
    return BoundsReport(
        n=n,
        n3=n3,
        n4=n4,
        z=z,
        ft=ft,
        alpha=alpha,
        alpha_prime=alpha_p,
        cert_size=cs,
        inequalities=rows,
        is_prism=is_prism,
        is_n2=is_n2,
        is_n3=is_n3,
        z_equals_alpha_plus_one=(z == alpha + 1),
        witnesses={
            "z": sorted(z_wit),
            "ft": sorted(ft_wit),
            "alpha": sorted(a_wit),
            "alpha_prime": [list(e) for e in sorted(m_wit)],
        },
    )

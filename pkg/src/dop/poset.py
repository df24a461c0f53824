"""Finite posets, their filters and ideals, and order polytopes.

Elements are the integers ``0..n-1``. A poset stores its strict order
transitively closed; internally each row of the order is also kept as a
bitmask so filter enumeration stays cheap up to ``n = 20``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CycleError

# Virtual elements of P-hat. They never collide with real ids (which are >= 0).
BOT = -1
TOP = -2


def bits(mask: int) -> list[int]:
    """Return the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for p in elements:
        m |= 1 << p
    return m


@dataclass(frozen=True)
class Poset:
    """A strict partial order on ``range(n)``.

    ``lt[p][q]`` is true iff ``p < q``. Use :func:`build_poset` to construct
    one from arbitrary relations; the constructor trusts its input.
    """

    n: int
    lt: tuple[tuple[bool, ...], ...]
    up: tuple[int, ...] = field(init=False, repr=False, compare=False)
    down: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        up = tuple(mask_of(q for q in range(self.n) if self.lt[p][q]) for p in range(self.n))
        down = tuple(mask_of(q for q in range(self.n) if self.lt[q][p]) for p in range(self.n))
        object.__setattr__(self, "up", up)
        object.__setattr__(self, "down", down)

    def less(self, p: int, q: int) -> bool:
        """Strict comparison in P-hat (BOT and TOP allowed)."""
        if p == q:
            return False
        if p == BOT or q == TOP:
            return True
        if p == TOP or q == BOT:
            return False
        return self.lt[p][q]

    def leq(self, p: int, q: int) -> bool:
        return p == q or self.less(p, q)

    def comparable(self, p: int, q: int) -> bool:
        return self.less(p, q) or self.less(q, p)

    def relations(self) -> list[tuple[int, int]]:
        return [(p, q) for p in range(self.n) for q in bits(self.up[p])]

    def minimal(self) -> list[int]:
        return [p for p in range(self.n) if not self.down[p]]

    def maximal(self) -> list[int]:
        return [p for p in range(self.n) if not self.up[p]]

    def opposite(self) -> Poset:
        return Poset(self.n, tuple(tuple(self.lt[q][p] for q in range(self.n)) for p in range(self.n)))

    def linear_extension(self) -> list[int]:
        """Some linear extension, as a list of elements from bottom to top."""
        order, placed = [], 0
        while len(order) < self.n:
            for p in range(self.n):
                if not placed >> p & 1 and self.down[p] & ~placed == 0:
                    order.append(p)
                    placed |= 1 << p
                    break
        return order


def build_poset(n: int, relations: Iterable[Sequence[int]]) -> Poset:
    """Transitive closure of ``relations`` on ``range(n)``.

    Raises CycleError when the closure relates an element to itself.
    """
    up = [0] * n
    for p, q in relations:
        if not (0 <= p < n and 0 <= q < n):
            raise ValueError(f"relation ({p}, {q}) out of range for n={n}")
        up[p] |= 1 << q
    # Warshall on bitmask rows
    for k in range(n):
        kb = 1 << k
        for p in range(n):
            if up[p] & kb:
                up[p] |= up[k]
    for p in range(n):
        if up[p] >> p & 1:
            raise CycleError(f"element {p} lies on a cycle of the given relations")
    lt = tuple(tuple(bool(up[p] >> q & 1) for q in range(n)) for p in range(n))
    return Poset(n, lt)


def antichain(n: int) -> Poset:
    return build_poset(n, [])


def chain(n: int) -> Poset:
    return build_poset(n, [(i, i + 1) for i in range(n - 1)])


def covers(P: Poset) -> list[tuple[int, int]]:
    """Cover relations ``p < q`` with nothing strictly between, sorted."""
    out = []
    for p in range(P.n):
        for q in bits(P.up[p]):
            if not P.up[p] & P.down[q]:
                out.append((p, q))
    return out


def is_filter(P: Poset, members: int) -> bool:
    return all(P.up[p] & ~members == 0 for p in bits(members))


def is_ideal(P: Poset, members: int) -> bool:
    return all(P.down[p] & ~members == 0 for p in bits(members))


def filters(P: Poset) -> list[int]:
    """All filters (up-sets) of P as bitmasks, in increasing numeric order.

    Elements are decided from the top of a linear extension downward, so an
    element may join only once everything above it is already in.
    """
    order = P.linear_extension()[::-1]
    out: list[int] = []

    def extend(i: int, current: int) -> None:
        if i == len(order):
            out.append(current)
            return
        p = order[i]
        extend(i + 1, current)
        if P.up[p] & ~current == 0:
            extend(i + 1, current | (1 << p))

    extend(0, 0)
    out.sort()
    return out


def ideals(P: Poset) -> list[int]:
    full = (1 << P.n) - 1
    return sorted(full ^ F for F in filters(P))


def principal_filter(P: Poset, p: int) -> int:
    return P.up[p] | (1 << p)


def indicator(members: int, n: int) -> tuple[int, ...]:
    return tuple(members >> p & 1 for p in range(n))


def order_polytope_vertices(P: Poset):
    """Vertices of O(P): indicator vectors of the filters of P."""
    from .geometry import VPolytope

    return VPolytope(P.n, [indicator(F, P.n) for F in filters(P)])


def order_polytope_inequalities(P: Poset):
    """Irredundant H-representation of O(P) from covers, minima and maxima."""
    from .geometry import HPolytope

    n = P.n
    rows: list[tuple[tuple[int, ...], Fraction]] = []

    def unit(pairs):
        v = [0] * n
        for idx, c in pairs:
            v[idx] += c
        return tuple(v)

    for b in P.minimal():
        rows.append((unit([(b, -1)]), Fraction(0)))
    for a, b in covers(P):
        rows.append((unit([(a, 1), (b, -1)]), Fraction(0)))
    for a in P.maximal():
        rows.append((unit([(a, 1)]), Fraction(1)))
    return HPolytope(n, rows)


def is_connected_subposet(P: Poset, members: int) -> bool:
    """Whether the comparability graph induced on ``members`` is connected."""
    if not members:
        return False
    start = members & -members
    seen, frontier = start, start
    while frontier:
        nxt = 0
        for p in bits(frontier):
            nxt |= (P.up[p] | P.down[p]) & members
        frontier = nxt & ~seen
        seen |= frontier
    return seen == members


def order_polytope_is_edge(P: Poset, F: int, F2: int) -> bool:
    """Whether 1_F and 1_F2 span an edge of O(P) (F a proper subset of F2)."""
    if F & ~F2 or F == F2:
        return False
    return is_connected_subposet(P, F2 & ~F)


def all_posets(n: int) -> list[Poset]:
    """Every labeled poset on ``range(n)``, in a fixed order."""
    pairs = [(p, q) for p in range(n) for q in range(n) if p != q]
    out = []
    for mask in range(1 << len(pairs)):
        rel = [pairs[i] for i in bits(mask)]
        s = set(rel)
        if any((q, p) in s for p, q in rel):
            continue
        if any((p, r) not in s for p, q in rel for q2, r in rel if q == q2 and p != r):
            continue
        out.append(build_poset(n, rel))
    return out

"""Double posets, alternating chains and cycles, crossings and splitting.

Signs are the ints ``+1`` and ``-1`` (``PLUS``/``MINUS``); a relation with
sign ``s`` is a relation of the order ``plus`` if ``s == 1`` else ``minus``.
Walks store their ground-set nodes only; a chain's virtual endpoints BOT and
TOP are implicit.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import InvalidWitness
from .poset import BOT, TOP, Poset, bits

PLUS = 1
MINUS = -1


def sign_str(s: int) -> str:
    return "+" if s > 0 else "-"


@dataclass(frozen=True)
class DoublePoset:
    plus: Poset
    minus: Poset
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.plus.n != self.minus.n:
            raise ValueError("both orders must live on the same ground set")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(p) for p in range(self.plus.n)))
        elif len(self.labels) != self.plus.n or len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be unique, one per element")

    @property
    def n(self) -> int:
        return self.plus.n

    def order(self, s: int) -> Poset:
        return self.plus if s > 0 else self.minus

    def less(self, s: int, p: int, q: int) -> bool:
        return self.order(s).less(p, q)

    def leq(self, s: int, p: int, q: int) -> bool:
        return self.order(s).leq(p, q)

    def swapped(self) -> DoublePoset:
        return DoublePoset(self.minus, self.plus, self.labels)

    def name(self, p: int) -> str:
        if p == BOT:
            return "0^"
        if p == TOP:
            return "1^"
        return self.labels[p]


@dataclass(frozen=True)
class AlternatingChain:
    """BOT = p_0 <_s0 p_1 <_-s0 p_2 ... p_{k-1} < p_k = TOP."""

    nodes: tuple[int, ...]
    start_sign: int

    @property
    def k(self) -> int:
        return len(self.nodes) + 1

    @property
    def points(self) -> tuple[int, ...]:
        return (BOT,) + self.nodes + (TOP,)

    def segment_sign(self, i: int) -> int:
        return self.start_sign if i % 2 == 0 else -self.start_sign

    def segments(self) -> list[tuple[int, int, int]]:
        pts = self.points
        return [(pts[i], pts[i + 1], self.segment_sign(i)) for i in range(self.k)]

    @property
    def sign(self) -> int:
        return self.segment_sign(self.k - 1)

    @property
    def proper(self) -> bool:
        return self.k > 1


@dataclass(frozen=True)
class AlternatingCycle:
    """p_0 <_s0 p_1 <_-s0 ... p_{2k-1} <_-s0 p_0, kept in canonical rotation."""

    nodes: tuple[int, ...]
    start_sign: int

    def segment_sign(self, i: int) -> int:
        return self.start_sign if i % 2 == 0 else -self.start_sign

    def segments(self) -> list[tuple[int, int, int]]:
        L = len(self.nodes)
        return [(self.nodes[i], self.nodes[(i + 1) % L], self.segment_sign(i)) for i in range(L)]


Walk = Union[AlternatingChain, AlternatingCycle]


@dataclass(frozen=True)
class CrossingWitness:
    a: int
    i: int
    j: int
    tau: int
    sigma: int


def canonical_cycle(nodes, start_sign: int) -> AlternatingCycle:
    """Lexicographically least rotation of a cycle (shifts flip the sign when odd)."""
    nodes = tuple(nodes)
    best = None
    for r in range(len(nodes)):
        cand = (nodes[r:] + nodes[:r], start_sign if r % 2 == 0 else -start_sign)
        if best is None or cand < best:
            best = cand
    return AlternatingCycle(*best)


def render_walk(D: DoublePoset, W: Walk) -> str:
    if isinstance(W, AlternatingChain):
        pts = W.points
    else:
        pts = W.nodes + (W.nodes[0],)
    out = [D.name(pts[0])]
    for i in range(len(pts) - 1):
        out.append(f"<{sign_str(W.segment_sign(i))}")
        out.append(D.name(pts[i + 1]))
    return " ".join(out)


# -- validity ---------------------------------------------------------------

def is_valid_chain(D: DoublePoset, C: AlternatingChain) -> bool:
    if len(set(C.nodes)) != len(C.nodes) or not all(0 <= p < D.n for p in C.nodes):
        return False
    if not all(D.less(s, p, q) for p, q, s in C.segments()):
        return False
    if C.k % 2 == 1 and C.k > 1 and D.less(C.start_sign, C.nodes[-1], C.nodes[0]):
        return False
    return True


def is_valid_cycle(D: DoublePoset, C: AlternatingCycle) -> bool:
    L = len(C.nodes)
    if L < 2 or L % 2 or len(set(C.nodes)) != L or not all(0 <= p < D.n for p in C.nodes):
        return False
    return all(D.less(s, p, q) for p, q, s in C.segments())


def is_valid_walk(D: DoublePoset, W: Walk) -> bool:
    if isinstance(W, AlternatingChain):
        return W.proper and is_valid_chain(D, W)
    return is_valid_cycle(D, W)


# -- enumeration ------------------------------------------------------------

def enumerate_chains(D: DoublePoset) -> list[AlternatingChain]:
    """All proper alternating chains, sorted by length, nodes, start sign."""
    n = D.n
    out: list[AlternatingChain] = []
    path: list[int] = []

    def dfs(last: int, s_next: int, used: int, sigma: int) -> None:
        if path:
            k = len(path) + 1
            if k % 2 == 0 or not D.less(sigma, path[-1], path[0]):
                out.append(AlternatingChain(tuple(path), sigma))
        rel = D.order(s_next)
        succ = ((1 << n) - 1) if last == BOT else rel.up[last]
        for q in bits(succ & ~used):
            path.append(q)
            dfs(q, -s_next, used | (1 << q), sigma)
            path.pop()

    for sigma in (PLUS, MINUS):
        dfs(BOT, sigma, 0, sigma)
    out.sort(key=lambda c: (len(c.nodes), c.nodes, c.start_sign))
    return out


def enumerate_cycles(D: DoublePoset) -> list[AlternatingCycle]:
    """All alternating cycles, one per rotation class, each in canonical rotation."""
    n = D.n
    found: set[AlternatingCycle] = set()
    path: list[int] = []

    for start in range(n):
        allowed = ((1 << n) - 1) & ~((1 << (start + 1)) - 1)  # ids above start

        def dfs(last: int, s_next: int, used: int, sigma: int) -> None:
            rel = D.order(s_next)
            if len(path) % 2 == 0 and len(path) >= 2 and rel.up[last] >> start & 1:
                found.add(canonical_cycle(path, sigma))
            for q in bits(rel.up[last] & allowed & ~used):
                path.append(q)
                dfs(q, -s_next, used | (1 << q), sigma)
                path.pop()

        for sigma in (PLUS, MINUS):
            path.append(start)
            dfs(start, sigma, 1 << start, sigma)
            path.pop()
    return sorted(found, key=lambda c: (len(c.nodes), c.nodes, c.start_sign))


# -- functionals ------------------------------------------------------------

# Coefficients accumulate, so the formulas stay meaningful for the closed or
# open walks with repeated nodes that splitting can produce.

def chain_functional(C: AlternatingChain, n: int) -> tuple[tuple[int, ...], int]:
    """``(l_C, sign(C))``; node p_i gets coefficient start_sign * (-1)^i."""
    coeffs = [0] * n
    for idx, p in enumerate(C.nodes, start=1):
        coeffs[p] += C.segment_sign(idx)
    return tuple(coeffs), C.sign


def cycle_functional(C: AlternatingCycle, n: int) -> tuple[int, ...]:
    coeffs = [0] * n
    for idx, p in enumerate(C.nodes):
        coeffs[p] += C.segment_sign(idx)
    return tuple(coeffs)


def walk_functional(W: Walk, n: int) -> tuple[int, ...]:
    if isinstance(W, AlternatingChain):
        return chain_functional(W, n)[0]
    return cycle_functional(W, n)


# -- crossings --------------------------------------------------------------

def _in_segment(D: DoublePoset, a: int, p: int, q: int, s: int) -> bool:
    return D.leq(s, p, a) and D.less(s, a, q)


def crossing_witnesses(D: DoublePoset, W: Walk) -> list[CrossingWitness]:
    """Every (a, i, j), i != j, with p_i <=_s_i a <_s_i p_{i+1} and the same for j."""
    segs = W.segments()
    out = []
    for a in range(D.n):
        hits = [i for i, (p, q, s) in enumerate(segs) if _in_segment(D, a, p, q, s)]
        for i in hits:
            for j in hits:
                if i != j:
                    out.append(CrossingWitness(a, i, j, segs[i][2], segs[j][2]))
    return out


def crossing_witness(D: DoublePoset, W: Walk) -> Optional[CrossingWitness]:
    """The lexicographically least witness (a, i, j), or None if W is uncrossed."""
    segs = W.segments()
    for a in range(D.n):
        hits = [i for i, (p, q, s) in enumerate(segs) if _in_segment(D, a, p, q, s)]
        if len(hits) >= 2:
            i, j = hits[0], hits[1]
            return CrossingWitness(a, i, j, segs[i][2], segs[j][2])
    return None


def is_crossed(D: DoublePoset, W: Walk) -> bool:
    return crossing_witness(D, W) is not None


def interleaved_segments(D: DoublePoset, W: Walk) -> list[tuple[int, int]]:
    """Pairs i < j of same-sign segments with p_i <_s p_{j+1} and p_j <_s p_{i+1}.

    Not part of the crossing relation proper; see ``facet_certificates``.
    """
    segs = W.segments()
    out = []
    for i, (p, q, s) in enumerate(segs):
        for j in range(i + 1, len(segs)):
            p2, q2, s2 = segs[j]
            if s == s2 and D.less(s, p, q2) and D.less(s, p2, q):
                out.append((i, j))
    return out


def is_interleaved(D: DoublePoset, W: Walk) -> bool:
    return bool(interleaved_segments(D, W))


def uncrossed_walks(D: DoublePoset) -> tuple[list[AlternatingChain], list[AlternatingCycle]]:
    chains = [c for c in enumerate_chains(D) if not is_crossed(D, c)]
    cycles = [c for c in enumerate_cycles(D) if not is_crossed(D, c)]
    return chains, cycles


# -- splitting --------------------------------------------------------------

def _cycle_from(pairs: list[tuple[int, int]]) -> AlternatingCycle:
    return canonical_cycle([p for p, _ in pairs], pairs[0][1])


def split(D: DoublePoset, W: Walk, w: CrossingWitness) -> tuple[Walk, AlternatingCycle]:
    """Decompose a walk crossed by ``w.a`` into two walks whose functionals sum to l_W.

    A cycle splits into two cycles, a chain into a chain of the same sign and
    a cycle. Each piece is assembled as a list of (node, sign of the outgoing
    relation); a node's coefficient in l is exactly that sign.

    When ``a`` already lies on W away from segments i and j, a piece can
    repeat a node, and a new odd chain can close up into a cycle; such pieces
    satisfy the functional identity but are not simple walks. Use
    :func:`decompose` to reduce them.
    """
    segs = W.segments()
    L = len(segs)
    if not (0 <= w.i < L and 0 <= w.j < L and w.i != w.j):
        raise InvalidWitness(f"segment indices {w.i}, {w.j} out of range")
    for idx, s in ((w.i, w.tau), (w.j, w.sigma)):
        p, q, seg_s = segs[idx]
        if s != seg_s or not _in_segment(D, w.a, p, q, s):
            raise InvalidWitness(f"{w} does not cross segment {idx}")
    i, j = sorted((w.i, w.j))
    tau, sig = segs[i][2], segs[j][2]
    a = w.a
    # (point, outgoing sign); for chains point 0 is BOT and TOP is left off
    pts = [(p, s) for p, _, s in segs]
    if tau == sig:
        first = pts[: i + 1] + pts[j + 1 :]
        second = pts[i + 1 : j + 1]
    elif pts[i][0] == a:
        first = pts[:i] + pts[j + 1 :]
        second = [(a, tau)] + pts[i + 1 : j + 1]
    elif pts[j][0] == a:
        first = pts[: i + 1] + pts[j:]
        second = pts[i + 1 : j]
    else:
        first = pts[: i + 1] + [(a, -tau)] + pts[j + 1 :]
        second = [(a, tau)] + pts[i + 1 : j + 1]
    C2 = _cycle_from(second)
    if isinstance(W, AlternatingChain):
        C1: Walk = AlternatingChain(tuple(p for p, _ in first[1:]), first[0][1])
    else:
        C1 = _cycle_from(first)
    return C1, C2


# -- compatibility ----------------------------------------------------------

def common_linear_extension(D: DoublePoset) -> Optional[tuple[int, ...]]:
    """Ranks 1..n strictly preserving both orders, or None if none exists.

    Repeatedly gives the next highest rank to a common maximum of what is left.
    """
    n = D.n
    rank = [0] * n
    left = (1 << n) - 1
    for r in range(n, 0, -1):
        pick = next(
            (p for p in bits(left) if not (D.plus.up[p] & left) and not (D.minus.up[p] & left)),
            None,
        )
        if pick is None:
            return None
        rank[pick] = r
        left &= ~(1 << pick)
    return tuple(rank)


def is_compatible(D: DoublePoset) -> bool:
    return common_linear_extension(D) is not None


def preserves_both(D: DoublePoset, rank) -> bool:
    if sorted(rank) != list(range(1, D.n + 1)):
        return False
    return all(rank[p] < rank[q] for P in (D.plus, D.minus) for p, q in P.relations())


# -- reduction to simple walks ----------------------------------------------

def _first_repeat(seq: list[tuple[int, int]], start: int = 0) -> Optional[tuple[int, int]]:
    seen: dict[int, int] = {}
    for m in range(start, len(seq)):
        p = seq[m][0]
        if p in seen:
            return seen[p], m
        seen[p] = m
    return None


def _reduce_closed(seq: list[tuple[int, int]]) -> list[AlternatingCycle]:
    rep = _first_repeat(seq)
    if rep is None:
        return [_cycle_from(seq)]
    m1, m2 = rep
    inner, outer = seq[m1:m2], seq[m2:] + seq[:m1]
    if (m2 - m1) % 2:
        # x is entered and left with the same sign in both halves: shortcut it
        inner, outer = inner[1:], outer[1:]
    return _reduce_closed(inner) + _reduce_closed(outer)


def decompose(D: DoublePoset, W: Walk) -> tuple[Optional[AlternatingChain], list[AlternatingCycle]]:
    """Rewrite a possibly non-simple walk as simple walks with the same total functional.

    Returns ``(chain, cycles)``; ``chain`` is None for closed walks and when
    an open walk collapses entirely into cycles. A surviving chain keeps the
    sign of W.
    """
    if isinstance(W, AlternatingCycle):
        segs = W.segments()
        return None, _reduce_closed([(p, s) for p, _, s in segs])
    seq = [(p, s) for p, _, s in W.segments()]  # starts with BOT
    cycles: list[AlternatingCycle] = []
    while True:
        rep = _first_repeat(seq, 1)
        if rep is None:
            break
        m1, m2 = rep
        inner = seq[m1:m2]
        if (m2 - m1) % 2:
            cycles += _reduce_closed(inner[1:])
            seq = seq[:m1] + seq[m2 + 1 :]
        else:
            cycles += _reduce_closed(inner)
            seq = seq[:m1] + seq[m2:]
    nodes = tuple(p for p, _ in seq[1:])
    sigma = seq[0][1]
    if not nodes:
        return None, cycles
    if len(nodes) % 2 == 0 and D.less(sigma, nodes[-1], nodes[0]):
        # odd chain whose ends close up: it is the cycle on its inner nodes
        return None, cycles + [_cycle_from(seq[1:])]
    return AlternatingChain(nodes, sigma), cycles

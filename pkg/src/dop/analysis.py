"""Facets, rigidity, 2-levelness and vertices of double order polytopes.

Each combinatorial computation here has a geometric counterpart built on
:mod:`dop.geometry`; :func:`verify_instance` runs both and compares them.

Coordinates of T(P) are the n ground-set values followed by the height t.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import geometry as geo
from .double_poset import (
    AlternatingChain,
    AlternatingCycle,
    DoublePoset,
    Walk,
    common_linear_extension,
    crossing_witnesses,
    enumerate_chains,
    enumerate_cycles,
    is_crossed,
    is_interleaved,
    is_valid_walk,
    preserves_both,
    render_walk,
    split,
    walk_functional,
)
from .errors import GuardExceeded, ZeroFunctional
from .poset import (
    BOT,
    TOP,
    Poset,
    bits,
    filters,
    indicator,
    order_polytope_vertices,
)


# -- the two polytopes ------------------------------------------------------

def to_vertices(D: DoublePoset) -> geo.VPolytope:
    """Vertices of T(P): (2*1_F, 1) for filters of P+, (-2*1_G, -1) for filters of P-."""
    n = D.n
    top = [tuple(2 * x for x in indicator(F, n)) + (1,) for F in filters(D.plus)]
    bottom = [tuple(-2 * x for x in indicator(G, n)) + (-1,) for G in filters(D.minus)]
    return geo.VPolytope(n + 1, top + bottom)


def reduced_vertices_geometric(D: DoublePoset) -> geo.VPolytope:
    """Vertices of D(P) = O(P+) - O(P-), via the Minkowski oracle."""
    return geo.minkowski_difference_vertices(
        order_polytope_vertices(D.plus), order_polytope_vertices(D.minus)
    )


# -- facets -----------------------------------------------------------------

@dataclass(frozen=True)
class FacetCertificate:
    """Inequality ``normal . (f, t) <= rhs`` coming from an uncrossed walk."""

    walk: Walk
    normal: tuple[int, ...]
    rhs: int

    @property
    def inequality(self) -> tuple[tuple[int, ...], Fraction]:
        return self.normal, Fraction(self.rhs)


def walk_certificate(D: DoublePoset, W: Walk) -> FacetCertificate:
    l = walk_functional(W, D.n)
    if isinstance(W, AlternatingChain):
        return FacetCertificate(W, l + (-W.sign,), 1)
    return FacetCertificate(W, l + (0,), 0)


def facet_certificates(D: DoublePoset, interleave: bool = False) -> list[FacetCertificate]:
    """One vertical facet inequality per uncrossed chain and uncrossed cycle.

    Crossing alone admits some non-facets from n = 4 on: two same-sign
    segments can interleave with no element in both. ``interleave=True``
    also drops such walks; on every instance we have checked this makes the
    list agree with the hull exactly.
    """
    walks: list[Walk] = enumerate_chains(D) + enumerate_cycles(D)
    keep = [W for W in walks if not is_crossed(D, W) and not (interleave and is_interleaved(D, W))]
    return [walk_certificate(D, W) for W in keep]


def horizontal_facets(n: int) -> list[tuple[tuple[int, ...], Fraction]]:
    zero = (0,) * n
    return [(zero + (1,), Fraction(1)), (zero + (-1,), Fraction(1))]


def certificate_hrep(D: DoublePoset, interleave: bool = False) -> geo.HPolytope:
    """H-representation of T(P) read off from the uncrossed walks."""
    rows = horizontal_facets(D.n) + [c.inequality for c in facet_certificates(D, interleave)]
    return geo.HPolytope(D.n + 1, rows)


# -- face partitions and normal cones ---------------------------------------

@dataclass
class FacePartition:
    """Blocks of P-hat (BOT and TOP included) on which the face is constant."""

    blocks: list[tuple[int, ...]]
    face: list[int] = field(default_factory=list)  # maximizing filters

    @property
    def reduced(self) -> list[tuple[int, ...]]:
        return [b for b in self.blocks if len(b) > 1]

    def block_of(self, p: int) -> tuple[int, ...]:
        return next(b for b in self.blocks if p in b)


def _argmax_filters(P: Poset, l: Sequence) -> list[int]:
    vals = {F: geo.dot(l, indicator(F, P.n)) for F in filters(P)}
    top = max(vals.values())
    return [F for F, v in vals.items() if v == top]


def face_partition(P: Poset, l: Sequence) -> FacePartition:
    """Face partition of O(P)^l: classes of P-hat under equal value on every vertex of the face."""
    face = _argmax_filters(P, l)
    groups: dict[tuple[int, ...], list[int]] = {}
    groups.setdefault(tuple(0 for _ in face), []).append(BOT)
    for p in range(P.n):
        groups.setdefault(tuple(F >> p & 1 for F in face), []).append(p)
    groups.setdefault(tuple(1 for _ in face), []).append(TOP)
    blocks = sorted((tuple(sorted(b, key=_hat_key)) for b in groups.values()), key=lambda b: _hat_key(b[0]))
    return FacePartition(blocks, face)


def _hat_key(p: int) -> int:
    # BOT first, TOP last
    return -1 if p == BOT else (10**9 if p == TOP else p)


def ell(a: int, b: int, n: int) -> tuple[int, ...]:
    """l_{a,b}(f) = f(a) - f(b) with f(BOT) = 0 and f(TOP) = 1 dropped from the linear part."""
    v = [0] * n
    if a >= 0:
        v[a] += 1
    if b >= 0:
        v[b] -= 1
    return tuple(v)


def normal_cone(P: Poset, fp: FacePartition) -> geo.Cone:
    """cone{l_{a,b} : a < b in P-hat with [a, b] inside one block}."""
    hat = [BOT] + list(range(P.n)) + [TOP]
    gens = []
    for block in fp.reduced:
        inside = set(block)
        for a in block:
            for b in block:
                if not P.less(a, b):
                    continue
                interval = [c for c in hat if P.leq(a, c) and P.leq(c, b)]
                if all(c in inside for c in interval):
                    g = ell(a, b, P.n)
                    if any(g):
                        gens.append(g)
    return geo.cone_from_generators(sorted(set(gens)), P.n)


def block_extremes(P: Poset, block: Sequence[int]) -> tuple[list[int], list[int]]:
    mins = [p for p in block if not any(P.less(q, p) for q in block)]
    maxs = [p for p in block if not any(P.less(p, q) for q in block)]
    return mins, maxs


def maxmin_signs_hold(P: Poset, fp: FacePartition, l: Sequence) -> bool:
    """Sign pattern of a relint normal: >0 on block minima, <0 on block maxima, 0 off blocks."""
    covered = set()
    for block in fp.reduced:
        covered.update(block)
        mins, maxs = block_extremes(P, block)
        if any(p >= 0 and not l[p] > 0 for p in mins):
            return False
        if any(p >= 0 and not l[p] < 0 for p in maxs):
            return False
    return all(l[p] == 0 for p in range(P.n) if p not in covered)


# -- rigidity ---------------------------------------------------------------

def is_rigid(D: DoublePoset, l: Sequence, reduced: Optional[geo.VPolytope] = None) -> bool:
    """Whether l supports a facet of D(P)."""
    if not any(l):
        raise ZeroFunctional("the zero functional is never rigid")
    V = reduced_vertices_geometric(D) if reduced is None else reduced
    return geo.face_of(V, l).dimension == D.n - 1


def is_rigid_by_cones(D: DoublePoset, l: Sequence) -> bool:
    """Rigidity straight from the normal cones of the two order polytopes.

    relint N+(F+) and relint -N-(F-) meet exactly in the ray of l iff l lies
    in both relative interiors and the linear spans of the cones meet in a
    line.
    """
    if not any(l):
        raise ZeroFunctional("the zero functional is never rigid")
    neg = tuple(-x for x in l)
    Np = normal_cone(D.plus, face_partition(D.plus, l))
    Nm = normal_cone(D.minus, face_partition(D.minus, neg))
    if not geo.in_relint(Np, l) or not geo.in_relint(Nm, neg):
        return False
    common = geo.cone_dim(Np) + geo.cone_dim(Nm) - geo.rank(Np.generators + Nm.generators)
    return common == 1


# -- 2-levelness ------------------------------------------------------------

def two_level_violations(D: DoublePoset) -> list[tuple[Walk, int, int, int]]:
    """Segments p <_s q of uncrossed walks with p, q incomparable in the other order."""
    out = []
    walks: list[Walk] = [W for W in enumerate_chains(D) + enumerate_cycles(D) if not is_crossed(D, W)]
    for W in walks:
        for p, q, s in W.segments():
            if p < 0 or q < 0:
                continue
            if not D.order(-s).comparable(p, q):
                out.append((W, p, q, s))
    return out


def is_two_level_combinatorial(D: DoublePoset) -> bool:
    return not two_level_violations(D)


# -- vertices of D(P) -------------------------------------------------------

@dataclass
class VertexCertificate:
    f_plus: int
    f_minus: int
    # element -> alternating witness chain ending at it (filters) or starting at it (ideals)
    filter_chains: dict[int, tuple[int, ...]]
    ideal_chains: dict[int, tuple[int, ...]]


def _filter_witness(D: DoublePoset, a: int, Fp: int, Fm: int) -> Optional[tuple[int, ...]]:
    """Shortest a_1 <_s a_2 <_-s ... a_k = a with a_1 in F_s minus F_-s, the rest in both filters.

    Breadth-first search backward from a over states (node, sign of the
    relation leaving it); sign 0 marks a itself, whose relation to TOP is free.
    """
    both = Fp & Fm
    parent: dict[tuple[int, int], Optional[tuple[int, int]]] = {(a, 0): None}
    queue = deque([(a, 0)])
    while queue:
        x, s_out = queue.popleft()
        for s in ((1, -1) if s_out == 0 else (-s_out,)):
            own, other = (Fp, Fm) if s > 0 else (Fm, Fp)
            for y in bits(D.order(s).down[x]):
                if own >> y & 1 and not other >> y & 1:
                    path = [y]
                    cur: Optional[tuple[int, int]] = (x, s_out)
                    while cur is not None:
                        path.append(cur[0])
                        cur = parent[cur]
                    return tuple(path)
                if both >> y & 1 and (y, s) not in parent:
                    parent[(y, s)] = (x, s_out)
                    queue.append((y, s))
    return None


def _ideal_witness(opp: DoublePoset, b: int, Ip: int, Im: int) -> Optional[tuple[int, ...]]:
    """The ideal condition is the filter condition for the opposite orders."""
    path = _filter_witness(opp, b, Ip, Im)
    return None if path is None else tuple(reversed(path))


def reduced_vertex_check(D: DoublePoset, Fp: int, Fm: int) -> Optional[VertexCertificate]:
    """Certificate that 1_{F+} - 1_{F-} is a vertex of D(P), or None."""
    full = (1 << D.n) - 1
    fchains, ichains = {}, {}
    for a in bits(Fp & Fm):
        w = _filter_witness(D, a, Fp, Fm)
        if w is None:
            return None
        fchains[a] = w
    opp = None
    for b in bits(full & ~Fp & ~Fm):
        if opp is None:
            opp = DoublePoset(D.plus.opposite(), D.minus.opposite(), D.labels)
        w = _ideal_witness(opp, b, full ^ Fp, full ^ Fm)
        if w is None:
            return None
        ichains[b] = w
    return VertexCertificate(Fp, Fm, fchains, ichains)


def check_vertex_certificate(D: DoublePoset, cert: VertexCertificate) -> bool:
    """Re-validate every witness chain against the filter and ideal conditions directly."""
    Fp, Fm = cert.f_plus, cert.f_minus
    full = (1 << D.n) - 1
    Ip, Im = full & ~Fp, full & ~Fm

    def alternates(path, first_sign):
        return all(D.less(first_sign * (-1) ** m, path[m], path[m + 1]) for m in range(len(path) - 1))

    for a, path in cert.filter_chains.items():
        if len(set(path)) != len(path) or path[-1] != a or len(path) < 2:
            return False
        a1 = path[0]
        sigma = 1 if (Fp >> a1 & 1 and not Fm >> a1 & 1) else (-1 if (Fm >> a1 & 1 and not Fp >> a1 & 1) else 0)
        if sigma == 0 or not alternates(path, sigma):
            return False
        if not all((Fp & Fm) >> p & 1 for p in path[1:]):
            return False
    for b, path in cert.ideal_chains.items():
        if len(set(path)) != len(path) or path[0] != b or len(path) < 2:
            return False
        bk = path[-1]
        sigma = 1 if (Ip >> bk & 1 and not Im >> bk & 1) else (-1 if (Im >> bk & 1 and not Ip >> bk & 1) else 0)
        # the last relation b_{k-1} <_sigma b_k fixes the sign of the first one
        first = sigma * (-1) ** (len(path) - 2)
        if sigma == 0 or not alternates(path, first):
            return False
        if not all((Ip & Im) >> p & 1 for p in path[:-1]):
            return False
    return True


def minmax_disjoint(D: DoublePoset, Fp: int, Fm: int) -> bool:
    """min F+ and min F- are disjoint, and so are max I+ and max I-."""
    full = (1 << D.n) - 1

    def minima(P, S):
        return {p for p in bits(S) if not P.down[p] & S}

    def maxima(P, S):
        return {p for p in bits(S) if not P.up[p] & S}

    return not (minima(D.plus, Fp) & minima(D.minus, Fm)) and not (
        maxima(D.plus, full & ~Fp) & maxima(D.minus, full & ~Fm)
    )


# -- the oracle harness -----------------------------------------------------

@dataclass
class VerificationReport:
    n: int
    checks: dict[str, bool] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)
    failures: dict[str, list[str]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, ok: bool, detail: Optional[str] = None) -> None:
        self.checks[name] = self.checks.get(name, True) and ok
        if not ok and detail is not None:
            msgs = self.failures.setdefault(name, [])
            if len(msgs) < 5:
                msgs.append(detail)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "passed": self.passed,
            "checks": dict(self.checks),
            "counts": dict(self.counts),
            "failures": {k: list(v) for k, v in self.failures.items()},
        }


CHECKS = (
    "facets",
    "facets_interleave",
    "extreme_values",
    "extreme_values_uncrossed",
    "split_identity",
    "compatibility",
    "two_level",
    "vertices",
    "rigid_normals",
    "rigidity",
)


def extreme_values_of(D: DoublePoset, W: Walk, l: Sequence, Vp, Vm) -> tuple[Fraction, Fraction]:
    return geo.max_over(Vp, l), geo.min_over(Vm, l)


def expected_extreme_values(W: Walk) -> tuple[int, int]:
    if isinstance(W, AlternatingCycle):
        return 0, 0
    return (1, 0) if W.sign > 0 else (0, -1)


def verify_instance(D: DoublePoset, max_n: int = 6) -> VerificationReport:
    """Run every combinatorial characterization against the geometric oracle."""
    if D.n > max_n:
        raise GuardExceeded(f"n={D.n} exceeds the verification guard {max_n}")
    n = D.n
    rep = VerificationReport(n)
    for name in CHECKS:
        rep.checks[name] = True
    chains = enumerate_chains(D)
    cycles = enumerate_cycles(D)
    walks: list[Walk] = list(chains) + list(cycles)
    crossed = {W: is_crossed(D, W) for W in walks}
    rep.counts.update(
        chains=len(chains),
        cycles=len(cycles),
        uncrossed_chains=sum(not crossed[W] for W in chains),
        uncrossed_cycles=sum(not crossed[W] for W in cycles),
    )

    # facets of T(P)
    T = to_vertices(D)
    H = geo.hull_facets(T)
    hull = H.normalized()
    certs = [walk_certificate(D, W) for W in walks if not crossed[W]]
    cert_set = {geo.normalize_inequality(*c.inequality) for c in certs}
    cert_set |= set(horizontal_facets(n))
    rep.counts["facets"] = len(hull)
    rep.record("facets", len(cert_set) == len(certs) + 2, "two walks gave the same inequality")
    rep.record(
        "facets",
        cert_set == hull,
        f"hull-only {sorted(hull - cert_set)}, certificate-only {sorted(cert_set - hull)}",
    )

    alt = {geo.normalize_inequality(*c.inequality) for c in certs if not is_interleaved(D, c.walk)}
    alt |= set(horizontal_facets(n))
    rep.record(
        "facets_interleave",
        alt == hull,
        f"hull-only {sorted(hull - alt)}, certificate-only {sorted(alt - hull)}",
    )

    # extreme values on O(P+) and O(P-); a cycle functional also peaks at 0 on D(P)
    Vp = order_polytope_vertices(D.plus)
    Vm = order_polytope_vertices(D.minus)
    R = reduced_vertices_geometric(D)
    for W in walks:
        l = walk_functional(W, n)
        got = extreme_values_of(D, W, l, Vp, Vm)
        exp = expected_extreme_values(W)
        ok = got == exp
        if isinstance(W, AlternatingCycle):
            ok = ok and geo.max_over(R, l) == 0
        detail = f"{render_walk(D, W)}: (max O(P+), min O(P-)) = {tuple(map(str, got))}, expected {exp}"
        rep.record("extreme_values", ok, detail)
        if not crossed[W]:
            rep.record("extreme_values_uncrossed", ok, detail)

    # splitting identity, over every witness
    n_split = n_nonsimple = 0
    for W in walks:
        if not crossed[W]:
            continue
        lw = walk_functional(W, n)
        for w in crossing_witnesses(D, W):
            n_split += 1
            W1, W2 = split(D, W, w)
            total = tuple(x + y for x, y in zip(walk_functional(W1, n), walk_functional(W2, n)))
            ok = total == lw and isinstance(W2, AlternatingCycle)
            if isinstance(W, AlternatingChain):
                ok = ok and isinstance(W1, AlternatingChain) and W1.sign == W.sign
            else:
                ok = ok and isinstance(W1, AlternatingCycle)
            rep.record("split_identity", ok, f"{render_walk(D, W)} with {w}")
            if not (is_valid_walk(D, W1) and is_valid_walk(D, W2)):
                n_nonsimple += 1
    rep.counts["splits"] = n_split
    rep.counts["nonsimple_split_pieces"] = n_nonsimple

    # compatibility
    ext = common_linear_extension(D)
    ok = (ext is not None) == (not cycles) and (ext is None or preserves_both(D, ext))
    rep.record("compatibility", ok, f"extension {ext}, {len(cycles)} cycles")

    # 2-levelness
    comb = is_two_level_combinatorial(D)
    geom = geo.is_two_level(T, H)
    rep.counts["two_level"] = int(geom)
    rep.record("two_level", comb == geom, f"combinatorial {comb}, geometric {geom}")
    swapped = is_two_level_combinatorial(D.swapped())
    rep.record("two_level", swapped == comb, f"swapping the orders changes the verdict to {swapped}")

    # vertices of D(P)
    rverts = R.vertex_set()
    rep.counts["reduced_vertices"] = len(rverts)
    certified = 0
    for Fp in filters(D.plus):
        for Fm in filters(D.minus):
            point = tuple(Fraction((Fp >> p & 1) - (Fm >> p & 1)) for p in range(n))
            cert = reduced_vertex_check(D, Fp, Fm)
            is_vertex = point in rverts
            ok = (cert is not None) == is_vertex
            if cert is not None:
                certified += 1
                ok = ok and check_vertex_certificate(D, cert) and minmax_disjoint(D, Fp, Fm)
            rep.record("vertices", ok, f"F+={bits(Fp)} F-={bits(Fm)} certified={cert is not None} vertex={is_vertex}")
    rep.record("vertices", certified == len(rverts), f"{certified} certified pairs for {len(rverts)} vertices")

    # every facet normal of D(P) is a positive multiple of an uncrossed l_C
    rigid_dirs = {geo.primitive(walk_functional(W, n)) for W in walks if not crossed[W]}
    HD = geo.hull_facets(R) if n > 0 else geo.HPolytope(0, [])
    for a, _ in HD.inequalities:
        rep.record("rigid_normals", geo.primitive(a) in rigid_dirs, f"facet normal {a} of D(P)")
    rep.counts["reduced_facets"] = len(HD.inequalities)

    # crossed walks are not rigid, uncrossed ones are
    for W in walks:
        rigid = is_rigid(D, walk_functional(W, n), R)
        rep.record("rigidity", rigid != crossed[W], f"{render_walk(D, W)} crossed={crossed[W]} rigid={rigid}")
    return rep


__all__ = [
    "FacePartition",
    "FacetCertificate",
    "VerificationReport",
    "VertexCertificate",
    "certificate_hrep",
    "check_vertex_certificate",
    "face_partition",
    "facet_certificates",
    "horizontal_facets",
    "is_rigid",
    "is_rigid_by_cones",
    "is_two_level_combinatorial",
    "maxmin_signs_hold",
    "minmax_disjoint",
    "normal_cone",
    "reduced_vertex_check",
    "reduced_vertices_geometric",
    "to_vertices",
    "two_level_violations",
    "verify_instance",
]

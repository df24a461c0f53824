"""Exact polyhedral kernel over the rationals.

Everything here uses ``int`` and ``fractions.Fraction``; there is no floating
point anywhere. Convex hulls are computed with the double description method
on an integer-scaled homogenization, so both facet enumeration (V -> H) and
vertex enumeration (H -> V) reduce to :func:`extreme_rays`.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionTooLarge, EmptyInput

Vector = tuple  # of int / Fraction
Inequality = tuple  # (normal, rhs): <normal, x> <= rhs


def max_dim() -> int:
    return int(os.environ.get("DOP_MAX_DIM", "10"))


# -- small exact linear algebra ---------------------------------------------

def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector by a positive factor to coprime integers."""
    den = reduce(lcm, (Fraction(x).denominator for x in v), 1)
    ints = [int(Fraction(x) * den) for x in v]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def normalize_inequality(normal: Sequence, rhs) -> tuple[tuple[int, ...], Fraction]:
    """Scale ``normal . x <= rhs`` so the normal is a primitive integer vector."""
    fr = [Fraction(x) for x in normal]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints), Fraction(rhs)
    return tuple(x // g for x in ints), Fraction(rhs) * den / g


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    if not M:
        return M, pivots
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def affine_rank(points: Sequence[Sequence]) -> int:
    """Affine dimension of a finite point set (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


# -- double description -----------------------------------------------------

def _independent_rows(A: Sequence[Sequence[int]], m: int) -> list[int]:
    chosen: list[int] = []
    basis: list[list[Fraction]] = []  # echelon rows with pivot positions
    pivcols: list[int] = []
    for idx, row in enumerate(A):
        v = [Fraction(x) for x in row]
        for b, c in zip(basis, pivcols):
            if v[c] != 0:
                f = v[c] / b[c]
                v = [x - f * y for x, y in zip(v, b)]
        c = next((k for k in range(m) if v[k] != 0), None)
        if c is None:
            continue
        basis.append(v)
        pivcols.append(c)
        chosen.append(idx)
        if len(chosen) == m:
            break
    return chosen


def _inverse(B: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    m = len(B)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(m)] for i, row in enumerate(B)]
    R, piv = rref(aug)
    assert piv[:m] == list(range(m)), "singular basis"
    return [row[m:] for row in R]


def extreme_rays(A: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{y : A y >= 0}``.

    ``A`` must have integer entries and full column rank. Rays come back as
    primitive integer vectors, sorted.
    """
    A = [tuple(int(x) for x in row) for row in A]
    if not A:
        raise EmptyInput("no constraints")
    m = len(A[0])
    basis = _independent_rows(A, m)
    if len(basis) < m:
        raise ValueError("constraint matrix is not of full column rank (cone not pointed)")
    inv = _inverse([A[i] for i in basis])
    # ray j is the j-th column of the inverse; it is tight on all basis rows but j
    rays: list[tuple[int, ...]] = []
    zeros: list[int] = []
    for j in range(m):
        rays.append(primitive([inv[i][j] for i in range(m)]))
        zeros.append(reduce(lambda acc, k: acc | (1 << basis[k]) if k != j else acc, range(m), 0))
    need = m - 2  # adjacent rays share at least m - 2 tight constraints
    rest = [i for i in range(len(A)) if i not in set(basis)]
    for i in rest:
        a = A[i]
        bit = 1 << i
        vals = [dot(a, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        new_rays: list[tuple[int, ...]] = []
        new_zeros: list[int] = []
        if pos and neg:
            for kp in pos:
                zp = zeros[kp]
                for kn in neg:
                    common = zp & zeros[kn]
                    if common.bit_count() < need:
                        continue
                    if any(k != kp and k != kn and zeros[k] & common == common for k in range(len(rays))):
                        continue
                    vp, vn = vals[kp], -vals[kn]
                    r = primitive([vp * x + vn * y for x, y in zip(rays[kn], rays[kp])])
                    new_rays.append(r)
                    new_zeros.append(common | bit)
        keep = [k for k, v in enumerate(vals) if v >= 0]
        rays = [rays[k] for k in keep] + new_rays
        zeros = [zeros[k] | (bit if vals[k] == 0 else 0) for k in keep] + new_zeros
    return sorted(set(rays))


# -- polytopes --------------------------------------------------------------

@dataclass
class VPolytope:
    """Convex hull of ``vertices`` in R^dim."""

    dim: int
    vertices: list[Vector]

    def __post_init__(self):
        self.vertices = [tuple(v) for v in self.vertices]

    def vertex_set(self) -> set:
        return {tuple(Fraction(x) for x in v) for v in self.vertices}


@dataclass
class HPolytope:
    """``{x : <a, x> <= b for (a, b) in inequalities, <e, x> = c for (e, c) in equations}``."""

    dim: int
    inequalities: list[Inequality]
    equations: list[Inequality] = field(default_factory=list)

    def normalized(self) -> set[tuple[tuple[int, ...], Fraction]]:
        return {normalize_inequality(a, b) for a, b in self.inequalities}

    def contains(self, x: Sequence) -> bool:
        return all(dot(a, x) <= b for a, b in self.inequalities) and all(
            dot(e, x) == c for e, c in self.equations
        )


@dataclass
class _Frame:
    """Affine hull of a point set: coordinates that parametrize it, plus its equations."""

    coords: list[int]
    equations: list[Inequality]

    def project(self, p: Sequence) -> tuple:
        return tuple(p[c] for c in self.coords)


def _affine_frame(points: Sequence[Sequence], d: int) -> _Frame:
    base = points[0]
    diffs = [[Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in points[1:]]
    R, piv = rref(diffs) if diffs else ([], [])
    eqs = []
    for c in range(d):
        if c in piv:
            continue
        e = [Fraction(0)] * d
        e[c] = Fraction(1)
        for row, pc in zip(R, piv):
            e[pc] = -row[c]
        normal = primitive(e)
        eqs.append((normal, Fraction(dot(normal, base))))
    return _Frame(list(piv), eqs)


def _dedupe(points: Iterable[Sequence]) -> list[tuple]:
    seen, out = set(), []
    for p in points:
        key = tuple(Fraction(x) for x in p)
        if key not in seen:
            seen.add(key)
            out.append(tuple(p))
    return out


def _check_dim(d: int) -> None:
    if d > max_dim():
        raise DimensionTooLarge(f"ambient dimension {d} exceeds the guard {max_dim()} (DOP_MAX_DIM)")


def _full_dim_facets(points: Sequence[Sequence]) -> list[tuple[tuple[int, ...], Fraction]]:
    """Facets of a full-dimensional point cloud, as normalized inequalities."""
    rows = []
    for p in points:
        lifted = [Fraction(x) for x in p] + [Fraction(1)]
        rows.append(primitive(lifted))
    out = []
    for ray in extreme_rays(rows):
        # ray (c, b) means c.x + b >= 0, i.e. (-c).x <= b
        out.append(normalize_inequality([-x for x in ray[:-1]], ray[-1]))
    return sorted(out)


def hull_facets(V: VPolytope) -> HPolytope:
    """Irredundant H-representation of conv(V).

    For a lower-dimensional hull the facets are computed inside the affine
    hull (their normals only use the coordinates that parametrize it) and the
    affine equations are returned separately.
    """
    pts = _dedupe(V.vertices)
    if not pts:
        raise EmptyInput("hull of an empty point set")
    _check_dim(V.dim)
    frame = _affine_frame(pts, V.dim)
    r = len(frame.coords)
    if r == 0:
        return HPolytope(V.dim, [], frame.equations)
    proj = [frame.project(p) for p in pts]
    ineqs = []
    for a, b in _full_dim_facets(proj):
        normal = [0] * V.dim
        for c, x in zip(frame.coords, a):
            normal[c] = x
        ineqs.append((tuple(normal), b))
    return HPolytope(V.dim, ineqs, frame.equations)


def extreme_points(points: Iterable[Sequence], d: int | None = None) -> list[tuple]:
    """The points of the cloud that are vertices of its convex hull, sorted."""
    pts = _dedupe(points)
    if not pts:
        raise EmptyInput("no points")
    d = len(pts[0]) if d is None else d
    _check_dim(d)
    frame = _affine_frame(pts, d)
    r = len(frame.coords)
    if r == 0:
        return pts
    proj = [frame.project(p) for p in pts]
    facets = _full_dim_facets(proj)
    out = []
    for p, q in zip(pts, proj):
        tight = [a for a, b in facets if dot(a, q) == b]
        if len(tight) >= r and rank(tight) == r:
            out.append(p)
    return sorted(out)


def polytope_vertices(H: HPolytope) -> list[tuple[Fraction, ...]]:
    """Vertices of a bounded, nonempty H-polytope (vertex enumeration)."""
    _check_dim(H.dim)
    rows = []
    for a, b in H.inequalities:
        rows.append(primitive([-Fraction(x) for x in a] + [Fraction(b)]))
    for e, c in H.equations:
        rows.append(primitive([-Fraction(x) for x in e] + [Fraction(c)]))
        rows.append(primitive([Fraction(x) for x in e] + [-Fraction(c)]))
    rows.append(tuple([0] * H.dim + [1]))
    out = []
    for ray in extreme_rays(rows):
        s = ray[-1]
        if s <= 0:
            raise ValueError("polyhedron is unbounded")
        out.append(tuple(Fraction(x, s) for x in ray[:-1]))
    return sorted(out)


# -- faces and functionals --------------------------------------------------

@dataclass
class FaceDescriptor:
    functional: Vector
    vertex_indices: list[int]
    dimension: int
    value: Fraction


def face_of(V: VPolytope, l: Sequence) -> FaceDescriptor:
    """The face of conv(V) maximizing ``l``: argmax vertices and affine dimension."""
    if not V.vertices:
        raise EmptyInput("empty polytope")
    vals = [dot(l, v) for v in V.vertices]
    top = max(vals)
    idx = [i for i, x in enumerate(vals) if x == top]
    dim = affine_rank([V.vertices[i] for i in idx])
    return FaceDescriptor(tuple(l), idx, dim, Fraction(top))


def max_over(V: VPolytope, l: Sequence) -> Fraction:
    if not V.vertices:
        raise EmptyInput("empty polytope")
    return Fraction(max(dot(l, v) for v in V.vertices))


def min_over(V: VPolytope, l: Sequence) -> Fraction:
    return -max_over(V, [-x for x in l])


def minkowski_difference_vertices(V1: VPolytope, V2: VPolytope) -> VPolytope:
    """Vertices of conv(V1) + (-conv(V2))."""
    if V1.dim != V2.dim:
        raise ValueError("ambient dimensions differ")
    cloud = _dedupe(tuple(a - b for a, b in zip(p, q)) for p in V1.vertices for q in V2.vertices)
    return VPolytope(V1.dim, extreme_points(cloud, V1.dim))


def facet_values(V: VPolytope, H: HPolytope) -> list[set]:
    return [{dot(a, v) for v in V.vertices} for a, _ in H.inequalities]


def is_two_level(V: VPolytope, H: HPolytope | None = None) -> bool:
    """Whether every facet normal takes exactly two values on the vertices."""
    H = hull_facets(V) if H is None else H
    return all(len(vals) == 2 for vals in facet_values(V, H))


# -- exact simplex ----------------------------------------------------------

def lp_maximize(c: Sequence, A_eq: Sequence[Sequence], b_eq: Sequence):
    """Maximize ``c.x`` subject to ``A_eq x = b_eq``, ``x >= 0``.

    Two-phase tableau simplex with Bland's rule in exact arithmetic. Returns
    ``(status, value, x)`` with status one of "optimal", "infeasible",
    "unbounded".
    """
    m, n = len(A_eq), len(c)
    A = [[Fraction(x) for x in row] for row in A_eq]
    b = [Fraction(x) for x in b_eq]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    # columns: x (n), artificials (m)
    T = [A[i] + [Fraction(int(i == k)) for k in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    width = n + m

    def pivot(r: int, col: int) -> None:
        inv = 1 / T[r][col]
        T[r] = [x * inv for x in T[r]]
        for i in range(m):
            if i != r and T[i][col] != 0:
                f = T[i][col]
                T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        basis[r] = col

    def run(cost: list[Fraction], allowed: int) -> str:
        while True:
            # reduced costs for maximization
            cb = [cost[j] for j in basis]
            enter = None
            for j in range(allowed):
                if j in basis:
                    continue
                rc = cost[j] - sum(cb[i] * T[i][j] for i in range(m))
                if rc > 0:
                    enter = j
                    break
            if enter is None:
                return "optimal"
            best, leave = None, None
            for i in range(m):
                if T[i][enter] > 0:
                    ratio = T[i][-1] / T[i][enter]
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        best, leave = ratio, i
            if leave is None:
                return "unbounded"
            pivot(leave, enter)

    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    run(phase1, width)
    if sum(T[i][-1] for i in range(m) if basis[i] >= n) != 0:
        return "infeasible", None, None
    # drive artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is not None:
                pivot(i, col)
    cost = [Fraction(x) for x in c] + [Fraction(0)] * m
    # redundant rows keep an artificial at zero; forbid it from re-entering
    status = run(cost, n)
    if status == "unbounded":
        return status, None, None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = T[i][-1]
    return "optimal", dot(c, x), x


@dataclass
class Cone:
    """Cone generated by finitely many vectors in R^dim."""

    dim: int
    generators: list[Vector]


def cone_from_generators(gens: Iterable[Sequence], dim: int | None = None) -> Cone:
    gens = [tuple(g) for g in gens if any(x != 0 for x in g)]
    if dim is None:
        if not gens:
            raise ValueError("dimension needed for a cone without generators")
        dim = len(gens[0])
    return Cone(dim, gens)


def cone_dim(C: Cone) -> int:
    return rank(C.generators)


def contains(C: Cone, l: Sequence) -> bool:
    if not C.generators:
        return all(x == 0 for x in l)
    A = [[g[i] for g in C.generators] for i in range(C.dim)]
    status, _, _ = lp_maximize([0] * len(C.generators), A, l)
    return status == "optimal"


def in_relint(C: Cone, l: Sequence) -> bool:
    """Whether ``l`` is a strictly positive combination of all generators."""
    if not C.generators:
        return all(x == 0 for x in l)
    k = len(C.generators)
    # lambda_g = mu_g + s with mu >= 0; maximize s subject to s <= 1
    A = []
    for i in range(C.dim):
        A.append([g[i] for g in C.generators] + [sum(g[i] for g in C.generators), 0])
    A.append([0] * k + [1, 1])
    b = list(l) + [1]
    c = [0] * k + [1, 0]
    status, value, _ = lp_maximize(c, A, b)
    return status == "optimal" and value > 0


def relint_point(C: Cone) -> tuple:
    """A point in the relative interior: the sum of all generators."""
    return tuple(sum(g[i] for g in C.generators) for i in range(C.dim))

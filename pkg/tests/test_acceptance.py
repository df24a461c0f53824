"""Acceptance criteria 1 to 10, each checked exactly and reported as one line.

Criteria 1 to 8 share one sweep: every pair of labeled posets on n <= 3
elements plus 500 seeded random pairs at each of n = 4 and n = 5.
"""
import random
from collections import Counter
from fractions import Fraction
from functools import lru_cache

from dop import analysis as an
from dop import geometry as geo
from dop.double_poset import MINUS, AlternatingChain, DoublePoset
from dop.generate import exhaustive_double_posets, random_double_posets, random_poset
from dop.io import render_instance
from dop.poset import antichain, build_poset, covers, order_polytope_vertices

SEED = 7
RANDOM_COUNT = 500


@lru_cache(maxsize=None)
def sweep():
    out = []
    for n in range(4):
        out += [(D, an.verify_instance(D)) for D in exhaustive_double_posets(n)]
    for n in (4, 5):
        out += [(D, an.verify_instance(D)) for D in random_double_posets(n, RANDOM_COUNT, SEED)]
    return out


def sweep_verdict(check, max_n=None):
    runs = [(D, rep) for D, rep in sweep() if max_n is None or D.n <= max_n]
    bad = [(D, rep) for D, rep in runs if not rep.checks[check]]
    per_n = Counter(D.n for D, _ in bad)
    line = f"{len(runs) - len(bad)}/{len(runs)} instances"
    if bad:
        D, rep = bad[0]
        line += f"; failures by n {dict(sorted(per_n.items()))}; first {render_instance(D)}: {rep.failures[check][0]}"
    return not bad, line


def test_sweep_size():
    sizes = Counter(D.n for D, _ in sweep())
    assert sizes == {0: 1, 1: 1, 2: 9, 3: 361, 4: RANDOM_COUNT, 5: RANDOM_COUNT}


def test_criterion_01_facet_bijection(criterion):
    ok, line = sweep_verdict("facets")
    criterion(1, ok, "certificate inequalities equal hull facets of T(P): " + line)
    assert ok, line


def test_criterion_02_non_two_level_values(criterion):
    D = DoublePoset(build_poset(2, [(0, 1)]), antichain(2), ("a", "b"))
    cert = an.walk_certificate(D, AlternatingChain((0, 1), MINUS))
    # F_1 = {b}, F_2 = {a}, F_3 = {} as filters of the minus order
    vals = [geo.dot(cert.normal, (-2 * fa, -2 * fb, -1)) for fa, fb in ((0, 1), (1, 0), (0, 0))]
    ok = cert.normal == (1, -1, 1) and cert.rhs == 1 and vals == [1, -3, -1]
    criterion(2, ok, f"L_C = f(a) - f(b) + t takes {vals} on the three bottom vertices")
    assert ok


def test_criterion_03_opposite_order_prism(criterion):
    rng = random.Random(SEED)
    rows = []
    for i in range(30):
        P = random_poset(1 + i % 5, rng)
        D = DoublePoset(P, P.opposite())
        reduced = len(geo.hull_facets(an.reduced_vertices_geometric(D)).inequalities)
        order = len(geo.hull_facets(order_polytope_vertices(P)).inequalities)
        formula = len(P.minimal()) + len(P.maximal()) + len(covers(P))
        rows.append((reduced, order, formula))
    bad = [r for r in rows if not r[0] == r[1] == r[2]]
    criterion(3, not bad, f"{len(rows) - len(bad)}/{len(rows)} posets with facets(D) = facets(O) = min + max + covers")
    assert not bad, bad


def test_criterion_04_extreme_values(criterion):
    ok, line = sweep_verdict("extreme_values")
    walks = sum(rep.counts["chains"] + rep.counts["cycles"] for _, rep in sweep())
    criterion(4, ok, f"extreme values over {walks} chains and cycles: " + line)
    assert ok, line


def test_criterion_05_split_identity(criterion):
    ok, line = sweep_verdict("split_identity")
    splits = sum(rep.counts["splits"] for _, rep in sweep())
    criterion(5, ok, f"{splits} (walk, witness) splits: " + line)
    assert ok, line


def test_criterion_06_compatibility(criterion):
    ok, line = sweep_verdict("compatibility")
    criterion(6, ok, "compatible iff no cycles iff valid common extension: " + line)
    assert ok, line


def test_criterion_07_two_level(criterion):
    ok, line = sweep_verdict("two_level")
    criterion(7, ok, "combinatorial 2-level test equals geometric one and is swap invariant: " + line)
    assert ok, line


def test_criterion_08_vertices(criterion):
    ok, line = sweep_verdict("vertices", max_n=4)
    criterion(8, ok, "vertex certificates equal the Minkowski vertex set (n <= 4): " + line)
    assert ok, line


def test_criterion_09_normal_cone_signs(criterion):
    rng = random.Random(SEED)
    bad, total = [], 150
    for i in range(total):
        P = random_poset(1 + i % 4, rng)
        l = [rng.randint(-2, 2) for _ in range(P.n)]
        fp = an.face_partition(P, l)
        N = an.normal_cone(P, fp)
        point = geo.relint_point(N)
        if not (geo.in_relint(N, point) and an.maxmin_signs_hold(P, fp, point)):
            bad.append((P.relations(), l))
    criterion(9, not bad, f"{total - len(bad)}/{total} relint normals with the block sign pattern")
    assert not bad, bad[:3]


def _in_hull(p, pts):
    """LP oracle: is p a convex combination of pts."""
    d = len(p)
    A = [[Fraction(q[i]) for q in pts] for i in range(d)] + [[Fraction(1)] * len(pts)]
    status, _, _ = geo.lp_maximize([0] * len(pts), A, list(p) + [1])
    return status == "optimal"


def test_criterion_10_geometry_kernel(criterion):
    rng = random.Random(SEED)
    bad, total = [], 220
    for i in range(total):
        d = 1 + i % 5
        m = rng.randint(1, 12)
        pts = [tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(d)) for _ in range(m)]
        verts = geo.extreme_points(pts, d)
        H = geo.hull_facets(geo.VPolytope(d, verts))
        r = geo.affine_rank(verts)
        ok = all(H.contains(p) for p in pts)
        ok = ok and all(geo.affine_rank([v for v in verts if geo.dot(a, v) == b]) == r - 1 for a, b in H.inequalities)
        ok = ok and set(geo.polytope_vertices(H)) == {tuple(map(Fraction, v)) for v in verts}
        # independent LP oracle for which points are extreme
        distinct = list(dict.fromkeys(pts))
        ok = ok and all(
            (p in verts) == (not _in_hull(p, [q for q in distinct if q != p]) if len(distinct) > 1 else True)
            for p in distinct
        )
        if not ok:
            bad.append(pts)
    criterion(10, not bad, f"{total - len(bad)}/{total} random rational hulls (d <= 5) pass inclusion and duality")
    assert not bad

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dop.double_poset import (
    MINUS,
    PLUS,
    AlternatingChain,
    AlternatingCycle,
    CrossingWitness,
    DoublePoset,
    canonical_cycle,
    chain_functional,
    common_linear_extension,
    crossing_witness,
    crossing_witnesses,
    cycle_functional,
    decompose,
    enumerate_chains,
    enumerate_cycles,
    is_compatible,
    is_crossed,
    is_valid_chain,
    is_valid_cycle,
    is_valid_walk,
    preserves_both,
    render_walk,
    split,
    walk_functional,
)
from dop.errors import InvalidWitness
from dop.generate import exhaustive_double_posets, random_double_posets
from dop.poset import BOT, TOP, antichain, build_poset

# p0 p1 p2 p3 a
P0, P1, P2, P3, A = range(5)
FIVE = DoublePoset(
    build_poset(5, [(P0, P1), (P2, P3), (P0, A), (A, P1), (P2, A), (A, P3)]),
    build_poset(5, [(P1, P2), (P3, P0)]),
)


def random_instances(n, count, seed):
    return list(random_double_posets(n, count, seed))


def test_chains_single(single):
    chains = enumerate_chains(single)
    assert {(c.nodes, c.start_sign) for c in chains} == {((0,), PLUS), ((0,), MINUS)}


def test_chains_chain_antichain(chain_antichain):
    chains = enumerate_chains(chain_antichain)
    assert len(chains) == 5
    assert sum(c.k == 2 for c in chains) == 4
    assert AlternatingChain((0, 1), MINUS) in chains


def test_chains_incompatible(incompatible):
    chains = enumerate_chains(incompatible)
    assert len(chains) == 4 and all(c.k == 2 for c in chains)


def test_cycles(incompatible, chain_antichain):
    assert enumerate_cycles(chain_antichain) == []
    assert enumerate_cycles(incompatible) == [AlternatingCycle((0, 1), PLUS)]


def test_cycles_five_element_instance():
    cycles = enumerate_cycles(FIVE)
    assert AlternatingCycle((P0, P1, P2, P3), PLUS) in cycles
    assert AlternatingCycle((P0, P3), PLUS) in cycles
    assert AlternatingCycle((P1, P2), MINUS) in cycles
    assert all(is_valid_cycle(FIVE, c) for c in cycles)


def test_chain_functionals():
    assert chain_functional(AlternatingChain((0,), PLUS), 1) == ((-1,), MINUS)
    assert chain_functional(AlternatingChain((0, 1), MINUS), 2) == ((1, -1), MINUS)
    assert chain_functional(AlternatingChain((1,), MINUS), 2) == ((0, 1), PLUS)


def test_cycle_functionals():
    assert cycle_functional(AlternatingCycle((0, 1), PLUS), 2) == (1, -1)
    assert cycle_functional(AlternatingCycle((0, 1, 2, 3), PLUS), 4) == (1, -1, 1, -1)
    assert cycle_functional(AlternatingCycle((1, 2), MINUS), 3) == (0, -1, 1)


def test_canonical_rotation_keeps_functional():
    c = canonical_cycle((2, 3, 0, 1), PLUS)
    assert c == AlternatingCycle((0, 1, 2, 3), PLUS)
    odd = canonical_cycle((1, 2, 3, 0), MINUS)
    assert odd == AlternatingCycle((0, 1, 2, 3), PLUS)
    assert cycle_functional(odd, 4) == cycle_functional(AlternatingCycle((1, 2, 3, 0), MINUS), 4)


def test_crossing_examples(incompatible, chain_antichain):
    assert crossing_witness(incompatible, AlternatingChain((1,), PLUS)) == CrossingWitness(0, 0, 1, PLUS, MINUS)
    assert crossing_witness(incompatible, AlternatingCycle((0, 1), PLUS)) is None
    assert crossing_witness(chain_antichain, AlternatingChain((0, 1), MINUS)) is None


def test_render_walk(chain_antichain):
    assert render_walk(chain_antichain, AlternatingChain((0, 1), MINUS)) == "0^ <- a <+ b <- 1^"


def test_split_four_cycle():
    C = AlternatingCycle((P0, P1, P2, P3), PLUS)
    w = CrossingWitness(A, 0, 2, PLUS, PLUS)
    C1, C2 = split(FIVE, C, w)
    assert C1 == AlternatingCycle((P0, P3), PLUS)
    assert C2 == AlternatingCycle((P1, P2), MINUS)
    total = [x + y for x, y in zip(walk_functional(C1, 5), walk_functional(C2, 5))]
    assert tuple(total) == walk_functional(C, 5)


def test_split_rejects_bad_witness():
    C = AlternatingCycle((P0, P1, P2, P3), PLUS)
    with pytest.raises(InvalidWitness):
        split(FIVE, C, CrossingWitness(A, 0, 1, PLUS, MINUS))
    with pytest.raises(InvalidWitness):
        split(FIVE, C, CrossingWitness(A, 0, 9, PLUS, PLUS))


def test_split_opposite_signs_with_a_on_the_walk():
    # find a witness with tau = -sigma and a = p_i, then check the chain piece skips a there
    for D in exhaustive_double_posets(3):
        for C in enumerate_chains(D):
            for w in crossing_witnesses(D, C):
                i, j = sorted((w.i, w.j))
                if w.tau == w.sigma or C.points[i] != w.a:
                    continue
                C1, C2 = split(D, C, w)
                assert isinstance(C1, AlternatingChain) and C1.sign == C.sign
                assert C1.points[:i] == C.points[:i] and C1.points[i] != w.a
                return
    pytest.fail("no such witness at n = 3")


def test_compatibility_examples(incompatible, chain_antichain):
    P = build_poset(3, [(0, 1)])
    assert is_compatible(DoublePoset(P, P))
    assert not is_compatible(incompatible)
    assert common_linear_extension(incompatible) is None
    assert common_linear_extension(chain_antichain) == (1, 2)
    assert common_linear_extension(DoublePoset(antichain(1), antichain(1))) == (1,)


def test_swapped_orders_flip_signs():
    for D in exhaustive_double_posets(3):
        S = D.swapped()
        flip = lambda W: type(W)(W.nodes, -W.start_sign)  # noqa: E731
        assert sorted(map(flip, enumerate_chains(D)), key=repr) == sorted(enumerate_chains(S), key=repr)
        assert {canonical_cycle(c.nodes, -c.start_sign) for c in enumerate_cycles(D)} == set(enumerate_cycles(S))


def test_compatibility_iff_no_cycles_exhaustive():
    for n in range(4):
        for D in exhaustive_double_posets(n):
            ext = common_linear_extension(D)
            assert (ext is not None) == (not enumerate_cycles(D))
            if ext is not None:
                assert preserves_both(D, ext)


@st.composite
def double_posets(draw, max_n=5):
    n = draw(st.integers(0, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return next(random_double_posets(n, 1, seed, keep=draw(st.sampled_from([0.3, 0.5, 0.7]))))


@settings(max_examples=80, deadline=None)
@given(double_posets())
def test_enumerated_walks_are_valid_and_distinct(D):
    chains, cycles = enumerate_chains(D), enumerate_cycles(D)
    assert all(is_valid_chain(D, c) and c.proper for c in chains)
    assert all(is_valid_cycle(D, c) for c in cycles)
    assert len(set(chains)) == len(chains) and len(set(cycles)) == len(cycles)
    assert all(canonical_cycle(c.nodes, c.start_sign) == c for c in cycles)


def _brute_force_chains(D):
    """Every sequence of distinct elements, checked against the definition directly."""
    from itertools import permutations

    out = set()
    for k in range(1, D.n + 1):
        for nodes in permutations(range(D.n), k):
            for s in (PLUS, MINUS):
                C = AlternatingChain(nodes, s)
                if is_valid_walk(D, C):
                    out.add(C)
    return out


@settings(max_examples=40, deadline=None)
@given(double_posets(max_n=4))
def test_chain_enumeration_matches_brute_force(D):
    assert set(enumerate_chains(D)) == _brute_force_chains(D)


@settings(max_examples=60, deadline=None)
@given(double_posets(max_n=5))
def test_split_identity_for_every_witness(D):
    n = D.n
    for W in enumerate_chains(D) + enumerate_cycles(D):
        lw = walk_functional(W, n)
        for w in crossing_witnesses(D, W):
            W1, W2 = split(D, W, w)
            assert isinstance(W2, AlternatingCycle)
            total = tuple(x + y for x, y in zip(walk_functional(W1, n), walk_functional(W2, n)))
            assert total == lw
            if isinstance(W, AlternatingChain):
                assert isinstance(W1, AlternatingChain) and W1.sign == W.sign


@settings(max_examples=60, deadline=None)
@given(double_posets(max_n=5))
def test_decompose_yields_simple_walks_with_same_functional(D):
    n = D.n
    for W in enumerate_chains(D) + enumerate_cycles(D):
        w = crossing_witness(D, W)
        if w is None:
            continue
        for piece in split(D, W, w):
            chain, cycles = decompose(D, piece)
            parts = ([chain] if chain is not None else []) + cycles
            assert all(is_valid_walk(D, p) for p in parts)
            total = [0] * n
            for p in parts:
                total = [x + y for x, y in zip(total, walk_functional(p, n))]
            assert tuple(total) == walk_functional(piece, n)
            if isinstance(piece, AlternatingChain) and chain is not None:
                assert chain.sign == piece.sign


def test_crossed_is_deterministic_lexmin():
    for D in random_instances(4, 30, 3):
        for W in enumerate_chains(D):
            ws = crossing_witnesses(D, W)
            w = crossing_witness(D, W)
            assert (w is None) == (not ws) == (not is_crossed(D, W))
            if ws:
                assert (w.a, w.i, w.j) == min((x.a, x.i, x.j) for x in ws)


def test_virtual_endpoints_count_in_crossing(incompatible):
    C = AlternatingChain((1,), PLUS)
    assert C.points == (BOT, 1, TOP)
    w = crossing_witness(incompatible, C)
    assert {w.i, w.j} == {0, 1}

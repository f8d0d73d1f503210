import random
from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from welter_designs import designs as ds
from welter_designs.core import enumerate_k_subsets, mask_of, subset_sum
from welter_designs.games import (
    ExplicitGame,
    GameError,
    Outcome,
    Welter,
    WelterM,
    b_position,
    game_for_design,
    hexad_game,
    hexad_positions,
    induced,
    is_independent,
    outcomes,
    phi_membership,
    validate_game,
    winning_set,
)

S = lambda *xs: mask_of(xs)

GAMMA1 = ExplicitGame.of(range(4), [(3, 2), (3, 1), (2, 1), (2, 0), (1, 0)])
GAMMA2 = ExplicitGame.of(range(2), [(1, 0), (0, 1)])


def welter_edges_by_rule(v, k):
    """Edge set straight from the move rule, using Python sets."""
    edges = set()
    for P in enumerate_k_subsets(v, k):
        pts = {i for i in range(v) if P >> i & 1}
        for p in pts:
            for q in range(p):
                if q not in pts:
                    edges.add((P, mask_of(pts - {p} | {q})))
    return edges


def recursive_outcomes(g):
    @lru_cache(maxsize=None)
    def o(P):
        return "N" if any(o(Q) == "P" for Q in g.out_neighbors(P)) else "P"
    return {P: o(P) for P in g.positions()}


def test_validate_game():
    assert validate_game(GAMMA1) is None
    cyc = validate_game(GAMMA2)
    assert cyc[0] == cyc[-1] and set(cyc) == {0, 1}
    assert validate_game(ExplicitGame.of(range(3), [])) is None


def test_validate_game_cycle_is_a_walk():
    g = ExplicitGame.of(range(4), [(0, 1), (1, 2), (2, 0), (3, 0)])
    cyc = validate_game(g)
    assert cyc[0] == cyc[-1]
    assert all(b in g.out_neighbors(a) for a, b in zip(cyc, cyc[1:]))


def test_gamma1_outcomes():
    table = outcomes(GAMMA1)
    assert {p: str(o) for p, o in table.items()} == {0: "P", 1: "N", 2: "N", 3: "P"}


def test_cyclic_graph_has_no_outcomes():
    with pytest.raises(GameError):
        outcomes(GAMMA2)


def test_welter_neighbors_examples():
    g = Welter(4, 2)
    assert g.out_neighbors(S(2, 3)) == {S(0, 3), S(1, 3), S(0, 2), S(1, 2)}
    assert g.in_neighbors(S(0, 2)) == {S(1, 2), S(0, 3), S(2, 3)}
    assert Welter(7, 3).out_neighbors(S(0, 1, 2)) == set()
    assert Welter(7, 3).in_neighbors(S(4, 5, 6)) == set()
    with pytest.raises(GameError):
        g.out_neighbors(S(0, 1, 2))


@pytest.mark.parametrize("v,k", [(4, 2), (6, 3), (7, 2), (8, 4)])
def test_welter_edges_and_duality(v, k):
    g = Welter(v, k)
    edges = {(P, Q) for P in g.positions() for Q in g.out_neighbors(P)}
    assert edges == welter_edges_by_rule(v, k)
    assert edges == {(R, P) for P in g.positions() for R in g.in_neighbors(P)}
    assert all(subset_sum(Q) < subset_sum(P) for P, Q in edges)


def test_welter_m():
    assert S(0, 2, 5) in WelterM(6, 3, 2).out_neighbors(S(1, 4, 5))
    for v, k in [(5, 2), (6, 3)]:
        g1, g = WelterM(v, k, 1), Welter(v, k)
        assert all(g1.out_neighbors(P) == g.out_neighbors(P) for P in g.positions())


def test_welter_m_reachability_brute_force():
    g, base = WelterM(6, 3, 2), Welter(6, 3)
    for P in base.positions():
        two = set(base.out_neighbors(P))
        for Q in list(two):
            two |= base.out_neighbors(Q)
        assert g.out_neighbors(P) == two
        assert all(P in g.in_neighbors(Q) for Q in two)


def test_s2413_blocks_independent_in_welter2(s2413):
    assert is_independent(WelterM(13, 4, 2), s2413.blocks)
    g = WelterM(13, 4, 2)
    sub = induced(g, b_position(g, s2413.blocks))
    assert winning_set(sub) == set(s2413.blocks)


def test_b_position_examples(shuffle):
    g = Welter(4, 2)
    all42 = set(enumerate_k_subsets(4, 2))
    assert b_position(g, [S(0, 2), S(1, 3)]) == all42 - {S(0, 1)}
    assert b_position(g, [S(0, 1)]) == all42 - {S(2, 3)}
    bp = b_position(Welter(12, 6), shuffle.blocks)
    assert bp == {P for P in enumerate_k_subsets(12, 6) if subset_sum(P) >= 21}
    assert len(bp) == 905


def test_is_independent(shuffle):
    assert is_independent(Welter(12, 6), shuffle.blocks)
    assert not is_independent(Welter(3, 2), [S(0, 1), S(0, 2)])
    assert is_independent(Welter(3, 2), [])


def test_outcomes_of_intro_game():
    g = Welter(4, 2)
    sub = induced(g, b_position(g, [S(0, 2), S(1, 3)]))
    assert winning_set(sub) == {S(0, 2), S(1, 3)}
    assert len(sub.kept) == 5


def test_hexad_winning_set(shuffle):
    g = hexad_game()
    win = winning_set(g)
    assert win == set(shuffle.blocks) and len(win) == 132
    assert {P for P in hexad_positions() if subset_sum(P) == 21} <= win


def test_terminal_only_graph():
    g = ExplicitGame.of("abc", [])
    assert winning_set(g) == {"a", "b", "c"}


@pytest.mark.parametrize("v,k", [(4, 2), (6, 3), (7, 3), (8, 2)])
def test_full_welter_outcomes_match_recursion(v, k):
    g = Welter(v, k)
    table = outcomes(g)
    assert {P: str(o) for P, o in table.items()} == recursive_outcomes(g)
    assert is_independent(g, winning_set(g))


@pytest.mark.parametrize("v,k", [(5, 2), (7, 3), (12, 6)])
def test_outcome_soundness(v, k):
    g = Welter(v, k)
    table = outcomes(g)
    for P, o in table.items():
        opts = g.out_neighbors(P)
        if o is Outcome.N:
            assert any(table[Q] is Outcome.P for Q in opts)
        else:
            assert all(table[Q] is Outcome.N for Q in opts)


def random_independent(g, rng, size):
    order = list(g.positions())
    rng.shuffle(order)
    chosen = set()
    for P in order:
        if len(chosen) >= size:
            break
        if not (g.out_neighbors(P) & chosen or g.in_neighbors(P) & chosen):
            chosen.add(P)
    return chosen


@given(st.integers(3, 7).flatmap(lambda v: st.tuples(st.just(v), st.integers(1, v - 1))),
       st.integers(0, 2**32 - 1))
def test_phi_membership_matches_interval(vk, seed):
    v, k = vk
    rng = random.Random(seed)
    g = Welter(v, k)
    B = random_independent(g, rng, rng.randint(1, 4))
    bp = b_position(g, B)
    everything = list(g.positions())
    for _ in range(50):
        pool = sorted(bp) if rng.random() < 0.5 else everything
        Q = set(B) | {P for P in pool if rng.random() < 0.5}
        assert phi_membership(g, B, Q) == (set(B) <= Q <= bp)


def test_phi_membership_examples(shuffle):
    g = Welter(9, 3)
    D = ds.make_affine_sts(2)
    B = set(D.blocks)
    bp = b_position(g, B)
    assert phi_membership(g, B, B)
    assert phi_membership(g, B, bp)
    outside = next(P for P in g.positions() if P not in bp)
    assert not phi_membership(g, B, bp | {outside})
    with pytest.raises(GameError):
        phi_membership(Welter(3, 2), [S(0, 1), S(0, 2)], [S(0, 1), S(0, 2)])


def test_game_for_design(shuffle):
    D = ds.Design.from_blocks(4, 2, 1, 1, [S(0, 2), S(1, 3)])
    g = game_for_design(D)
    assert len(g.kept) == 5 and winning_set(g) == set(D.blocks)
    hexad = game_for_design(shuffle)
    assert hexad.kept == hexad_positions()
    assert len(game_for_design(ds.make_matching_design(2)).kept) == 6


def test_game_for_design_refuses_dependent_blocks():
    D = ds.Design.from_blocks(3, 2, 2, 1, [S(0, 1), S(0, 2), S(1, 2)])
    with pytest.raises(GameError):
        game_for_design(D)


@pytest.mark.parametrize("factory", [lambda: ds.make_projective_sts(2), lambda: ds.make_affine_sts(2),
                                     lambda: ds.make_cyclic_design(13, [(0, 1, 3, 9)], 4, 2)])
def test_induced_game_recovers_blocks(factory):
    D = factory()
    assert winning_set(game_for_design(D)) == set(D.blocks)

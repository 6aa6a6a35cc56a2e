import random
from fractions import Fraction

import pytest

from divpop import (
    DomainError,
    MixedOutcome,
    build_game_matrix,
    enumerate_outcomes,
    find_popular,
    is_popular,
    mixed_margin,
    solve_mixed,
    verify_mixed,
)
from divpop.corpus import random_game
from divpop.model import Agent, Game, PreferenceOrder


def one_room_game():
    pref = PreferenceOrder.dichotomous(3, {1})
    return Game.build(
        3, [Agent("r0", "red", pref)], [Agent("b0", "blue", pref), Agent("b1", "blue", pref)]
    )


# --- mixed outcome validation ----------------------------------------------------

def test_mixed_outcome_requires_unit_mass(nine_agent_game):
    o = next(iter(enumerate_outcomes(nine_agent_game)))
    with pytest.raises(DomainError):
        MixedOutcome(((o, Fraction(1, 2)),))
    with pytest.raises(DomainError):
        MixedOutcome(((o, Fraction(1, 2)), (o, Fraction(1, 2))))


# --- expected margins --------------------------------------------------------------

def test_mixed_margin_self_is_zero(nine_agent_game):
    outcomes = list(enumerate_outcomes(nine_agent_game))[:4]
    p = MixedOutcome(tuple((o, Fraction(1, 4)) for o in outcomes))
    assert mixed_margin(nine_agent_game, p, p) == 0


def test_point_mass_margin_matches_pure(nine_agent_game):
    from divpop import popularity_margin

    outcomes = list(enumerate_outcomes(nine_agent_game))
    rng = random.Random(8)
    for _ in range(10):
        a, b = rng.choice(outcomes), rng.choice(outcomes)
        assert mixed_margin(
            nine_agent_game, MixedOutcome.point(a), MixedOutcome.point(b)
        ) == popularity_margin(nine_agent_game, a, b).margin


def test_uniform_rotation_cycle_margin_by_hand(nine_agent_game):
    from divpop import popularity_margin, rotation_challenger, top_type_outcomes

    g = nine_agent_game
    o0 = top_type_outcomes(g)[0]
    o1 = rotation_challenger(o0, g)
    o2 = rotation_challenger(o1, g)
    cycle = [o0, o1, o2]
    p = MixedOutcome(tuple((o, Fraction(1, 3)) for o in cycle))
    for q in cycle:
        expected = sum(
            Fraction(1, 3) * popularity_margin(g, o, q).margin for o in cycle
        )
        assert mixed_margin(g, p, MixedOutcome.point(q)) == expected


def test_mixed_margin_bilinearity():
    rng = random.Random(17)
    for _ in range(5):
        g = random_game(rng, 2, 2)
        outcomes = list(enumerate_outcomes(g))
        pairs = rng.sample(outcomes, min(3, len(outcomes)))
        weights = [Fraction(1, len(pairs))] * len(pairs)
        p = MixedOutcome(tuple(zip(pairs, weights)))
        q_outcomes = rng.sample(outcomes, min(2, len(outcomes)))
        q_probs = [Fraction(1, 3), Fraction(2, 3)][: len(q_outcomes)]
        if sum(q_probs) != 1:
            q_probs = [Fraction(1)]
            q_outcomes = q_outcomes[:1]
        q = MixedOutcome(tuple(zip(q_outcomes, q_probs)))
        direct = mixed_margin(g, p, q)
        expanded = sum(
            prob * mixed_margin(g, p, MixedOutcome.point(o))
            for o, prob in q.support
        )
        assert direct == expanded


# --- game matrix --------------------------------------------------------------------

def test_single_room_matrix_is_zero():
    M = build_game_matrix(one_room_game())
    assert len(M.outcomes) == 1 and M.entries == ((0,),)


def test_matrix_skew_symmetric_on_counterexample(nine_agent_game):
    M = build_game_matrix(nine_agent_game)
    n = len(M.outcomes)
    assert n == 280
    for i in range(n):
        assert M.entries[i][i] == 0
        for j in range(i + 1, n):
            assert M.entries[i][j] == -M.entries[j][i]


def test_orbit_mode_matrix(nine_agent_game):
    M = build_game_matrix(nine_agent_game, "orbit")
    n = len(M.outcomes)
    assert 1 < n < 280
    for i in range(n):
        assert M.entries[i][i] == 0
        for j in range(n):
            assert M.entries[i][j] == -M.entries[j][i]


def test_point_mass_margin_on_mixed_reduction(mixed_bundle, solvable_instance):
    # a 176-agent game: the expected-margin arithmetic must stay exact
    from divpop import monolithic_outcome, reduced_outcome, x3c_solve

    g = mixed_bundle.game
    mon = MixedOutcome.point(monolithic_outcome(mixed_bundle))
    red = MixedOutcome.point(reduced_outcome(mixed_bundle, x3c_solve(solvable_instance)))
    assert mixed_margin(g, mon, red) == -1
    assert mixed_margin(g, red, mon) == 1


# --- solving -----------------------------------------------------------------------

def test_single_room_point_mass():
    g = one_room_game()
    p = solve_mixed(g)
    assert len(p.support) == 1 and p.support[0][1] == 1


def test_solve_mixed_counterexample(nine_agent_game):
    p = solve_mixed(nine_agent_game)
    assert sum(prob for _, prob in p.support) == 1
    worst, margin = verify_mixed(nine_agent_game, p)
    assert margin == 0


def test_labeled_and_orbit_modes_both_certify():
    rng = random.Random(12)
    for _ in range(5):
        g = random_game(rng, 3, 2)  # 10 outcomes: labeled LP stays small
        p_labeled = solve_mixed(g, "labeled")
        p_orbit = solve_mixed(g, "orbit")
        assert verify_mixed(g, p_labeled)[1] == 0
        assert verify_mixed(g, p_orbit)[1] == 0


def test_point_mass_on_not_popular_outcome(nine_agent_game):
    o = next(iter(enumerate_outcomes(nine_agent_game)))
    verdict = is_popular(nine_agent_game, o)
    assert verdict.status == "NotPopular"
    worst, margin = verify_mixed(nine_agent_game, MixedOutcome.point(o))
    assert margin <= -1


def test_point_mass_popularity_consistency():
    rng = random.Random(99)
    for _ in range(10):
        g = random_game(rng, 2, 2)
        outcomes = list(enumerate_outcomes(g))
        o = outcomes[rng.randrange(len(outcomes))]
        _, margin = verify_mixed(g, MixedOutcome.point(o))
        assert (margin >= 0) == (is_popular(g, o).status == "Popular")


def test_solve_mixed_matches_pure_popular_when_one_exists():
    rng = random.Random(55)
    found = 0
    for _ in range(10):
        g = random_game(rng, 2, rng.randint(1, 2))
        pure = find_popular(g)
        if pure is None:
            continue
        found += 1
        _, margin = verify_mixed(g, MixedOutcome.point(pure))
        assert margin >= 0
        p = solve_mixed(g)
        assert verify_mixed(g, p)[1] == 0
    assert found > 0

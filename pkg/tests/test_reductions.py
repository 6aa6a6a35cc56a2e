import pytest

from divpop import (
    DomainError,
    ValidationError,
    all_approve_outcomes,
    build_strict_reduction,
    is_strictly_popular,
    monolithic_outcome,
    orbit_key,
    popularity_margin,
    reduced_outcome,
    reduced_rotation_challenger,
    rotation_challenger,
    top_type_outcomes,
    validate_game,
    validate_outcome,
    x3c_solve,
)
from divpop.model import approval_split


# --- builders: structure ---------------------------------------------------------

def test_strict_sizes_q1(strict_bundle):
    g = strict_bundle.game
    assert (g.s, len(g.red), len(g.blue), g.k) == (14, 17, 25, 3)


def test_strict_sizes_q2(unsolvable_instance):
    g = build_strict_reduction(unsolvable_instance).game
    assert (g.s, len(g.red), len(g.blue), g.k) == (22, 33, 55, 4)


def test_mixed_sizes_q1(mixed_bundle):
    g = mixed_bundle.game
    assert (g.s, len(g.red), len(g.blue), g.k) == (44, 66, 110, 4)


def test_popularity_sizes_q1(popularity_bundle):
    g = popularity_bundle.game
    assert (g.s, len(g.red), len(g.blue), g.k) == (61, 121, 245, 6)


def test_built_games_validate(strict_bundle, mixed_bundle, popularity_bundle):
    for bundle in (strict_bundle, mixed_bundle, popularity_bundle):
        validate_game(bundle.game)
        members = [a for ids in bundle.groups.values() for a in ids]
        assert sorted(members) == sorted(a.id for a in bundle.game.agents)


def test_mixed_aux6_approval_strict_subset(mixed_bundle):
    g = mixed_bundle.game
    a1 = g.by_id["r_aux:1"]
    a6 = g.by_id["r_aux:6"]
    approve1 = {j for j in range(g.s + 1) if a1.pref.ranks[j] == 0}
    approve6 = {j for j in range(g.s + 1) if a6.pref.ranks[j] == 0}
    assert approve6 < approve1


def test_popularity_neutral_groups(popularity_bundle):
    g = popularity_bundle.game
    with_neutral = {
        a.id for a in g.agents if max(a.effective_ranks()) >= 2
    }
    ring = set(popularity_bundle.group("R_circ")) | set(popularity_bundle.group("R_red:3"))
    assert with_neutral == ring


# --- predefined outcomes ------------------------------------------------------------

def test_strict_monolithic_all_approve(strict_bundle):
    g = strict_bundle.game
    mon = monolithic_outcome(strict_bundle)
    validate_outcome(g, mon)
    _, neutral, disapprove = approval_split(g, mon)
    assert not neutral and not disapprove


def test_strict_reduced_all_approve(strict_bundle, solvable_instance):
    g = strict_bundle.game
    red = reduced_outcome(strict_bundle, x3c_solve(solvable_instance))
    validate_outcome(g, red)
    _, neutral, disapprove = approval_split(g, red)
    assert not neutral and not disapprove


def test_strict_monolith_not_strictly_popular_when_solvable(strict_bundle, solvable_instance):
    g = strict_bundle.game
    mon = monolithic_outcome(strict_bundle)
    red = reduced_outcome(strict_bundle, x3c_solve(solvable_instance))
    assert popularity_margin(g, red, mon).margin == 0
    verdict = is_strictly_popular(g, mon, "signature")
    assert verdict.status == "NotStrictlyPopular"
    assert verdict.witness_margin == 0


def test_strict_monolith_strictly_popular_when_unsolvable(unsolvable_instance):
    bundle = build_strict_reduction(unsolvable_instance)
    mon = monolithic_outcome(bundle)
    verdict = is_strictly_popular(bundle.game, mon, "signature")
    assert verdict.status == "StrictlyPopular"


def test_mixed_monolithic_disapprove_is_aux6(mixed_bundle):
    _, neutral, disapprove = approval_split(mixed_bundle.game, monolithic_outcome(mixed_bundle))
    assert disapprove == frozenset({"r_aux:6"}) and not neutral


def test_mixed_reduced_beats_monolithic_by_one(mixed_bundle, solvable_instance):
    g = mixed_bundle.game
    mon = monolithic_outcome(mixed_bundle)
    red = reduced_outcome(mixed_bundle, x3c_solve(solvable_instance))
    _, neutral, disapprove = approval_split(g, red)
    assert not neutral and not disapprove
    rep = popularity_margin(g, red, mon)
    assert rep.margin == 1
    assert rep.improved == frozenset({"r_aux:6"}) and not rep.worsened


def test_popularity_monolithic_d_sets(popularity_bundle):
    _, neutral, disapprove = approval_split(
        popularity_bundle.game, monolithic_outcome(popularity_bundle)
    )
    assert disapprove == frozenset({"r_circ:1", "r_circ:2"}) and not neutral


def test_popularity_reduced_d_sets(popularity_bundle, solvable_instance):
    red = reduced_outcome(popularity_bundle, x3c_solve(solvable_instance))
    _, neutral, disapprove = approval_split(popularity_bundle.game, red)
    assert disapprove == frozenset({"r_circ:1"})
    assert neutral == frozenset({"r_circ:2"})


def test_popularity_rotation_margin(popularity_bundle, solvable_instance):
    g = popularity_bundle.game
    solution = x3c_solve(solvable_instance)
    red = reduced_outcome(popularity_bundle, solution)
    challenger = reduced_rotation_challenger(popularity_bundle, solution)
    rep = popularity_margin(g, challenger, red)
    assert rep.margin == 1
    assert rep.improved == frozenset({"r_circ:1", "r_circ:2"})
    assert rep.worsened == frozenset({"r_circ:3"})


@pytest.mark.parametrize(
    "extras",
    [
        ("r_red:3:4", "r_circ:2", "r_red:3:7", "r_circ:1", "r_circ:3"),
        ("r_circ:3", "r_red:3:13", "r_red:3:1", "r_red:3:2", "r_red:3:3"),
        ("r_red:3:9", "r_red:3:10", "r_red:3:11", "r_circ:1", "r_circ:2"),
    ],
)
def test_popularity_rotation_with_custom_ring_choice(
    popularity_bundle, solvable_instance, extras
):
    solution = x3c_solve(popularity_bundle.instance)
    red = reduced_outcome(popularity_bundle, solution, extras)
    _, neutral, disapprove = approval_split(popularity_bundle.game, red)
    assert disapprove == frozenset({extras[0]}) and neutral == frozenset({extras[1]})
    challenger = reduced_rotation_challenger(popularity_bundle, solution, extras)
    rep = popularity_margin(popularity_bundle.game, challenger, red)
    assert rep.margin == 1
    assert rep.improved == frozenset({extras[0], extras[1]})
    assert rep.worsened == frozenset({extras[2]})


def test_reduced_outcome_rejects_bad_cover(strict_bundle):
    with pytest.raises(ValidationError) as err:
        reduced_outcome(strict_bundle, ())
    assert err.value.code == "invalid-cover"


def test_rotation_requires_popularity_variant(strict_bundle, solvable_instance):
    with pytest.raises(DomainError):
        reduced_rotation_challenger(strict_bundle, x3c_solve(solvable_instance))


def test_ring_choice_validated(popularity_bundle, solvable_instance):
    solution = x3c_solve(solvable_instance)
    with pytest.raises(DomainError):
        reduced_outcome(popularity_bundle, solution, ("r_set:1",) * 5)


# --- all-approve search --------------------------------------------------------------

def test_all_approve_solvable(strict_bundle, solvable_instance):
    g = strict_bundle.game
    found = all_approve_outcomes(strict_bundle)
    mon = monolithic_outcome(strict_bundle)
    red = reduced_outcome(strict_bundle, x3c_solve(solvable_instance))
    assert {orbit_key(g, o) for o in found} == {orbit_key(g, mon), orbit_key(g, red)}
    for o in found:
        _, neutral, disapprove = approval_split(g, o)
        assert not neutral and not disapprove


def test_all_approve_unsolvable(unsolvable_instance):
    bundle = build_strict_reduction(unsolvable_instance)
    found = all_approve_outcomes(bundle)
    assert len(found) == 1
    assert orbit_key(bundle.game, found[0]) == orbit_key(
        bundle.game, monolithic_outcome(bundle)
    )


def test_all_approve_requires_strict_variant(mixed_bundle):
    with pytest.raises(DomainError):
        all_approve_outcomes(mixed_bundle)


# --- the 9-agent counterexample ------------------------------------------------------

def test_counterexample_shape(nine_agent_game):
    g = nine_agent_game
    assert (g.s, len(g.red), len(g.blue), g.k) == (3, 3, 6, 3)


def test_twelve_top_type_outcomes(nine_agent_game):
    tops = top_type_outcomes(nine_agent_game)
    assert len(tops) == len(set(tops)) == 12


def test_rotation_challenger_beats_every_top_type(nine_agent_game):
    for top in top_type_outcomes(nine_agent_game):
        challenger = rotation_challenger(top, nine_agent_game)
        assert popularity_margin(nine_agent_game, challenger, top).margin == 1


def test_rotation_challenger_rejects_non_top_type(nine_agent_game):
    from divpop.model import canonicalize

    not_top = canonicalize(
        nine_agent_game,
        [["r1", "r2", "r3"], ["b1", "b2", "b3"], ["b4", "b5", "b6"]],
    )
    with pytest.raises(DomainError):
        rotation_challenger(not_top, nine_agent_game)


def test_counterexample_shortfall_bounds(nine_agent_game):
    from divpop import enumerate_outcomes

    g = nine_agent_game
    for o in enumerate_outcomes(g):
        _, neutral, disapprove = approval_split(g, o)
        assert len(neutral | disapprove) >= 2
        assert len(disapprove) >= 1

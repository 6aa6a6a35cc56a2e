import itertools
import random

import pytest

from divpop import DomainError, classify_s2, enumerate_outcomes, happy_count, is_popular, pair_weight, solve_s2
from divpop.corpus import random_s2_game
from divpop.model import Agent, Game, PreferenceOrder
from divpop.roomsize2 import matching_weight


def red(i, kind):
    approve = {"pure": {2}, "mixed": {1}, "indifferent": {1, 2}}[kind]
    return Agent(f"r{i}", "red", PreferenceOrder.dichotomous(2, approve))


def blue(i, kind):
    approve = {"pure": {0}, "mixed": {1}, "indifferent": {0, 1}}[kind]
    return Agent(f"b{i}", "blue", PreferenceOrder.dichotomous(2, approve))


def all_matchings(agents):
    if not agents:
        yield ()
        return
    first, rest = agents[0], agents[1:]
    for i in range(len(rest)):
        for tail in all_matchings(rest[:i] + rest[i + 1 :]):
            yield ((first, rest[i]),) + tail


# --- classification -----------------------------------------------------------

@pytest.mark.parametrize("kind", ["pure", "mixed", "indifferent"])
def test_classify_red(kind):
    assert classify_s2(red(0, kind)).kind == kind


@pytest.mark.parametrize("kind", ["pure", "mixed", "indifferent"])
def test_classify_blue(kind):
    assert classify_s2(blue(0, kind)).kind == kind


def test_classify_requires_s2():
    agent = Agent("r", "red", PreferenceOrder.dichotomous(3, {1}))
    with pytest.raises(DomainError):
        classify_s2(agent)


# --- pair weights ----------------------------------------------------------------

def test_pair_weight_table():
    assert pair_weight(red(0, "pure"), red(1, "pure")) == 2
    assert pair_weight(red(0, "pure"), blue(0, "mixed")) == 1
    assert pair_weight(red(0, "pure"), blue(0, "pure")) == 0
    assert pair_weight(blue(0, "indifferent"), blue(1, "mixed")) == 1


def test_pair_weight_same_agent_rejected():
    a = red(0, "pure")
    with pytest.raises(DomainError):
        pair_weight(a, a)


def test_pair_weight_depends_only_on_classes():
    kinds = ["pure", "mixed", "indifferent"]
    agents = [red(i, k) for i, k in enumerate(kinds)] + [
        blue(i, k) for i, k in enumerate(kinds)
    ]
    table = {}
    for a, b in itertools.combinations(agents, 2):
        key = tuple(sorted([(a.color, classify_s2(a).kind), (b.color, classify_s2(b).kind)]))
        w = pair_weight(a, b)
        assert table.setdefault(key, w) == w


# --- solver -----------------------------------------------------------------------

def test_spec_example_two_mixed_reds():
    g = Game.build(2, [red(1, "mixed"), red(2, "mixed")], [blue(1, "mixed"), blue(2, "pure")])
    o = solve_s2(g)
    assert matching_weight(g, o) == 3 == happy_count(g, o)


def test_all_indifferent_everyone_happy():
    g = Game.build(2, [red(i, "indifferent") for i in range(3)], [blue(i, "indifferent") for i in range(3)])
    o = solve_s2(g)
    assert happy_count(g, o) == 6


def test_single_pair():
    g = Game.build(2, [red(0, "pure")], [blue(0, "pure")])
    o = solve_s2(g)
    assert o.rooms == (("b0", "r0"),)
    assert happy_count(g, o) == 0


def test_empty_game():
    g = Game.build(2, [], [])
    assert solve_s2(g).rooms == ()


def test_requires_room_size_two(nine_agent_game):
    with pytest.raises(DomainError):
        solve_s2(nine_agent_game)
    with pytest.raises(DomainError):
        happy_count(nine_agent_game, next(iter(enumerate_outcomes(nine_agent_game))))


def test_weight_identity_on_random_matchings():
    rng = random.Random(42)
    for _ in range(20):
        g = random_s2_game(rng, rng.randint(1, 4))
        agents = list(g.agents)
        rng.shuffle(agents)
        rooms = [[agents[i].id, agents[i + 1].id] for i in range(0, len(agents), 2)]
        from divpop.model import canonicalize

        o = canonicalize(g, rooms)
        assert matching_weight(g, o) == happy_count(g, o)


def test_optimality_and_popularity_small_corpus():
    rng = random.Random(1000)
    for _ in range(60):
        g = random_s2_game(rng, rng.randint(1, 5))
        o = solve_s2(g)
        best = max(
            sum(pair_weight(a, b) for a, b in m) for m in all_matchings(tuple(g.agents))
        )
        assert matching_weight(g, o) == best
        assert is_popular(g, o).status == "Popular"


def test_backends_agree_on_weight():
    rng = random.Random(2024)
    for _ in range(25):
        g = random_s2_game(rng, rng.randint(1, 6))
        w_counts = matching_weight(g, solve_s2(g, "counts"))
        w_blossom = matching_weight(g, solve_s2(g, "blossom"))
        assert w_counts == w_blossom

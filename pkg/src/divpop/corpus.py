"""Seeded random game generation for self-tests and cross-validation."""

from __future__ import annotations

import random

from .model import Agent, Game, PreferenceOrder, validate_game


def random_preference(rng: random.Random, s: int) -> PreferenceOrder:
    style = rng.randrange(3)
    if style == 0:
        return PreferenceOrder.from_ranks([rng.randrange(s + 1) for _ in range(s + 1)])
    numerators = list(range(s + 1))
    rng.shuffle(numerators)
    cut = rng.randint(1, s)
    if style == 1:
        return PreferenceOrder.dichotomous(s, numerators[:cut])
    cut2 = rng.randint(cut, s)
    return PreferenceOrder.trichotomous(s, numerators[:cut], numerators[cut:cut2])


def random_game(rng: random.Random, s: int, k: int) -> Game:
    """Random split into colors plus random weak orders; always valid."""
    n = s * k
    n_red = rng.randint(0, n)
    red = [Agent(f"r{i}", "red", random_preference(rng, s)) for i in range(n_red)]
    blue = [Agent(f"b{i}", "blue", random_preference(rng, s)) for i in range(n - n_red)]
    g = Game.build(s, red, blue)
    validate_game(g)
    return g


def random_s2_game(rng: random.Random, k: int) -> Game:
    """Room-size-2 game drawing each agent's kind uniformly.

    Pure/mixed/indifferent mixes on both colors are all reachable, which is
    what the matching solver's class logic needs exercised against.
    """
    n = 2 * k
    n_red = rng.randint(0, n)
    agents = []
    for i in range(n):
        color = "red" if i < n_red else "blue"
        top = 2 if color == "red" else 0  # the agent's same-color-room numerator
        kind = rng.randrange(3)
        if kind == 0:
            pref = PreferenceOrder.dichotomous(2, {top})
        elif kind == 1:
            pref = PreferenceOrder.dichotomous(2, {1})
        else:
            pref = PreferenceOrder.dichotomous(2, {0, 1, 2})
        name = f"r{i}" if color == "red" else f"b{i}"
        agents.append(Agent(name, color, pref))
    g = Game.build(2, [a for a in agents if a.is_red], [a for a in agents if not a.is_red])
    validate_game(g)
    return g

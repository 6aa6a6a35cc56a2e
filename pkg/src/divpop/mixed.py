"""Mixed outcomes and exact mixed-popularity computation.

A mixed outcome is an exact-rational distribution over outcomes.  Viewing
the game as a finite symmetric zero-sum game whose payoff entry is the
popularity margin, the game value is 0 and any maximin strategy is a
mixed popular outcome; we compute one with an exact simplex over the
orbit-collapsed matrix (within-class relabelings fix margins, so an
orbit-uniform optimum always exists) and re-verify the certificate
against every pure challenger.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, SolverError
from .model import (
    DEFAULT_CAP,
    Game,
    Outcome,
    enumerate_outcomes,
    numerators,
    orbit_key,
    validate_game,
    validate_outcome,
)
from .simplex import solve_lp


@dataclass(frozen=True)
class MixedOutcome:
    """Finitely supported exact probability distribution over outcomes."""

    support: tuple[tuple[Outcome, Fraction], ...]

    def __post_init__(self):
        seen = set()
        total = Fraction(0)
        for outcome, prob in self.support:
            if prob <= 0:
                raise DomainError(f"probability {prob} not positive")
            if outcome in seen:
                raise DomainError("duplicate outcome in mixed support")
            seen.add(outcome)
            total += prob
        if total != 1:
            raise DomainError(f"probabilities sum to {total}, expected 1")

    @classmethod
    def point(cls, outcome: Outcome) -> "MixedOutcome":
        return cls(((outcome, Fraction(1)),))


@dataclass(frozen=True)
class GameMatrix:
    """Skew-symmetric integer margin matrix over an outcome list."""

    outcomes: tuple[Outcome, ...]
    entries: tuple[tuple[int, ...], ...]


def _rank_vector(g: Game, o: Outcome) -> list[int]:
    nums = numerators(g, o)
    return [g.rank_tables[i][nums[i]] for i in range(g.n)]


def _margin_from_vectors(va: list[int], vb: list[int]) -> int:
    m = 0
    for ra, rb in zip(va, vb):
        if ra < rb:
            m += 1
        elif ra > rb:
            m -= 1
    return m


def mixed_margin(g: Game, p: MixedOutcome, q: MixedOutcome) -> Fraction:
    """Expected margin of p against q, exact."""
    validate_game(g)
    for outcome, _ in p.support + q.support:
        validate_outcome(g, outcome)
    vec = {}
    for outcome, _ in p.support + q.support:
        if outcome not in vec:
            vec[outcome] = _rank_vector(g, outcome)
    total = Fraction(0)
    for oa, pa in p.support:
        for ob, pb in q.support:
            total += pa * pb * _margin_from_vectors(vec[oa], vec[ob])
    return total


def build_game_matrix(g: Game, mode: str = "labeled", cap: int = DEFAULT_CAP) -> GameMatrix:
    outcomes = tuple(enumerate_outcomes(g, mode, cap))
    vecs = [_rank_vector(g, o) for o in outcomes]
    entries = tuple(
        tuple(_margin_from_vectors(va, vb) for vb in vecs) for va in vecs
    )
    return GameMatrix(outcomes, entries)


def verify_mixed(
    g: Game, p: MixedOutcome, cap: int = DEFAULT_CAP
) -> tuple[Outcome, Fraction]:
    """Worst pure challenger and its expected margin for p.

    ``p`` is mixed popular iff the returned margin is >= 0; pure best
    responses suffice because the expected margin is bilinear.
    """
    validate_game(g)
    for outcome, _ in p.support:
        validate_outcome(g, outcome)
    support_vecs = [(_rank_vector(g, o), prob) for o, prob in p.support]
    worst_outcome, worst_value = None, None
    for challenger in enumerate_outcomes(g, "labeled", cap):
        cvec = _rank_vector(g, challenger)
        value = Fraction(0)
        for svec, prob in support_vecs:
            value += prob * _margin_from_vectors(svec, cvec)
        if worst_value is None or value < worst_value:
            worst_outcome, worst_value = challenger, value
    if worst_outcome is None:
        raise DomainError("game admits no outcome to challenge with")
    return worst_outcome, worst_value


def solve_mixed(g: Game, mode: str = "auto", cap: int = DEFAULT_CAP) -> MixedOutcome:
    """Maximin strategy of the margin game; its worst pure margin is 0.

    Outcomes in one relabeling orbit can share probability uniformly, so
    the LP runs over orbits (labeled mode forces singleton orbits).  The
    result is re-verified against every pure challenger before returning.
    """
    validate_game(g)
    if mode not in ("auto", "orbit", "labeled"):
        raise DomainError(f"unknown mode {mode!r}")
    outcomes = list(enumerate_outcomes(g, "labeled", cap))
    vecs = [_rank_vector(g, o) for o in outcomes]
    if mode == "labeled":
        orbits = [[i] for i in range(len(outcomes))]
    else:
        grouped: dict[tuple, list[int]] = {}
        order = []
        for i, o in enumerate(outcomes):
            key = orbit_key(g, o)
            if key not in grouped:
                grouped[key] = []
                order.append(key)
            grouped[key].append(i)
        orbits = [grouped[key] for key in order]
    reps = [members[0] for members in orbits]
    # margins of an orbit-uniform atom against each representative,
    # scaled by the orbit size to stay integral
    summed = [
        [
            sum(_margin_from_vectors(vecs[i], vecs[rep]) for i in members)
            for rep in reps
        ]
        for members in orbits
    ]
    probs = _solve_value_zero_lp(summed, [len(members) for members in orbits])
    support = []
    for members, z in zip(orbits, probs):
        if z > 0:
            support.extend((outcomes[i], z) for i in members)
    mixed = MixedOutcome(tuple(support))
    _, worst = verify_mixed(g, mixed, cap)
    if worst != 0:
        raise SolverError(f"maximin certificate failed: worst margin {worst}")
    return mixed


def _solve_value_zero_lp(summed: list[list[int]], weights: list[int]) -> list[Fraction]:
    """Maximize the worst-column value of sum_i z_i * summed[i][j].

    Variables are per-member probabilities z_i >= 0 with
    sum_i weights[i] * z_i = 1.  The game is symmetric zero-sum, so the
    optimum is 0; the caller re-verifies.
    """
    t = len(summed)
    cols = len(summed[0]) if summed else 0
    # variables: z_0..z_{t-1}, vplus, vminus, slack_0..slack_{cols-1}
    nvars = t + 2 + cols
    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    for j in range(cols):
        row = [Fraction(summed[i][j]) for i in range(t)]
        row += [Fraction(-1), Fraction(1)]
        row += [Fraction(-1) if jj == j else Fraction(0) for jj in range(cols)]
        A.append(row)
        b.append(Fraction(0))
    A.append(
        [Fraction(w) for w in weights] + [Fraction(0)] * (2 + cols)
    )
    b.append(Fraction(1))
    cost = [Fraction(0)] * t + [Fraction(-1), Fraction(1)] + [Fraction(0)] * cols
    _, x = solve_lp(cost, A, b)
    return x[:t]

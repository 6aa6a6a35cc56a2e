"""Polynomial popular-outcome computation for room size 2.

With rooms of two, an agent only ever sees two feasible fractions, so each
agent is pure, mixed, or indifferent, and the weight of a pair (0, 1 or 2)
counts its happy members.  A maximum-weight perfect matching of the agent
clique is popular; because weights depend only on the six (color, kind)
classes, the default solver optimizes over pair-type counts directly and
materializes pairs afterwards.  A generic blossom matcher is available as
an optional cross-checking backend.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .model import Game, Outcome, Agent, canonicalize, validate_game, numerators

PURE = "pure"
MIXED = "mixed"
INDIFFERENT = "indifferent"


@dataclass(frozen=True)
class S2Class:
    color: str
    kind: str


def classify_s2(agent: Agent) -> S2Class:
    """Kind from comparing the agent's two feasible fractions."""
    if agent.pref.size != 2:
        raise DomainError("classification requires room size 2")
    if agent.is_red:
        cmp = agent.pref.compare(2, 1)  # all-red room vs mixed room
    else:
        cmp = agent.pref.compare(0, 1)  # all-blue room vs mixed room
    kind = PURE if cmp > 0 else MIXED if cmp < 0 else INDIFFERENT
    return S2Class(agent.color, kind)


def _happy(agent: Agent, j: int) -> bool:
    """Happy: roomed at a weakly-most-preferred feasible fraction."""
    return all(agent.pref.ranks[j] <= agent.pref.ranks[f] for f in agent.possible_numerators())


def pair_weight(a: Agent, b: Agent) -> int:
    """Number of happy agents when ``a`` and ``b`` share a room."""
    if a.pref.size != 2 or b.pref.size != 2:
        raise DomainError("pair weights require room size 2")
    if a.id == b.id:
        raise DomainError("an agent cannot room with itself")
    c = int(a.is_red) + int(b.is_red)
    return int(_happy(a, c)) + int(_happy(b, c))


def happy_count(g: Game, o: Outcome) -> int:
    if g.s != 2:
        raise DomainError("happy counts are defined for room size 2 only")
    nums = numerators(g, o)
    return sum(1 for agent, j in zip(g.agents, nums) if _happy(agent, j))


def _kind_counts(agents) -> dict[str, list[Agent]]:
    out = {PURE: [], MIXED: [], INDIFFERENT: []}
    for a in agents:
        out[classify_s2(a).kind].append(a)
    for lst in out.values():
        lst.sort(key=lambda a: a.id)
    return out


def solve_s2(g: Game, backend: str = "counts") -> Outcome:
    """Popular outcome for a room-size-2 game via max-weight perfect matching."""
    validate_game(g)
    if g.s != 2:
        raise DomainError(f"solve_s2 requires room size 2, got {g.s}")
    if g.n == 0:
        return Outcome(())
    if backend == "counts":
        return _solve_counts(g)
    if backend == "blossom":
        return _solve_blossom(g)
    raise DomainError(f"unknown backend {backend!r}")


def matching_weight(g: Game, o: Outcome) -> int:
    """Total pair weight of the matching an outcome induces."""
    if g.s != 2:
        raise DomainError("matching weights require room size 2")
    return sum(pair_weight(g.by_id[x], g.by_id[y]) for x, y in o.rooms)


def _best_split(g: Game) -> tuple[int, int, int]:
    """Choose (all-red rooms, mixed rooms, all-blue rooms) maximizing weight.

    A happy agent contributes independently of its partner, so for a fixed
    split the optimum fills same-color rooms with pure agents first and
    mixed rooms with mixed agents first; indifferent agents are happy
    anywhere.  The split count is then a 1-D scan.
    """
    nr, nb = len(g.red), len(g.blue)
    reds, blues = _kind_counts(g.red), _kind_counts(g.blue)
    pr, mr, ir = len(reds[PURE]), len(reds[MIXED]), len(reds[INDIFFERENT])
    pb, mb, ib = len(blues[PURE]), len(blues[MIXED]), len(blues[INDIFFERENT])
    best = None
    x_lo = max(0, (nr - nb + 1) // 2)
    for x in range(x_lo, nr // 2 + 1):
        y = nr - 2 * x
        z = (nb - y) // 2
        if z < 0:
            continue
        weight = (
            ir + min(pr, 2 * x) + min(mr, y) + ib + min(pb, 2 * z) + min(mb, y)
        )
        if best is None or weight > best[0]:
            best = (weight, x, y, z)
    return best[1], best[2], best[3]


def _solve_counts(g: Game) -> Outcome:
    x, y, z = _best_split(g)
    reds, blues = _kind_counts(g.red), _kind_counts(g.blue)
    # same-color rooms want pure agents, mixed rooms want mixed agents
    red_order = reds[PURE] + reds[INDIFFERENT] + reds[MIXED]
    blue_order = blues[PURE] + blues[INDIFFERENT] + blues[MIXED]
    rr = sorted(red_order[: 2 * x], key=lambda a: a.id)
    r_mixed = sorted(red_order[2 * x :], key=lambda a: a.id)
    bb = sorted(blue_order[: 2 * z], key=lambda a: a.id)
    b_mixed = sorted(blue_order[2 * z :], key=lambda a: a.id)
    rooms = []
    rooms.extend([rr[2 * i].id, rr[2 * i + 1].id] for i in range(x))
    rooms.extend([bb[2 * i].id, bb[2 * i + 1].id] for i in range(z))
    rooms.extend([r.id, b.id] for r, b in zip(r_mixed, b_mixed))
    return canonicalize(g, rooms)


def _solve_blossom(g: Game) -> Outcome:
    import networkx as nx

    graph = nx.Graph()
    agents = g.agents
    graph.add_nodes_from(a.id for a in agents)
    for i, a in enumerate(agents):
        for b in agents[i + 1 :]:
            graph.add_edge(a.id, b.id, weight=pair_weight(a, b))
    matching = nx.max_weight_matching(graph, maxcardinality=True)
    if 2 * len(matching) != g.n:
        raise DomainError("blossom backend failed to produce a perfect matching")
    return canonicalize(g, ([u, v] for u, v in matching))

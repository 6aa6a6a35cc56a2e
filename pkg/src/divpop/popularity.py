"""Popularity margins and exact (strict) popularity verification.

Two interchangeable challenger-search strategies:

* ``bruteforce`` walks every labeled outcome (guarded by the enumeration
  cap) and is the reference implementation.
* ``signature`` walks red-count signatures and solves one exact integer
  transportation problem per signature: agents grouped by (class, current
  numerator) are allotted to room slots, scoring +1/0/-1 by how the agent
  compares the slot's fraction against its current one.  Within-group
  interchangeability makes the optimum equal the true best margin.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import BudgetExceeded, CapExceeded, DomainError, SolverError
from .model import (
    DEFAULT_CAP,
    Game,
    Outcome,
    agent_classes,
    canonicalize,
    class_index_of,
    count_outcomes,
    enumerate_outcomes,
    enumerate_signatures,
    iter_index_partitions,
    numerators,
    signature,
    validate_game,
    validate_outcome,
)
from .transport import solve_transport

POPULAR = "Popular"
NOT_POPULAR = "NotPopular"
STRICTLY_POPULAR = "StrictlyPopular"
NOT_STRICTLY_POPULAR = "NotStrictlyPopular"


@dataclass(frozen=True)
class MarginReport:
    margin: int
    improved: frozenset[str]
    worsened: frozenset[str]


@dataclass(frozen=True)
class PopularityVerdict:
    status: str
    witness: Outcome | None = None
    witness_margin: int | None = None


def popularity_margin(
    g: Game, a: Outcome, b: Outcome, subset: frozenset[str] | None = None
) -> MarginReport:
    """phi(a, b) restricted to ``subset`` (all agents when omitted)."""
    validate_game(g)
    validate_outcome(g, a)
    validate_outcome(g, b)
    nums_a, nums_b = numerators(g, a), numerators(g, b)
    improved, worsened = set(), set()
    for agent, ja, jb in zip(g.agents, nums_a, nums_b):
        if subset is not None and agent.id not in subset:
            continue
        ra, rb = agent.pref.ranks[ja], agent.pref.ranks[jb]
        if ra < rb:
            improved.add(agent.id)
        elif ra > rb:
            worsened.add(agent.id)
    return MarginReport(
        margin=len(improved) - len(worsened),
        improved=frozenset(improved),
        worsened=frozenset(worsened),
    )


def _margin_fast(
    ranks, red_flags, base_ranks, partition
) -> int:
    m = 0
    for room in partition:
        c = 0
        for i in room:
            if red_flags[i]:
                c += 1
        for i in room:
            r_new = ranks[i][c]
            r_old = base_ranks[i]
            if r_new < r_old:
                m += 1
            elif r_new > r_old:
                m -= 1
    return m


def _base_ranks(g: Game, o: Outcome) -> list[int]:
    nums = numerators(g, o)
    return [g.rank_tables[i][nums[i]] for i in range(g.n)]


def _index_rooms(g: Game, o: Outcome) -> frozenset[tuple[int, ...]]:
    idx = g.index
    return frozenset(tuple(sorted(idx[a] for a in room)) for room in o.rooms)


def _partition_to_outcome(g: Game, partition) -> Outcome:
    ids = [a.id for a in g.agents]
    return canonicalize(g, ((ids[i] for i in room) for room in partition))


def best_challenger(
    g: Game,
    o: Outcome,
    strategy: str = "bruteforce",
    cap: int = DEFAULT_CAP,
    deadline: float | None = None,
) -> tuple[Outcome, int]:
    """Challenger maximizing phi(challenger, o) plus that maximum.

    The tested outcome itself is a candidate, so the maximum is >= 0.
    Ties go to the first candidate in the deterministic search order.
    """
    validate_game(g)
    validate_outcome(g, o)
    if strategy == "bruteforce":
        return _best_challenger_bruteforce(g, o, cap)
    if strategy == "signature":
        best = _best_challenger_signature(g, o, deadline)
        report = popularity_margin(g, best[0], o)
        if report.margin != best[1]:
            raise SolverError(
                f"materialized witness margin {report.margin} != optimum {best[1]}"
            )
        return best
    raise DomainError(f"unknown strategy {strategy!r}")


def _check_cap(total: int, cap: int) -> None:
    if total > cap:
        raise CapExceeded(f"{total} outcomes exceed cap {cap}")


def _best_challenger_bruteforce(g: Game, o: Outcome, cap: int) -> tuple[Outcome, int]:
    _check_cap(count_outcomes(g.n, g.s), cap)
    ranks, red_flags = g.rank_tables, g.red_flags
    base = _base_ranks(g, o)
    best_part, best_m = None, None
    for part in iter_index_partitions(tuple(range(g.n)), g.s):
        m = _margin_fast(ranks, red_flags, base, part)
        if best_m is None or m > best_m:
            best_part, best_m = part, m
    return _partition_to_outcome(g, best_part), best_m


# ---------------------------------------------------------------------------
# Signature strategy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Group:
    """Agents of one class currently sitting at one numerator."""

    color: str
    ranks: tuple[int, ...]
    current: int
    members: tuple[str, ...]


def _groups_under(g: Game, o: Outcome) -> list[_Group]:
    cls_of = class_index_of(g)
    nums = numerators(g, o)
    buckets: dict[tuple[int, int], list[str]] = {}
    order: list[tuple[int, int]] = []
    for agent, j in zip(g.agents, nums):
        key = (cls_of[agent.id], j)
        if key not in buckets:
            buckets[key] = []
            order.append(key)
        buckets[key].append(agent.id)
    classes = agent_classes(g)
    out = []
    for cls_idx, j in sorted(order):
        cls = classes[cls_idx]
        rep = g.by_id[cls.members[0]]
        out.append(
            _Group(
                color=cls.color,
                ranks=rep.pref.ranks,
                current=j,
                members=tuple(sorted(buckets[(cls_idx, j)])),
            )
        )
    return out


def _score(group: _Group, value: int) -> int:
    r_new, r_old = group.ranks[value], group.ranks[group.current]
    return 1 if r_new < r_old else -1 if r_new > r_old else 0


def _sig_problem(g: Game, groups: list[_Group], sig: tuple[int, ...]):
    """Split a signature into the red and blue transportation instances."""
    mult: dict[int, int] = {}
    for c in sig:
        mult[c] = mult.get(c, 0) + 1
    values = sorted(mult, reverse=True)
    red_groups = [gr for gr in groups if gr.color == "red"]
    blue_groups = [gr for gr in groups if gr.color == "blue"]
    red_vals = [c for c in values if c >= 1]
    blue_vals = [c for c in values if c <= g.s - 1]
    red_dem = [mult[c] * c for c in red_vals]
    blue_dem = [mult[c] * (g.s - c) for c in blue_vals]
    return mult, values, (red_groups, red_vals, red_dem), (blue_groups, blue_vals, blue_dem)


def _solve_side(groups, vals, dem, caps=None):
    supply = [len(gr.members) for gr in groups]
    score = [[_score(gr, c) for c in vals] for gr in groups]
    return solve_transport(supply, dem, score, caps)


def _materialize(
    g: Game,
    sig_values: list[int],
    mult: dict[int, int],
    red_side,
    blue_side,
) -> Outcome:
    """Turn the two transportation plans into a concrete outcome."""
    (red_groups, red_vals, _), red_plan = red_side
    (blue_groups, blue_vals, _), blue_plan = blue_side
    red_pool = {c: [] for c in sig_values}
    for gi, gr in enumerate(red_groups):
        offset = 0
        for vi, c in enumerate(red_vals):
            take = red_plan[gi][vi]
            red_pool[c].extend(gr.members[offset : offset + take])
            offset += take
    blue_pool = {c: [] for c in sig_values}
    for gi, gr in enumerate(blue_groups):
        offset = 0
        for vi, c in enumerate(blue_vals):
            take = blue_plan[gi][vi]
            blue_pool[c].extend(gr.members[offset : offset + take])
            offset += take
    rooms = []
    for c in sig_values:
        reds, blues = red_pool[c], blue_pool[c]
        for r in range(mult[c]):
            room = reds[r * c : (r + 1) * c] + blues[r * (g.s - c) : (r + 1) * (g.s - c)]
            rooms.append(room)
    return canonicalize(g, rooms)


def _sig_optimum(
    g: Game, groups: list[_Group], sig: tuple[int, ...], caps_for=None
) -> tuple[int, Outcome] | None:
    mult, values, red_spec, blue_spec = _sig_problem(g, groups, sig)
    red_groups, red_vals, red_dem = red_spec
    blue_groups, blue_vals, blue_dem = blue_spec
    red_caps = blue_caps = None
    if caps_for is not None:
        red_caps, blue_caps = caps_for(red_groups, red_vals, blue_groups, blue_vals)
    red_res = _solve_side(red_groups, red_vals, red_dem, red_caps)
    if red_res is None:
        return None
    blue_res = _solve_side(blue_groups, blue_vals, blue_dem, blue_caps)
    if blue_res is None:
        return None
    margin = red_res[0] + blue_res[0]
    outcome = _materialize(
        g,
        values,
        mult,
        ((red_groups, red_vals, red_dem), red_res[1]),
        ((blue_groups, blue_vals, blue_dem), blue_res[1]),
    )
    return margin, outcome


def _check_deadline(deadline: float | None):
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded("signature search exceeded its time budget")


def _best_challenger_signature(
    g: Game, o: Outcome, deadline: float | None = None
) -> tuple[Outcome, int]:
    groups = _groups_under(g, o)
    best: tuple[Outcome, int] | None = None
    for sig in enumerate_signatures(g):
        _check_deadline(deadline)
        res = _sig_optimum(g, groups, sig)
        if res is None:
            raise SolverError("uncapped transportation reported infeasible")
        margin, outcome = res
        if best is None or margin > best[1]:
            best = (outcome, margin)
    return best


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


def is_popular(
    g: Game,
    o: Outcome,
    strategy: str = "bruteforce",
    cap: int = DEFAULT_CAP,
    deadline: float | None = None,
) -> PopularityVerdict:
    witness, margin = best_challenger(g, o, strategy, cap, deadline)
    if margin >= 1:
        return PopularityVerdict(NOT_POPULAR, witness, margin)
    return PopularityVerdict(POPULAR)


def is_strictly_popular(
    g: Game,
    o: Outcome,
    strategy: str = "bruteforce",
    cap: int = DEFAULT_CAP,
    deadline: float | None = None,
) -> PopularityVerdict:
    """Strictly popular: every *other* outcome loses to ``o`` outright."""
    validate_game(g)
    validate_outcome(g, o)
    if strategy == "bruteforce":
        return _strict_bruteforce(g, o, cap)
    if strategy == "signature":
        return _strict_signature(g, o, deadline)
    raise DomainError(f"unknown strategy {strategy!r}")


def _strict_bruteforce(g: Game, o: Outcome, cap: int) -> PopularityVerdict:
    _check_cap(count_outcomes(g.n, g.s), cap)
    ranks, red_flags = g.rank_tables, g.red_flags
    base = _base_ranks(g, o)
    own = _index_rooms(g, o)
    best_part, best_m = None, None
    for part in iter_index_partitions(tuple(range(g.n)), g.s):
        if frozenset(part) == own:
            continue
        m = _margin_fast(ranks, red_flags, base, part)
        if best_m is None or m > best_m:
            best_part, best_m = part, m
    if best_m is None or best_m < 0:
        return PopularityVerdict(STRICTLY_POPULAR)
    return PopularityVerdict(
        NOT_STRICTLY_POPULAR, _partition_to_outcome(g, best_part), best_m
    )


def _swap_same_count_rooms(g: Game, o: Outcome) -> Outcome | None:
    """Swap same-colored agents across two rooms of equal red count.

    Nobody's fraction changes, so the result ties ``o`` at margin 0 while
    being a different partition.  Returns None when all red counts differ.
    """
    by_count: dict[int, list[tuple[str, ...]]] = {}
    for room in o.rooms:
        by_count.setdefault(sum(1 for a in room if g.by_id[a].is_red), []).append(room)
    for c, rooms in sorted(by_count.items()):
        if len(rooms) < 2:
            continue
        r1, r2 = rooms[0], rooms[1]
        color_red = c >= 1
        a1 = next(a for a in r1 if g.by_id[a].is_red == color_red)
        a2 = next(a for a in r2 if g.by_id[a].is_red == color_red)
        new_rooms = []
        for room in o.rooms:
            if room == r1:
                new_rooms.append([a2 if x == a1 else x for x in room])
            elif room == r2:
                new_rooms.append([a1 if x == a2 else x for x in room])
            else:
                new_rooms.append(list(room))
        return canonicalize(g, new_rooms)
    return None


def _strict_signature(g: Game, o: Outcome, deadline) -> PopularityVerdict:
    groups = _groups_under(g, o)
    sig_o = signature(g, o)
    optima: list[tuple[tuple[int, ...], int, Outcome]] = []
    best_m = None
    for sig in enumerate_signatures(g):
        _check_deadline(deadline)
        res = _sig_optimum(g, groups, sig)
        if res is None:
            raise SolverError("uncapped transportation reported infeasible")
        optima.append((sig, res[0], res[1]))
        if best_m is None or res[0] > best_m:
            best_m = res[0]
    if best_m >= 1:
        sig, m, w = next(t for t in optima if t[1] == best_m)
        return PopularityVerdict(NOT_STRICTLY_POPULAR, w, m)
    # best margin is exactly 0 (o itself ties); hunt for a 0-margin tie != o
    swap = _swap_same_count_rooms(g, o)
    if swap is not None:
        return PopularityVerdict(NOT_STRICTLY_POPULAR, swap, 0)
    for sig, m, w in optima:
        if sig != sig_o and m == 0:
            return PopularityVerdict(NOT_STRICTLY_POPULAR, w, 0)
    # remaining candidates share o's signature; o's own allotment sends each
    # (class, numerator) group wholly to its current value, so any distinct
    # optimal plan must route some group member elsewhere.  Cap each group's
    # own cell one below its size and re-solve.
    tie = _strict_alternate_plan(g, groups, sig_o, deadline)
    if tie is not None:
        return PopularityVerdict(NOT_STRICTLY_POPULAR, tie, 0)
    return PopularityVerdict(STRICTLY_POPULAR)


def _strict_alternate_plan(
    g: Game, groups: list[_Group], sig_o: tuple[int, ...], deadline
) -> Outcome | None:
    for target in groups:
        _check_deadline(deadline)

        def caps_for(red_groups, red_vals, blue_groups, blue_vals, target=target):
            red_caps: dict[tuple[int, int], int] = {}
            blue_caps: dict[tuple[int, int], int] = {}
            side_groups = red_groups if target.color == "red" else blue_groups
            side_vals = red_vals if target.color == "red" else blue_vals
            gi = side_groups.index(target)
            if target.current in side_vals:
                vi = side_vals.index(target.current)
                cap = len(target.members) - 1
                if target.color == "red":
                    red_caps[(gi, vi)] = cap
                else:
                    blue_caps[(gi, vi)] = cap
            return red_caps or None, blue_caps or None

        res = _sig_optimum(g, groups, sig_o, caps_for)
        if res is not None and res[0] == 0:
            return res[1]
    return None


def find_popular(
    g: Game,
    strategy: str = "bruteforce",
    cap: int = DEFAULT_CAP,
    deadline: float | None = None,
) -> Outcome | None:
    """First popular outcome in the deterministic enumeration order, if any.

    With the signature strategy only orbit representatives are tried;
    popularity is invariant under within-class relabeling, so this decides
    existence exactly.
    """
    validate_game(g)
    if strategy == "bruteforce":
        outcomes = []
        vecs = []
        ranks = g.rank_tables
        _check_cap(count_outcomes(g.n, g.s), cap)
        for o in enumerate_outcomes(g, "labeled", cap):
            nums = numerators(g, o)
            outcomes.append(o)
            vecs.append([ranks[i][nums[i]] for i in range(g.n)])
        for i, o in enumerate(outcomes):
            base = vecs[i]
            beaten = False
            for other in vecs:
                m = 0
                for r_new, r_old in zip(other, base):
                    if r_new < r_old:
                        m += 1
                    elif r_new > r_old:
                        m -= 1
                if m >= 1:
                    beaten = True
                    break
            if not beaten:
                return o
        return None
    if strategy == "signature":
        for o in enumerate_outcomes(g, "orbit", cap):
            _check_deadline(deadline)
            if is_popular(g, o, "signature", cap, deadline).status == POPULAR:
                return o
        return None
    raise DomainError(f"unknown strategy {strategy!r}")

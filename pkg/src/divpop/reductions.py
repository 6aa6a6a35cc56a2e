"""Hardness-instance builders and their predefined outcomes.

Three exact-cover reduction families (dichotomous strict-popularity,
dichotomous mixed-popularity, trichotomous popularity) built as concrete
games with addressable agent groups, plus the fixed 9-agent trichotomous
game that admits no popular outcome.  Agent ids are structured strings
("r_set:3", "b_fill:2:7") so every group is reproducible and addressable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceeded, DomainError, ValidationError
from .model import (
    Agent,
    Game,
    Outcome,
    PreferenceOrder,
    agent_classes,
    canonicalize,
    validate_game,
)
from .x3c import X3CInstance, is_exact_cover

VARIANT_STRICT = "strict"
VARIANT_MIXED = "mixed"
VARIANT_POPULARITY = "popularity"
VARIANTS = (VARIANT_STRICT, VARIANT_MIXED, VARIANT_POPULARITY)


@dataclass
class ReductionBundle:
    variant: str
    game: Game
    groups: dict[str, tuple[str, ...]]
    instance: X3CInstance

    def group(self, name: str) -> tuple[str, ...]:
        if name not in self.groups:
            raise DomainError(f"unknown agent group {name!r}")
        return self.groups[name]


def _dich(s: int, approve) -> PreferenceOrder:
    return PreferenceOrder.dichotomous(s, approve)


def _tri(s: int, approve, neutral) -> PreferenceOrder:
    return PreferenceOrder.trichotomous(s, approve, neutral)


class _Builder:
    def __init__(self, s: int):
        self.s = s
        self.red: list[Agent] = []
        self.blue: list[Agent] = []
        self.groups: dict[str, list[str]] = {}

    def add(self, group: str, agent_id: str, color: str, pref: PreferenceOrder):
        agent = Agent(agent_id, color, pref)
        (self.red if color == "red" else self.blue).append(agent)
        self.groups.setdefault(group, []).append(agent_id)

    def bundle(self, variant: str, inst: X3CInstance) -> ReductionBundle:
        game = Game.build(self.s, self.red, self.blue)
        validate_game(game)
        return ReductionBundle(
            variant=variant,
            game=game,
            groups={k: tuple(v) for k, v in self.groups.items()},
            instance=inst,
        )


def build_strict_reduction(inst: X3CInstance) -> ReductionBundle:
    """Dichotomous game whose all-approve outcomes encode exact covers."""
    q, m = inst.q, inst.m
    s = 5 * (q + 1) + 1 + m
    b = _Builder(s)
    for i in range(1, m + 1):
        approve = {5 * j + 1 for j in inst.incidence(i)} | {s}
        b.add("R_set", f"r_set:{i}", "red", _dich(s, approve))
    for j in range(1, q + 1):
        for p in range(1, 5 * j - 2 + 1):
            b.add(f"R_red:{j}", f"r_red:{j}:{p}", "red", _dich(s, {5 * j + 1, 5 * j - 2}))
    for p in range(1, 5 * (q + 1) + 1 + 1):
        b.add("R_mon", f"r_mon:{p}", "red", _dich(s, {s, 5 * (q + 1) + 1}))
    for j in range(1, q + 1):
        for p in range(1, s - (5 * j - 2) - 3 + 1):
            b.add(f"B_fill:{j}", f"b_fill:{j}:{p}", "blue", _dich(s, {5 * j + 1, 5 * j - 2}))
        for p in range(1, 4):
            b.add(f"B_add:{j}", f"b_add:{j}:{p}", "blue", _dich(s, {5 * j - 2, 0}))
    for p in range(1, s - (5 * (q + 1) + 1) + 1):
        b.add("B_mon", f"b_mon:{p}", "blue", _dich(s, {5 * (q + 1) + 1, 0}))
    for p in range(1, 5 * (q + 1) + 1 + 1):
        b.add("B_even", f"b_even:{p}", "blue", _dich(s, {0}))
    return b.bundle(VARIANT_STRICT, inst)


def build_mixed_reduction(inst: X3CInstance) -> ReductionBundle:
    """Doubled variant with six auxiliary reds; only r_aux:6 dislikes the stack."""
    q, m = inst.q, inst.m
    s = 2 * (5 * (q + 2) + 1 + m) + 6
    mon_blue = s - 2 * (5 * (q + 2) + 1)
    if mon_blue <= 0:
        raise ValidationError("group-size", f"monolith blue group size {mon_blue} <= 0")
    b = _Builder(s)
    for i in range(1, m + 1):
        approve = {2 * (5 * j + 1) for j in inst.incidence(i)} | {s}
        b.add("R_set", f"r_set:{i}", "red", _dich(s, approve))
    for i in range(1, m + 1):
        approve = {2 * (5 * j + 1) for j in inst.incidence(i)} | {s}
        b.add("R_copy", f"r_copy:{i}", "red", _dich(s, approve))
    hub = 2 * (5 * (q + 1) + 1)
    for t in range(1, 6):
        b.add("R_aux", f"r_aux:{t}", "red", _dich(s, {hub, s}))
    b.add("R_aux", "r_aux:6", "red", _dich(s, {hub}))
    for j in range(1, q + 2):
        for p in range(1, 2 * (5 * j - 2) + 1):
            b.add(
                f"R_red:{j}",
                f"r_red:{j}:{p}",
                "red",
                _dich(s, {2 * (5 * j + 1), 2 * (5 * j - 2)}),
            )
    for p in range(1, 2 * (5 * (q + 2) + 1) + 1):
        b.add("R_mon", f"r_mon:{p}", "red", _dich(s, {s, 2 * (5 * (q + 2) + 1)}))
    for j in range(1, q + 2):
        for p in range(1, s - 2 * (5 * j - 2) - 6 + 1):
            b.add(
                f"B_fill:{j}",
                f"b_fill:{j}:{p}",
                "blue",
                _dich(s, {2 * (5 * j + 1), 2 * (5 * j - 2)}),
            )
        for p in range(1, 7):
            b.add(f"B_add:{j}", f"b_add:{j}:{p}", "blue", _dich(s, {2 * (5 * j - 2), 0}))
    for p in range(1, mon_blue + 1):
        b.add("B_mon", f"b_mon:{p}", "blue", _dich(s, {2 * (5 * (q + 2) + 1), 0}))
    for p in range(1, 2 * (5 * (q + 2) + 1) + 1):
        b.add("B_even", f"b_even:{p}", "blue", _dich(s, {0}))
    return b.bundle(VARIANT_MIXED, inst)


def build_popularity_reduction(inst: X3CInstance) -> ReductionBundle:
    """Trichotomous variant with a 3-ring of displaceable red agents.

    Ring agents (r_circ:* plus the third ring-redundant block) approve one
    fraction, are neutral about one lower fraction, and can be rotated
    through three dedicated rooms; everything else mirrors the mixed
    variant shifted by three block indices.
    """
    q, m = inst.q, inst.m
    s = 2 * (5 * (q + 4) + 1) + 2 * m + 3
    ring_top, ring_mid = 5 * 3 - 1, 5 * 2 - 1  # approved vs neutral ring fractions
    b = _Builder(s)
    b.add("R_circ", "r_circ:1", "red", _tri(s, {ring_top}, {ring_mid}))
    b.add("R_circ", "r_circ:2", "red", _tri(s, {ring_top}, {ring_mid}))
    b.add("R_circ", "r_circ:3", "red", _tri(s, {ring_top, s}, {ring_mid}))
    for j in (1, 2):
        for p in range(1, 5 * j - 2 + 1):
            b.add(f"R_red:{j}", f"r_red:{j}:{p}", "red", _dich(s, {5 * j - 1, 5 * j - 2}))
    for p in range(1, 5 * 3 - 2 + 1):
        b.add("R_red:3", f"r_red:3:{p}", "red", _tri(s, {ring_top, ring_top - 1}, {ring_mid}))
    for i in range(1, m + 1):
        approve = {2 * (5 * (j + 3) + 1) for j in inst.incidence(i)} | {s}
        b.add("R_set", f"r_set:{i}", "red", _dich(s, approve))
    for i in range(1, m + 1):
        approve = {2 * (5 * (j + 3) + 1) for j in inst.incidence(i)} | {s}
        b.add("R_copy", f"r_copy:{i}", "red", _dich(s, approve))
    for j in range(4, q + 4):
        for p in range(1, 2 * (5 * j - 2) + 1):
            b.add(
                f"R_red:{j}",
                f"r_red:{j}:{p}",
                "red",
                _dich(s, {2 * (5 * j + 1), 2 * (5 * j - 2)}),
            )
    for p in range(1, s - 2 * m - 3 + 1):
        b.add("R_mon", f"r_mon:{p}", "red", _dich(s, {s, s - 2 * m - 3}))
    for j in (1, 2, 3):
        for p in range(1, s - (5 * j - 2) - 1 + 1):
            b.add(f"B_fill:{j}", f"b_fill:{j}:{p}", "blue", _dich(s, {5 * j - 1, 5 * j - 2}))
        b.add(f"B_add:{j}", f"b_add:{j}:1", "blue", _dich(s, {5 * j - 2, 0}))
    for j in range(4, q + 4):
        for p in range(1, s - 2 * (5 * j - 2) - 6 + 1):
            b.add(
                f"B_fill:{j}",
                f"b_fill:{j}:{p}",
                "blue",
                _dich(s, {2 * (5 * j + 1), 2 * (5 * j - 2)}),
            )
        for p in range(1, 7):
            b.add(f"B_add:{j}", f"b_add:{j}:{p}", "blue", _dich(s, {2 * (5 * j - 2), 0}))
    for p in range(1, 2 * m + 3 + 1):
        b.add("B_mon", f"b_mon:{p}", "blue", _dich(s, {s - 2 * m - 3, 0}))
    for p in range(1, s - 2 * m - 3 + 1):
        b.add("B_even", f"b_even:{p}", "blue", _dich(s, {0}))
    return b.bundle(VARIANT_POPULARITY, inst)


def build_reduction(variant: str, inst: X3CInstance) -> ReductionBundle:
    builders = {
        VARIANT_STRICT: build_strict_reduction,
        VARIANT_MIXED: build_mixed_reduction,
        VARIANT_POPULARITY: build_popularity_reduction,
    }
    if variant not in builders:
        raise DomainError(f"unknown reduction variant {variant!r}")
    return builders[variant](inst)


# ---------------------------------------------------------------------------
# Predefined outcomes
# ---------------------------------------------------------------------------


def monolithic_outcome(bundle: ReductionBundle) -> Outcome:
    """Stack every agent that tolerates an all-red room into one room."""
    g, grp = bundle.game, bundle.group
    q = bundle.instance.q
    if bundle.variant == VARIANT_STRICT:
        block_js = range(1, q + 1)
        stack = grp("R_set") + grp("R_mon")
    elif bundle.variant == VARIANT_MIXED:
        block_js = range(1, q + 2)
        stack = grp("R_set") + grp("R_copy") + grp("R_aux") + grp("R_mon")
    else:
        block_js = range(1, q + 4)
        stack = grp("R_set") + grp("R_copy") + grp("R_circ") + grp("R_mon")
    rooms = [
        grp(f"B_add:{j}") + grp(f"R_red:{j}") + grp(f"B_fill:{j}") for j in block_js
    ]
    rooms.append(stack)
    rooms.append(grp("B_mon") + grp("B_even"))
    return canonicalize(g, rooms)


def _check_solution(bundle: ReductionBundle, solution) -> tuple[int, ...]:
    solution = tuple(sorted(solution))
    if not is_exact_cover(bundle.instance, solution):
        raise ValidationError("invalid-cover", f"{solution} is not an exact cover")
    return solution


def _pick_ring_five(bundle: ReductionBundle, extras) -> tuple[str, ...]:
    ring = bundle.group("R_circ") + bundle.group("R_red:3")
    if extras is None:
        return ring[:5]
    extras = tuple(extras)
    if len(extras) != 5 or len(set(extras)) != 5 or any(a not in ring for a in extras):
        raise DomainError("extras must pick five distinct ring agents")
    return extras


def reduced_outcome(bundle: ReductionBundle, solution, extras=None) -> Outcome:
    """Outcome encoding an exact cover; exists iff the instance is solvable.

    For the popularity variant, ``extras`` picks the five ring agents
    (a1..a5): a1 is parked at the disapproved low room, a2 at the neutral
    one, and the remaining ring agents share the approved ring room.
    """
    g, grp = bundle.game, bundle.group
    q = bundle.instance.q
    solution = _check_solution(bundle, solution)

    def cover_room(j: int, shift: int) -> tuple[str, ...]:
        jj = j + shift
        if j in solution:
            members = tuple(f"r_set:{i}" for i in sorted(bundle.instance.sets[j - 1]))
            if bundle.variant != VARIANT_STRICT:
                members += tuple(
                    f"r_copy:{i}" for i in sorted(bundle.instance.sets[j - 1])
                )
            return members + grp(f"R_red:{jj}") + grp(f"B_fill:{jj}")
        return grp(f"B_add:{jj}") + grp(f"R_red:{jj}") + grp(f"B_fill:{jj}")

    if bundle.variant == VARIANT_STRICT:
        rooms = [cover_room(j, 0) for j in range(1, q + 1)]
        rooms.append(grp("R_mon") + grp("B_mon"))
        spare = [a for j in solution for a in grp(f"B_add:{j}")]
        rooms.append(grp("B_even") + tuple(spare))
        return canonicalize(g, rooms)
    if bundle.variant == VARIANT_MIXED:
        rooms = [cover_room(j, 0) for j in range(1, q + 1)]
        rooms.append(grp("R_aux") + grp(f"R_red:{q + 1}") + grp(f"B_fill:{q + 1}"))
        rooms.append(grp("R_mon") + grp("B_mon"))
        spare = [a for j in solution for a in grp(f"B_add:{j}")]
        spare.extend(grp(f"B_add:{q + 1}"))
        rooms.append(grp("B_even") + tuple(spare))
        return canonicalize(g, rooms)
    # popularity variant
    a = _pick_ring_five(bundle, extras)
    rooms = _ring_rooms(bundle, low=a[0], mid=a[1])
    rooms.extend(cover_room(j, 3) for j in range(1, q + 1))
    rooms.extend(_popularity_tail_rooms(bundle, solution))
    return canonicalize(g, rooms)


def _ring_rooms(bundle: ReductionBundle, low: str, mid: str) -> list[tuple[str, ...]]:
    """Three ring rooms: ``low`` disapproves its room, ``mid`` is neutral,
    the other 14 ring agents share the room whose fraction they approve."""
    grp = bundle.group
    ring = set(grp("R_circ") + grp("R_red:3"))
    return [
        (low,) + grp("R_red:1") + grp("B_fill:1"),
        (mid,) + grp("R_red:2") + grp("B_fill:2"),
        tuple(sorted(ring - {low, mid})) + grp("B_fill:3"),
    ]


def _popularity_tail_rooms(bundle: ReductionBundle, solution) -> list[tuple[str, ...]]:
    grp = bundle.group
    spare = [grp(f"B_add:{j}")[0] for j in (1, 2, 3)]
    spare.extend(x for j in solution for x in grp(f"B_add:{j + 3}"))
    return [grp("R_mon") + grp("B_mon"), grp("B_even") + tuple(spare)]


def reduced_rotation_challenger(
    bundle: ReductionBundle, solution, extras=None
) -> Outcome:
    """Rotate a1 -> neutral room, a2 -> approved room, a3 -> disapproved room.

    Beats the matching reduced outcome by exactly one vote: a1 and a2
    improve, only a3 is worse off.
    """
    if bundle.variant != VARIANT_POPULARITY:
        raise DomainError("rotation challengers exist for the popularity variant only")
    g, grp = bundle.game, bundle.group
    q = bundle.instance.q
    solution = _check_solution(bundle, solution)
    a = _pick_ring_five(bundle, extras)
    rooms = _ring_rooms(bundle, low=a[2], mid=a[0])
    for j in range(1, q + 1):
        jj = j + 3
        if j in solution:
            members = tuple(f"r_set:{i}" for i in sorted(bundle.instance.sets[j - 1]))
            members += tuple(f"r_copy:{i}" for i in sorted(bundle.instance.sets[j - 1]))
            rooms.append(members + grp(f"R_red:{jj}") + grp(f"B_fill:{jj}"))
        else:
            rooms.append(grp(f"B_add:{jj}") + grp(f"R_red:{jj}") + grp(f"B_fill:{jj}"))
    rooms.extend(_popularity_tail_rooms(bundle, solution))
    return canonicalize(g, rooms)


# ---------------------------------------------------------------------------
# All-approve search (strict variant)
# ---------------------------------------------------------------------------


def all_approve_outcomes(bundle: ReductionBundle, cap: int = 100_000) -> list[Outcome]:
    """All outcomes where every agent approves its room, up to relabeling."""
    if bundle.variant != VARIANT_STRICT:
        raise DomainError("all-approve search is defined for strict bundles")
    return dichotomous_all_approve(bundle.game, cap)


def dichotomous_all_approve(g: Game, cap: int = 100_000) -> list[Outcome]:
    """Orbit representatives of outcomes with an empty disapprove set.

    Rooms are restricted to red counts approved by all members, turning the
    search into an exact cover over class-count vectors.
    """
    validate_game(g)
    classes = agent_classes(g)
    approved: list[set[int]] = []
    for cls in classes:
        rep = g.by_id[cls.members[0]]
        if max(rep.effective_ranks()) > 1:
            raise DomainError("all-approve search requires dichotomous preferences")
        poss = list(rep.possible_numerators())
        approved.append(
            {poss[i] for i, r in enumerate(rep.effective_ranks()) if r == 0}
        )
    sizes = [len(cls.members) for cls in classes]
    red_idx = [i for i, cls in enumerate(classes) if cls.color == "red"]
    blue_idx = [i for i, cls in enumerate(classes) if cls.color == "blue"]

    def side_comps(c: int, idxs: list[int], total: int):
        usable = [i for i in idxs if c in approved[i]]
        caps = [sizes[i] for i in usable]

        def rec(pos: int, left: int, acc: list[int]):
            if pos == len(usable):
                if left == 0:
                    yield dict(zip(usable, acc))
                return
            lo = max(0, left - sum(caps[pos + 1 :]))
            for take in range(min(caps[pos], left), lo - 1, -1):
                acc.append(take)
                yield from rec(pos + 1, left - take, acc)
                acc.pop()

        yield from rec(0, total, [])

    room_types: list[tuple[int, ...]] = []
    for c in range(g.s, -1, -1):
        for red_part in side_comps(c, red_idx, c):
            for blue_part in side_comps(c, blue_idx, g.s - c):
                vec = [0] * len(classes)
                for i, cnt in red_part.items():
                    vec[i] = cnt
                for i, cnt in blue_part.items():
                    vec[i] = cnt
                room_types.append(tuple(vec))
    room_types.sort(reverse=True)

    found: list[Outcome] = []

    def materialize(acc: list[tuple[int, ...]]) -> Outcome:
        cursors = [0] * len(classes)
        rooms = []
        for vec in acc:
            room: list[str] = []
            for i, cnt in enumerate(vec):
                room.extend(classes[i].members[cursors[i] : cursors[i] + cnt])
                cursors[i] += cnt
            rooms.append(room)
        return canonicalize(g, rooms)

    def rec(start: int, remaining: list[int], acc: list[tuple[int, ...]]):
        if all(r == 0 for r in remaining):
            if len(found) >= cap:
                raise CapExceeded(f"all-approve search exceeded cap {cap}")
            found.append(materialize(acc))
            return
        for t in range(start, len(room_types)):
            vec = room_types[t]
            if all(c <= r for c, r in zip(vec, remaining)):
                for i, cnt in enumerate(vec):
                    remaining[i] -= cnt
                acc.append(vec)
                rec(t, remaining, acc)
                acc.pop()
                for i, cnt in enumerate(vec):
                    remaining[i] += cnt

    rec(0, list(sizes), [])
    return found


# ---------------------------------------------------------------------------
# The fixed 9-agent game without a popular outcome
# ---------------------------------------------------------------------------


def counterexample_game() -> Game:
    """Three reds, six blues, rooms of three; no outcome is popular."""
    s = 3
    red = [
        Agent("r1", "red", _tri(s, {1}, set())),
        Agent("r2", "red", _tri(s, {2}, set())),
        Agent("r3", "red", _tri(s, {2}, set())),
    ]
    blue = [Agent(f"b{i}", "blue", _tri(s, {1}, {2})) for i in range(1, 5)]
    blue += [Agent(f"b{i}", "blue", _tri(s, {0}, set())) for i in (5, 6)]
    g = Game.build(s, red, blue)
    validate_game(g)
    return g


_FLEX_BLUES = ("b1", "b2", "b3", "b4")


def top_type_outcomes(g: Game | None = None) -> list[Outcome]:
    """The 12 distinct outcomes pairing r1 with two flexible blues.

    Shape: {r1, x, y}, {r2, r3, z}, {b5, b6, w} over the flexible blues
    {b1..b4}; the (x, y) pair is unordered, hence 4!/2 = 12 partitions.
    """
    import itertools

    g = g or counterexample_game()
    seen = []
    for x, y, z, w in itertools.permutations(_FLEX_BLUES):
        o = canonicalize(g, [["r1", x, y], ["r2", "r3", z], ["b5", "b6", w]])
        if o not in seen:
            seen.append(o)
    return seen


def rotation_challenger(o: Outcome, g: Game | None = None) -> Outcome:
    """Cycle three flexible blues one room forward; beats ``o`` by one vote."""
    g = g or counterexample_game()
    rooms = {a: room for room in o.rooms for a in room}
    p1, p2, p3 = rooms.get("r1"), rooms.get("r2"), rooms.get("b5")
    flex = set(_FLEX_BLUES)
    if (
        p1 is None
        or p2 is None
        or p3 is None
        or len({p1, p2, p3}) != 3
        or set(p1) - flex != {"r1"}
        or not set(p2) >= {"r2", "r3"}
        or len(set(p2) & flex) != 1
        or not set(p3) >= {"b5", "b6"}
        or len(set(p3) & flex) != 1
    ):
        raise DomainError("rotation challengers are defined for top-type outcomes")
    b_pair = sorted(set(p1) & flex)
    b_keep, b_out = b_pair[0], b_pair[1]
    b_mid = next(a for a in p2 if a in flex)
    b_last = next(a for a in p3 if a in flex)
    return canonicalize(
        g,
        [
            ["r1", b_keep, b_mid],
            ["r2", "r3", b_last],
            ["b5", "b6", b_out],
        ],
    )

"""Core model for roommate diversity games.

Agents come in two colors (red/blue) and are partitioned into rooms of a
fixed size ``s``.  Every agent cares only about the number of red agents in
its own room, so a preference is a weak order over the numerators
``0..s`` and is stored as a dense rank vector (rank 0 = most preferred,
equal rank = indifferent).

A red agent can never sit in a room with 0 red agents and a blue agent can
never sit in an all-red room; ranks stored at those impossible numerators
are carried along but masked out of every observable operation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded, DomainError, ValidationError

RED = "red"
BLUE = "blue"

#: Default ceiling on the number of outcomes any enumeration may produce.
DEFAULT_CAP = 10_000_000

PREFER_FIRST = 1
INDIFFERENT = 0
PREFER_SECOND = -1


def theta(red_count: int, s: int) -> Fraction:
    """Fraction of red agents in a room with ``red_count`` reds out of ``s``."""
    if s < 1:
        raise DomainError(f"room size must be >= 1, got {s}")
    if not 0 <= red_count <= s:
        raise DomainError(f"red count {red_count} outside [0, {s}]")
    return Fraction(red_count, s)


def _dense_ranks(values: Sequence[int]) -> tuple[int, ...]:
    """Renumber arbitrary rank values to the dense set 0..L-1, order kept."""
    order = {v: i for i, v in enumerate(sorted(set(values)))}
    return tuple(order[v] for v in values)


@dataclass(frozen=True)
class PreferenceOrder:
    """Weak order over room numerators 0..s as a dense rank vector."""

    ranks: tuple[int, ...]

    def __post_init__(self):
        if not self.ranks:
            raise DomainError("empty rank vector")
        used = set(self.ranks)
        if used != set(range(len(used))):
            raise DomainError(f"rank vector not normalized: {self.ranks}")

    @classmethod
    def from_ranks(cls, values: Sequence[int]) -> "PreferenceOrder":
        values = tuple(values)
        if any((not isinstance(v, int)) or v < 0 for v in values):
            raise DomainError(f"ranks must be natural numbers, got {values}")
        return cls(_dense_ranks(values))

    @classmethod
    def dichotomous(cls, s: int, approve: Iterable[int]) -> "PreferenceOrder":
        """Approved numerators get rank 0, everything else rank 1."""
        approve = set(approve)
        _check_numerators(approve, s)
        if len(approve) == s + 1 or not approve:
            # degenerate: the agent is indifferent between all fractions
            return cls(tuple(0 for _ in range(s + 1)))
        return cls(tuple(0 if j in approve else 1 for j in range(s + 1)))

    @classmethod
    def trichotomous(
        cls, s: int, approve: Iterable[int], neutral: Iterable[int]
    ) -> "PreferenceOrder":
        """Ranks: approve < neutral < disapprove."""
        approve, neutral = set(approve), set(neutral)
        _check_numerators(approve | neutral, s)
        if approve & neutral:
            raise DomainError("approve and neutral sets overlap")
        raw = tuple(
            0 if j in approve else 1 if j in neutral else 2 for j in range(s + 1)
        )
        return cls(_dense_ranks(raw))

    @property
    def size(self) -> int:
        """Room size s implied by the vector length."""
        return len(self.ranks) - 1

    @property
    def levels(self) -> int:
        return max(self.ranks) + 1

    def numerator_of(self, f) -> int:
        """Turn an int numerator or an exact Fraction into a numerator."""
        if isinstance(f, int):
            j = f
        else:
            scaled = Fraction(f) * self.size
            if scaled.denominator != 1:
                raise DomainError(f"{f} is not a multiple of 1/{self.size}")
            j = int(scaled)
        if not 0 <= j <= self.size:
            raise DomainError(f"numerator {j} outside [0, {self.size}]")
        return j

    def rank_of(self, f) -> int:
        return self.ranks[self.numerator_of(f)]

    def compare(self, first, second) -> int:
        """+1 if first is strictly preferred, -1 if second, 0 if indifferent."""
        a, b = self.rank_of(first), self.rank_of(second)
        return PREFER_FIRST if a < b else PREFER_SECOND if a > b else INDIFFERENT


def _check_numerators(values: Iterable[int], s: int) -> None:
    for j in values:
        if not isinstance(j, int) or not 0 <= j <= s:
            raise DomainError(f"numerator {j} outside [0, {s}]")


def compare(pref: PreferenceOrder, first, second) -> int:
    """Module-level alias for :meth:`PreferenceOrder.compare`."""
    return pref.compare(first, second)


@dataclass(frozen=True)
class Agent:
    id: str
    color: str
    pref: PreferenceOrder

    def __post_init__(self):
        if self.color not in (RED, BLUE):
            raise DomainError(f"unknown color {self.color!r}")

    @property
    def is_red(self) -> bool:
        return self.color == RED

    def possible_numerators(self) -> range:
        """Red agents always contribute themselves; blues never complete s."""
        s = self.pref.size
        return range(1, s + 1) if self.is_red else range(0, s)

    def effective_ranks(self) -> tuple[int, ...]:
        """Rank vector restricted to possible numerators, re-densified.

        This is the masked view: two agents behave identically iff they
        share a color and an effective rank vector.
        """
        return _dense_ranks([self.pref.ranks[j] for j in self.possible_numerators()])


@dataclass(frozen=True)
class Game:
    s: int
    red: tuple[Agent, ...]
    blue: tuple[Agent, ...]

    @classmethod
    def build(cls, s: int, red: Iterable[Agent], blue: Iterable[Agent]) -> "Game":
        return cls(s, tuple(red), tuple(blue))

    @cached_property
    def agents(self) -> tuple[Agent, ...]:
        return self.red + self.blue

    @property
    def n(self) -> int:
        return len(self.red) + len(self.blue)

    @property
    def k(self) -> int:
        return self.n // self.s

    @cached_property
    def by_id(self) -> dict[str, Agent]:
        return {a.id: a for a in self.agents}

    @cached_property
    def index(self) -> dict[str, int]:
        return {a.id: i for i, a in enumerate(self.agents)}

    @cached_property
    def rank_tables(self) -> tuple[tuple[int, ...], ...]:
        return tuple(a.pref.ranks for a in self.agents)

    @cached_property
    def red_flags(self) -> tuple[bool, ...]:
        return tuple(a.is_red for a in self.agents)


def validate_game(g: Game) -> None:
    """Raise ValidationError (with a distinct code) on any broken invariant."""
    if g.s < 1:
        raise ValidationError("room-size", f"room size must be >= 1, got {g.s}")
    if g.n % g.s != 0:
        raise ValidationError(
            "divisibility", f"{g.n} agents not divisible into rooms of {g.s}"
        )
    seen: set[str] = set()
    for a in g.agents:
        if a.id in seen:
            raise ValidationError("duplicate-id", f"agent id {a.id!r} repeated")
        seen.add(a.id)
        if len(a.pref.ranks) != g.s + 1:
            raise ValidationError(
                "pref-length",
                f"agent {a.id!r} has {len(a.pref.ranks)} ranks, expected {g.s + 1}",
            )


@dataclass(frozen=True)
class Outcome:
    """A partition into rooms, stored in canonical form.

    Rooms are tuples of sorted agent ids; the room list is sorted by
    (red count, member ids) so equal partitions compare equal.
    """

    rooms: tuple[tuple[str, ...], ...]

    def room_of(self, agent_id: str) -> tuple[str, ...]:
        for room in self.rooms:
            if agent_id in room:
                return room
        raise DomainError(f"agent {agent_id!r} not in outcome")


def canonicalize(g: Game, rooms: Iterable[Iterable[str]]) -> Outcome:
    """Canonical form: members sorted, rooms sorted by (red count, ids)."""
    flags = g.red_flags
    idx = g.index
    decorated = []
    for room in rooms:
        members = tuple(sorted(room))
        try:
            reds = sum(1 for a in members if flags[idx[a]])
        except KeyError as exc:
            raise ValidationError("unknown-agent", f"unknown agent id {exc.args[0]!r}")
        decorated.append((reds, members))
    decorated.sort()
    return Outcome(tuple(members for _, members in decorated))


def validate_outcome(g: Game, o: Outcome) -> None:
    seen: set[str] = set()
    for room in o.rooms:
        if len(room) != g.s:
            raise ValidationError(
                "room-size", f"room {room} has {len(room)} agents, expected {g.s}"
            )
        for a in room:
            if a not in g.index:
                raise ValidationError("unknown-agent", f"unknown agent id {a!r}")
            if a in seen:
                raise ValidationError("duplicated-agent", f"agent {a!r} in two rooms")
            seen.add(a)
    if len(seen) != g.n:
        missing = sorted(set(g.index) - seen)
        raise ValidationError("missing-agent", f"agents missing from outcome: {missing}")


def red_count(g: Game, room: Iterable[str]) -> int:
    flags, idx = g.red_flags, g.index
    return sum(1 for a in room if flags[idx[a]])


def numerators(g: Game, o: Outcome) -> tuple[int, ...]:
    """Red count of each agent's room, aligned with ``g.agents`` order."""
    out = [0] * g.n
    for room in o.rooms:
        c = red_count(g, room)
        for a in room:
            out[g.index[a]] = c
    return tuple(out)


def signature(g: Game, o: Outcome) -> tuple[int, ...]:
    """Multiset of per-room red counts, non-increasing."""
    return tuple(sorted((red_count(g, room) for room in o.rooms), reverse=True))


def enumerate_signatures(g: Game) -> list[tuple[int, ...]]:
    """All non-increasing k-tuples of red counts in [0,s] summing to |R|."""
    k, s, total = g.k, g.s, len(g.red)
    out: list[tuple[int, ...]] = []

    def rec(rooms_left: int, remaining: int, max_c: int, acc: list[int]):
        if rooms_left == 0:
            if remaining == 0:
                out.append(tuple(acc))
            return
        hi = min(max_c, remaining)
        for c in range(hi, -1, -1):
            if remaining - c > (rooms_left - 1) * c:
                break  # later rooms are capped at c, cannot absorb the rest
            acc.append(c)
            rec(rooms_left - 1, remaining - c, c, acc)
            acc.pop()

    rec(k, total, s, [])
    return out


def approval_split(
    g: Game, o: Outcome
) -> tuple[frozenset[str], frozenset[str], frozenset[str]]:
    """Split agents into (approve, neutral, disapprove) for their room.

    Uses the masked rank vector: rank 0 is approval, the worst level is
    disapproval (when there are >= 2 levels), anything between is neutral.
    """
    nums = numerators(g, o)
    approve, neutral, disapprove = set(), set(), set()
    for a, j in zip(g.agents, nums):
        eff = a.effective_ranks()
        pos = list(a.possible_numerators()).index(j)
        r, top = eff[pos], max(eff)
        if r == 0:
            approve.add(a.id)
        elif r == top:
            disapprove.add(a.id)
        else:
            neutral.add(a.id)
    return frozenset(approve), frozenset(neutral), frozenset(disapprove)


# ---------------------------------------------------------------------------
# Agent classes (interchangeability) and orbit machinery
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AgentClass:
    """Maximal group of interchangeable agents: same color, same masked ranks."""

    color: str
    key: tuple[int, ...]
    members: tuple[str, ...]


def agent_classes(g: Game) -> tuple[AgentClass, ...]:
    """Partition agents into classes, ordered by first appearance."""
    buckets: dict[tuple, list[str]] = {}
    order: list[tuple] = []
    for a in g.agents:
        key = (a.color, a.effective_ranks())
        if key not in buckets:
            buckets[key] = []
            order.append(key)
        buckets[key].append(a.id)
    return tuple(
        AgentClass(color=key[0], key=key[1], members=tuple(sorted(buckets[key])))
        for key in order
    )


def class_index_of(g: Game) -> dict[str, int]:
    """Map agent id -> index of its class in agent_classes(g)."""
    out: dict[str, int] = {}
    for i, cls in enumerate(agent_classes(g)):
        for m in cls.members:
            out[m] = i
    return out


def orbit_key(g: Game, o: Outcome) -> tuple[tuple[int, ...], ...]:
    """Sorted multiset of per-room class-count vectors.

    Two outcomes have equal keys iff one maps to the other by permuting
    agents within classes.
    """
    cls_of = class_index_of(g)
    t = len(agent_classes(g))
    vecs = []
    for room in o.rooms:
        v = [0] * t
        for a in room:
            v[cls_of[a]] += 1
        vecs.append(tuple(v))
    return tuple(sorted(vecs))


def orbit_size(g: Game, o: Outcome) -> int:
    """Number of labeled outcomes sharing ``o``'s orbit key."""
    key = orbit_key(g, o)
    classes = agent_classes(g)
    total = 1
    for c, cls in enumerate(classes):
        ways = math.factorial(len(cls.members))
        for vec in key:
            ways //= math.factorial(vec[c])
        total *= ways
    for vec, mult in _multiplicities(key).items():
        total //= math.factorial(mult)
    return total


def _multiplicities(items: Iterable) -> dict:
    out: dict = {}
    for x in items:
        out[x] = out.get(x, 0) + 1
    return out


def relabel_outcome(g: Game, o: Outcome, mapping: dict[str, str]) -> Outcome:
    return canonicalize(g, ([mapping.get(a, a) for a in room] for room in o.rooms))


def class_permutations(g: Game) -> Iterator[dict[str, str]]:
    """All within-class relabelings. Exponential; intended for small games."""
    classes = agent_classes(g)
    per_class = [list(itertools.permutations(cls.members)) for cls in classes]
    for combo in itertools.product(*per_class):
        mapping: dict[str, str] = {}
        for cls, perm in zip(classes, combo):
            mapping.update(dict(zip(cls.members, perm)))
        yield mapping


# ---------------------------------------------------------------------------
# Outcome enumeration
# ---------------------------------------------------------------------------


def count_outcomes(n: int, s: int) -> int:
    """Number of partitions of n labeled agents into rooms of size s."""
    if n == 0:
        return 1
    k = n // s
    return math.factorial(n) // (math.factorial(s) ** k * math.factorial(k))


def iter_index_partitions(items: tuple[int, ...], s: int) -> Iterator[tuple]:
    """Partitions of sorted ``items`` into s-sized rooms, each exactly once.

    The first remaining element anchors a room, so every partition appears
    once and the stream order is deterministic.
    """
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for combo in itertools.combinations(rest, s - 1):
        room = (first, *combo)
        taken = set(combo)
        remaining = tuple(x for x in rest if x not in taken)
        for tail in iter_index_partitions(remaining, s):
            yield (room, *tail)


def enumerate_outcomes(
    g: Game, mode: str = "labeled", cap: int = DEFAULT_CAP
) -> Iterator[Outcome]:
    """Stream all outcomes (labeled) or one representative per orbit (orbit)."""
    validate_game(g)
    if mode == "labeled":
        total = count_outcomes(g.n, g.s)
        if total > cap:
            raise CapExceeded(f"{total} outcomes exceed cap {cap}")
        return _labeled_stream(g)
    if mode == "orbit":
        return _orbit_stream(g, cap)
    raise DomainError(f"unknown enumeration mode {mode!r}")


def _labeled_stream(g: Game) -> Iterator[Outcome]:
    ids = [a.id for a in g.agents]
    for part in iter_index_partitions(tuple(range(g.n)), g.s):
        yield canonicalize(g, ((ids[i] for i in room) for room in part))


def _room_compositions(
    s: int, limits: Sequence[int], start: int = 0
) -> Iterator[tuple[int, ...]]:
    """All per-class count vectors summing to s under per-class limits."""
    def rec(i: int, left: int, acc: list[int]):
        if i == len(limits):
            if left == 0:
                yield tuple(acc)
            return
        lo = max(0, left - sum(limits[i + 1 :]))
        for c in range(min(limits[i], left), lo - 1, -1):
            acc.append(c)
            yield from rec(i + 1, left - c, acc)
            acc.pop()

    yield from rec(start, s, [])


def _orbit_stream(g: Game, cap: int) -> Iterator[Outcome]:
    classes = agent_classes(g)
    sizes = [len(c.members) for c in classes]
    all_comps = sorted(_room_compositions(g.s, sizes), reverse=True)
    emitted = 0

    def feasible(comp: tuple[int, ...], remaining: list[int]) -> bool:
        return all(c <= r for c, r in zip(comp, remaining))

    def materialize(rooms: list[tuple[int, ...]]) -> Outcome:
        cursors = [0] * len(classes)
        out_rooms = []
        for comp in rooms:
            room: list[str] = []
            for c, cnt in enumerate(comp):
                room.extend(classes[c].members[cursors[c] : cursors[c] + cnt])
                cursors[c] += cnt
            out_rooms.append(room)
        return canonicalize(g, out_rooms)

    def rec(start: int, remaining: list[int], acc: list[tuple[int, ...]]):
        nonlocal emitted
        if all(r == 0 for r in remaining):
            emitted += 1
            if emitted > cap:
                raise CapExceeded(f"orbit enumeration exceeded cap {cap}")
            yield materialize(acc)
            return
        for i in range(start, len(all_comps)):
            comp = all_comps[i]
            if feasible(comp, remaining):
                for c, cnt in enumerate(comp):
                    remaining[c] -= cnt
                acc.append(comp)
                yield from rec(i, remaining, acc)
                acc.pop()
                for c, cnt in enumerate(comp):
                    remaining[c] += cnt

    yield from rec(0, list(sizes), [])

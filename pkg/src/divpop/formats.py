"""JSON file formats: games, outcomes, X3C instances, mixed outcomes.

Parsers are strict: unknown fields are rejected with the JSON path in the
error.  Serialization is canonical (sorted keys, ranks-normalized
preferences), so parse -> serialize round-trips byte-equivalently.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import SchemaError
from .mixed import MixedOutcome
from .model import Agent, Game, Outcome, PreferenceOrder, canonicalize, validate_game, validate_outcome
from .popularity import PopularityVerdict
from .reductions import ReductionBundle
from .x3c import X3CInstance


def _expect_keys(obj: dict, required: set[str], optional: set[str], path: str):
    if not isinstance(obj, dict):
        raise SchemaError(path, f"expected object, got {type(obj).__name__}")
    unknown = set(obj) - required - optional
    if unknown:
        raise SchemaError(path, f"unknown fields {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise SchemaError(path, f"missing fields {sorted(missing)}")


def _int_list(values, path: str) -> list[int]:
    if not isinstance(values, list) or any(
        not isinstance(v, int) or isinstance(v, bool) for v in values
    ):
        raise SchemaError(path, "expected a list of integers")
    return values


def _pref_from_json(obj, s: int, path: str) -> PreferenceOrder:
    _expect_keys(obj, {"type"}, {"ranks", "approve", "neutral"}, path)
    kind = obj["type"]
    if kind == "ranks":
        _expect_keys(obj, {"type", "ranks"}, set(), path)
        ranks = _int_list(obj["ranks"], f"{path}.ranks")
        if len(ranks) != s + 1:
            raise SchemaError(f"{path}.ranks", f"expected {s + 1} ranks, got {len(ranks)}")
        return PreferenceOrder.from_ranks(ranks)
    if kind == "dichotomous":
        _expect_keys(obj, {"type", "approve"}, set(), path)
        return PreferenceOrder.dichotomous(s, _int_list(obj["approve"], f"{path}.approve"))
    if kind == "trichotomous":
        _expect_keys(obj, {"type", "approve", "neutral"}, set(), path)
        return PreferenceOrder.trichotomous(
            s,
            _int_list(obj["approve"], f"{path}.approve"),
            _int_list(obj["neutral"], f"{path}.neutral"),
        )
    raise SchemaError(f"{path}.type", f"unknown preference type {kind!r}")


def game_from_json(doc) -> Game:
    _expect_keys(doc, {"s", "red", "blue"}, set(), "$")
    s = doc["s"]
    if not isinstance(s, int) or isinstance(s, bool) or s < 1:
        raise SchemaError("$.s", "room size must be a positive integer")
    agents: dict[str, list[Agent]] = {"red": [], "blue": []}
    for color in ("red", "blue"):
        specs = doc[color]
        if not isinstance(specs, list):
            raise SchemaError(f"$.{color}", "expected a list of agents")
        for i, spec in enumerate(specs):
            path = f"$.{color}[{i}]"
            _expect_keys(spec, {"id", "prefs"}, set(), path)
            if not isinstance(spec["id"], str) or not spec["id"]:
                raise SchemaError(f"{path}.id", "agent id must be a non-empty string")
            pref = _pref_from_json(spec["prefs"], s, f"{path}.prefs")
            agents[color].append(Agent(spec["id"], color, pref))
    g = Game.build(s, agents["red"], agents["blue"])
    validate_game(g)
    return g


def game_to_json(g: Game) -> dict:
    def spec(a: Agent) -> dict:
        return {"id": a.id, "prefs": {"type": "ranks", "ranks": list(a.pref.ranks)}}

    return {
        "s": g.s,
        "red": [spec(a) for a in g.red],
        "blue": [spec(a) for a in g.blue],
    }


def outcome_from_json(g: Game, doc) -> Outcome:
    _expect_keys(doc, {"rooms"}, set(), "$")
    rooms = doc["rooms"]
    if not isinstance(rooms, list) or any(not isinstance(r, list) for r in rooms):
        raise SchemaError("$.rooms", "expected a list of agent-id lists")
    for i, room in enumerate(rooms):
        for a in room:
            if not isinstance(a, str):
                raise SchemaError(f"$.rooms[{i}]", "agent ids must be strings")
    o = canonicalize(g, rooms)
    validate_outcome(g, o)
    return o


def outcome_to_json(o: Outcome) -> dict:
    return {"rooms": [list(room) for room in o.rooms]}


def x3c_from_json(doc) -> X3CInstance:
    _expect_keys(doc, {"m", "sets"}, set(), "$")
    m = doc["m"]
    if not isinstance(m, int) or isinstance(m, bool):
        raise SchemaError("$.m", "expected an integer")
    sets = doc["sets"]
    if not isinstance(sets, list):
        raise SchemaError("$.sets", "expected a list of 3-element lists")
    parsed = []
    for i, block in enumerate(sets):
        parsed.append(_int_list(block, f"$.sets[{i}]"))
    return X3CInstance.build(m, parsed)


def x3c_to_json(inst: X3CInstance) -> dict:
    return {"m": inst.m, "sets": [sorted(block) for block in inst.sets]}


def mixed_to_json(p: MixedOutcome) -> dict:
    return {
        "support": [
            {"outcome": outcome_to_json(o), "prob": str(prob)} for o, prob in p.support
        ]
    }


def mixed_from_json(g: Game, doc) -> MixedOutcome:
    _expect_keys(doc, {"support"}, set(), "$")
    if not isinstance(doc["support"], list):
        raise SchemaError("$.support", "expected a list")
    support = []
    for i, entry in enumerate(doc["support"]):
        path = f"$.support[{i}]"
        _expect_keys(entry, {"outcome", "prob"}, set(), path)
        if not isinstance(entry["prob"], str):
            raise SchemaError(f"{path}.prob", "probability must be a rational string")
        try:
            prob = Fraction(entry["prob"])
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"{path}.prob", f"bad rational: {exc}")
        support.append((outcome_from_json(g, entry["outcome"]), prob))
    return MixedOutcome(tuple(support))


def verdict_to_json(v: PopularityVerdict) -> dict:
    return {
        "status": v.status,
        "margin": v.witness_margin,
        "witness": outcome_to_json(v.witness) if v.witness is not None else None,
    }


def bundle_sidecar_to_json(bundle: ReductionBundle) -> dict:
    return {
        "variant": bundle.variant,
        "groups": {name: list(ids) for name, ids in sorted(bundle.groups.items())},
    }


def dumps(doc) -> str:
    """Canonical serialization: sorted keys, no trailing whitespace."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


FILE_SCHEMAS = {
    "game": {
        "s": "int (room size)",
        "red": [{"id": "str", "prefs": "P"}],
        "blue": [{"id": "str", "prefs": "P"}],
        "P": 'one of {"type":"ranks","ranks":[int x (s+1)]}, '
        '{"type":"dichotomous","approve":[int]}, '
        '{"type":"trichotomous","approve":[int],"neutral":[int]} '
        "(fractions encoded by their numerator)",
    },
    "outcome": {"rooms": [["agent-id"]]},
    "x3c": {"m": "int", "sets": [["int", "int", "int"]]},
    "mixed": {"support": [{"outcome": {"rooms": [["agent-id"]]}, "prob": "num/den"}]},
    "verdict": {"status": "str", "margin": "int|null", "witness": "outcome|null"},
    "bundle": {"variant": "str", "groups": {"name": ["agent-id"]}},
}

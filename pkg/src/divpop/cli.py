"""Command-line front end.

Every run prints a JSON report (or a text summary with --human) and exits
0 on success/affirmative results, 2 on well-formed negative results
(not popular, no popular outcome, no cover), and 1 on input or internal
errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import formats
from .errors import DivpopError
from .mixed import solve_mixed, verify_mixed
from .model import DEFAULT_CAP, approval_split, count_outcomes, enumerate_outcomes, validate_game
from .popularity import POPULAR, STRICTLY_POPULAR, find_popular, is_popular, is_strictly_popular
from .reductions import (
    build_reduction,
    counterexample_game,
    monolithic_outcome,
    reduced_outcome,
)
from .roomsize2 import happy_count, matching_weight, solve_s2
from .x3c import x3c_solve

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _load(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _common_flags(sub):
    sub.add_argument("--human", action="store_true", help="pretty text instead of JSON")
    sub.add_argument("--seed", type=int, default=None, help="echoed into the report")
    sub.add_argument("--jobs", type=int, default=1, help="upper bound on worker parallelism")
    sub.add_argument("--cap", type=int, default=DEFAULT_CAP, help="outcome enumeration cap")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divpop",
        description="Popularity toolkit for roommate diversity games",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("check-popular", help="verify popularity of an outcome")
    p.add_argument("--game", required=True)
    p.add_argument("--outcome", required=True)
    p.add_argument("--strategy", choices=["bruteforce", "signature"], default="bruteforce")
    _common_flags(p)

    p = subs.add_parser("check-strict", help="verify strict popularity of an outcome")
    p.add_argument("--game", required=True)
    p.add_argument("--outcome", required=True)
    p.add_argument("--strategy", choices=["bruteforce", "signature"], default="bruteforce")
    _common_flags(p)

    p = subs.add_parser("find-popular", help="search for any popular outcome")
    p.add_argument("--game", required=True)
    p.add_argument("--strategy", choices=["bruteforce", "signature"], default="bruteforce")
    _common_flags(p)

    p = subs.add_parser("solve-s2", help="popular outcome for a room-size-2 game")
    p.add_argument("--game", required=True)
    p.add_argument("--backend", choices=["counts", "blossom"], default="counts")
    _common_flags(p)

    p = subs.add_parser("mixed", help="compute a mixed popular outcome")
    p.add_argument("--game", required=True)
    p.add_argument("--mode", choices=["auto", "labeled", "orbit"], default="auto")
    _common_flags(p)

    p = subs.add_parser("verify-mixed", help="verify a mixed outcome against all pure challengers")
    p.add_argument("--game", required=True)
    p.add_argument("--mixed", required=True)
    _common_flags(p)

    p = subs.add_parser("reduce", help="build a hardness-reduction game from an X3C instance")
    p.add_argument("--variant", choices=["strict", "mixed", "popularity"], required=True)
    p.add_argument("--x3c", required=True)
    p.add_argument("--out", default=None, help="directory for bundle files")
    p.add_argument("--deep", action="store_true", help="also run the signature popularity check")
    p.add_argument("--budget", type=float, default=600.0, help="wall-clock budget for --deep (s)")
    _common_flags(p)

    p = subs.add_parser("x3c-solve", help="solve an X3C instance exactly")
    p.add_argument("--x3c", required=True)
    _common_flags(p)

    p = subs.add_parser("counterexample", help="emit or verify the no-popular-outcome game")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out", default=None, help="directory for the game file")
    _common_flags(p)

    p = subs.add_parser("enumerate", help="enumerate outcomes of a game")
    p.add_argument("--game", required=True)
    p.add_argument("--mode", choices=["labeled", "orbit"], default="labeled")
    p.add_argument("--count-only", action="store_true")
    _common_flags(p)

    p = subs.add_parser("schema", help="print the JSON file schemas")
    _common_flags(p)

    return parser


def _cmd_check_popular(args, inputs):
    g = formats.game_from_json(_load(args.game))
    o = formats.outcome_from_json(g, _load(args.outcome))
    inputs["game"], inputs["outcome"] = _digest(args.game), _digest(args.outcome)
    verdict = is_popular(g, o, args.strategy, args.cap)
    code = EXIT_OK if verdict.status == POPULAR else EXIT_NEGATIVE
    return formats.verdict_to_json(verdict), code


def _cmd_check_strict(args, inputs):
    g = formats.game_from_json(_load(args.game))
    o = formats.outcome_from_json(g, _load(args.outcome))
    inputs["game"], inputs["outcome"] = _digest(args.game), _digest(args.outcome)
    verdict = is_strictly_popular(g, o, args.strategy, args.cap)
    code = EXIT_OK if verdict.status == STRICTLY_POPULAR else EXIT_NEGATIVE
    return formats.verdict_to_json(verdict), code


def _cmd_find_popular(args, inputs):
    g = formats.game_from_json(_load(args.game))
    inputs["game"] = _digest(args.game)
    found = find_popular(g, args.strategy, args.cap)
    if found is None:
        return {"popular": None, "note": "no popular outcome"}, EXIT_NEGATIVE
    return {"popular": formats.outcome_to_json(found)}, EXIT_OK


def _cmd_solve_s2(args, inputs):
    g = formats.game_from_json(_load(args.game))
    inputs["game"] = _digest(args.game)
    o = solve_s2(g, args.backend)
    return {
        "outcome": formats.outcome_to_json(o),
        "weight": matching_weight(g, o),
        "happy": happy_count(g, o),
    }, EXIT_OK


def _cmd_mixed(args, inputs):
    g = formats.game_from_json(_load(args.game))
    inputs["game"] = _digest(args.game)
    p = solve_mixed(g, args.mode, args.cap)
    worst, margin = verify_mixed(g, p, args.cap)
    return {
        "mixed": formats.mixed_to_json(p),
        "worst_challenger": formats.outcome_to_json(worst),
        "worst_margin": str(margin),
    }, EXIT_OK


def _cmd_verify_mixed(args, inputs):
    g = formats.game_from_json(_load(args.game))
    p = formats.mixed_from_json(g, _load(args.mixed))
    inputs["game"], inputs["mixed"] = _digest(args.game), _digest(args.mixed)
    worst, margin = verify_mixed(g, p, args.cap)
    payload = {
        "worst_challenger": formats.outcome_to_json(worst),
        "worst_margin": str(margin),
        "popular": margin >= 0,
    }
    return payload, EXIT_OK if margin >= 0 else EXIT_NEGATIVE


def _cmd_reduce(args, inputs):
    import os

    inst = formats.x3c_from_json(_load(args.x3c))
    inputs["x3c"] = _digest(args.x3c)
    bundle = build_reduction(args.variant, inst)
    g = bundle.game
    mon = monolithic_outcome(bundle)
    solution = x3c_solve(inst)
    payload = {
        "variant": bundle.variant,
        "s": g.s,
        "red": len(g.red),
        "blue": len(g.blue),
        "rooms": g.k,
        "solvable": solution is not None,
        "cover": list(solution) if solution else None,
    }
    files = {
        "game.json": formats.game_to_json(g),
        "bundle.json": formats.bundle_sidecar_to_json(bundle),
        "monolithic.json": formats.outcome_to_json(mon),
    }
    if solution is not None:
        files["reduced.json"] = formats.outcome_to_json(reduced_outcome(bundle, solution))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        written = []
        for name, doc in files.items():
            path = os.path.join(args.out, name)
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(formats.dumps(doc))
            written.append(path)
        payload["files"] = written
    else:
        payload["files"] = files
    if args.deep:
        deadline = time.monotonic() + args.budget
        verdict = is_popular(g, mon, "signature", args.cap, deadline)
        payload["deep_monolithic"] = formats.verdict_to_json(verdict)
    return payload, EXIT_OK


def _cmd_x3c_solve(args, inputs):
    inst = formats.x3c_from_json(_load(args.x3c))
    inputs["x3c"] = _digest(args.x3c)
    solution = x3c_solve(inst)
    if solution is None:
        return {"cover": None, "note": "no exact cover"}, EXIT_NEGATIVE
    return {"cover": list(solution)}, EXIT_OK


def _cmd_counterexample(args, inputs):
    import os

    g = counterexample_game()
    payload = {"game": formats.game_to_json(g)}
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, "counterexample.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(formats.dumps(payload["game"]))
        payload["files"] = [path]
    if not args.verify:
        return payload, EXIT_OK
    checked = beaten = 0
    min_unhappy = min_disapprove = None
    for o in enumerate_outcomes(g, "labeled", args.cap):
        checked += 1
        verdict = is_popular(g, o, "bruteforce", args.cap)
        if verdict.status != POPULAR:
            beaten += 1
        _, neutral, disapprove = approval_split(g, o)
        unhappy = len(neutral | disapprove)
        min_unhappy = unhappy if min_unhappy is None else min(min_unhappy, unhappy)
        nd = len(disapprove)
        min_disapprove = nd if min_disapprove is None else min(min_disapprove, nd)
    payload.update(
        {
            "outcomes": checked,
            "not_popular": beaten,
            "min_agents_outside_approved_room": min_unhappy,
            "min_disapproving_agents": min_disapprove,
            "popular_exists": beaten != checked,
        }
    )
    if beaten == checked and min_unhappy >= 2 and min_disapprove >= 1:
        payload["note"] = "no popular outcome"
        return payload, EXIT_NEGATIVE
    return payload, EXIT_ERROR


def _cmd_enumerate(args, inputs):
    g = formats.game_from_json(_load(args.game))
    inputs["game"] = _digest(args.game)
    if args.count_only and args.mode == "labeled":
        validate_game(g)
        return {"count": count_outcomes(g.n, g.s)}, EXIT_OK
    outcomes = list(enumerate_outcomes(g, args.mode, args.cap))
    payload = {"count": len(outcomes)}
    if not args.count_only:
        payload["outcomes"] = [formats.outcome_to_json(o) for o in outcomes]
    return payload, EXIT_OK


def _cmd_schema(args, inputs):
    return {"schemas": formats.FILE_SCHEMAS}, EXIT_OK


_HANDLERS = {
    "check-popular": _cmd_check_popular,
    "check-strict": _cmd_check_strict,
    "find-popular": _cmd_find_popular,
    "solve-s2": _cmd_solve_s2,
    "mixed": _cmd_mixed,
    "verify-mixed": _cmd_verify_mixed,
    "reduce": _cmd_reduce,
    "x3c-solve": _cmd_x3c_solve,
    "counterexample": _cmd_counterexample,
    "enumerate": _cmd_enumerate,
    "schema": _cmd_schema,
}


def _human_lines(doc, indent=0):
    pad = "  " * indent
    if isinstance(doc, dict):
        for key, val in doc.items():
            if isinstance(val, (dict, list)):
                yield f"{pad}{key}:"
                yield from _human_lines(val, indent + 1)
            else:
                yield f"{pad}{key}: {val}"
    elif isinstance(doc, list):
        for val in doc:
            if isinstance(val, (dict, list)):
                yield from _human_lines(val, indent + 1)
            else:
                yield f"{pad}- {val}"
    else:
        yield f"{pad}{doc}"


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 is reserved for negative results
        return 0 if exc.code == 0 else EXIT_ERROR
    if getattr(args, "jobs", 1) < 1:
        print(json.dumps({"error": "--jobs must be >= 1", "status": "error"}))
        return EXIT_ERROR
    started = time.monotonic()
    inputs: dict[str, str] = {}
    report = {
        "command": args.command,
        "args": {
            k: v for k, v in sorted(vars(args).items()) if k not in ("command",)
        },
        "inputs": inputs,
    }
    try:
        payload, code = _HANDLERS[args.command](args, inputs)
        status = {EXIT_OK: "ok", EXIT_NEGATIVE: "negative"}[code]
    except DivpopError as exc:
        payload = {"error": str(exc), "kind": type(exc).__name__}
        code, status = EXIT_ERROR, "error"
    except (OSError, json.JSONDecodeError) as exc:
        payload = {"error": str(exc), "kind": type(exc).__name__}
        code, status = EXIT_ERROR, "error"
    report["result"] = payload
    report["status"] = status
    report["exit_code"] = code
    report["duration_s"] = round(time.monotonic() - started, 6)
    if getattr(args, "human", False):
        print("\n".join(_human_lines(report)))
    else:
        print(json.dumps(report, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())

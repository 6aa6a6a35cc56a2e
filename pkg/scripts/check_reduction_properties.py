#!/usr/bin/env python3
"""Desk-scale checks of the three hardness reductions' defining properties.

Builds the smallest solvable and unsolvable instances, then verifies:
  * strict variant: the all-approve outcomes are exactly the agent stack
    plus one cover outcome per exact cover, and the stack is strictly
    popular iff the instance is unsolvable;
  * mixed variant: the cover outcome beats the stack by exactly one vote
    (the sixth auxiliary red agent);
  * popularity variant: every reduced-type outcome loses to its ring
    rotation by exactly one vote.

Pass --deep to also run the full signature-strategy popularity check of
the monolithic outcome on the mixed fixture (seconds), and --deep-budget
to bound it.
"""

import argparse
import time

from divpop import (
    X3CInstance,
    all_approve_outcomes,
    build_mixed_reduction,
    build_popularity_reduction,
    build_strict_reduction,
    is_popular,
    is_strictly_popular,
    monolithic_outcome,
    orbit_key,
    popularity_margin,
    reduced_outcome,
    reduced_rotation_challenger,
    x3c_solve,
)
from divpop.model import approval_split


def banner(title):
    print()
    print(title)
    print("-" * len(title))


def describe(bundle):
    g = bundle.game
    print(f"  s={g.s}, |R|={len(g.red)}, |B|={len(g.blue)}, rooms={g.k}")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--deep", action="store_true")
    parser.add_argument("--deep-budget", type=float, default=600.0)
    args = parser.parse_args()

    solvable = X3CInstance.build(3, [{1, 2, 3}])
    unsolvable = X3CInstance.build(6, [{1, 2, 3}, {1, 4, 5}])

    banner("strict variant, solvable instance (q=1, m=3)")
    bundle = build_strict_reduction(solvable)
    describe(bundle)
    cover = x3c_solve(solvable)
    mon, red = monolithic_outcome(bundle), reduced_outcome(bundle, cover)
    found = all_approve_outcomes(bundle)
    keys = {orbit_key(bundle.game, o) for o in found}
    expected = {orbit_key(bundle.game, mon), orbit_key(bundle.game, red)}
    print(f"  all-approve outcomes: {len(found)} (stack + cover): "
          f"{'OK' if keys == expected else 'MISMATCH'}")
    verdict = is_strictly_popular(bundle.game, mon, "signature")
    print(f"  stack outcome: {verdict.status} (tie margin {verdict.witness_margin})")

    banner("strict variant, unsolvable instance (q=2, m=6)")
    bundle = build_strict_reduction(unsolvable)
    describe(bundle)
    found = all_approve_outcomes(bundle)
    mon = monolithic_outcome(bundle)
    only_stack = {orbit_key(bundle.game, o) for o in found} == {
        orbit_key(bundle.game, mon)
    }
    print(f"  all-approve outcomes: {len(found)} (stack only): "
          f"{'OK' if only_stack else 'MISMATCH'}")
    verdict = is_strictly_popular(bundle.game, mon, "signature")
    print(f"  stack outcome: {verdict.status}")

    banner("mixed variant, solvable instance (q=1, m=3)")
    bundle = build_mixed_reduction(solvable)
    describe(bundle)
    mon = monolithic_outcome(bundle)
    red = reduced_outcome(bundle, cover)
    _, _, disapprove = approval_split(bundle.game, mon)
    rep = popularity_margin(bundle.game, red, mon)
    print(f"  stack disapprovers: {sorted(disapprove)}")
    print(f"  cover vs stack margin: +{rep.margin} "
          f"(improved {sorted(rep.improved)}, worsened {sorted(rep.worsened)})")
    if args.deep:
        start = time.monotonic()
        verdict = is_popular(
            bundle.game, mon, "signature",
            deadline=time.monotonic() + args.deep_budget,
        )
        print(f"  deep popularity check of the stack: {verdict.status} "
              f"(margin {verdict.witness_margin}, {time.monotonic() - start:.1f}s)")

    banner("popularity variant, solvable instance (q=1, m=3)")
    bundle = build_popularity_reduction(solvable)
    describe(bundle)
    red = reduced_outcome(bundle, cover)
    challenger = reduced_rotation_challenger(bundle, cover)
    rep = popularity_margin(bundle.game, challenger, red)
    _, neutral, disapprove = approval_split(bundle.game, red)
    print(f"  reduced-type outcome: neutral {sorted(neutral)}, "
          f"disapproving {sorted(disapprove)}")
    print(f"  ring rotation margin: +{rep.margin} "
          f"(improved {sorted(rep.improved)}, worsened {sorted(rep.worsened)})")


if __name__ == "__main__":
    main()

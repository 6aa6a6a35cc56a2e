#!/usr/bin/env python3
"""Full sweep of the 9-agent game with no popular outcome.

Enumerates all 280 partitions, reports the challenger margins, the
room-approval shortfalls behind the impossibility argument, and a mixed
popular outcome with its exact certificate.
"""

import time
from collections import Counter

from divpop import (
    counterexample_game,
    enumerate_outcomes,
    is_popular,
    popularity_margin,
    rotation_challenger,
    solve_mixed,
    top_type_outcomes,
    verify_mixed,
)
from divpop.model import approval_split, signature


def main():
    start = time.monotonic()
    g = counterexample_game()
    outcomes = list(enumerate_outcomes(g))
    print(f"agents: {g.n} ({len(g.red)} red, {len(g.blue)} blue), rooms of {g.s}")
    print(f"labeled outcomes: {len(outcomes)}")

    margins = Counter()
    unhappy = Counter()
    for o in outcomes:
        verdict = is_popular(g, o)
        assert verdict.status == "NotPopular"
        margins[verdict.witness_margin] += 1
        _, neutral, disapprove = approval_split(g, o)
        unhappy[(len(neutral | disapprove), len(disapprove))] += 1
    print("every outcome is beaten; best-challenger margins:")
    for m, count in sorted(margins.items()):
        print(f"  margin +{m}: {count} outcomes")
    print("(|outside approved room|, |disapproving|) distribution:")
    for key, count in sorted(unhappy.items()):
        print(f"  {key}: {count} outcomes")

    tops = top_type_outcomes(g)
    print(f"top-type outcomes: {len(tops)}; each loses to its blue 3-rotation:")
    sample = tops[0]
    rep = popularity_margin(g, rotation_challenger(sample, g), sample)
    print(f"  example margin +{rep.margin}: improved {sorted(rep.improved)}, "
          f"worsened {sorted(rep.worsened)}")

    per_sig = Counter(signature(g, o) for o in outcomes)
    print("outcomes per red-count signature:", dict(per_sig))

    p = solve_mixed(g)
    worst, margin = verify_mixed(g, p)
    print(f"mixed popular outcome: {len(p.support)} outcomes in support, "
          f"probabilities {sorted({str(pr) for _, pr in p.support})}")
    print(f"worst pure challenger margin: {margin} (exact)")
    print(f"done in {time.monotonic() - start:.2f}s")


if __name__ == "__main__":
    main()

"""The improper folding with crossing flaps B and C, and its knot-free loops.

Prints the properness verdicts of the fixture and its two restrictions, then
folds random loops and hand-routed loops through both flaps and reports how
many images self-intersect and how many are knotted.
"""

import argparse
from collections import Counter

import numpy as np

from orikami.analysis import properness_verdict
from orikami.folding import fold_loop
from orikami.generators import hand_routed_loops, improper_fixture, improper_restriction, random_loop
from orikami.knotid import certify


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--loops", type=int, default=500)
    ap.add_argument("--seed", type=int, default=8)
    args = ap.parse_args()
    f = improper_fixture()
    v = properness_verdict(f)
    print("fixture:", v.verdict.value, dict(Counter(x.kind.value for x in v.findings)))
    for avoid in ("B", "C"):
        r = properness_verdict(improper_restriction(avoid))
        print(f"without {avoid}:", r.verdict.value, dict(Counter(x.kind.value for x in r.findings)))
    rng = np.random.default_rng(args.seed)
    for label, loops in (("random", [random_loop(rng) for _ in range(args.loops)]), ("hand-routed", hand_routed_loops())):
        counts = Counter()
        for loop in loops:
            pl = fold_loop(f, loop)
            if not pl.injective:
                counts["non-injective"] += 1
            else:
                counts["trivial" if certify(pl).invariants_trivial else "knotted"] += 1
        print(f"{label} loops:", dict(counts))


if __name__ == "__main__":
    main()

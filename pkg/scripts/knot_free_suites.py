"""Randomised checks that injective and single-crease foldings carry no knots.

Draws fold sequences and single-crease folds, maps random paper loops through
them, and counts trivial certifications, non-injective images and (never
expected) nontrivial knots.
"""

import argparse
import math
import time

import numpy as np

from orikami.folding import fold_loop
from orikami.generators import clip_line, random_loop, simple_fold_sequence, single_crease
from orikami.knotid import certify


def tally(foldings, loops_per, rng):
    counts = {"trivial": 0, "non-injective": 0, "knotted": 0}
    for f in foldings:
        for _ in range(loops_per):
            pl = fold_loop(f, random_loop(rng))
            if not pl.injective:
                counts["non-injective"] += 1
            elif certify(pl).invariants_trivial:
                counts["trivial"] += 1
            else:
                counts["knotted"] += 1
    return counts


def single_creases(count, rng, flat_every):
    for k in range(count):
        theta = math.pi if flat_every and k % flat_every == 0 else float(rng.uniform(0.05, math.pi))
        phi = rng.uniform(0, math.pi)
        yield single_crease(theta, axis=clip_line(rng.uniform(0.2, 0.8, size=2), (math.cos(phi), math.sin(phi))))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sequences", type=int, default=200)
    ap.add_argument("--max-k", type=int, default=6)
    ap.add_argument("--creases", type=int, default=100)
    ap.add_argument("--loops", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    start = time.perf_counter()
    seqs = (simple_fold_sequence(seed=args.seed * 100_003 + s, k=1 + s % args.max_k) for s in range(args.sequences))
    print("fold sequences:", tally(seqs, args.loops, rng), f"{time.perf_counter() - start:.1f} s")

    start = time.perf_counter()
    print("single creases:", tally(single_creases(args.creases, rng, 5), args.loops, rng), f"{time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()

"""Tabulate the two-crease torus foldings: crease count, knot invariants and timing."""

import argparse
import time

from orikami.folding import crease_edge_count, fold_loop
from orikami.generators import TorusParams, torus_folding
from orikami.knotid import KnotDiagram, certify, goeritz_determinant


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(f"{'n':>2} {'creases':>7} {'det':>4} {'goeritz':>7} {'crossings':>9} {'time':>6}  alexander")
    for n in range(args.max_n + 1):
        start = time.perf_counter()
        f, loop = torus_folding(TorusParams(n=n))
        rep = certify(fold_loop(f, loop), seed=args.seed)
        elapsed = time.perf_counter() - start
        g = goeritz_determinant(KnotDiagram.from_pd(rep.pd_code))
        print(f"{n:>2} {crease_edge_count(f):>7} {rep.determinant:>4} {g:>7} {rep.crossing_count:>9} {elapsed:>5.2f}s  {rep.alexander}")


if __name__ == "__main__":
    main()

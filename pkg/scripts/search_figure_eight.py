"""Search integer 8-gons for a stick diagram of the figure-eight knot.

Prints the first diagram (with over/under data) whose invariants match the
figure-eight and whose cone construction succeeds.
"""

import argparse
import itertools
import json

import numpy as np

from orikami.construct import StickDiagram, StickDiagramError, cone_pipeline, double_points
from orikami.folding import fold_loop
from orikami.knotid import LaurentPolynomial, certify, certify_diagram

FIGURE_EIGHT = LaurentPolynomial.from_coeffs([1, -3, 1])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--grid", type=int, default=6)
    ap.add_argument("--tries", type=int, default=200000)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    for _ in range(args.tries):
        V = rng.integers(0, args.grid + 1, size=(8, 2)).astype(float)
        try:
            keys = list(double_points(V))
        except StickDiagramError:
            continue
        if len(keys) != 4:
            continue
        for bits in itertools.product((0, 1), repeat=len(keys)):
            cr = {k: sorted(k)[b] for k, b in zip(keys, bits)}
            try:
                s = StickDiagram(V, cr)
            except StickDiagramError:
                break
            rep = certify_diagram(s.reference_diagram())
            if rep.determinant != 5 or not rep.alexander.equal_up_to_units(FIGURE_EIGHT):
                continue
            try:
                r = cone_pipeline(s)
            except Exception:
                continue
            if certify(fold_loop(r.folding, r.loop)).determinant == 5:
                print(json.dumps(s.to_dict()))
                return


if __name__ == "__main__":
    main()

"""Polynomial invariants computed from PD codes.

The Kauffman bracket is evaluated by contracting crossings one at a time and
keeping, for each partial state, how the open edge ends are paired up. This
is exponential in the width of the frontier instead of the crossing count.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .diagram import DiagramError, KnotDiagram
from .polynomial import ONE, LaurentPolynomial

MAX_BRACKET_CROSSINGS = 24

DELTA = LaurentPolynomial.from_dict({2: -1, -2: -1})  # -A^2 - A^-2


class DiagramSizeError(DiagramError):
    pass


def _add_into(dst: dict, key, poly: dict[int, int], shift: int, loops: int):
    # multiply by A^shift * delta^loops and accumulate
    if loops:
        p = LaurentPolynomial.from_dict(poly) * DELTA**loops
        poly = p.as_dict()
    acc = dst.setdefault(key, {})
    for e, c in poly.items():
        e2 = e + shift
        v = acc.get(e2, 0) + c
        if v:
            acc[e2] = v
        else:
            acc.pop(e2, None)


def _join(partner: dict[int, int], p: int, q: int) -> tuple[dict[int, int], int]:
    """Add an arc joining edge ends ``p`` and ``q``; return new pairing and closed-loop count."""
    if p == q:
        return partner, 1
    partner = dict(partner)
    ends = []
    for x in (p, q):
        if x in partner:
            ends.append(partner.pop(x))
        else:
            ends.append(x)
    e1, e2 = ends
    if e1 == q and e2 == p:
        return partner, 1
    partner.pop(e1, None)
    partner.pop(e2, None)
    partner[e1] = e2
    partner[e2] = e1
    return partner, 0


def _contraction_order(pd: Sequence[Sequence[int]]) -> list[int]:
    remaining = set(range(len(pd)))
    order = []
    open_labels: set[int] = set()
    while remaining:
        best = max(remaining, key=lambda c: (len(open_labels & set(pd[c])), -c))
        remaining.remove(best)
        order.append(best)
        for x in set(pd[best]):
            # a label used twice at one crossing closes immediately
            if list(pd[best]).count(x) == 1:
                open_labels ^= {x}
    return order


def kauffman_bracket(d: KnotDiagram | Sequence[Sequence[int]], max_crossings: int = MAX_BRACKET_CROSSINGS) -> LaurentPolynomial:
    """Unnormalised bracket in ``A`` with the empty diagram normalised to 1."""
    pd = d.pd_code() if isinstance(d, KnotDiagram) else [tuple(x) for x in d]
    if len(pd) > max_crossings:
        raise DiagramSizeError(
            f"{len(pd)} crossings exceeds the bracket budget of {max_crossings}; simplify the diagram first"
        )
    if not pd:
        return ONE
    # state key: (frozenset of pairings, whether a loop has already closed)
    states: dict = {(frozenset(), False): {0: 1}}
    for c in _contraction_order(pd):
        a, b, cc, dd = pd[c]
        new: dict = {}
        for (pairs, closed_any), poly in states.items():
            partner = {}
            for x, y in pairs:
                partner[x] = y
                partner[y] = x
            for weight, (p1, p2) in ((1, ((a, b), (cc, dd))), (-1, ((a, dd), (b, cc)))):
                cur, loops = partner, 0
                for u, v in (p1, p2):
                    cur, k = _join(cur, u, v)
                    loops += k
                extra = loops
                first = closed_any
                if loops and not closed_any:
                    extra -= 1
                    first = True
                key = (frozenset((x, y) for x, y in cur.items() if x < y), first)
                _add_into(new, key, poly, weight, extra)
        states = {k: v for k, v in new.items() if v}
    total = LaurentPolynomial()
    for (pairs, _), poly in states.items():
        if pairs:
            raise DiagramError("PD code did not close up")
        total = total + LaurentPolynomial.from_dict(poly)
    return total


def bracket_state_sum(pd: Sequence[Sequence[int]]) -> LaurentPolynomial:
    """Reference bracket: explicit sum over all 2^n smoothings with union-find loop counting."""
    pd = [tuple(x) for x in pd]
    if not pd:
        return ONE
    labels = sorted({x for t in pd for x in t})
    total: dict[int, int] = {}
    for choice in itertools.product((0, 1), repeat=len(pd)):
        parent = {x: x for x in labels}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (a, b, c, d), s in zip(pd, choice):
            for u, v in (((a, b), (c, d)) if s == 0 else ((a, d), (b, c))):
                parent[find(u)] = find(v)
        loops = len({find(x) for x in labels})
        a_count = choice.count(0)
        poly = LaurentPolynomial.monomial(a_count - (len(pd) - a_count)) * DELTA ** (loops - 1)
        for e, c in poly.terms:
            total[e] = total.get(e, 0) + c
    return LaurentPolynomial.from_dict(total)


def jones_from_bracket(bracket: LaurentPolynomial, writhe: int) -> LaurentPolynomial:
    """``V(t) = (-A^3)^(-w) <D>`` evaluated at ``A = t^(-1/4)``."""
    f = bracket * LaurentPolynomial.monomial(-3 * writhe, (-1) ** (writhe % 2))
    return f.substitute_power(-1).divide_exponents(4)


def jones(d: KnotDiagram, max_crossings: int = MAX_BRACKET_CROSSINGS) -> LaurentPolynomial:
    return jones_from_bracket(kauffman_bracket(d, max_crossings), d.writhe)


# --------------------------------------------------------------------------
# Alexander polynomial from the Fox-calculus matrix of the Wirtinger presentation


def _bareiss_det(mat: list[list[int]]) -> int:
    n = len(mat)
    if n == 0:
        return 1
    m = [row[:] for row in mat]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def integer_determinant(mat: Sequence[Sequence[int]]) -> int:
    return _bareiss_det([list(map(int, r)) for r in mat])


def _interpolate(xs: list[int], ys: list[int]) -> list[int]:
    """Coefficients (low to high) of the integer polynomial through the points."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError("non-integral interpolation")
    return [int(c) for c in coeffs]


def alexander_rows(d: KnotDiagram) -> list[dict[int, tuple[int, int]]]:
    """Fox-matrix rows: for each crossing, ``arc -> (constant, t-coefficient)``."""
    g = d.gauss
    m = len(g)
    # a Wirtinger arc starts after each under passage
    unders = [p for p, (_, o) in enumerate(g) if not o]
    arc_of_edge = [0] * m  # arc of the edge entering passage p
    arc = 0
    for k in range(1, m + 1):
        p = (unders[0] + k) % m
        arc_of_edge[p] = arc % len(unders)
        if not g[p][1]:
            arc += 1
    rows = []
    info: dict[int, dict[str, int]] = {}
    for p, (c, o) in enumerate(g):
        rec = info.setdefault(c, {})
        if o:
            rec["over"] = arc_of_edge[p]
        else:
            rec["in"] = arc_of_edge[p]
            rec["out"] = arc_of_edge[(p + 1) % m]
    for c in range(d.crossing_count):
        rec = info[c]
        row: dict[int, tuple[int, int]] = {}

        def put(a, const, tco):
            c0, t0 = row.get(a, (0, 0))
            row[a] = (c0 + const, t0 + tco)

        put(rec["over"], 1, -1)
        if d.signs[c] > 0:
            put(rec["in"], 0, 1)
            put(rec["out"], -1, 0)
        else:
            put(rec["in"], -1, 0)
            put(rec["out"], 0, 1)
        rows.append(row)
    return rows


def alexander(d: KnotDiagram) -> LaurentPolynomial:
    """Normalised Alexander polynomial: lowest exponent 0, positive leading coefficient."""
    n = d.crossing_count
    if n == 0:
        return ONE
    rows = alexander_rows(d)
    size = n - 1
    xs = list(range(size + 1))
    ys = []
    for x in xs:
        mat = [[0] * size for _ in range(size)]
        for r in range(size):
            for a, (c0, t1) in rows[r].items():
                if a < size:
                    mat[r][a] += c0 + t1 * x
        ys.append(_bareiss_det(mat))
    poly = LaurentPolynomial.from_coeffs(_interpolate(xs, ys))
    if poly.is_zero:
        raise DiagramError("vanishing Alexander polynomial (split or invalid diagram)")
    return poly.normalized()


def determinant(d: KnotDiagram) -> int:
    return abs(int(alexander(d)(-1)))


# --------------------------------------------------------------------------
# Goeritz matrix from a checkerboard colouring (independent route to the determinant)


def diagram_faces(pd: Sequence[Sequence[int]]) -> list[list[tuple[int, int]]]:
    """Faces of the diagram as lists of corners ``(crossing, k)``.

    Corner ``(x, k)`` is the sector between slots ``k`` and ``k+1`` of crossing ``x``.
    """
    ends: dict[int, list[tuple[int, int]]] = {}
    for x, t in enumerate(pd):
        for k, lab in enumerate(t):
            ends.setdefault(lab, []).append((x, k))
    for lab, e in ends.items():
        if len(e) != 2:
            raise DiagramError(f"edge {lab} does not have two ends")

    def other(x, k):
        e = ends[pd[x][k]]
        return e[1] if e[0] == (x, k) else e[0]

    seen: set[tuple[int, int]] = set()
    faces = []
    for x in range(len(pd)):
        for k in range(4):
            if (x, k) in seen:
                continue
            face = []
            cur = (x, k)
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                # leave along slot k+1, arrive at the far end, continue in the next sector there
                y, j = other(cur[0], (cur[1] + 1) % 4)
                cur = (y, j)
            faces.append(face)
    return faces


def goeritz_matrix(pd: Sequence[Sequence[int]]) -> list[list[int]]:
    pd = [tuple(t) for t in pd]
    if not pd:
        return []
    faces = diagram_faces(pd)
    face_of = {corner: f for f, face in enumerate(faces) for corner in face}
    # faces across slot k at crossing x: sectors (x, k-1) and (x, k) are on opposite sides
    nf = len(faces)
    adj: dict[int, set[int]] = {f: set() for f in range(nf)}
    for x in range(len(pd)):
        for k in range(4):
            f1, f2 = face_of[(x, (k - 1) % 4)], face_of[(x, k)]
            adj[f1].add(f2)
            adj[f2].add(f1)
    colour = {0: 0}
    stack = [0]
    while stack:
        f = stack.pop()
        for g in adj[f]:
            if g not in colour:
                colour[g] = 1 - colour[f]
                stack.append(g)
            elif colour[g] == colour[f]:
                raise DiagramError("diagram is not checkerboard colourable")
    shaded = sorted(f for f in range(nf) if colour[f] == 0)
    index = {f: i for i, f in enumerate(shaded)}
    G = [[0] * len(shaded) for _ in shaded]
    for x in range(len(pd)):
        f0, f1 = face_of[(x, 0)], face_of[(x, 1)]
        if colour[f0] == 0:
            # sectors ab and cd are shaded
            eta, fa, fb = 1, f0, face_of[(x, 2)]
        else:
            eta, fa, fb = -1, f1, face_of[(x, 3)]
        if fa == fb:
            continue
        i, j = index[fa], index[fb]
        G[i][j] -= eta
        G[j][i] -= eta
    for i in range(len(shaded)):
        G[i][i] = -sum(G[i][j] for j in range(len(shaded)) if j != i)
    return G


def goeritz_determinant(d: KnotDiagram | Sequence[Sequence[int]]) -> int:
    pd = d.pd_code() if isinstance(d, KnotDiagram) else d
    G = goeritz_matrix(pd)
    if len(G) <= 1:
        return 1
    return abs(integer_determinant([row[1:] for row in G[1:]]))

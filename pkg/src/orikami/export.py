"""Drawings of crease patterns (SVG) and folded states (Wavefront OBJ)."""

from __future__ import annotations

from .folding import Folding, PaperLoop, fold_loop

VIEW = 1000


def _xy(p) -> str:
    # paper y grows upward, screen y downward
    return f"{p[0] * VIEW:.3f},{(1 - p[1]) * VIEW:.3f}"


def crease_pattern_svg(f: Folding, loop: PaperLoop | None = None) -> str:
    pat = f.pattern
    V = pat.vertices
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {VIEW} {VIEW}" width="{VIEW}" height="{VIEW}">',
        f'  <rect x="0" y="0" width="{VIEW}" height="{VIEW}" fill="white" stroke="black" stroke-width="2"/>',
    ]
    for i, j in pat.creases:
        a, b = _xy(V[i]).split(","), _xy(V[j]).split(",")
        lines.append(
            f'  <line class="crease" x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" stroke="black" stroke-width="2"/>'
        )
    if loop is not None:
        pts = " ".join(_xy(p) for p in loop.waypoints)
        lines.append(
            f'  <polygon class="loop" points="{pts}" fill="none" stroke="crimson" stroke-width="2" stroke-dasharray="8 6"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def folded_obj(f: Folding, loop: PaperLoop | None = None) -> str:
    """Folded faces as one mesh object and the folded loop as a closed polyline object."""
    out = ["# folded paper", "o paper"]
    count = 0
    faces = []
    for k in range(len(f.pattern.faces)):
        img = f.face_image(k)
        out += [f"v {x:.12g} {y:.12g} {z:.12g}" for x, y, z in img]
        faces.append(" ".join(str(count + i + 1) for i in range(len(img))))
        count += len(img)
    out += [f"f {face}" for face in faces]
    if loop is not None:
        pl = fold_loop(f, loop)
        out.append("o loop")
        out += [f"v {x:.12g} {y:.12g} {z:.12g}" for x, y, z in pl.waypoints]
        idx = [str(count + i + 1) for i in range(len(pl.waypoints))]
        out.append("l " + " ".join(idx + idx[:1]))
    return "\n".join(out) + "\n"

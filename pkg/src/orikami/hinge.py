"""Foldings whose faces hang off each other along creases like hinges.

When the face adjacency graph of a crease pattern is a tree, a folding is
determined by one signed dihedral angle per crease. Angle 0 leaves the crease
unfolded, positive angles lift the child face toward the parent's normal, and
``±pi`` folds it flat.
"""

from __future__ import annotations

import math
from collections import deque

import numpy as np

from .folding import CreasePattern, Folding, FoldingError
from .geometry import RigidEmbedding, cross2, rotation_about_axis


def face_tree(pattern: CreasePattern, root: int = 0) -> list[tuple[int, int, int]] | None:
    """BFS order of ``(parent, child, crease)`` triples, or None when the adjacency graph has a cycle."""
    nbrs: dict[int, list[tuple[int, int]]] = {k: [] for k in range(len(pattern.faces))}
    for c, (a, b) in enumerate(pattern.crease_faces):
        nbrs[a].append((b, c))
        nbrs[b].append((a, c))
    if len(pattern.creases) != len(pattern.faces) - 1:
        return None
    seen = {root}
    order = []
    queue = deque([root])
    while queue:
        f = queue.popleft()
        for g, c in nbrs[f]:
            if g not in seen:
                seen.add(g)
                order.append((f, g, c))
                queue.append(g)
    if len(seen) != len(pattern.faces):
        return None
    return order


def _hinge_axis(pattern: CreasePattern, child: int, crease: int) -> tuple[np.ndarray, np.ndarray]:
    """Crease point and direction oriented so that positive rotation lifts the child side."""
    i, j = pattern.creases[crease]
    a, b = pattern.vertices[i], pattern.vertices[j]
    u = b - a
    centre = pattern.face_polygon(child).mean(axis=0)
    if cross2(u, centre - a) < 0:
        u = -u
    return np.append(a, 0.0), np.append(u, 0.0)


def fold_tree(pattern: CreasePattern, angles, root: int = 0, root_map: RigidEmbedding | None = None) -> Folding:
    """Fold a tree-shaped pattern by one dihedral angle per crease (indexed like ``pattern.creases``)."""
    order = face_tree(pattern, root)
    if order is None:
        raise FoldingError("face adjacency graph is not a tree")
    angles = [float(t) for t in angles]
    if len(angles) != pattern.n_creases:
        raise FoldingError(f"{len(angles)} angles for {pattern.n_creases} creases")
    maps: list[RigidEmbedding | None] = [None] * len(pattern.faces)
    maps[root] = root_map or RigidEmbedding.identity()
    for parent, child, c in order:
        point, direction = _hinge_axis(pattern, child, c)
        motion = maps[parent].to_affine() @ rotation_about_axis(point, direction, angles[c])
        maps[child] = RigidEmbedding(motion[:3, :2], motion[:3, 3])
    return Folding(pattern, tuple(maps))


def dihedral_angles(f: Folding, root: int = 0) -> list[float] | None:
    """Signed dihedral angles that rebuild ``f`` with :func:`fold_tree`, or None for non-tree patterns."""
    order = face_tree(f.pattern, root)
    if order is None:
        return None
    angles = [0.0] * f.pattern.n_creases
    for parent, child, c in order:
        point, direction = _hinge_axis(f.pattern, child, c)
        rel = np.linalg.inv(f.face_maps[parent].to_affine()) @ f.face_maps[child].to_affine()
        w = np.cross([0.0, 0.0, 1.0], direction)
        w /= np.linalg.norm(w)
        v = rel[:3, :3] @ w
        angles[c] = math.atan2(float(v[2]), float(v @ w))
    return angles

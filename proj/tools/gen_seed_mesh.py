#!/usr/bin/env python3
"""Coarse Delaunay triangulation of the unit square with 123 triangles.

25 boundary points and 50 interior points give 2*50 + 25 - 2 = 123 triangles.
Interior points are Lloyd-relaxed from a seeded random draw.
Writes the native mesh format with box side tags 1..4 (x=0, x=1, y=0, y=1).
"""
import sys

import numpy as np
from scipy.spatial import Delaunay


def boundary_points():
    pts = []
    counts = [6, 6, 6, 7]  # segments per side, counter-clockwise from (0,0)
    corners = [(0, 0), (1, 0), (1, 1), (0, 1)]
    for side, n in enumerate(counts):
        a = np.array(corners[side], float)
        b = np.array(corners[(side + 1) % 4], float)
        for k in range(n):
            pts.append(a + (b - a) * k / n)
    return np.array(pts)


def relax(interior, boundary, rng, iters=60):
    for _ in range(iters):
        samples = rng.random((20000, 2))
        allpts = np.vstack([boundary, interior])
        d = ((samples[:, None, :] - allpts[None, :, :]) ** 2).sum(-1)
        owner = d.argmin(1) - len(boundary)
        for i in range(len(interior)):
            mine = samples[owner == i]
            if len(mine):
                interior[i] = mine.mean(0)
    return interior


def main(out):
    rng = np.random.default_rng(2024)
    bnd = boundary_points()
    interior = relax(0.1 + 0.8 * rng.random((50, 2)), bnd, rng)
    pts = np.vstack([bnd, interior])
    tri = Delaunay(pts)
    simplices = []
    for s in tri.simplices:
        a, b, c = pts[s]
        area = 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
        if area < 0:
            s = [s[0], s[2], s[1]]
            area = -area
        assert area > 1e-3, area
        simplices.append(s)
    assert len(simplices) == 123, len(simplices)

    def tag(p, q):
        for axis in range(2):
            for side, v in ((0, 0.0), (1, 1.0)):
                if abs(p[axis] - v) < 1e-12 and abs(q[axis] - v) < 1e-12:
                    return 2 * axis + 1 + side
        return 0

    edges = {}
    for s in simplices:
        for i in range(3):
            e = tuple(sorted((s[i], s[(i + 1) % 3])))
            edges[e] = edges.get(e, 0) + 1
    boundary = [(tag(pts[a], pts[b]), a, b) for (a, b), n in edges.items() if n == 1]
    assert all(t > 0 for t, _, _ in boundary)

    with open(out, "w") as f:
        f.write("# unit square, 123-triangle Delaunay seed mesh\n")
        f.write("dim 2\n")
        f.write(f"vertices {len(pts)}\n")
        for p in pts:
            f.write(f"{p[0]:.17g} {p[1]:.17g}\n")
        f.write(f"elements {len(simplices)}\n")
        for s in simplices:
            f.write(f"triangle 3 {s[0]} {s[1]} {s[2]}\n")
        f.write(f"boundary {len(boundary)}\n")
        for t, a, b in sorted(boundary):
            f.write(f"{t} 2 {a} {b}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/meshes/square_123.mesh")

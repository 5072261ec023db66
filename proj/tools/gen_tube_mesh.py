#!/usr/bin/env python3
"""Tetrahedral mesh of the shock-tube cylinder -1 < x < 1, y^2 + z^2 < 0.2^2.

A ring triangulation of the disk is extruded along x (a layer boundary sits at
x = 0, so the initial jump is resolved) and every prism is split into three
tetrahedra by global vertex order, which keeps the quad-face diagonals
conforming. Written as Gmsh MSH 2.2 ASCII with physical groups
1 (x = -1), 2 (x = 1) and 3 (lateral wall).
"""
import argparse

import numpy as np
from scipy.spatial import Delaunay


def disk(rings, radius):
    pts = [(0.0, 0.0)]
    for k in range(1, rings + 1):
        n = 6 * k
        phase = 0.5 * np.pi / n * (k % 2)
        for j in range(n):
            t = 2 * np.pi * j / n + phase
            pts.append((radius * k / rings * np.cos(t), radius * k / rings * np.sin(t)))
    pts = np.array(pts)
    tri = Delaunay(pts).simplices
    on_circle = np.isclose(np.hypot(pts[:, 0], pts[:, 1]), radius)
    return pts, tri, on_circle


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rings", type=int, default=3)
    ap.add_argument("--layers", type=int, default=32)
    ap.add_argument("--radius", type=float, default=0.2)
    ap.add_argument("--out", default="data/meshes/tube_sod.msh")
    a = ap.parse_args()
    assert a.layers % 2 == 0

    pts2, tri, on_circle = disk(a.rings, a.radius)
    m = len(pts2)
    xs = np.linspace(-1.0, 1.0, a.layers + 1)
    xs[a.layers // 2] = 0.0
    nodes = [(x, p[0], p[1]) for x in xs for p in pts2]

    def nid(layer, i):
        return layer * m + i

    tets = []
    for layer in range(a.layers):
        for t in tri:
            s = sorted(t)
            b = [nid(layer, v) for v in s]
            u = [nid(layer + 1, v) for v in s]
            tets += [(b[0], b[1], b[2], u[0]), (b[1], b[2], u[0], u[1]), (b[2], u[0], u[1], u[2])]

    P = np.array(nodes)
    for k, t in enumerate(tets):
        v = P[list(t)]
        vol = np.dot(v[1] - v[0], np.cross(v[2] - v[0], v[3] - v[0])) / 6.0
        assert abs(vol) > 1e-9, vol
        if vol < 0:
            tets[k] = (t[0], t[2], t[1], t[3])

    faces = []
    for t in tri:
        faces.append((1, [nid(0, v) for v in t]))
        faces.append((2, [nid(a.layers, v) for v in t]))
    edges = {}
    for t in tri:
        for i in range(3):
            e = tuple(sorted((t[i], t[(i + 1) % 3])))
            edges[e] = edges.get(e, 0) + 1
    rim = [e for e, n in edges.items() if n == 1]
    assert all(on_circle[p] and on_circle[q] for p, q in rim)
    for layer in range(a.layers):
        for p, q in rim:
            # same diagonal as the prism split: larger index bottom to smaller index top
            lo, hi = sorted((p, q))
            faces.append((3, [nid(layer, lo), nid(layer, hi), nid(layer + 1, lo)]))
            faces.append((3, [nid(layer, hi), nid(layer + 1, lo), nid(layer + 1, hi)]))

    with open(a.out, "w") as f:
        f.write("$MeshFormat\n2.2 0 8\n$EndMeshFormat\n")
        f.write('$PhysicalNames\n4\n2 1 "left"\n2 2 "right"\n2 3 "wall"\n3 4 "tube"\n$EndPhysicalNames\n')
        f.write(f"$Nodes\n{len(nodes)}\n")
        for i, (x, y, z) in enumerate(nodes):
            f.write(f"{i + 1} {x:.17g} {y:.17g} {z:.17g}\n")
        f.write("$EndNodes\n")
        f.write(f"$Elements\n{len(faces) + len(tets)}\n")
        k = 1
        for tag, v in faces:
            f.write(f"{k} 2 2 {tag} {tag} {' '.join(str(i + 1) for i in v)}\n")
            k += 1
        for t in tets:
            f.write(f"{k} 4 2 4 1 {' '.join(str(i + 1) for i in t)}\n")
            k += 1
        f.write("$EndElements\n")
    print(f"{len(nodes)} nodes, {len(tets)} tetrahedra, {len(faces)} boundary triangles")


if __name__ == "__main__":
    main()

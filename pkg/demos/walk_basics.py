"""
Walking between two vertices along a projected boundary
========================================================

A walk is driven by two random linear objectives: one makes the start
vertex the unique minimizer, the other makes the target the unique
maximizer.  Projecting the polytope onto that plane turns the path search
into following a polygon boundary whose edge slopes are positive and
strictly decreasing.
"""

import numpy as np

from polywalk import (
    build_instance,
    enumerate_vertices,
    find_path,
    gen_hypercube,
    project,
)

# --- A cube: every walk crosses exactly n edges -------------------------
cube = gen_hypercube(3)
path = find_path(cube, cube.x1, cube.x2, seed=0)
print("cube:", path.status, "length", path.length)
for vertex, (xi, eta) in zip(path.vertices, path.projections):
    print(f"  vertex {np.round(vertex.x, 3)}  shadow ({xi:+.4f}, {eta:+.4f})")
print("  slopes:", [round(s, 4) for s in path.slopes])

# --- A hexagon: between antipodal vertices both arcs have three edges ---
angles = np.deg2rad(60.0 * np.arange(6))
hexagon = build_instance(np.column_stack([np.cos(angles), np.sin(angles)]),
                         np.ones(6), name="hexagon")
verts = enumerate_vertices(hexagon)
x1 = verts[0].x
x2 = min((v.x for v in verts), key=lambda p: float(p @ x1))
for seed in range(4):
    path = find_path(hexagon, x1, x2, seed=seed)
    print(f"hexagon seed {seed}: length {path.length} "
          f"slopes {[round(s, 3) for s in path.slopes]}")

# --- The walk never leaves the upper-left chain of the shadow -----------
# Every edge's supporting line keeps the whole projected vertex cloud on
# or below it.
pair = path.objective
cloud = [project(pair, v.x) for v in enumerate_vertices(hexagon)]
for (xi0, eta0), s in zip(path.projections, path.slopes):
    level = eta0 - s * xi0
    assert all(eta - s * xi <= level + 1e-9 for xi, eta in cloud)
print("hexagon: every traversed edge supports the projected vertex cloud")

"""
Degenerate vertices: perturb, walk, collapse
============================================

A vertex with more than n tight rows breaks the objective construction.
The walk handles it by growing every right-hand side with a tiny seeded
offset -- the polytope only gets larger, and the degenerate vertex splits
into simple ones -- walking the perturbed polytope, then solving each
visited basis back against the original right-hand side and merging the
vertices that land on the same point.
"""

import numpy as np

from polywalk import find_path, gen_degenerate_pyramid, tight_rows

pyramid = gen_degenerate_pyramid()
apex = pyramid.x2
print("pyramid rows:", pyramid.int_A)
print("apex", apex, "has", len(tight_rows(pyramid, apex)), "tight rows in R^3")

for seed in range(4):
    path = find_path(pyramid, pyramid.x1, pyramid.x2, seed=seed)
    print(f"seed {seed}: {path.status}, {path.length} step(s), "
          f"magnitude {path.perturbation.magnitude:.2e}")
    for vertex in path.vertices:
        slack = float(np.min(pyramid.slack(vertex.x)))
        print(f"  {np.round(vertex.x, 6)}  min slack {slack:+.2e}")

# The record carries both right-hand sides, so a run can be replayed.
record = path.perturbation
print("offsets added to b:", np.round(record.perturbed_b - record.original_b, 9))

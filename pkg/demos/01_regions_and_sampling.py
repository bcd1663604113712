"""
Regions, containment and uniform sampling
=========================================

Build a polygonal region with a hole, save and reload it through the text
format, scatter points uniformly and sanity-check the sampler against the
exact area.
"""

import os

import numpy as np

import boundarykit as bk

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

# a 10x10 deployment square with a 4x4 obstacle in the middle
region = bk.square_with_hole(10.0, 4.0)
print("region:", region)
print("area:", bk.area(region))

path = os.path.join(OUT, "region.txt")
bk.save_region(region, path)
region = bk.load_region(path)
print("round-tripped through", path)

# uniform rejection sampling; identical seeds give identical points
pts = bk.sample_uniform(region, 50_000, seed=1)
assert np.array_equal(pts, bk.sample_uniform(region, 50_000, seed=1))

# hit-rate check: fraction of bounding-box throws landing in the region
# ~ area / bbox area
rng = np.random.default_rng(2)
throws = rng.random((200_000, 2)) * 10.0
frac = np.count_nonzero(bk.contains(region, throws)) / len(throws)
print(f"hit-rate area estimate: {frac * 100.0:.3f} "
      f"(exact {bk.area(region):.3f})")

# boundary distance: nodes near the hole are just as "boundary" as nodes
# near the outer wall
d = bk.distances_to_boundary(region, pts)
print(f"boundary distance: min={d.min():.4f} max={d.max():.4f}")
print(f"within 1 unit of a wall: {100.0 * (d < 1.0).mean():.1f}% of points")

# largest possible clearance: on the diagonal, equidistant from the outer
# corner walls and the hole corner, t = 3*sqrt(2)/(1+sqrt(2)) = 1.757
assert d.max() <= 3 * np.sqrt(2) / (1 + np.sqrt(2)) + 1e-9
print("ok")

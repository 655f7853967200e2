"""Brick covers of point clouds and hole detection in planar regions.

A brick cover snaps a point cloud onto a union of closed 1/k-cubes; the
topology pass rasterizes a planar region and reports its connected
components and bounded holes, each with a deepest representative point.

Run:  python3 demos/bricks_and_holes.py
"""
import numpy as np

from synspec import BallUnion, brick_cover, region_topology

# cover a noisy circle of points with 1/k bricks
rng = np.random.default_rng(3)
ang = 2 * np.pi * rng.uniform(size=200)
X = 0.6 * np.stack([np.cos(ang), np.sin(ang)], axis=1)
X += 0.02 * rng.standard_normal(X.shape)

for k in (5, 10, 20):
    cover = brick_cover(X, k)
    print("k = %2d: %3d bricks, all points covered: %s"
          % (k, cover.corners.shape[0], cover.contains_points(X).all()))

# the k=10 cover of the circle encloses one hole
cover = brick_cover(X, 10)
topo = region_topology(cover, resolution=0.01)
print("\nbrick cover topology: %d component(s), %d hole(s)"
      % (topo.component_count, len(topo.holes)))
for h in topo.holes:
    print("  hole representative (%.2f, %.2f), %d raster cells"
          % (h.representative[0], h.representative[1], h.cell_count))

# same story for a ring of eta-balls
ang = 2 * np.pi * np.arange(12) / 12
ring = BallUnion(2, 0.15, 0.5 * np.stack([np.cos(ang), np.sin(ang)], axis=1))
topo = region_topology(ring, resolution=0.01)
print("\nball-union ring: %d component(s), %d hole(s)"
      % (topo.component_count, len(topo.holes)))

# two far-apart balls: two components, no holes
two = BallUnion(2, 0.1, np.array([[-0.5, 0.0], [0.5, 0.0]]))
topo = region_topology(two, resolution=0.01)
print("two disjoint balls: %d components, %d holes"
      % (topo.component_count, len(topo.holes)))

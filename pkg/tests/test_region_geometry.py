import numpy as np
import pytest
from scipy.spatial import cKDTree

from synspec import (
    BallUnion,
    BrickSet,
    EmptyInputError,
    EmptyRegionError,
    InvalidInputError,
    UnsupportedDimensionError,
    brick_cover,
    dilate,
    region_topology,
)


class TestBrickCover:
    def test_interior_point(self):
        cover = brick_cover(np.array([[0.05, 0.05]]), 10)
        assert cover.corners.shape == (1, 2)
        assert np.array_equal(cover.corners[0], [0, 0])

    def test_corner_point_touches_four_bricks(self):
        cover = brick_cover(np.array([[0.0, 0.0]]), 10)
        got = {tuple(c) for c in cover.corners}
        assert got == {(0, 0), (-1, 0), (0, -1), (-1, -1)}

    def test_boundary_point_clamped(self):
        cover = brick_cover(np.array([[1.0]]), 5)
        assert {tuple(c) for c in cover.corners} == {(4,)}

    def test_covers_and_meets(self):
        rng = np.random.default_rng(7)
        for trial in range(20):
            n = 1 + trial % 3
            k = [5, 10, 20][trial % 3]
            X = rng.uniform(-1, 1, size=(30, n))
            cover = brick_cover(X, k)
            assert cover.contains_points(X).all()
            for corner in cover.corner_points():
                inside = np.all((X >= corner - 1e-9)
                                & (X <= corner + 1.0 / k + 1e-9), axis=1)
                assert inside.any()

    def test_cover_distance_bound(self):
        rng = np.random.default_rng(8)
        for n, k in [(1, 5), (2, 10), (3, 20)]:
            X = rng.uniform(-1, 1, size=(50, n))
            cover = brick_cover(X, k)
            # sample corners and centers of every brick
            offs = np.stack(np.meshgrid(*([np.array([0.0, 1.0])] * n),
                                        indexing="ij"), axis=-1).reshape(-1, n)
            offs = np.vstack([offs, np.full((1, n), 0.5)]) / k
            samples = (cover.corner_points()[:, None, :] + offs[None]).reshape(-1, n)
            d, _ = cKDTree(X).query(samples)
            assert d.max() <= np.sqrt(n) / k + 1e-9

    def test_empty_input(self):
        with pytest.raises(EmptyInputError):
            brick_cover(np.zeros((0, 2)), 5)

    def test_out_of_box_rejected(self):
        with pytest.raises(InvalidInputError):
            brick_cover(np.array([[1.5, 0.0]]), 5)


class TestBrickSet:
    def test_dedupes_corners(self):
        b = BrickSet(2, 5, np.array([[0, 0], [0, 0], [1, 1]]))
        assert b.corners.shape == (2, 2)

    def test_contains_closed_boxes(self):
        b = BrickSet(2, 5, np.array([[0, 0]]))
        pts = np.array([[0.0, 0.0], [0.2, 0.2], [0.1, 0.1], [0.21, 0.0]])
        assert list(b.contains_points(pts)) == [True, True, True, False]

    def test_bounds_enforced(self):
        with pytest.raises(InvalidInputError):
            BrickSet(2, 5, np.array([[5, 0]]))

    def test_json_roundtrip(self):
        b = BrickSet(2, 10, np.array([[0, 0], [-3, 2]]))
        back = BrickSet.from_json(b.to_json())
        assert np.array_equal(back.corners, b.corners)

    def test_from_json_off_lattice(self):
        with pytest.raises(InvalidInputError):
            BrickSet.from_json({"n": 1, "k": 10, "corners": [[0.123]]})


class TestRegionTopology:
    def test_single_ball(self):
        b = BallUnion(2, 0.15, np.array([[0.0, 0.0]]))
        topo = region_topology(b, 0.01)
        assert topo.component_count == 1
        assert len(topo.holes) == 0

    def test_ring_of_balls_has_one_hole(self):
        ang = 2 * np.pi * np.arange(12) / 12
        centers = 0.5 * np.stack([np.cos(ang), np.sin(ang)], axis=1)
        b = BallUnion(2, 0.15, centers)
        topo = region_topology(b, 0.005)
        assert topo.component_count == 1
        assert len(topo.holes) == 1
        rep = topo.holes[0].representative
        assert np.linalg.norm(rep) < 0.2  # deepest cell sits near the origin

    def test_two_components(self):
        b = BallUnion(2, 0.1, np.array([[-0.5, 0.0], [0.5, 0.0]]))
        topo = region_topology(b, 0.01)
        assert topo.component_count == 2
        assert len(topo.holes) == 0

    def test_resolution_stability(self):
        ang = 2 * np.pi * np.arange(12) / 12
        centers = 0.5 * np.stack([np.cos(ang), np.sin(ang)], axis=1)
        b = BallUnion(2, 0.15, centers)
        a = region_topology(b, 0.01)
        c = region_topology(b, 0.005)
        assert a.component_count == c.component_count
        assert len(a.holes) == len(c.holes)

    def test_representative_depth(self):
        ang = 2 * np.pi * np.arange(12) / 12
        centers = 0.5 * np.stack([np.cos(ang), np.sin(ang)], axis=1)
        b = BallUnion(2, 0.15, centers)
        res = 0.005
        topo = region_topology(b, res)
        rep = topo.holes[0].representative
        assert b.distance_to_points(rep[None, :])[0] >= res

    def test_brickset_region(self):
        # hollow square frame of bricks
        k = 5
        rim = []
        for i in range(-2, 2):
            rim += [(i, -2), (i, 1), (-2, i), (1, i)]
        b = BrickSet(2, k, np.array(sorted(set(rim))))
        topo = region_topology(b, 0.02)
        assert topo.component_count == 1
        assert len(topo.holes) == 1

    def test_rejects_3d(self):
        b = BallUnion(3, 0.2, np.array([[0.0, 0.0, 0.0]]))
        with pytest.raises(UnsupportedDimensionError):
            region_topology(b, 0.01)

    def test_rejects_coarse_resolution(self):
        b = BallUnion(2, 0.1, np.array([[0.0, 0.0]]))
        with pytest.raises(InvalidInputError):
            region_topology(b, 0.05)

    def test_empty_region(self):
        b = BallUnion(2, 0.1, np.zeros((0, 2)))
        with pytest.raises(EmptyRegionError):
            region_topology(b, 0.01)

    def test_json_shape(self):
        b = BallUnion(2, 0.15, np.array([[0.0, 0.0]]))
        obj = region_topology(b, 0.01).to_json()
        assert obj["component_count"] == 1
        assert obj["holes"] == []
        assert obj["resolution"] == 0.01


class TestDilate:
    def test_zero_dilation(self):
        b = BallUnion(2, 0.1, np.array([[0.0, 0.0]]))
        d = dilate(b, 0.0)
        assert d.eta == b.eta

    def test_grows_radius(self):
        b = BallUnion(2, 0.1, np.array([[0.0, 0.0]]))
        assert dilate(b, 0.05).eta == pytest.approx(0.15)

    def test_preserves_containment(self):
        from synspec import containment_check
        a = BallUnion(2, 0.1, np.array([[0.1, 0.0]]))
        b = BallUnion(2, 0.2, np.array([[0.0, 0.0]]))
        assert containment_check(a, b, 0.0)
        assert containment_check(dilate(a, 0.05), dilate(b, 0.05), 0.0)

    def test_negative_rejected(self):
        b = BallUnion(2, 0.1, np.array([[0.0, 0.0]]))
        with pytest.raises(InvalidInputError):
            dilate(b, -0.1)

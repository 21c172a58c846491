"""Tests for B_λ / C_λ construction and path composition (src/geodesics/paths.py)"""
import math

import pytest

from src.bodies import Polygon2, contains, enclosing_factor, gauge_equal
from src.core.errors import InputError
from src.core.protocol import PathKind
from src.distance import positioned_by_identity
from src.geodesics import (
    b_lambda,
    build_path,
    c_lambda,
    constant_path,
    geodesic_product_check,
    is_intermediate,
    join_geodesics,
    lp_path,
    path_length,
)


@pytest.fixture
def diamond_square_pair(diamond, square):
    return positioned_by_identity(diamond, square)


@pytest.fixture
def octagon(diamond_square_pair):
    return b_lambda(diamond_square_pair, 0.5)


# ── B_λ and C_λ ────────────────────────────────────────────────────────────────

class TestExtremeBodies:

    def test_endpoints(self, disk_square_pair):
        pair = disk_square_pair
        assert gauge_equal(b_lambda(pair, 0.0), pair.ball_E)
        assert gauge_equal(b_lambda(pair, 1.0), pair.ball_F)
        assert gauge_equal(c_lambda(pair, 0.0), pair.ball_E)
        assert gauge_equal(c_lambda(pair, 1.0), pair.ball_F)

    def test_octagon_midpoint(self, diamond_square_pair, octagon):
        assert isinstance(octagon, Polygon2)
        assert len(octagon.vertices) == 8
        assert octagon.gauge([1.0, 1.0]) == pytest.approx(math.sqrt(2.0))

    def test_hull_midpoint(self, diamond_square_pair):
        body = c_lambda(diamond_square_pair, 0.5)
        # conv(diamond ∪ square/√2): the square's corners stick out past the diamond's edges
        assert body.gauge([1.0, 0.0]) == pytest.approx(1.0)
        assert body.gauge([0.5, 0.5]) == pytest.approx(1.0 / math.sqrt(2.0))

    def test_lambda_out_of_range(self, diamond_square_pair):
        with pytest.raises(InputError):
            b_lambda(diamond_square_pair, 1.2)


class TestMonotonicity:

    GRID = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]

    @pytest.mark.parametrize("extreme", [b_lambda, c_lambda])
    def test_random_pairs(self, polygon_pairs, extreme):
        for pair in polygon_pairs:
            bodies = [extreme(pair, lam) for lam in self.GRID]
            for smaller, larger in zip(bodies, bodies[1:]):
                assert contains(larger, smaller)

    @pytest.mark.parametrize("extreme", [b_lambda, c_lambda])
    def test_disk_square(self, disk_square_pair, extreme):
        bodies = [extreme(disk_square_pair, lam) for lam in self.GRID]
        for smaller, larger in zip(bodies, bodies[1:]):
            assert enclosing_factor(larger, smaller) <= 1.0 + 1e-9
            # strictly growing: the larger body is not inside the smaller one
            assert enclosing_factor(smaller, larger) > 1.0 + 1e-6

    def test_hull_type_inside_intersection_type(self, polygon_pairs):
        for pair in polygon_pairs:
            for lam in self.GRID[1:-1]:
                assert contains(b_lambda(pair, lam), c_lambda(pair, lam))


# ── sampled paths ──────────────────────────────────────────────────────────────

class TestBuildPath:

    def test_default_grid(self, diamond_square_pair):
        path = build_path(diamond_square_pair, "intersection")
        assert len(path.lambdas) == 11
        assert path.kind is PathKind.INTERSECTION
        assert path.d == pytest.approx(2.0)

    def test_custom_grid_and_off_grid_bodies(self, disk_square_pair):
        path = build_path(disk_square_pair, PathKind.HULL, [0.0, 0.5, 1.0])
        assert path.lambdas == [0.0, 0.5, 1.0]
        off_grid = path.body_at(0.25)
        assert gauge_equal(off_grid, c_lambda(disk_square_pair, 0.25))

    def test_rejects_bad_grid(self, diamond_square_pair):
        with pytest.raises(InputError):
            build_path(diamond_square_pair, "hull", [0.0, 0.7])

    def test_rejects_unbuildable_kind(self, diamond_square_pair):
        with pytest.raises(InputError):
            build_path(diamond_square_pair, "concatenation")

    def test_unknown_kind(self, diamond_square_pair):
        with pytest.raises(ValueError):
            build_path(diamond_square_pair, "spiral")

    def test_constant_path(self, square):
        path = constant_path(square)
        assert path.d == 1.0
        assert path.body_at(0.3) is square


# ── intermediate spaces and joins ──────────────────────────────────────────────

class TestJoin:

    @pytest.fixture
    def halves(self, diamond, square, octagon):
        first = build_path(positioned_by_identity(diamond, octagon), "hull")
        second = build_path(positioned_by_identity(octagon, square), "intersection")
        return first, second

    def test_octagon_is_intermediate(self, diamond, square, octagon):
        verdict, lam = is_intermediate(diamond, octagon, square)
        assert verdict
        assert lam == pytest.approx(0.5, rel=1e-9)

    def test_disk_sits_between_diamond_and_square(self, disk, square, diamond):
        verdict, _ = is_intermediate(diamond, disk, square)
        assert verdict
        verdict, _ = is_intermediate(disk, diamond, square)
        assert not verdict

    def test_join_reparametrises_by_log_distance(self, halves):
        joined = join_geodesics(*halves)
        assert joined.kind is PathKind.CONCATENATION
        assert joined.d == pytest.approx(2.0, rel=1e-9)
        assert joined.junctions[0] == pytest.approx(0.5, rel=1e-9)
        assert joined.lambdas[0] == 0.0 and joined.lambdas[-1] == 1.0

    def test_joined_path_is_a_geodesic(self, halves):
        joined = join_geodesics(*halves)
        first, second = halves
        assert path_length(joined, 3) == pytest.approx(math.log(first.d) + math.log(second.d), rel=1e-6)
        geodesic_product_check(joined, [0.0, 0.3, 0.5, 0.8, 1.0])

    def test_junction_mismatch(self, halves, disk_square_pair):
        other = build_path(disk_square_pair, "hull", [0.0, 1.0])
        with pytest.raises(InputError):
            join_geodesics(halves[0], other)

    def test_constant_piece_is_dropped(self, diamond, halves):
        first, _ = halves
        assert join_geodesics(constant_path(diamond), first) is first
        assert join_geodesics(first, constant_path(first.body_at(1.0))) is first

    def test_non_intermediate_junction_rejected(self, diamond, square, disk):
        # diamond → square → disk doubles back: d(diamond, disk) < d(diamond, square)·d(square, disk)
        first = build_path(positioned_by_identity(diamond, square), "hull", [0.0, 1.0])
        second = build_path(positioned_by_identity(square, disk), "intersection", [0.0, 1.0])
        with pytest.raises(InputError):
            join_geodesics(first, second)


# ── classical ℓ_p paths ────────────────────────────────────────────────────────

class TestLpPath:

    def test_l1_to_l2(self):
        path = lp_path(1, 2, 2, [0.0, 0.5, 1.0])
        assert path.kind is PathKind.CLASSICAL
        assert path.d == pytest.approx(math.sqrt(2.0), rel=1e-9)
        check = geodesic_product_check(path, [0.0, 0.5, 1.0])
        assert check.product == pytest.approx(path.d, rel=1e-6)

    def test_l2_to_linf_in_three_dimensions(self):
        path = lp_path(2, "inf", 3, [0.0, 1.0])
        assert path.d == pytest.approx(math.sqrt(3.0), rel=1e-6)

    def test_straddling_two_rejected(self):
        with pytest.raises(InputError):
            lp_path(1, "inf", 2)

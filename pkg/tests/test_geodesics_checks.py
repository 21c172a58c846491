"""Tests for geodesic verification (src/geodesics/checks.py)"""
import math

import numpy as np
import pytest

from src.core.errors import InputError, VerificationError
from src.core.protocol import OptimizerConfig
from src.distance import canonical_position
from src.geodesics import (
    b_lambda,
    build_path,
    dyadic_lengths,
    extreme_distance_check,
    geodesic_product_check,
    inclusion_chain_check,
    kj_gauges,
    path_length,
    random_partition,
    sandwich_check,
)
from tests.conftest import identity_pairs, random_polygon

LAMBDAS = [0.1, 0.25, 0.5, 0.75, 0.9]


# ── inclusion chain ────────────────────────────────────────────────────────────

class TestInclusionChain:

    @pytest.mark.parametrize("lam", LAMBDAS)
    def test_disk_square(self, disk_square_pair, lam):
        report = inclusion_chain_check(disk_square_pair, lam)
        assert report.holds
        assert set(report.slacks) == {"E_in_C", "C_in_B", "B_in_F", "F_in_dE"}

    def test_three_dimensions(self, octa_cube_pair):
        assert inclusion_chain_check(octa_cube_pair, 0.5).holds


# ── extreme-space identities ───────────────────────────────────────────────────

class TestExtremeDistances:

    @pytest.mark.parametrize("lam", LAMBDAS)
    def test_polygon_pairs(self, polygon_pairs, lam):
        for pair in polygon_pairs:
            record = extreme_distance_check(pair, lam)
            assert record.e_to_b == pytest.approx(pair.d ** lam, rel=1e-6)
            assert record.c_to_f == pytest.approx(pair.d ** (1.0 - lam), rel=1e-6)

    def test_canonical_pairs(self):
        rng = np.random.default_rng(17)
        for k in range(20):
            cfg = OptimizerConfig(starts=2, max_iters=300, seed=k)
            pair = canonical_position(random_polygon(rng), random_polygon(rng), cfg)
            for lam in LAMBDAS:
                record = extreme_distance_check(pair, lam)
                assert record.e_to_b == pytest.approx(pair.d ** lam, rel=1e-6)
                assert record.b_to_f == pytest.approx(pair.d ** (1.0 - lam), rel=1e-6)
                assert record.e_to_c == pytest.approx(pair.d ** lam, rel=1e-6)
                assert record.c_to_f == pytest.approx(pair.d ** (1.0 - lam), rel=1e-6)

    def test_octa_cube(self, octa_cube_pair):
        record = extreme_distance_check(octa_cube_pair, 0.5)
        assert record.e_to_c == pytest.approx(math.sqrt(3.0), rel=1e-6)

    def test_smooth_pair(self, disk, square):
        from src.distance import positioned_by_identity
        extreme_distance_check(positioned_by_identity(disk, square), 0.4)

    def test_failure_names_the_identity(self, disk_square_pair):
        with pytest.raises(VerificationError) as exc:
            extreme_distance_check(disk_square_pair, 0.5, tol=-1.0)
        assert "d(E, E_λ)" in exc.value.message
        assert exc.value.details["lambda"] == 0.5


# ── product law and length ─────────────────────────────────────────────────────

class TestProductLaw:

    @pytest.mark.parametrize("kind", ["intersection", "hull"])
    def test_random_partitions(self, kind):
        rng = np.random.default_rng(3)
        for pair in identity_pairs(seed=21, count=10):
            path = build_path(pair, kind, [0.0, 1.0])
            for _ in range(64):
                partition = random_partition(rng, 3)
                check = geodesic_product_check(path, partition)
                steps = np.diff(partition)
                assert check.pairwise == pytest.approx([pair.d ** s for s in steps], rel=1e-6)
                assert check.product == pytest.approx(pair.d, rel=1e-6)

    def test_corrupted_sample_is_located(self, disk_square_pair):
        path = build_path(disk_square_pair, "intersection", [0.0, 0.5, 1.0])
        path.samples[1] = (0.5, disk_square_pair.ball_E)
        with pytest.raises(VerificationError) as exc:
            geodesic_product_check(path, [0.0, 0.5, 1.0])
        assert exc.value.details["interval"] == [0.0, 0.5]

    def test_partition_must_span_unit_interval(self, disk_square_pair):
        path = build_path(disk_square_pair, "hull", [0.0, 1.0])
        with pytest.raises(InputError):
            geodesic_product_check(path, [0.0, 0.5])

    @pytest.mark.parametrize("kind", ["intersection", "hull"])
    def test_length_equals_log_d(self, disk_square_pair, kind):
        path = build_path(disk_square_pair, kind, [0.0, 1.0])
        assert path_length(path, 3) == pytest.approx(math.log(disk_square_pair.d), rel=1e-6)

    @pytest.mark.parametrize("kind", ["intersection", "hull"])
    def test_length_constant_across_depths(self, disk_square_pair, kind):
        path = build_path(disk_square_pair, kind, [0.0, 1.0])
        lengths = dyadic_lengths(path, 6)
        assert len(lengths) == 6
        assert lengths == pytest.approx([math.log(disk_square_pair.d)] * 6, rel=1e-6)

    def test_length_refinement_validated(self, disk_square_pair):
        path = build_path(disk_square_pair, "hull", [0.0, 1.0])
        with pytest.raises(InputError):
            path_length(path, 0)

    def test_random_partition_shape(self):
        partition = random_partition(np.random.default_rng(0), 5)
        assert partition[0] == 0.0 and partition[-1] == 1.0
        assert len(partition) == 7
        assert partition == sorted(partition)


# ── sandwich and closed-form gauges ────────────────────────────────────────────

class TestSandwich:

    def test_b_lambda_is_sandwiched(self, disk_square_pair):
        report = sandwich_check(b_lambda(disk_square_pair, 0.3), disk_square_pair, 0.3)
        assert report
        assert report.d_ex * report.d_xf == pytest.approx(disk_square_pair.d, rel=1e-6)

    def test_endpoint_outside_band(self, disk_square_pair):
        report = sandwich_check(disk_square_pair.ball_F, disk_square_pair, 0.5)
        assert not report.holds
        assert report.upper_factor > 1.0
        assert report.d_ex is None

    def test_dimension_mismatch(self, disk_square_pair, cube):
        with pytest.raises(InputError):
            sandwich_check(cube, disk_square_pair, 0.5)


class TestClosedFormGauges:

    @pytest.mark.parametrize("x", [[0.3, 0.9], [1.0, 0.0], [-0.7, 0.2]])
    def test_polygon_pair(self, disk_square_pair, x):
        k_value, j_value = kj_gauges(disk_square_pair, 0.4, x)
        assert j_value >= k_value * (1.0 - 1e-9)

    def test_values_at_endpoints(self, disk_square_pair):
        x = np.array([0.6, 0.8])
        k_value, j_value = kj_gauges(disk_square_pair, 0.0, x)
        assert k_value == pytest.approx(disk_square_pair.ball_E.gauge(x))
        assert j_value == pytest.approx(disk_square_pair.ball_E.gauge(x), rel=1e-6)

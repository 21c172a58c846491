"""Tests for the B_q family of intermediate polygons (src/dim2/family.py)"""
from fractions import Fraction
from itertools import combinations

import pytest

from src.bodies import Polygon2
from src.core.errors import InputError
from src.dim2 import area_ratio, area_ratios, bq_family, face_line_clear, invariant_distinct
from src.dim2.family import polygon_pair
from src.distance import positioned_by_identity
from src.geodesics import sandwich_check


@pytest.fixture(scope="module")
def family():
    from src.bodies import lp_ball, polygonize
    pair = positioned_by_identity(polygonize(lp_ball(2, 2), 64), lp_ball("inf", 2))
    return bq_family(pair, 0.5, 25)


class TestExactHelpers:

    def test_face_line_clear(self, square):
        assert face_line_clear((Fraction(2), Fraction(0)), (Fraction(2), Fraction(1)), square)
        # x + y = 2 touches the corner (1, 1)
        assert not face_line_clear((Fraction(0), Fraction(2)), (Fraction(2), Fraction(0)), square)
        assert not face_line_clear((Fraction(0), Fraction(0)), (Fraction(1), Fraction(2)), square)

    def test_area_ratio(self):
        p1, q, p2 = (Fraction(1), Fraction(0)), (Fraction(1), Fraction(1)), (Fraction(0), Fraction(1))
        assert area_ratio(p1, q, p2) == 1
        assert area_ratio(p1, (Fraction(2), Fraction(1)), p2) == Fraction(1, 2)


class TestPolygonPair:

    def test_smooth_pair_is_polygonized(self, disk, square):
        pair = polygon_pair(positioned_by_identity(disk, square), sides=32)
        assert isinstance(pair.ball_E, Polygon2) and isinstance(pair.ball_F, Polygon2)
        assert pair.d == pytest.approx(2 ** 0.5, rel=1e-9)

    def test_polygon_pair_unchanged(self, disk_square_pair):
        assert polygon_pair(disk_square_pair) is disk_square_pair

    def test_three_dimensions_rejected(self, octa_cube_pair):
        with pytest.raises(InputError):
            polygon_pair(octa_cube_pair)


class TestBqFamily:

    def test_count_and_certificates(self, family):
        assert len(family) == 25
        assert all(cert.passed for cert in family.certificates)
        assert len({cert.ratio for cert in family.certificates}) == 25

    def test_members_are_intermediate(self, family):
        for body in list(family)[::6]:
            report = sandwich_check(body, family.pair, family.lam)
            assert report.holds
            assert report.d_ex * report.d_xf == pytest.approx(family.pair.d, rel=1e-6)

    def test_members_pairwise_non_isometric(self, family):
        invariants = [area_ratios(body) for body in family]
        for a, b in combinations(invariants, 2):
            assert invariant_distinct(a, b)

    def test_members_differ_from_extremes(self, family):
        extremes = [area_ratios(family.ball_B), area_ratios(family.ball_C)]
        for body in family:
            assert all(invariant_distinct(area_ratios(body), other) for other in extremes)

    def test_new_faces_are_edges(self, family):
        cert = family.certificates[0]
        (p1, q), (q_again, p2) = cert.new_faces
        assert q == q_again
        assert family[0].gauge(q) == pytest.approx(1.0)
        assert cert.ratio in cert.invariant_sample

    def test_ratio_in_member_invariant(self, family):
        for body, cert in zip(family, family.certificates):
            assert area_ratios(body).contains(cert.ratio, rel_tol=1e-9)

    @pytest.mark.parametrize("lam", [0.0, 1.0])
    def test_endpoints_rejected(self, disk_square_pair, lam):
        with pytest.raises(InputError):
            bq_family(disk_square_pair, lam, 3)

    def test_count_validated(self, disk_square_pair):
        with pytest.raises(InputError):
            bq_family(disk_square_pair, 0.5, 0)

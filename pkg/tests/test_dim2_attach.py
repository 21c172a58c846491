"""Tests for 3D face attachment (src/dim2/attach.py)"""
import numpy as np
import pytest

from src.core.errors import InputError
from src.dim2 import attach_face_3d, facet_census, place_face, regular_face
from src.geodesics import sandwich_check


class TestRegularFace:

    def test_shape(self):
        face = regular_face(5)
        assert face.shape == (5, 2)
        assert np.allclose(np.linalg.norm(face, axis=1), 1.0)

    def test_too_few_sides(self):
        with pytest.raises(InputError):
            regular_face(2)


class TestAttachFace:

    def test_census_depends_on_face_shape(self, octa_cube_pair):
        censuses = []
        for sides in (3, 4, 5):
            face = place_face(octa_cube_pair, 0.5, regular_face(sides, phase=0.1))
            result = attach_face_3d(octa_cube_pair, 0.5, face)
            assert result.certificate.passed
            assert result.certificate.face_vertices == sides
            assert sides in result.certificate.facet_census
            censuses.append(tuple(facet_census(result.body)))
        assert len(set(censuses)) == 3

    def test_result_is_intermediate(self, octa_cube_pair):
        result = attach_face_3d(octa_cube_pair, 0.5, place_face(octa_cube_pair, 0.5))
        report = sandwich_check(result.body, octa_cube_pair, 0.5)
        assert report.holds

    def test_two_dimensional_pair_rejected(self, disk_square_pair):
        face = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
        with pytest.raises(InputError):
            attach_face_3d(disk_square_pair, 0.5, face)

    def test_plane_through_origin_rejected(self, octa_cube_pair):
        face = np.array([[0.1, 0.0, 0.0], [0.0, 0.1, 0.0], [-0.1, -0.1, 0.0]])
        with pytest.raises(InputError):
            attach_face_3d(octa_cube_pair, 0.5, face)

    def test_collinear_face_rejected(self, octa_cube_pair):
        face = np.array([[0.9, 0.0, 0.1], [0.9, 0.0, 0.2], [0.9, 0.0, 0.3]])
        with pytest.raises(InputError):
            attach_face_3d(octa_cube_pair, 0.5, face)

    def test_face_meeting_c_rejected(self, octa_cube_pair):
        # the plane x = 0.5 cuts through C_λ, which contains the octahedron
        face = np.array([[0.5, 0.1, 0.0], [0.5, -0.1, 0.1], [0.5, -0.1, -0.1]])
        with pytest.raises(InputError):
            attach_face_3d(octa_cube_pair, 0.5, face)

    def test_face_outside_b_rejected(self, octa_cube_pair):
        face = np.array([[1.5, 0.1, 0.0], [1.5, -0.1, 0.1], [1.5, -0.1, -0.1]])
        with pytest.raises(InputError):
            attach_face_3d(octa_cube_pair, 0.5, face)

    def test_non_convex_face_rejected(self, octa_cube_pair):
        face = place_face(octa_cube_pair, 0.5, regular_face(4))
        centre = face.mean(axis=0)
        dented = np.vstack([face, centre + 0.01 * (face[0] - centre)])
        with pytest.raises(InputError):
            attach_face_3d(octa_cube_pair, 0.5, dented)


class TestFacetCensus:

    def test_requires_polytope(self, disk):
        with pytest.raises(InputError):
            facet_census(disk)

    def test_cube(self, cube):
        assert facet_census(cube) == [4] * 6

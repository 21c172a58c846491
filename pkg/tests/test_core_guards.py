"""Unit tests for src/core/guards.py"""
from __future__ import annotations

import math

import numpy as np
import pytest

from src.core.errors import InputError
from src.core.guards import (
    check_count,
    check_grid,
    check_lambda,
    check_matrix,
    check_positive,
    check_same_dimension,
    check_vector,
    parse_grid_list,
    parse_grid_spec,
    uniform_grid,
)


# ── λ ──────────────────────────────────────────────────────────────────────────

class TestCheckLambda:

    def test_accepts_closed_interval(self):
        assert check_lambda(0) == 0.0
        assert check_lambda(1) == 1.0
        assert check_lambda("0.25") == 0.25

    def test_rejects_out_of_range(self):
        with pytest.raises(InputError):
            check_lambda(1.5)
        with pytest.raises(InputError):
            check_lambda(-0.1)

    def test_open_interval_rejects_endpoints(self):
        with pytest.raises(InputError):
            check_lambda(0.0, open_interval=True)
        with pytest.raises(InputError):
            check_lambda(1.0, open_interval=True)
        assert check_lambda(0.5, open_interval=True) == 0.5

    def test_rejects_non_numbers(self):
        with pytest.raises(InputError):
            check_lambda("half")
        with pytest.raises(InputError):
            check_lambda(math.nan)

    def test_input_error_is_a_value_error(self):
        with pytest.raises(ValueError):
            check_lambda(2)


# ── grids ──────────────────────────────────────────────────────────────────────

class TestGrids:

    def test_valid_grid(self):
        assert check_grid([0, 0.5, 1]) == [0.0, 0.5, 1.0]

    def test_grid_must_hit_endpoints(self):
        with pytest.raises(InputError):
            check_grid([0.2, 1.0])
        with pytest.raises(InputError):
            check_grid([0.0, 0.9])

    def test_grid_must_increase(self):
        with pytest.raises(InputError):
            check_grid([0.0, 0.5, 0.5, 1.0])

    def test_single_point_rejected(self):
        with pytest.raises(InputError):
            check_grid([0.0])

    def test_spec_gives_eleven_points(self):
        grid = parse_grid_spec("0:1:0.1")
        assert len(grid) == 11
        assert grid[0] == 0.0 and grid[-1] == 1.0

    def test_spec_with_uneven_step_keeps_end(self):
        grid = parse_grid_spec("0:1:0.3")
        assert grid[-1] == 1.0
        assert grid[1] == pytest.approx(0.3)

    @pytest.mark.parametrize("spec", ["0:1", "a:b:c", "0:1:-0.1", "0:1:0"])
    def test_bad_specs(self, spec):
        with pytest.raises(InputError):
            parse_grid_spec(spec)

    def test_grid_list(self):
        assert parse_grid_list("0, 0.25, 1") == [0.0, 0.25, 1.0]

    def test_grid_list_rejects_words(self):
        with pytest.raises(InputError):
            parse_grid_list("0,x,1")

    def test_uniform_grid(self):
        assert uniform_grid(5) == [0.0, 0.25, 0.5, 0.75, 1.0]
        with pytest.raises(InputError):
            uniform_grid(1)


# ── shapes and counts ──────────────────────────────────────────────────────────

class TestShapes:

    def test_dimension_mismatch(self, square, cube):
        with pytest.raises(InputError):
            check_same_dimension(square, cube)

    def test_dimension_match(self, square, diamond):
        assert check_same_dimension(square, diamond) == 2

    def test_vector_shape(self):
        assert check_vector([1, 2], 2).shape == (2,)
        with pytest.raises(InputError):
            check_vector([1, 2, 3], 2)
        with pytest.raises(InputError):
            check_vector([1, math.inf], 2)

    def test_matrix_singular(self):
        with pytest.raises(InputError):
            check_matrix([[1, 0], [0, 0]], 2)

    def test_matrix_shape(self):
        with pytest.raises(InputError):
            check_matrix([[1, 0, 0], [0, 1, 0]], 2)

    def test_matrix_ok(self):
        arr = check_matrix([[1, 2], [3, 4]], 2)
        assert isinstance(arr, np.ndarray)

    def test_count(self):
        assert check_count(3) == 3
        for bad in (0, -1, 2.5):
            with pytest.raises(InputError):
                check_count(bad)

    def test_positive(self):
        assert check_positive(2, "t") == 2.0
        with pytest.raises(InputError):
            check_positive(0, "t")

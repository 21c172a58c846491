"""Tests for the body JSON codec (src/bodies/codec.py)"""
import json

import pytest

from src.bodies import GaugeBody, Polygon2, Polytope3, dump_body, gauge_equal, load_body, parse_body
from src.core.errors import InputError


class TestParseBody:

    def test_polygon(self):
        body = parse_body({"kind": "polygon", "vertices": [[1, 0], [0, 1]]})
        assert isinstance(body, Polygon2)
        assert body.area() == 2

    def test_polytope(self):
        body = parse_body({"kind": "polytope3", "vertices": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
        assert isinstance(body, Polytope3)
        assert body.facet_census() == [3] * 8

    def test_lp_inf_is_exact(self):
        assert isinstance(parse_body({"kind": "lp", "p": "inf", "dim": 2}), Polygon2)

    def test_scaled_polygon_stays_polygon(self):
        body = parse_body({"kind": "scaled", "t": 2, "of": {"kind": "lp", "p": 1, "dim": 2}})
        assert isinstance(body, Polygon2)
        assert body.gauge([2.0, 0.0]) == pytest.approx(1.0)

    def test_nested_gauge_body(self):
        body = parse_body({
            "kind": "intersection",
            "of": [{"kind": "lp", "p": 2, "dim": 2}, {"kind": "scaled", "t": 0.9, "of": {"kind": "lp", "p": "inf", "dim": 2}}],
        })
        assert isinstance(body, GaugeBody)
        assert body.gauge([0.9, 0.0]) == pytest.approx(1.0)

    @pytest.mark.parametrize("obj", [
        {"kind": "sphere"},
        {"kind": "polygon", "vertices": [[1, 0, 0]]},
        {"kind": "polytope3", "vertices": [[1, 0]]},
        {"kind": "lp", "p": 2, "dim": 1},
        {"kind": "scaled", "t": -1, "of": {"kind": "lp", "p": 2, "dim": 2}},
        {"kind": "hull", "of": [{"kind": "lp", "p": 2, "dim": 2}]},
    ])
    def test_malformed(self, obj):
        with pytest.raises(InputError):
            parse_body(obj)

    def test_validation_details_reported(self):
        with pytest.raises(InputError) as exc:
            parse_body({"kind": "lp", "dim": 2})
        assert exc.value.details["errors"]

    def test_dimension_mismatch_in_hull(self):
        with pytest.raises(InputError):
            parse_body({"kind": "hull", "of": [{"kind": "lp", "p": 2, "dim": 2}, {"kind": "lp", "p": 2, "dim": 3}]})


class TestDumpBody:

    def test_smooth_body_description(self, disk):
        assert dump_body(disk) == {"kind": "lp", "p": 2.0, "dim": 2}

    def test_hull_description_reparses(self, disk, square):
        from src.bodies import hull_union, scale
        body = hull_union(disk, scale(square, 0.8))
        again = parse_body(json.loads(json.dumps(dump_body(body))))
        assert gauge_equal(body, again, samples=64)

    def test_polygon_vertices(self, hexagon):
        again = parse_body(dump_body(hexagon))
        assert again.vertex_set() == hexagon.vertex_set()


class TestLoadBody:

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            load_body(tmp_path / "nope.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(InputError):
            load_body(path)

    def test_reads_file(self, tmp_path):
        path = tmp_path / "disk.json"
        path.write_text(json.dumps({"kind": "lp", "p": 2, "dim": 2}))
        assert load_body(path).gauge([0.0, 2.0]) == pytest.approx(2.0)

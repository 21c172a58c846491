"""Integration tests for the FastAPI service."""

import math

import numpy as np
import pytest
from unittest.mock import patch
from fastapi.testclient import TestClient

from src.core.protocol import DistanceReport

SQUARE = {"kind": "lp", "p": "inf", "dim": 2}
DIAMOND = {"kind": "lp", "p": 1, "dim": 2}
DISK = {"kind": "lp", "p": 2, "dim": 2}
HEXAGON = {"kind": "polygon", "vertices": [[3, 0], [1, 3], [-2, 2]]}


@pytest.fixture(scope="module")
def client():
    from src.web_app.server import app
    return TestClient(app)


# ── Tests ──────────────────────────────────────────────────────────────────────

class TestHealthEndpoint:
    def test_health_returns_200(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json()["status"] == "ok"


class TestDistanceEndpoint:
    def test_fixed_position(self, client):
        response = client.post("/distance", json={"a": SQUARE, "b": DIAMOND, "fixed_position": True})
        assert response.status_code == 200
        data = response.json()
        assert data["estimate"] == pytest.approx(2.0)
        assert data["converged"] is True

    def test_optimizer_receives_overrides(self, client):
        canned = DistanceReport.build(np.eye(2), math.sqrt(2.0), 1.0, 5, True)
        with patch("src.web_app.server.bm_distance", return_value=canned) as mock_bm:
            response = client.post("/distance", json={"a": DISK, "b": SQUARE, "starts": 5, "seed": 9})
        assert response.status_code == 200
        assert response.json()["estimate"] == pytest.approx(math.sqrt(2.0))
        cfg = mock_bm.call_args.args[2]
        assert cfg.starts == 5 and cfg.seed == 9

    def test_malformed_body_returns_422(self, client):
        response = client.post("/distance", json={"a": {"kind": "blob"}, "b": SQUARE, "fixed_position": True})
        assert response.status_code == 422
        assert response.json()["detail"]["error"] == "InputError"

    def test_missing_body_returns_422(self, client):
        response = client.post("/distance", json={"a": SQUARE})
        assert response.status_code == 422

    def test_zero_starts_returns_422(self, client):
        response = client.post("/distance", json={"a": DISK, "b": SQUARE, "starts": 0})
        assert response.status_code == 422


class TestInvariantEndpoint:
    def test_hexagon(self, client):
        response = client.post("/invariant", json={"body": HEXAGON})
        assert response.status_code == 200
        data = response.json()
        assert data["edges"] == 6
        assert any(r == pytest.approx(8 / 9) for r in data["ratios"])

    def test_map_preserves_ratios(self, client):
        plain = client.post("/invariant", json={"body": HEXAGON}).json()
        mapped = client.post("/invariant", json={"body": HEXAGON, "map": [[2, 1], [1, 1]]}).json()
        assert mapped["ratios"] == pytest.approx(plain["ratios"])

    def test_smooth_body_returns_422(self, client):
        response = client.post("/invariant", json={"body": DISK})
        assert response.status_code == 422


class TestGeodesicEndpoint:
    def test_fixed_position_hull_path(self, client):
        payload = {"a": DISK, "b": SQUARE, "kind": "hull", "lambdas": [0, 0.5, 1], "fixed_position": True}
        response = client.post("/geodesic", json=payload)
        assert response.status_code == 200
        data = response.json()
        assert data["manifest"]["d"] == pytest.approx(math.sqrt(2.0), rel=1e-9)
        assert len(data["bodies"]) == 3
        assert data["product_check"]["product"] == pytest.approx(math.sqrt(2.0), rel=1e-6)

    def test_bad_grid_returns_422(self, client):
        payload = {"a": SQUARE, "b": DIAMOND, "lambdas": [0.1, 1], "fixed_position": True}
        response = client.post("/geodesic", json=payload)
        assert response.status_code == 422

    def test_unknown_kind_returns_422(self, client):
        payload = {"a": SQUARE, "b": DIAMOND, "kind": "spiral", "fixed_position": True}
        response = client.post("/geodesic", json=payload)
        assert response.status_code == 422

    def test_verification_failure_returns_409(self, client):
        from src.core.errors import VerificationError
        with patch("src.web_app.server.geodesic_product_check", side_effect=VerificationError("broken")):
            payload = {"a": SQUARE, "b": DIAMOND, "lambdas": [0, 1], "fixed_position": True}
            response = client.post("/geodesic", json=payload)
        assert response.status_code == 409
        assert response.json()["detail"]["error"] == "VerificationError"

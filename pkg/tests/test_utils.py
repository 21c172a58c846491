"""Unit tests for src/utils/ (config, serialize, logging)"""
import json
import logging

import numpy as np
import pytest


# ── config ─────────────────────────────────────────────────────────────────────

class TestConfig:

    def test_defaults_present(self):
        from src.utils.config import load_config
        cfg = load_config()
        assert cfg["optimizer"]["starts"] == 32
        assert cfg["tolerances"]["distinct"] == pytest.approx(1e-7)
        assert cfg["family"]["polygon_sides"] == 64

    def test_merge_keeps_unset_keys(self):
        from src.utils.config import _merge
        merged = _merge({"a": {"x": 1, "y": 2}, "b": 3}, {"a": {"y": 5}})
        assert merged == {"a": {"x": 1, "y": 5}, "b": 3}

    def test_merge_does_not_mutate_base(self):
        from src.utils.config import _merge
        base = {"a": {"x": 1}}
        _merge(base, {"a": {"x": 2}})
        assert base == {"a": {"x": 1}}

    def test_section_is_a_copy(self):
        from src.utils.config import section
        search = section("search")
        search["angular_samples"] = 1
        assert section("search")["angular_samples"] == 4096

    def test_unknown_section(self):
        from src.utils.config import section
        assert section("nope") == {}

    def test_config_override_file(self, tmp_path, monkeypatch):
        from src.utils import config
        path = tmp_path / "alt.yaml"
        path.write_text("optimizer:\n  starts: 3\n")
        monkeypatch.setenv("BMG_CONFIG", str(path))
        assert config._load_config() == {"optimizer": {"starts": 3}}
        assert config._merge(config.DEFAULTS, config._load_config())["optimizer"]["max_iters"] == 2000

    def test_missing_override_file(self, tmp_path, monkeypatch):
        from src.utils import config
        monkeypatch.setenv("BMG_CONFIG", str(tmp_path / "missing.yaml"))
        assert config._load_config() == {}


# ── serialize ──────────────────────────────────────────────────────────────────

class TestSerialize:

    def test_seventeen_digits(self):
        from src.utils.serialize import dumps
        assert dumps(0.1) == "0.10000000000000001"
        assert json.loads(dumps([0.1, 1 / 3])) == [0.1, 1 / 3]

    def test_integral_floats_keep_a_point(self):
        from src.utils.serialize import dumps
        assert dumps(2.0) == "2.0"
        assert dumps(2) == "2"

    def test_numpy_values(self):
        from src.utils.serialize import dumps
        data = json.loads(dumps({"m": np.eye(2), "k": np.int64(4), "x": np.float64(0.5)}))
        assert data == {"m": [[1.0, 0.0], [0.0, 1.0]], "k": 4, "x": 0.5}

    def test_rejects_non_finite(self):
        from src.utils.serialize import dumps
        with pytest.raises(ValueError):
            dumps(float("nan"))

    def test_rejects_unknown_types(self):
        from src.utils.serialize import dumps
        with pytest.raises(TypeError):
            dumps({"x": object()})

    def test_write_json_is_atomic(self, tmp_path):
        from src.utils.serialize import write_json
        target = tmp_path / "nested" / "out.json"
        write_json(target, {"a": [1.5, True, None, "s"]})
        assert json.loads(target.read_text()) == {"a": [1.5, True, None, "s"]}
        assert not list(target.parent.glob(".*.tmp"))


# ── logging ────────────────────────────────────────────────────────────────────

class TestLogging:

    def test_single_stderr_handler(self):
        from src.utils.logging import get_logger
        logger = get_logger("src.tests.sample")
        get_logger("src.tests.sample")
        assert len(logger.handlers) == 1
        assert logger.propagate is False

    def test_env_level(self, monkeypatch):
        from src.utils.logging import get_logger
        monkeypatch.setenv("BMG_LOG_LEVEL", "debug")
        assert get_logger("src.tests.env").level == logging.DEBUG

    def test_numeric_env_level(self, monkeypatch):
        from src.utils.logging import get_logger
        monkeypatch.setenv("BMG_LOG_LEVEL", "30")
        assert get_logger("src.tests.numeric").level == logging.WARNING

    def test_unknown_level_falls_back_to_info(self, monkeypatch):
        from src.utils.logging import get_logger
        monkeypatch.setenv("BMG_LOG_LEVEL", "chatty")
        assert get_logger("src.tests.unknown").level == logging.INFO

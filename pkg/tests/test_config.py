"""Tests for runtime configuration."""

from __future__ import annotations

import importlib
import logging

from src import config
from src.config import HARD_MAX_DEGREE, HARD_TABLE_CAP, RunConfig


class TestRunConfig:
    """Tests for RunConfig clamping and installation."""

    def test_clamps_to_hard_limits(self, caplog):
        """clamped should cut caps down to their hard limits with a warning."""
        with caplog.at_level(logging.WARNING, logger="src.config"):
            run = RunConfig(table_cap=10**6, max_degree=9).clamped()
        assert run.table_cap == HARD_TABLE_CAP
        assert run.max_degree == HARD_MAX_DEGREE
        assert "clamped" in caplog.text

    def test_clamps_below_floor(self):
        """clamped should raise nonpositive worker counts to 1."""
        assert RunConfig(workers=0).clamped().workers == 1

    def test_install_sets_module_defaults(self):
        """install should update the caps read by library calls."""
        saved = RunConfig(
            element_cap=config.ELEMENT_CAP,
            table_cap=config.TABLE_CAP,
            aut_order_cap=config.AUT_ORDER_CAP,
            autset_cap=config.AUTSET_CAP,
            max_degree=config.MAX_DEGREE,
            workers=config.WORKERS,
        )
        try:
            config.install(RunConfig(table_cap=100, workers=3))
            assert config.TABLE_CAP == 100
            assert config.WORKERS == 3
        finally:
            config.install(saved)

    def test_environment_defaults(self, monkeypatch):
        """Environment variables should set the defaults."""
        monkeypatch.setenv("MAOLPERM_TABLE_CAP", "720")
        monkeypatch.setenv("MAOLPERM_LOG_LEVEL", "DEBUG")
        try:
            reloaded = importlib.reload(config)
            assert reloaded.TABLE_CAP == 720
            assert reloaded.LOG_LEVEL == "DEBUG"
        finally:
            monkeypatch.undo()
            importlib.reload(config)

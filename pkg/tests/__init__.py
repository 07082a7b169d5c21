"""Tests for maolperm."""

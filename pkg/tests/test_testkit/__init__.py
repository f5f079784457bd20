"""Tests for the seed library and random generators."""

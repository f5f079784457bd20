"""Tests for enriched categories and the iterated reflection."""

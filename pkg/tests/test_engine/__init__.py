"""Tests for the n-category engine."""

"""Tests for the property suites and their runner."""

"""Tests for ncat-galois."""

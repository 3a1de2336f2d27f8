"""Wavefront extraction and curve reconstruction from band-limited k-space data."""

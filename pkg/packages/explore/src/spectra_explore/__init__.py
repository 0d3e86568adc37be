"""Explore: per-channel exploration schedules and the SPSA controller."""

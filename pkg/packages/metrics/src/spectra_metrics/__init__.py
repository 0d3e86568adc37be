"""Metrics: per-frame traces, normalized series, replication aggregation and CSV publication."""

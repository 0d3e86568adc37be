"""Simcore: frame-synchronous engine, baselines and the replication activity."""

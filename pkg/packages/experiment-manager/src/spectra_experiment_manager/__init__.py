"""Experiment Manager: replication planning, the local runner and the experiment workflow."""

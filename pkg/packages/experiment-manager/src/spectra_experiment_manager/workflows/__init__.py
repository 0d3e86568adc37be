"""Temporal Workflow definitions for the Experiment Manager."""

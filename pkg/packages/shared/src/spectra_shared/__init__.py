"""Shared infrastructure for the Spectra simulation platform.

Provides the Temporal client connection factory, task queue constants,
Pydantic configuration and boundary models, and the seed-stream layout
used by every simulation component.
"""

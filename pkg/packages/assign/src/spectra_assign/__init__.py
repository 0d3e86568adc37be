"""Assign: device-channel value table and hill-climbing channel assignment."""

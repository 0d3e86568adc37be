"""Traffic: PU and SU traffic generation for the frame-synchronous simulator."""

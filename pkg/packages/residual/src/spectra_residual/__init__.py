"""Residual: Dirichlet-categorical and parametric residual OFF-time estimators."""

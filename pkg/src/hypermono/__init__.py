"""Numerical monotonicity and renormalised-area experiments for minimal
surfaces in hyperbolic space and the sphere."""

__version__ = "0.1.0"

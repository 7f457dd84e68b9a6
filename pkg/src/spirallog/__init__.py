"""Truncated power series toolkit for the families ST_ss(lam), G(lam), N(lam)."""

__version__ = "0.1.0"

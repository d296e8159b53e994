"""Symbolic verification toolkit for the degenerate quantum group U_q(gl_{m,n})."""

__version__ = "0.1.0"

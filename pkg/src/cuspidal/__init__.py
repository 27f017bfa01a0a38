"""Finite-scale experiments on Cayley graphs, combinatorial horoballs and cusped spaces."""

__version__ = "0.1.0"

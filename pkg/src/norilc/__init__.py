"""Exact computations with commutant algebras of diagrams and local cohomology of monomial ideals."""

__version__ = "0.1.0"

"""Exact computer algebra for A-infinity structures and their deformations.

The package computes with finite-dimensional A-infinity algebras over Q
or a prime field: validating the defining identities, forming bar
constructions and their truncated dual algebras, enumerating
Maurer-Cartan elements over artinian coefficient rings, running the
obstruction calculus along small extensions, and comparing deformation
functors against algebra homomorphisms out of the dual.
"""

from .scalars import Field, FieldMismatch, Scalar

__all__ = ["Field", "FieldMismatch", "Scalar"]

__version__ = "0.1.0"

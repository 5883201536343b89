"""Exact-arithmetic computation of twistor discriminant loci.

The package computes, entirely in exact arithmetic, the discriminant locus of
an algebraic surface under the fibration CP^3 -> S^4, reduces the Fermat cubic
case through a chain of symmetry-adapted coordinate changes to a trivariate
quartic, certifies the topology of the resulting semi-algebraic sets with a
cylindrical algebraic decomposition engine, and classifies singular surfaces
through a graph encoding of their cell complexes.
"""

from .scalars import Rational, QuadExt, Complex, Quaternion, Mobius, S4Point
from .mpoly import MultiPoly, poly_from_json, poly_to_json

__all__ = [
    "Rational",
    "QuadExt",
    "Complex",
    "Quaternion",
    "Mobius",
    "S4Point",
    "MultiPoly",
    "poly_from_json",
    "poly_to_json",
]

__version__ = "0.1.0"

"""Exact integral lattice tools for definite fillings of knot surgeries."""

from .lattice import Lattice, LatticeError, LatticeVector, complement, diag, direct_sum, negate
from .names import LatticeName, make

__version__ = "0.1.0"

__all__ = ["Lattice", "LatticeError", "LatticeVector", "LatticeName", "complement", "diag",
           "direct_sum", "make", "negate"]

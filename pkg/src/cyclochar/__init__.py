"""Exact Hopf-cyclic cocycles and characteristic classes for the Connes-Moscovici Hopf algebras."""

from .hopf import HopfHn
from .lie import GlData
from .linalg import FreeVector

__all__ = ["FreeVector", "GlData", "HopfHn"]
__version__ = "0.1.0"

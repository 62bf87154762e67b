"""cxkit: exact block differential operators generated by elliptic complexes.

The package constructs Maxwell- and Stokes-type block operators from a
differential complex, verifies their algebraic factorizations with exact
Gaussian-rational polynomial arithmetic, and certifies ellipticity both
symbolically and numerically.
"""

from cxkit.poly import GaussianRational, Poly, PolyMatrix

__all__ = ["GaussianRational", "Poly", "PolyMatrix"]

__version__ = "0.1.0"

"""cheborbit: exact Chebyshev endomorphisms on dihedral orbit varieties.

Construction of the multidimensional Chebyshev maps on C^2 and C^3, the
induced integer morphisms on the orbit varieties of the dihedral actions,
machine verification of their algebraic identities (equivariance,
composition law, semiconjugacies on invariant subvarieties, branch-locus
resultants), and numeric sampling of bounded-orbit sets for figure data.
"""

from .scalars import CycRational
from .polynomials import MultiPoly, PolyMap, parse_poly

__version__ = "0.1.0"

__all__ = ["CycRational", "MultiPoly", "PolyMap", "parse_poly", "__version__"]

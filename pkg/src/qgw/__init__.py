"""qgw: exact symbolic verification of the quantum groups G_{r,s} and G_{m,k}.

Exact rational-function scalars, noncommutative rewriting with overlap
checking, R-matrix checks (QYBE, triangularity, contraction limits), Hopf
structure checks and the realisation morphisms onto GL_{p,q}(2) and
GL_{h,h'}(2).
"""

from .errors import QGWError
from .linalg import Matrix
from .ncpoly import NCPoly
from .presentations import Presentation, catalog, parse_presentation
from .report import CheckReport
from .scalar import Scalar

__version__ = "0.1.0"

__all__ = ["CheckReport", "Matrix", "NCPoly", "Presentation", "QGWError", "Scalar", "catalog",
           "parse_presentation", "__version__"]

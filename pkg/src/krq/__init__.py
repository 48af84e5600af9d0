"""krq: exact Kirillov-Reshetikhin character computations.

Computes KR characters through the Q-system over the exact character ring
Z[P], verifies the linear difference operators annihilating them, evaluates
lattice-point decomposition formulas and dimension quasipolynomials, and
exposes every check through a CLI (``krq --help``).
"""

from .rootdata import LieType, RootDatum, build_root_datum
from .poly import LaurentPoly, ExactDivisionError

__all__ = [
    "LieType",
    "RootDatum",
    "build_root_datum",
    "LaurentPoly",
    "ExactDivisionError",
]

__version__ = "0.1.0"

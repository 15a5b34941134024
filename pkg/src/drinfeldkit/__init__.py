"""Exact computations with Drinfeld modules over F_q[T], the Bruhat-Tits tree of
PGL_2(F_inf) and harmonic cochains on its Gamma_0(n) quotients."""

__version__ = "0.1.0"

from .fields import GF, DomainError, FiniteField
from .polys import Poly, RationalFunc, enumerate_monic_irreducibles, factor, is_irreducible
from .laurent import LaurentSeries, PrecisionError
from .skew import SkewPoly
from .drinfeld import AField, DrinfeldModule, torsion_module
from .tree import DepthError, Gamma0, quotient_graph
from .harmonic import Cochain, eisenstein_cochain, harmonic_basis, hecke_matrix
from .cuspidal import cuspidal_order_rank2, cuspidal_order_rank_r, eisenstein_index

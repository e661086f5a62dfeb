"""Exact spectral analysis of finite-dimensional associative algebras.

Everything is computed over the rationals: the characteristic form
``det(lam A|_F + mu A^T|_F)`` of an algebra at a functional F, its
stabilizers and generalized spectral blocks, small-dimensional normal
forms, and the dual-pair description of unital index-one algebras.
"""

from .algebra import Algebra, Subspace, Violation, change_basis, check_associativity, find_unity, registry
from .errors import AlgebraError
from .exact import BinaryForm, FactoredForm, Matrix, UnivariatePoly
from .pencil import INF, SpectralValue, charpoly, lie_index, sample_generic, stabilizer
from .jordan import decompose, verify_vn

__all__ = [
    "Algebra",
    "AlgebraError",
    "BinaryForm",
    "FactoredForm",
    "INF",
    "Matrix",
    "SpectralValue",
    "Subspace",
    "UnivariatePoly",
    "Violation",
    "change_basis",
    "charpoly",
    "check_associativity",
    "decompose",
    "find_unity",
    "lie_index",
    "registry",
    "sample_generic",
    "stabilizer",
    "verify_vn",
]

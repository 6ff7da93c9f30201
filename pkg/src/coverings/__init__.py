"""Exact computations with coverings of finite-dimensional algebras by ideals.

A covering gives an algebra ``A = ⊕ B/J_i`` over ``B`` and a coring
``C = ⊕ B/(J_i + J_j)`` over ``A``.  The package builds both, checks the
coring axioms exactly, compares ``C`` with the Sweedler coring ``A ⊗_B A``
and decides completeness, the Galois property and projectivity.
"""

__version__ = "0.1.0"

from .linalg import QQ, GF, Field, Matrix, Subspace
from .algebra import (
    Algebra,
    AlgebraMorphism,
    TwoSidedIdeal,
    function_algebra,
    ideal_closure,
    matrix_algebra,
    radical_square_zero,
    validate_algebra,
    vanishing_ideal,
)
from .bimodule import BalancedTensor, Bimodule, BimoduleMorphism
from .coring import Coring, SweedlerCoring, coinvariants, galois_verdict, verify_coring
from .covering import (
    Covering,
    CoveringError,
    covering_report,
    is_complete,
    is_projective,
    validate_covering,
)
from .fixtures import FixtureDocument, FixtureError, load, random_covering, save

__all__ = [
    "QQ", "GF", "Field", "Matrix", "Subspace",
    "Algebra", "AlgebraMorphism", "TwoSidedIdeal", "function_algebra", "ideal_closure",
    "matrix_algebra", "radical_square_zero", "validate_algebra", "vanishing_ideal",
    "BalancedTensor", "Bimodule", "BimoduleMorphism",
    "Coring", "SweedlerCoring", "coinvariants", "galois_verdict", "verify_coring",
    "Covering", "CoveringError", "covering_report", "is_complete", "is_projective", "validate_covering",
    "FixtureDocument", "FixtureError", "load", "random_covering", "save",
]

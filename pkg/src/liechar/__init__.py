"""Exact character calculus for reductive groups in positive characteristic.

Weyl characters, Frobenius twists, decomposition numbers, composition
multiplicities over the finite groups of Lie type, and mechanical checks
of the Chastkofsky-Jantzen multiplicity identities.
"""

from .characters import (
    Character,
    formal_dual,
    frobenius_twist,
    multiply,
    steinberg_character,
    to_weyl_basis,
    weyl_character,
)
from .decomp import (
    DecompositionProvider,
    FileDecompositionProvider,
    Sl2DecompositionProvider,
    basis_change_matrices,
    load_decomposition_data,
    simple_character,
    sl2_decomposition_row,
    to_simple_basis,
)
from .errors import (
    CoverageError,
    DataValidationError,
    DivisionFailure,
    LiecharError,
    NonDominantError,
    NonInvariantError,
    NotFiniteTypeError,
    RankMismatchError,
)
from .finite import (
    finite_composition_multiplicities,
    finite_simple_multiplicities,
    nu_bound,
    steinberg_multiplicity,
)
from .pims import (
    MultiplicityTable,
    QrData,
    barq_multiplicities,
    character_divide,
    cj_lhs,
    cj_rhs,
    cj_table,
    gk_truncated_character,
    induced_socle_multiplicity,
    jantzen_identity_check,
    qr_character,
    theorem45a_socle_check,
)
from .rootdata import BUILTIN_CARTAN_MATRICES, CartanMatrix, RootSystem, build_root_system

__version__ = "0.1.0"

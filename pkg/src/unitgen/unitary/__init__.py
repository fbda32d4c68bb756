"""The algebra M_n x M_n with the swap-transpose involution."""

from .model import (
    UnitaryModel, hermitian_algebra, make_model, matrix_algebra, omega, stabilizer_space,
    sym_unit, unit_matrix, upper_shift,
)
from .classify import (
    Conjugator, Generates, InvariantSubspace, TheoryViolation, check_witness, classify,
    common_eigenspaces, conjugator_space, find_invariant_subspace, find_invertible,
    serialize_tuple, witness_classes,
)
from .formulas import DimRecord, OrbitDatum, components, dims, general_dim_Zr, orbit_data
from .generators import (
    KINDS, GeneratorSet, GenSearch, coordinate_subspace, explicit_generators,
    gen_count_bruteforce, pick_alpha,
)
from .identities import (
    IdentityReport, containment_identity, identity_suite, nonclosed_witness, shift_unit_expected,
)

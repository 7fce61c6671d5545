"""Exact Lie rings over F_p, F_{p^k} and Q: constructions, structure,
sl2/ga1 recognition, lemma checks and a small-dimension census."""

from .analysis import (
    RecognitionReport,
    Sl2Triple,
    central_quotient,
    derivation_space,
    find_soluble_through,
    recognize_ga1,
    recognize_sl2,
    verify_isomorphism,
)
from .census import CensusResult, census_dim3
from .chevalley import ChevalleySigns, RootSystemData, chevalley_signs, root_system
from .constructions import (
    build,
    change_basis,
    direct_sum,
    make_abelian,
    make_chevalley,
    make_ga1,
    make_ga1_twisted,
    make_heisenberg,
    make_sl2,
    make_witt,
    random_basis_change,
    restrict_to_subring,
)
from .errors import (
    BudgetError,
    DimensionMismatchError,
    DocumentError,
    ExcludedCharacteristicError,
    FieldMismatchError,
    JacobiError,
    LemmaFailure,
    LieLabError,
    NotAnIdealError,
    NotASubringError,
)
from .fields import GF, QQ, Field, Scalar, field_arith, parse_field
from .lemmas import (
    LemmaVerdict,
    check_lemma_Cn,
    check_lemma_divisors,
    check_lemma_lifting,
    check_lemma_prehrushovski,
    check_lemma_rosengarten,
    check_lemma_selfnorm,
    randomized_lemma_sweep,
)
from .linalg import Matrix, Subspace, charpoly, echelonize, eigenspace, kernel, subspace_ops
from .ring import LieRing, ad_matrix, bracket, verify_jacobi
from .structure import (
    center,
    centralizer_C,
    centralizer_of_set,
    derived_series,
    grading,
    ideal_closure,
    image_B,
    is_ideal,
    is_nilpotent,
    is_simple,
    is_soluble,
    is_subring,
    lower_central_series,
    normalizer,
    quotient,
    simplicity,
)

__version__ = "0.1.0"

"""Galois ring arithmetic, character sums, and low-correlation codebooks."""

from .errors import (
    BadLevel,
    DegenerateDimensions,
    GaloisSumsError,
    InvalidModulus,
    NotAUnit,
    NotInBaseRing,
    NotPrimePower,
    RingMismatch,
    SizeLimit,
    TooLarge,
)
from .ring import (
    GaloisRing,
    Polynomial,
    RingElement,
    RingParams,
    build_ring,
    find_basic_primitive_poly,
)
from .characters import (
    AdditiveCharacter,
    MultCharacter,
    RootOfUnity,
    SubgroupCharacter,
    UnitGroupBasis,
    additive_char_eval,
    char_inv,
    char_mul,
    character_table_json,
    classify,
    decompose_unit_group,
    enumerate_characters,
    extend_phi,
    lift_character,
    phi_a,
    product_character,
    project_character,
    section_json,
)
from .sums import (
    Expected,
    SumValue,
    canonical_twists,
    canonicalize,
    count_unit_solutions,
    count_unit_solutions_brute,
    expected_gauss,
    gauss_sum,
    jacobi,
    jacobi_brute,
    jacobi_expected,
    s_cardinality,
    s_cardinality_qn,
    term_tolerance,
    tilde_jacobi_brute,
    tilde_jacobi_classify,
)
from .codebook import (
    Codebook,
    CodebookParams,
    EvalReport,
    Table2Row,
    asymptotic_ratio,
    build_codebook,
    codebook_size,
    export_codebook,
    imax_exhaustive,
    imax_formula,
    imax_remark,
    import_codebook,
    table2,
    welch_bound,
)
from .verify import SUITES, SuiteResult, run_suite

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

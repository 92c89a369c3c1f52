"""Exact invariants of projective line arrangements.

The package computes, with exact rational and finite-field arithmetic
throughout: intersection lattices, multinet structures, modular
Aomoto-Betti numbers, graded pieces of Jacobian quotient rings, Steenbrink
spectra with their monodromy eigenvalue tables and Thom-Sebastiani joins,
cubical-diagram combinatorics, and the Alexander polynomial of line
arrangements whose lines all pass through one of two points (which it
proves trivial, (t-1)^(n-1), by the invariant-dimension bound).
"""

__version__ = "0.1.0"

from .alexpipe import (
    AlexanderReport,
    ConjecturalReport,
    CycloPoly,
    MonodromyAction,
    PencilFamily,
    alexander_bipencil,
    conjectural_alexander,
    cyclotomic_polynomial,
    epsilon_solve,
    fiber_polynomial,
    fiber_polynomial_at_infinity,
    generic_alexander_shape,
    invariant_bound,
    invariant_graded_dim,
    invariant_monomial_count,
    pick_generic_parameter,
    singular_locus,
    special_fibers,
)
from .arrangement import (
    Arrangement,
    BiPencil,
    FlatPoint,
    IntersectionLattice,
    Line,
    PencilForm,
    parse_arrangement,
    parse_input,
    serialize_arrangement,
)
from .cubical import (
    CubicalDiagram,
    MorphismDescriptor,
    SpaceDescriptor,
    Theorem2Verdict,
    as_morphism_of_cubes,
    check_theorem2,
    reshape_2x2,
    semisimplicialize,
)
from .errors import (
    BudgetExceededError,
    ConsistencyError,
    DegenerateCaseError,
    InputError,
    LinarrError,
    NonIsolatedSingularityError,
    NotBiPencilError,
)
from .gradedalg import (
    GradedQuotientReport,
    Poly,
    graded_quotient_dim,
    jacobian_generators,
    parse_poly,
)
from .multinet import (
    MultinetCandidate,
    MultinetVerdict,
    check_multinet,
    search_multinets,
    support,
)
from .resonance import AomotoComplexSlice, aomoto_betti, aomoto_complex
from .spectrum import (
    MonodromyTable,
    SpectrumEntry,
    spectrum_to_table,
    steenbrink_spectrum,
    thom_sebastiani_join,
)

__all__ = [
    "AlexanderReport",
    "AomotoComplexSlice",
    "Arrangement",
    "BiPencil",
    "BudgetExceededError",
    "ConjecturalReport",
    "ConsistencyError",
    "CubicalDiagram",
    "CycloPoly",
    "DegenerateCaseError",
    "FlatPoint",
    "GradedQuotientReport",
    "InputError",
    "IntersectionLattice",
    "Line",
    "LinarrError",
    "MonodromyAction",
    "MonodromyTable",
    "MorphismDescriptor",
    "MultinetCandidate",
    "MultinetVerdict",
    "NonIsolatedSingularityError",
    "NotBiPencilError",
    "PencilFamily",
    "PencilForm",
    "Poly",
    "SpaceDescriptor",
    "SpectrumEntry",
    "Theorem2Verdict",
    "alexander_bipencil",
    "aomoto_betti",
    "aomoto_complex",
    "as_morphism_of_cubes",
    "check_multinet",
    "check_theorem2",
    "conjectural_alexander",
    "cyclotomic_polynomial",
    "epsilon_solve",
    "fiber_polynomial",
    "fiber_polynomial_at_infinity",
    "generic_alexander_shape",
    "graded_quotient_dim",
    "invariant_bound",
    "invariant_graded_dim",
    "invariant_monomial_count",
    "jacobian_generators",
    "parse_arrangement",
    "parse_input",
    "parse_poly",
    "pick_generic_parameter",
    "search_multinets",
    "semisimplicialize",
    "serialize_arrangement",
    "singular_locus",
    "special_fibers",
    "spectrum_to_table",
    "steenbrink_spectrum",
    "support",
    "thom_sebastiani_join",
]

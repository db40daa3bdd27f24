"""freetrace: exact trace-implication certificates for free noncommutative
polynomials, effective degree bounds, and constructive tracial moment
realization, with a numeric witness search for refutations."""

from .bounds import degree_bound, degree_bound_refined, matrix_size_bound
from .certify import (
    Certificate,
    LinearSystem,
    build_system,
    certify,
    certify_membership,
    certify_scalar,
    solve_exact,
)
from .cyclic import (
    CyclicVector,
    class_representatives,
    cyclic_canonicalize,
    is_cyc_equivalent,
    min_rotation,
    primitive_period,
)
from .mateval import (
    MatrixTuple,
    RationalMatrix,
    complexify_double,
    eval_poly,
    trace_eval,
)
from .moment import (
    Realization,
    TracialMomentSequence,
    atom_for_class,
    check_constraints,
    extract_moments,
    realize,
    validate_sequence,
)
from .poly import (
    MINUS_INF,
    FreePoly,
    ParseError,
    commutator,
    format_poly,
    parse,
)
from .witness import (
    IsolationError,
    WitnessReport,
    exact_constraint_tuples,
    search_witness,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "CyclicVector",
    "FreePoly",
    "IsolationError",
    "LinearSystem",
    "MatrixTuple",
    "MINUS_INF",
    "ParseError",
    "Realization",
    "RationalMatrix",
    "TracialMomentSequence",
    "WitnessReport",
    "atom_for_class",
    "build_system",
    "certify",
    "certify_membership",
    "certify_scalar",
    "check_constraints",
    "class_representatives",
    "commutator",
    "complexify_double",
    "cyclic_canonicalize",
    "degree_bound",
    "degree_bound_refined",
    "eval_poly",
    "exact_constraint_tuples",
    "extract_moments",
    "format_poly",
    "is_cyc_equivalent",
    "matrix_size_bound",
    "min_rotation",
    "parse",
    "primitive_period",
    "realize",
    "search_witness",
    "solve_exact",
    "trace_eval",
    "validate_sequence",
]

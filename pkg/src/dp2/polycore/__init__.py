"""Exact arithmetic and sparse multivariate polynomial algebra."""

from .arith import (
    NotDivisible,
    SquarefreeReport,
    divides,
    exact_div,
    from_univariate_coeffs,
    poly_gcd_univariate,
    primitive_part,
    squarefree,
    squarefree_decomposition,
    univariate_coeffs,
    univariate_divmod,
    univariate_gcd,
)
from .groebner import (
    DEFAULT_PRIMES,
    BudgetExceeded,
    GroebnerResult,
    TrivialityVerdict,
    buchberger_trivial,
    groebner_basis,
    ideal_triviality,
    normal_form,
    s_polynomial,
    step_budget,
)
from .poly import (
    DEGREE_OF_ZERO,
    GF,
    QQ,
    Bidegree,
    CoefficientError,
    DegreeOfZero,
    Domain,
    InhomogeneityReport,
    MultiPoly,
    PolyRing,
    PrimeField,
    RationalField,
    grevlex_key,
    ring,
    weighted_degree,
)
from .resultant import (
    det_bareiss,
    discriminant_binary,
    resultant,
    resultant_with_cofactors,
    sylvester_matrix,
)

__all__ = [name for name in dir() if not name.startswith("_")]

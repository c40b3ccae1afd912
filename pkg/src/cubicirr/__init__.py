"""Counting irreducible polynomials whose cubic transform stays irreducible."""

from .counting import (
    Breakdown,
    CountResult,
    I_func,
    breakdown,
    count,
    count_brute,
    count_capelli,
    count_inversion,
    mobius_mu,
    n3,
)
from .curves import CurveCount, count_points, delta_poly, hasse_weil_check, resolvent_pair
from .errors import (
    ClassificationError,
    CubicIrrError,
    InvariantError,
    LimitError,
    SearchBudgetError,
    ValidationError,
)
from .field import (
    Embedding,
    FieldElem,
    FieldSpec,
    absolute_trace,
    enumeration_limit,
    extend,
    field_new,
    field_of_order,
    get_limit,
    quadratic_character,
    set_limit,
)
from .formulas import (
    FormulaResult,
    dispatch,
    f_char3_32,
    f_char3_lin,
    f_genus_one_bound,
    f_three_ram,
    f_two_ram,
    f_x3,
)
from .poly import (
    CubicPattern,
    Poly,
    count_roots_in,
    cubic_discriminant,
    cubic_pattern,
    enumerate_monic_irreducible,
    format_poly,
    is_irreducible,
    parse_poly,
    quadratic_resolvent,
)
from .ratexpr import (
    CanonicalClass,
    Classification,
    Mobius,
    RatExpr,
    canonical_forms,
    classify,
    equivalent,
    normalize_cubic,
    parse_ratexpr,
    post_compose,
    pre_compose,
    ramification_data,
    transform,
)
from .tsr import TsrCount, gl_order, tsr_count_formula, tsr_count_sum, tsr_normalize

__version__ = "0.1.0"

"""Exact Kloosterman/Gauss/Ramanujan sums over F_q[T]/<F>, congruence
counting functions, bilinear-form bounds, and a verification harness."""

from .approx import dirichlet_approx
from .bilinear import (
    WeightSeq,
    bg_type1,
    bg_type2_interval,
    bg_type2_set,
    bk_plain,
    bk_type1_interval,
    bk_type1_set,
    kloosterman_form_trivial_report,
    make_weights,
    theorem_check,
)
from .charmod import (
    CharContext,
    CycValue,
    char_exponent,
    e_f,
    e_f_lambda,
    get_context,
    interval_char_sum,
    interval_char_sum_literal,
    interval_char_sum_prefixes,
    residue_coeff,
    residue_coeff_laurent,
)
from .counting import (
    Interval,
    energy_inv,
    energy_inv_report,
    energy_sq,
    energy_sq_report,
    energy_sqrt,
    energy_sqrt_report,
    hyperbola_count,
    hyperbola_coprime_report,
    hyperbola_divisor_report,
    inverse_avg_count,
    inverse_avg_improved_report,
    inverse_avg_initial_report,
    inverse_avg_interval_report,
    inverse_divisor_report,
    inverse_explicit_report,
    inverse_pair_count,
)
from .errors import (
    DivisionByZero,
    FFSumsError,
    HypothesisViolation,
    IncompatibleCyclotomicOrder,
    InvalidParameter,
    InvalidSupport,
    NotFactorable,
    NotInvertible,
    UndefinedGcd,
    UnsupportedCharacteristic,
)
from .expsum import (
    epsilon_f,
    gauss,
    gauss_reduced,
    gauss_reduced_bound_sq,
    kloosterman,
    kloosterman_bound_sq,
    kloosterman_explicit,
    ramanujan,
    ramanujan_bound,
    t_sum,
    t_sum_bound_exponent,
    t_sum_case_value,
)
from .field import FieldElem, FieldSpec, parse_field_spec
from .harness import (
    ValueRecord,
    report_writer,
    run_all_checks,
    run_named_check,
    scan_reports,
    slack_summary,
)
from .polyring import (
    Modulus,
    Poly,
    ext_gcd,
    factor,
    format_poly,
    gcd_list_monic,
    gcd_monic,
    inv_mod,
    irreducible_monic_polys,
    is_irreducible,
    jacobi_symbol,
    mobius_q,
    monic_divisors,
    monic_polys_of_degree,
    num_monic_divisors,
    omega,
    parse_poly,
    poly_from_index,
    poly_index,
    polys_below_degree,
    pretty,
)
from .records import BoundReport

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CharContext",
    "CycValue",
    "DivisionByZero",
    "FFSumsError",
    "FieldElem",
    "FieldSpec",
    "HypothesisViolation",
    "IncompatibleCyclotomicOrder",
    "Interval",
    "InvalidParameter",
    "InvalidSupport",
    "Modulus",
    "NotFactorable",
    "NotInvertible",
    "Poly",
    "UndefinedGcd",
    "UnsupportedCharacteristic",
    "ValueRecord",
    "WeightSeq",
    "bg_type1",
    "bg_type2_interval",
    "bg_type2_set",
    "bk_plain",
    "bk_type1_interval",
    "bk_type1_set",
    "char_exponent",
    "dirichlet_approx",
    "e_f",
    "e_f_lambda",
    "energy_inv",
    "energy_inv_report",
    "energy_sq",
    "energy_sq_report",
    "energy_sqrt",
    "energy_sqrt_report",
    "epsilon_f",
    "ext_gcd",
    "factor",
    "format_poly",
    "gauss",
    "gauss_reduced",
    "gauss_reduced_bound_sq",
    "gcd_list_monic",
    "gcd_monic",
    "get_context",
    "hyperbola_coprime_report",
    "hyperbola_count",
    "hyperbola_divisor_report",
    "interval_char_sum",
    "interval_char_sum_literal",
    "interval_char_sum_prefixes",
    "inv_mod",
    "inverse_avg_count",
    "inverse_avg_improved_report",
    "inverse_avg_initial_report",
    "inverse_avg_interval_report",
    "inverse_divisor_report",
    "inverse_explicit_report",
    "inverse_pair_count",
    "irreducible_monic_polys",
    "is_irreducible",
    "jacobi_symbol",
    "kloosterman",
    "kloosterman_bound_sq",
    "kloosterman_explicit",
    "kloosterman_form_trivial_report",
    "make_weights",
    "mobius_q",
    "monic_divisors",
    "monic_polys_of_degree",
    "num_monic_divisors",
    "omega",
    "parse_field_spec",
    "parse_poly",
    "poly_from_index",
    "poly_index",
    "polys_below_degree",
    "pretty",
    "ramanujan",
    "ramanujan_bound",
    "report_writer",
    "residue_coeff",
    "residue_coeff_laurent",
    "run_all_checks",
    "run_named_check",
    "scan_reports",
    "slack_summary",
    "t_sum",
    "t_sum_bound_exponent",
    "t_sum_case_value",
    "theorem_check",
]

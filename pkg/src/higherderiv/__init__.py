"""Exact construction and verification of higher {g_n,h_n}-derivations."""

from .algebra import (Algebra, builtin, check_associativity, dual_numbers, inner_derivation,
                      jordan, matrix_algebra, mul, upper_triangular)
from .exactmath import Matrix, format_rat, mat_lincomb, mat_mul, parse_rat, rat
from .higher import (CharSequence, HigherSystem, PreconditionError, build_from_char,
                     closed_form_from_char, extract_char, higher_violation, is_higher_derivation,
                     is_jordan_higher_derivation, jordan_higher_violation, ordinary_higher,
                     random_char_sequence, search_jordan_counterexample)
from .maps import (LinearMap, MapTriple, Violation, compose, gh_from_inner_plus_scalar,
                   gh_violation, identity, is_gh_derivation, is_jordan_gh_derivation,
                   jordan_gh_violation, zero)
from .symbolic import (NCPolynomial, coefficient, compositions, evaluate, expand_f,
                       expand_via_recursion)

__version__ = "0.1.0"

"""Exact-arithmetic toolkit for Leibniz n-algebras over the rationals."""
__version__ = "0.1.0"

from .core import (Algebra, AlgebraDefinition, build_algebra, algebra_from_products, multiply,
                   verify_fundamental_identity, ideal_closure, is_ideal, restrict,
                   quotient_algebra, squares_ideal, direct_sum, change_of_basis)
from .linalg import Subspace, LinearOperator
from .catalog import (abelian, chain, example_3_10, example_3_11, example_5_2, example_5_4,
                      supplemented, example_catalog, default_catalog, load_algebra, save_algebra,
                      parse_definition, dumps_definition)
from .series import (SeriesChain, s_central_series, lower_series, k_derived_series, k1_series,
                     is_s_nilpotent, is_nilpotent, is_k_solvable, is_k1_nilpotent, derived_power)
from .operators import (right_mult, derivation_algebra, is_derivation, fitting_decomposition,
                        root_space_decomposition, eigen_witness_search, regular_element_search,
                        engel_check, exp_special_automorphism)
from .structure import (normalizer, s_normalizer, is_subalgebra, frattini, frattini_ideal,
                        frattini_pipeline, jacobson_radical, is_simple)
from .radicals import radical, all_radicals, has_property
from .cartan import (CartanReport, NonConjugacyEvidence, is_cartan, fitting_cartan_criterion,
                     cartan_from_regular, cartan_search, example_5_4_candidates,
                     regular_witness_check)

"""Exact computations with finite-dimensional algebras graded by finitely
generated abelian groups: structural predicates, graded constructions, shifted
free modules, graded K₀ and its torsion behaviour under base extension."""
from .grade_group import CosetSpace, GradeGroup, GroupElement, Subgroup, coset_space
from .linalg import GF, QQ, Field, PrimeField, RationalField, Subspace, smith_normal_form
from .algebra import (AlgebraError, GradedAlgebra, ValidationReport, degree_zero_part, direct_product,
                      embed_pair, matrix_shift, opposite, quotient_algebra, regrade, subalgebra,
                      tensor_product, ungraded, validate)
from .constructions import (CocycleError, FiniteGroup, from_provenance, ground_field, group_algebra,
                            quaternion_algebra, small_groups, twisted_group_algebra, upper_triangular)
from .structure import (Decision, brute_force_block_count, brute_force_graded_simple, brute_force_radical,
                        center, center_ungraded, count_simple_blocks, graded_ideal_closure, invertible_support,
                        is_graded_central_simple, is_graded_division_ring, is_graded_field, is_graded_simple,
                        jacobson_radical, support)
from .modules import (PatternMatrix, ShiftedFreeModule, dimension_formula_check, exhaustive_shift_iso,
                      extend_homogeneous_basis, gamma_star_membership, is_shift_iso, matching_shift_iso,
                      verify_morita_identities)
from .azumaya import azumaya_over_center, demeyer_janusz, is_graded_azumaya, psi_matrix
from .k0 import (HypothesisError, K0Group, K0Map, UnsupportedRouteError, dfunctor_axiom_suite, eta_law,
                 is_strongly_graded, k0_ungraded, k0gr, k0gr_map, torsion_hypotheses, torsion_report)
from .fileformat import AlgebraFileError, emit, parse, read_file, write_file

__version__ = "0.1.0"

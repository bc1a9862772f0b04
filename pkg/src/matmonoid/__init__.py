"""Exact structure theory of the multiplicative monoid of n x n matrices
over a finite field: rank-ideal units in closed form, subspace idempotents,
groupoid-algebra homomorphisms, simple modules and branching, the
strip-combinatorics multiplicity inversion, a double-centralizer theorem
for tensor powers, and the discovery pipeline that solves the class-indexed
linear system exactly and interpolates it in q.

All arithmetic is exact: field elements are table-driven indices, matrix
algebra runs over F_q, and coefficients are rationals.
"""

from .errors import BudgetExceededError, InconsistentSamplesError, \
    InsufficientSamplesError, InterpolationError
from .fq import FieldSpec, field_new
from .matfq import (MatFq, SemiIdemType, enumerate_matrices,
                    enumerate_semi_idempotents, is_semi_idempotent, mat_mul,
                    mat_pow, mat_rank, partial_injective_jordan, rank_sequence,
                    semi_idem_type, semi_idempotent_types, stable_rank,
                    transpose)
from .exact import (Laurent, Rat, RatMatrix, laurent_interpolate, null_space,
                    rat_inverse, rat_rank, rat_solve)
from .qcomb import (PartitionFn, gl_order, is_horizontal_strip,
                    is_vertical_strip, mu, op_A, op_B, partitions, q_binomial,
                    sum_identity_check)
from .algebra import (AlgElem, E_prime_W, alg_add, alg_basis, alg_mul,
                      alg_scale, e_matrix, epsilon_WU, epsilon_star_WU, eta_W,
                      eta_r, eta_r_alt, kuhn_check, transpose_antiinvolution,
                      verify_unit)
from .subgrpd import (GroupoidElem, Subspace, canonical_iso,
                      enumerate_subspaces, groupoid_mul,
                      groupoid_to_matrix_algebra, preimage_of_groupoid_basis,
                      psi_full, psi_r)
from .kovacs import (build_system, compare_with_closed_form,
                     interpolate_coeffs, solve_unit_coeffs)
from .lemmalab import (check_inner_sum, check_vanishing_sum,
                       count_extensions_jordan, e_counts, h_ell)
from .repmod import (GroupRep, MonoidModule, build_L, builtin_irreps,
                     character, decompose, multiplicities_m_from_n,
                     multiplicities_n_from_m, parabolic_induction_char,
                     restrict_to_group_char, restrict_to_submonoid,
                     self_duality_check)
from .schurweyl import (BimoduleSpace, commutant_dimension, image_dimension,
                        sw_dimension_identity, tensor_trace_check)

__all__ = [name for name in dir() if not name.startswith("_")]

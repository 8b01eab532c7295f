"""Finite-algebra workbench: inverse semigroups, additively idempotent
semirings, word families, and exhaustive or hierarchical identity checking.
"""

from .core_algebra import (FiniteSemigroup, GeneratorSet, LimitExceeded,
                           NotInverse, compute_inverses, from_cayley_text,
                           generate_closure, idempotents, subsemigroup,
                           to_cayley_text, verify_associativity,
                           with_inverses)
from .families import (AbelianGroupSpec, PartialInjection, Sigma7Views,
                       abelian_group, adjoin_identity, b2, b21,
                       brandt_over_group, brandt_semigroup, direct_product,
                       format_matrix, format_partial_injection,
                       kadourek_generators, kadourek_semigroup, parse_matrix,
                       parse_partial_injection, partial_compose,
                       partial_invert, rook_monoid, rook_monoid_restricted_3,
                       sigma7)
from .order_semiring import (AiSemiring, MissingInverses, NaturalOrder,
                             NotASemilattice, aperiodicity_index,
                             from_semiring_text, inf_table, make_nat_semiring,
                             nat_sum_formula, natural_order, to_semiring_text,
                             validate_ai_semiring)
from .terms import (BadParameters, ComposedWord, FlavorMismatch, SemiringTerm,
                    SLeaf, SPlus, STimes, UnaryTerm, Word, build_u, build_v,
                    build_v_composed, build_w, evaluate, parse_term,
                    phi_psi, print_term, rewrite_plus, substitute, x)
from .checker import (BudgetExceeded, IdentityReport, ImageSet, TransferReport,
                      check_idempotent_image, check_identity, image_set,
                      render_report, transfer_spotcheck)
from .structure import (BrandtTag, GroupTag, HmClassification, JClasses,
                        NotIdempotent, OtherTag, PrincipalSeries,
                        UnrecognizedFactor, classify_factor, classify_hm,
                        is_combinatorial, j_classes, maximal_subgroup,
                        principal_series, rees_quotient, render_analysis)
from .claims import (BadSpec, Claim, ClaimResult, REGISTRY, build_algebra,
                     run_claim, run_claims, select_claims)

__all__ = [name for name in dir() if not name.startswith("_")]

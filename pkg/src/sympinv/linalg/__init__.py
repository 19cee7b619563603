from .mat import Mat, Subspace, dot, express_in_rows, krylov, mat_poly, vec_poly, vector_annihilator
from .canonical import (
    SimilarityInvariants,
    conjugating_matrix,
    cyclic_decomposition,
    eldiv_multiset,
    invariant_factors,
    is_similar,
    linear_elementary_divisors,
    max_order_vector,
    minimal_polynomial,
    rcf_transform,
    similarity_invariants,
    smith_invariant_factors,
    spaces,
)
from .factorizations import (
    gl_inv_skew_factorization,
    gl_reversal_conjugator,
    jordan_chevalley,
    skew_cyclic_normal_form,
    skew_reverser_cyclic,
    sqrt_unipotent,
    symmetric_pair_factorization,
    wonenburger_involutions,
)

__all__ = [
    "Mat",
    "Subspace",
    "SimilarityInvariants",
    "conjugating_matrix",
    "cyclic_decomposition",
    "dot",
    "eldiv_multiset",
    "express_in_rows",
    "gl_inv_skew_factorization",
    "gl_reversal_conjugator",
    "invariant_factors",
    "is_similar",
    "jordan_chevalley",
    "krylov",
    "linear_elementary_divisors",
    "mat_poly",
    "max_order_vector",
    "minimal_polynomial",
    "rcf_transform",
    "similarity_invariants",
    "skew_cyclic_normal_form",
    "skew_reverser_cyclic",
    "smith_invariant_factors",
    "spaces",
    "sqrt_unipotent",
    "symmetric_pair_factorization",
    "vec_poly",
    "vector_annihilator",
    "wonenburger_involutions",
]

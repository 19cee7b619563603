from .space import (
    NotSymplecticError,
    SymplecticElement,
    SymplecticSpace,
    hyperbolic_basis,
    is_skew_symplectic,
    is_symplectic,
    random_symplectic,
    restrict_block,
    standard_gram,
    transvection,
)
from .wall import (
    BigTransvectionData,
    WallFormData,
    big_transvection_data,
    complementary_lagrangian,
    g_form,
    induced_on_bahn_mod_fix,
    is_big_transvection,
    is_unipotent_cyclic,
    sp_conjugate_unipotent_cyclic,
    symmetric_congruent_finite,
    symmetric_rank_disc,
    theta_class,
    theta_from_antitriangular,
    wall_antitriangular,
    wall_form,
)
from .decompose import (
    DecompositionError,
    HyperbolicWitness,
    Piece,
    is_hyperbolic,
    orthogonal_decomposition,
    sympinv_decomposition,
)
from .skewfact import skew_reverser_for_pair, sp_pair_square_root, sp_two_skew_hyperbolic
from .invskew import (
    sp_inv_skew_cyclic,
    sp_inv_skew_hyperbolic,
    sp_inv_skew_on_lagrangian_block,
)
from .models import (
    conjugate,
    direct_sum,
    invariant_alternating_grams,
    random_conjugate,
    symplectic_basis,
    symplectic_model,
    to_standard,
)

__all__ = [
    "BigTransvectionData",
    "DecompositionError",
    "HyperbolicWitness",
    "NotSymplecticError",
    "Piece",
    "SymplecticElement",
    "SymplecticSpace",
    "WallFormData",
    "big_transvection_data",
    "complementary_lagrangian",
    "conjugate",
    "direct_sum",
    "g_form",
    "hyperbolic_basis",
    "induced_on_bahn_mod_fix",
    "invariant_alternating_grams",
    "is_big_transvection",
    "is_hyperbolic",
    "is_skew_symplectic",
    "is_symplectic",
    "is_unipotent_cyclic",
    "orthogonal_decomposition",
    "random_conjugate",
    "random_symplectic",
    "restrict_block",
    "skew_reverser_for_pair",
    "sp_conjugate_unipotent_cyclic",
    "sp_inv_skew_cyclic",
    "sp_inv_skew_hyperbolic",
    "sp_inv_skew_on_lagrangian_block",
    "sp_pair_square_root",
    "sp_two_skew_hyperbolic",
    "standard_gram",
    "symmetric_congruent_finite",
    "symmetric_rank_disc",
    "sympinv_decomposition",
    "symplectic_basis",
    "symplectic_model",
    "theta_class",
    "theta_from_antitriangular",
    "to_standard",
    "transvection",
    "wall_antitriangular",
    "wall_form",
]

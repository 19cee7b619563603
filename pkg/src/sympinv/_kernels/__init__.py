"""Kernel selection: compiled extension when built, pure Python otherwise."""

try:
    from ._speedups import (
        BACKEND,
        conj_orbit,
        find_product_witness,
        identity_bytes,
        mat_inv,
        mat_mul,
        mul_closure,
        neg_identity_bytes,
        square_kind,
    )
except ImportError:  # extension not built
    from .pure import (
        BACKEND,
        conj_orbit,
        find_product_witness,
        identity_bytes,
        mat_inv,
        mat_mul,
        mul_closure,
        neg_identity_bytes,
        square_kind,
    )

__all__ = [
    "BACKEND",
    "conj_orbit",
    "find_product_witness",
    "identity_bytes",
    "mat_inv",
    "mat_mul",
    "mul_closure",
    "neg_identity_bytes",
    "square_kind",
]

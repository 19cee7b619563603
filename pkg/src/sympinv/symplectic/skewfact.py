"""Products of two symplectic skew-involutions.

The hyperbolic route rides a symmetric-pair factorization of the Lagrangian
block; nonhyperbolic unipotent pairs go through a symplectic square root
with minimal polynomial (x^2+1)^n, whose cyclic reverser is a
skew-involution inverting the original element.
"""

from __future__ import annotations

import itertools
import random

from ..linalg import Mat, krylov, linear_elementary_divisors, minimal_polynomial, vec_poly
from ..linalg.factorizations import skew_reverser_cyclic, symmetric_pair_factorization
from ..poly import Poly
from .decompose import HyperbolicWitness, _poly_tuples, sum_rows
from .space import SymplecticElement, SymplecticSpace, hyperbolic_basis, is_symplectic
from .wall import complementary_lagrangian  # noqa: F401  (re-exported convenience)


def sp_two_skew_hyperbolic(el: SymplecticElement, witness: HyperbolicWitness | None = None):
    """(eta1, eta2) symplectic with eta_i^2 = -I and eta1 eta2 = phi, for
    hyperbolic phi.  The Lagrangian block Q is factored into symmetric
    S T and lifted to [[0, S], [-S^-1, 0]] [[0, -T^-1], [T, 0]]."""
    from .decompose import is_hyperbolic

    F = el.field
    if witness is None:
        verdict, witness = is_hyperbolic(el)
        if verdict is not True:
            raise ValueError("element is not (known to be) hyperbolic")
    C = hyperbolic_basis(el.space, witness.l1_rows, witness.l2_rows)
    n = el.dim // 2
    P_std = C @ el.matrix @ C.inverse()
    Q = P_std.submatrix(range(n), range(n))
    Z = Mat.zeros(F, n, n)
    assert P_std == Mat.block2(F, Q, Z, Z, Q.transpose_inverse())
    S, T = symmetric_pair_factorization(Q)
    eta1_std = Mat.block2(F, Z, S, -S.inverse(), Z)
    eta2_std = Mat.block2(F, Z, -T.inverse(), T, Z)
    Cinv = C.inverse()
    eta1 = Cinv @ eta1_std @ C
    eta2 = Cinv @ eta2_std @ C
    ident = Mat.identity(F, el.dim)
    assert eta1 @ eta1 == -ident and eta2 @ eta2 == -ident
    assert eta1 @ eta2 == el.matrix
    assert is_symplectic(eta1, el.space) and is_symplectic(eta2, el.space)
    return eta1, eta2


def sp_pair_square_root(el: SymplecticElement, seed: int = 0) -> SymplecticElement:
    """Symplectic psi with psi^2 = phi and minimal polynomial (x^2+1)^n, for
    phi bicyclic with elementary divisors (x+1)^n twice.

    Searches generator pairs (a, b) with matching self-pairings and the
    shifted cross-pairing symmetry, then defines a phi^i psi = b phi^i,
    b phi^i psi = a phi^(i+1); such a pair exists exactly when the square
    root does (n odd: hyperbolic pairs; n even: nonhyperbolic pairs).
    """
    F = el.field
    M = el.matrix
    eldivs = linear_elementary_divisors(M, F.neg(F.one))
    if len(eldivs) != 1 or eldivs[0][1] != 2 or el.dim != 2 * eldivs[0][0]:
        raise ValueError("element must be bicyclic with divisors (x+1)^n twice")
    n = eldivs[0][0]
    rng = random.Random(seed)
    from ..linalg import cyclic_decomposition, vector_annihilator

    gens = [u for u, f in cyclic_decomposition(M)]
    assert len(gens) == 2

    def mpow_rows(v, count):
        rows = [tuple(v)]
        for _ in range(count - 1):
            rows.append(M.apply(rows[-1]))
        return rows

    def f(u, w):
        return el.form(u, w)

    a_candidates = [gens[0], gens[1]]
    for _ in range(6):
        a_candidates.append(tuple(F.random_element(rng) for _ in range(el.dim)))
    ann_target = Poly.x_minus(F, F.neg(F.one)) ** n
    for a in a_candidates:
        if vector_annihilator(M, a) != ann_target:
            continue
        a_rows = mpow_rows(a, n + 1)
        self_a = [f(a, a_rows[k]) for k in range(n)]
        # C2 is linear in b: f(b, a phi^(k+1)) = f(a, b phi^k) for n shifts
        eq_rows = []
        for k in range(n):
            coeffs = []
            for i in range(el.dim):
                e = tuple(F.one if j == i else F.zero for j in range(el.dim))
                lhs = f(e, a_rows[k + 1])
                # rhs needs b phi^k: use adjoint: f(a, e phi^k) with e basis
                rhs = f(a, mpow_rows(e, k + 1)[-1])
                coeffs.append(F.sub(lhs, rhs))
            eq_rows.append(coeffs)
        sol_basis = Mat(F, eq_rows).transpose().left_kernel().rows if eq_rows else []
        if not sol_basis:
            continue
        found = None
        for combo in _poly_tuples(F, len(sol_basis), 40_000):
            if all(c == F.zero for c in combo):
                continue
            b = sum_rows(F, list(sol_basis), [F.canon(c) for c in combo])
            if vector_annihilator(M, b) != ann_target:
                continue
            b_rows = mpow_rows(b, n)
            K = Mat(F, a_rows[:n] + b_rows)
            if K.rank() != el.dim:
                continue
            if any(f(b, b_rows[k]) != self_a[k] for k in range(n)):
                continue
            found = (b, b_rows, K)
            break
        if found is None:
            continue
        b, b_rows, K = found
        img = b_rows + [a_rows[i + 1] for i in range(n)]
        psi = K.inverse() @ Mat(F, img)
        if psi @ psi != M:
            continue
        if not is_symplectic(psi, el.space):
            continue
        mu = minimal_polynomial(psi)
        assert mu == Poly(F, [F.one, F.zero, F.one]) ** n
        return SymplecticElement(psi, el.space)
    raise ValueError(
        "no symplectic square root with minimal polynomial (x^2+1)^n exists "
        "(the pair is in the wrong congruence class)"
    )


def skew_reverser_for_pair(el: SymplecticElement, sign, seed: int = 0) -> Mat:
    """Skew-involution in Sp inverting a nonhyperbolic bicyclic (x - sign)^n
    pair, via the square root of sign*phi."""
    F = el.field
    target = el if sign == F.neg(F.one) else SymplecticElement(-el.matrix, el.space)
    psi = sp_pair_square_root(target, seed=seed)
    eta = skew_reverser_cyclic(psi.matrix, seed=seed)
    assert is_symplectic(eta, el.space)
    assert eta.inverse() @ el.matrix @ eta == el.matrix.inverse()
    return eta

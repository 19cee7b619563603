"""General-linear factorization constructions: reversal conjugators,
involution pairs, symmetric pairs, the skew-block normal form and its
inverse-Dickson solve, Jordan-Chevalley splitting, and the skew-involution
reverser for cyclic matrices over finite fields.

Everything returns explicit matrices and is verified by multiplication
before being handed back; failures of theory-guaranteed steps raise.
"""

from __future__ import annotations

import itertools
import random

from ..poly import Poly, ext_gcd, factorize, inverse_mod, radical
from .canonical import (
    conjugating_matrix,
    invariant_factors,
    is_similar,
    linear_elementary_divisors,
    max_order_vector,
    minimal_polynomial,
    rcf_transform,
)
from .mat import Mat, krylov, mat_poly, vec_poly

DEFAULT_SCAN_BUDGET = 200_000


class PreconditionError(ValueError):
    """An operation's stated precondition does not hold for the input."""


# ---------------------------------------------------------------------------
# linear solution spaces
# ---------------------------------------------------------------------------

def intertwiner_space(A: Mat, B: Mat) -> list[Mat]:
    """Basis of {X : A X = X B}."""
    F = A.field
    n = A.nrows
    if n == 0:
        return []
    rows = []
    for k in range(n):
        for l in range(n):
            eq = [F.zero] * (n * n)
            for i in range(n):
                for j in range(n):
                    c = F.zero
                    if j == l:
                        c = F.add(c, A.rows[i][k])
                    if i == k:
                        c = F.sub(c, B.rows[l][j])
                    eq[i * n + j] = c
            rows.append(eq)
    ker = Mat(F, rows).left_kernel()
    return [Mat(F, [r[i * n:(i + 1) * n] for i in range(n)]) for r in ker.rows]


def _coefficient_vectors(F, dim, budget):
    """Deterministic scan order over coefficient tuples, nonzero first entries."""
    if F.kind == "prime":
        count = 0
        for combo in itertools.product(range(F.p), repeat=dim):
            if all(c == 0 for c in combo):
                continue
            yield combo
            count += 1
            if count >= budget:
                return
    else:
        count = 0
        for height in itertools.count(1):
            for combo in itertools.product(range(-height, height + 1), repeat=dim):
                if max(abs(c) for c in combo) != height:
                    continue
                yield tuple(F.from_int(c) for c in combo)
                count += 1
                if count >= budget:
                    return


def scan_solution_space(basis: list[Mat], predicate, budget=DEFAULT_SCAN_BUDGET):
    """First element of span(basis) satisfying `predicate`, scanned in a fixed order."""
    if not basis:
        return None
    F = basis[0].field
    for combo in _coefficient_vectors(F, len(basis), budget):
        X = basis[0].scale(combo[0])
        for c, B in zip(combo[1:], basis[1:]):
            if c != F.zero:
                X = X + B.scale(c)
        if predicate(X):
            return X
    return None


def gl_reversal_conjugator(A: Mat, budget=DEFAULT_SCAN_BUDGET):
    """Invertible R with R^-1 A R = A^-1, or None when A is not similar to A^-1.

    Solves the linear system A R = R A^-1 and picks the first invertible
    solution in a deterministic scan of the solution space.
    """
    Ainv = A.inverse()
    if Ainv is None:
        raise PreconditionError("matrix must be invertible")
    if not is_similar(A, Ainv):
        return None
    if A.nrows == 0:
        return Mat.identity(A.field, 0)
    basis = intertwiner_space(A, Ainv)
    R = scan_solution_space(basis, lambda X: X.inverse() is not None, budget)
    if R is None:
        # the scan budget is a practical bound; the canonical-form route is exact
        R = conjugating_matrix(A, Ainv)
        R = R.inverse()
    assert R.inverse() @ A @ R == Ainv
    return R


# ---------------------------------------------------------------------------
# Wonenburger: product of two involutions
# ---------------------------------------------------------------------------

def wonenburger_involutions(A: Mat):
    """(S, T) with S^2 = T^2 = I and A = S T, or None if A is not similar to A^-1.

    On each rational-canonical block with cyclic vector u the map
    u A^i -> u A^-i is an involution conjugating the block to its inverse.
    """
    Ainv = A.inverse()
    if Ainv is None:
        raise PreconditionError("matrix must be invertible")
    if not is_similar(A, Ainv):
        return None
    F = A.field
    if A.nrows == 0:
        e = Mat.identity(F, 0)
        return e, e
    T_basis, anns = rcf_transform(A)
    blocks = []
    for f in anns:
        assert f == f.reciprocal(), "invariant factor of a reversible matrix must be self-reciprocal"
        C = Mat.companion(f)
        Cinv = C.inverse()
        rows = []
        w = tuple(F.one if j == 0 else F.zero for j in range(f.degree))
        for _ in range(f.degree):
            rows.append(w)
            w = Cinv.apply(w)
        blocks.append(Mat(F, rows))
    S_hat = Mat.diag_blocks(F, blocks)
    S = T_basis.inverse() @ S_hat @ T_basis
    ident = Mat.identity(F, A.nrows)
    assert S @ S == ident
    T = S @ A
    assert T @ T == ident and S @ T == A
    return S, T


# ---------------------------------------------------------------------------
# Shoda: product of two symmetric matrices
# ---------------------------------------------------------------------------

def _hankel_intertwiner(f: Poly) -> Mat:
    """Symmetric invertible H with C(f) H = H C(f)', built from the recurrence of f."""
    F = f.field
    d = f.degree
    s = [F.zero] * (2 * d - 1)
    s[d - 1] = F.one
    for k in range(d, 2 * d - 1):
        acc = F.zero
        for i in range(d):
            acc = F.sub(acc, F.mul(f.coeff(i), s[k - d + i]))
        s[k] = acc
    return Mat(F, [[s[i + j] for j in range(d)] for i in range(d)])


def symmetric_pair_factorization(Q: Mat):
    """(S, T) symmetric with S invertible and Q = S T (always exists over a field)."""
    if Q.inverse() is None:
        raise PreconditionError("matrix must be invertible")
    F = Q.field
    if Q.nrows == 0:
        e = Mat.identity(F, 0)
        return e, e
    T_basis, anns = rcf_transform(Q)
    s_blocks = []
    t_blocks = []
    for f in anns:
        C = Mat.companion(f)
        H = _hankel_intertwiner(f)
        assert C @ H == H @ C.transpose()
        s_blocks.append(C @ H)
        t_blocks.append(H.inverse())
    S_hat = Mat.diag_blocks(F, s_blocks)
    T_hat = Mat.diag_blocks(F, t_blocks)
    Tb_inv = T_basis.inverse()
    S = Tb_inv @ S_hat @ Tb_inv.transpose()
    T = T_basis.transpose() @ T_hat @ T_basis
    assert S.is_symmetric() and T.is_symmetric()
    assert S @ T == Q
    assert S.inverse() is not None
    return S, T


# ---------------------------------------------------------------------------
# Skew-block normal form (inverse Dickson)
# ---------------------------------------------------------------------------

def _skew_block(field, g: Poly, lam) -> Mat:
    """[[0, I], [-lam I, companion(g)]] of size 2 deg g."""
    m = g.degree
    I = Mat.identity(field, m)
    Z = Mat.zeros(field, m, m)
    return Mat.block2(field, Z, I, I.scale(field.neg(lam)), Mat.companion(g))


def skew_cyclic_normal_form(A: Mat, lam):
    """D with [[0, I], [-lam I, D]] similar to A, for cyclic A similar to lam A^-1.

    Solves the inverse lambda-Dickson problem on the single invariant factor;
    the coefficient map is triangular so the solution is unique when it exists.
    """
    F = A.field
    Ainv = A.inverse()
    if Ainv is None:
        raise PreconditionError("matrix must be invertible")
    facs = invariant_factors(A)
    if len(facs) != 1:
        raise PreconditionError("matrix must be cyclic")
    if not is_similar(A, Ainv.scale(lam)):
        raise PreconditionError("matrix must be similar to lam * A^-1")
    for t, _ in linear_elementary_divisors(A @ A, lam):
        if t % 2 == 1:
            raise PreconditionError(
                f"A^2 has an elementary divisor (x - lam)^{t} of odd degree"
            )
    g = facs[0].dickson_inverse(lam)
    if g is None:
        raise RuntimeError(
            "inverse Dickson back-substitution failed although the stated "
            "preconditions hold; refusing to guess a normal form"
        )
    D = Mat.companion(g)
    assert is_similar(_skew_block(F, g, lam), A)
    return D


def gl_inv_skew_factorization(P: Mat):
    """(S, H) with S^2 = I, H^2 = -I, P = S H; None when P is not similar to -P^-1.

    Requires that P^2 has no elementary divisor (x+1)^t of odd t.  Built
    blockwise from the normal form [[0, I], [I, D]] = [[I, 0], [D, -I]] [[0, I], [-I, 0]].
    """
    F = P.field
    Pinv = P.inverse()
    if Pinv is None:
        raise PreconditionError("matrix must be invertible")
    ident = Mat.identity(F, P.nrows)
    if P @ P == -ident:
        return ident, P  # P is itself a skew-involution
    for t, _ in linear_elementary_divisors(P @ P, F.neg(F.one)):
        if t % 2 == 1:
            raise PreconditionError(
                f"P^2 has an elementary divisor (x+1)^{t} of odd degree"
            )
    minus_pinv = -Pinv
    if not is_similar(P, minus_pinv):
        return None
    if P.nrows == 0:
        e = Mat.identity(F, 0)
        return e, e
    lam = F.neg(F.one)
    q_blocks = []
    s_blocks = []
    h_blocks = []
    for f in invariant_factors(P):
        g = f.dickson_inverse(lam)
        if g is None:
            raise RuntimeError(
                "invariant factor is not a (-1)-Dickson transform although the "
                "elementary-divisor precondition holds"
            )
        m = g.degree
        I = Mat.identity(F, m)
        Z = Mat.zeros(F, m, m)
        D = Mat.companion(g)
        q_blocks.append(Mat.block2(F, Z, I, I, D))
        s_blocks.append(Mat.block2(F, I, Z, D, -I))
        h_blocks.append(Mat.block2(F, Z, I, -I, Z))
    Q = Mat.diag_blocks(F, q_blocks)
    R = conjugating_matrix(P, Q)  # R P R^-1 = Q
    Rinv = R.inverse()
    S = Rinv @ Mat.diag_blocks(F, s_blocks) @ R
    H = Rinv @ Mat.diag_blocks(F, h_blocks) @ R
    ident = Mat.identity(F, P.nrows)
    assert S @ S == ident
    assert H @ H == -ident
    assert S @ H == P
    assert S.inverse() @ P @ S == -Pinv
    return S, H


# ---------------------------------------------------------------------------
# Unipotent square roots and Jordan-Chevalley
# ---------------------------------------------------------------------------

def _unipotent_sqrt_poly(field, k: int) -> Poly:
    """h with h^2 = x mod (x-1)^k, h(1) = 1 (Newton; needs 2 invertible)."""
    m = Poly.x_minus(field, field.one) ** k
    h = Poly.one(field)
    x = Poly.x(field)
    half = field.inv(field.from_int(2))
    while not ((h * h - x) % m).is_zero():
        h_inv = inverse_mod(h, m)
        h = ((h + x * h_inv) % m).scale(half)
    return h


def sqrt_unipotent(U: Mat) -> Mat:
    """The unique unipotent square root of a unipotent matrix, a polynomial in U."""
    F = U.field
    mu = minimal_polynomial(U)
    k = mu.degree
    if mu != Poly.x_minus(F, F.one) ** k:
        raise PreconditionError("matrix must be unipotent")
    h = _unipotent_sqrt_poly(F, k)
    R = mat_poly(h, U)
    assert R @ R == U
    return R


def jordan_chevalley_poly(A: Mat) -> Poly:
    """s with A_S = s(A) the semisimple Jordan-Chevalley factor (Newton lift)."""
    F = A.field
    if F.kind != "prime":
        raise PreconditionError("Jordan-Chevalley splitting needs a prime field")
    mu = minimal_polynomial(A)
    r = radical(mu)
    a = Poly.x(F)
    if r == mu:
        return a
    while not (r.compose_mod(a, mu)).is_zero():
        ra = r.compose_mod(a, mu)
        rda = r.derivative().compose_mod(a, mu)
        g, u, _ = ext_gcd(rda, mu)
        assert g.is_one(), "radical derivative not invertible mod mu"
        a = (a - ra * u) % mu
    return a


def jordan_chevalley(A: Mat) -> Mat:
    """Semisimple part A_S: commutes with A, polynomial in A, A - A_S nilpotent."""
    s = jordan_chevalley_poly(A)
    return mat_poly(s, A)


# ---------------------------------------------------------------------------
# Skew-involution reverser for cyclic matrices over finite fields
# ---------------------------------------------------------------------------

def _norm_minus_one(p: Poly, seed=0):
    """g (deg < deg p) with g(x) g(x^-1) = -1 in K[x]/(p), K finite."""
    F = p.field
    d = p.degree
    x_inv = inverse_mod(Poly.x(F), p)

    def norm_is_minus_one(g):
        gbar = g.compose_mod(x_inv, p)
        return ((g * gbar) % p) == Poly.constant(F, F.neg(F.one)) % p

    total = F.p**d
    if total <= 8000:
        for combo in itertools.product(range(F.p), repeat=d):
            g = Poly(F, list(combo))
            if g.is_zero():
                continue
            if norm_is_minus_one(g):
                return g
    else:
        rng = random.Random(seed)
        for _ in range(200 * (F.p ** (d // 2 + 1))):
            g = Poly(F, [rng.randrange(F.p) for _ in range(d)])
            if g.is_zero():
                continue
            if norm_is_minus_one(g):
                return g
    raise RuntimeError("no norm -1 element found; the residue field search failed")


def skew_reverser_cyclic(A: Mat, seed=0) -> Mat:
    """eta with eta^2 = -I and eta A eta^-1 = A^-1, for cyclic A over GF(q)
    with minimal polynomial p^t, p irreducible of even degree.

    Follows the semisimple-factor construction: find g with
    u g(A_S) g(A_S^-1) = -u on the residue module, put w = u h(A) where
    h(A) = g(A_S), and let eta reverse the cyclic basis onto w.
    """
    F = A.field
    if F.kind != "prime":
        raise PreconditionError("construction needs a finite prime field")
    mu = minimal_polynomial(A)
    if mu.degree != A.nrows:
        raise PreconditionError("matrix must be cyclic")
    facs = factorize(mu).factors
    if len(facs) != 1:
        raise PreconditionError("minimal polynomial must be a prime power")
    p, t = facs[0]
    if p.degree % 2 != 0:
        raise PreconditionError("the irreducible base must have even degree")
    Ainv = A.inverse()
    if Ainv is None or not is_similar(A, Ainv):
        raise PreconditionError("matrix must be reversible")

    g = _norm_minus_one(p, seed=seed)
    s = jordan_chevalley_poly(A)
    h = g.compose_mod(s, mu)
    u, _ = max_order_vector(A)
    k_rows, ann = krylov(A, u)
    assert ann == mu
    w = vec_poly(h, u, A)
    K = Mat(F, k_rows)
    img_rows = []
    wv = w
    for _ in range(A.nrows):
        img_rows.append(wv)
        wv = Ainv.apply(wv)
    eta = K.inverse() @ Mat(F, img_rows)
    ident = Mat.identity(F, A.nrows)
    assert eta @ eta == -ident, "reverser square check failed"
    assert eta.inverse() @ A @ eta == Ainv, "reverser conjugation check failed"
    return eta

import random

import pytest

from sympinv.fields import GF, QQ
from sympinv.linalg import (
    Mat,
    gl_inv_skew_factorization,
    gl_reversal_conjugator,
    invariant_factors,
    is_similar,
    jordan_chevalley,
    linear_elementary_divisors,
    minimal_polynomial,
    skew_cyclic_normal_form,
    skew_reverser_cyclic,
    sqrt_unipotent,
    symmetric_pair_factorization,
    wonenburger_involutions,
)
from sympinv.linalg.factorizations import PreconditionError
from sympinv.poly import Poly

F3 = GF(3)
F7 = GF(7)


def rand_invertible(rng, field, n):
    while True:
        m = Mat(field, [[rng.randrange(field.p) for _ in range(n)] for _ in range(n)])
        if m.inverse() is not None:
            return m


# -- reversal conjugators ----------------------------------------------------

def test_gl_reversal_examples():
    I2 = Mat.identity(F3, 2)
    R = gl_reversal_conjugator(I2)
    assert R.inverse() @ I2 @ R == I2
    H = Mat(QQ, [[0, 1], [-1, 0]])
    R = gl_reversal_conjugator(H)
    assert R.inverse() @ H @ R == H.inverse()
    # diag(1,-1) is such a conjugator, but any valid one is accepted
    D = Mat(QQ, [[1, 0], [0, -1]])
    assert D.inverse() @ H @ D == H.inverse()
    assert gl_reversal_conjugator(Mat(F7, [[2, 0], [0, 1]])) is None


def test_gl_reversal_random():
    rng = random.Random(9)
    for _ in range(25):
        n = rng.randrange(1, 5)
        A = rand_invertible(rng, F3, n)
        R = gl_reversal_conjugator(A)
        if R is None:
            assert not is_similar(A, A.inverse())
        else:
            assert R.inverse() @ A @ R == A.inverse()


# -- Wonenburger involution pairs ---------------------------------------------

def test_wonenburger_examples():
    I2 = Mat.identity(F3, 2)
    S, T = wonenburger_involutions(I2)
    assert S @ T == I2 and S @ S == I2 and T @ T == I2
    H = Mat(F3, [[0, 1], [-1, 0]])
    S, T = wonenburger_involutions(H)
    assert S @ S == Mat.identity(F3, 2) and T @ T == Mat.identity(F3, 2) and S @ T == H
    J = Mat(F3, [[1, 1], [0, 1]])
    S, T = wonenburger_involutions(J)
    assert S @ S == Mat.identity(F3, 2) and T @ T == Mat.identity(F3, 2) and S @ T == J


def test_wonenburger_none_iff_not_reversible():
    rng = random.Random(10)
    hits = 0
    for _ in range(60):
        n = rng.randrange(1, 5)
        A = rand_invertible(rng, F7, n)
        out = wonenburger_involutions(A)
        if is_similar(A, A.inverse()):
            S, T = out
            I = Mat.identity(F7, n)
            assert S @ S == I and T @ T == I and S @ T == A
            hits += 1
        else:
            assert out is None
    assert hits > 5


# -- symmetric pairs ------------------------------------------------------------

def test_symmetric_pair_examples():
    Q = Mat(F3, [[0, 1], [-1, 0]])
    S, T = symmetric_pair_factorization(Q)
    assert S.is_symmetric() and T.is_symmetric()
    assert S.inverse() is not None and S @ T == Q
    C = Mat.companion(Poly(F7, [1, 1, 1]))
    S, T = symmetric_pair_factorization(C)
    assert S.is_symmetric() and T.is_symmetric() and S @ T == C


def test_symmetric_pair_random():
    rng = random.Random(11)
    for field in (F3, F7, QQ):
        for _ in range(25):
            n = rng.randrange(1, 5)
            if field.kind == "prime":
                Q = rand_invertible(rng, field, n)
            else:
                Q = Mat(field, [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
                if Q.inverse() is None:
                    continue
            S, T = symmetric_pair_factorization(Q)
            assert S.is_symmetric() and T.is_symmetric() and S @ T == Q


# -- skew-block normal form -------------------------------------------------------

def test_skew_cyclic_normal_form_examples():
    H = Mat(F3, [[0, 1], [-1, 0]])
    D = skew_cyclic_normal_form(H, F3.one)
    assert D == Mat.zeros(F3, 1, 1)
    d = 2
    A = Mat.companion(Poly(F7, [1, F7.neg(d), 1]))
    D = skew_cyclic_normal_form(A, F7.one)
    assert D == Mat(F7, [[d]])
    # char poly (x^2+1)^2 over GF(3), lam = 1: the unique solution of
    # g(x + 1/x) x^2 = (x^2+1)^2 is g = x^2
    f = Poly(F3, [1, 0, 1]) ** 2
    A = Mat.companion(f)
    D = skew_cyclic_normal_form(A, F3.one)
    [g] = invariant_factors(D)
    assert g == Poly(F3, [0, 0, 1])
    assert g.dickson() == f
    I2 = Mat.identity(F3, 2)
    P = Mat.block2(F3, Mat.zeros(F3, 2, 2), I2, -I2, D)
    assert is_similar(P, A)


def test_skew_cyclic_normal_form_precondition():
    # [1] is cyclic and similar to its inverse, but its square has the odd
    # elementary divisor (x-1)^1
    with pytest.raises(PreconditionError):
        skew_cyclic_normal_form(Mat.identity(F3, 1), F3.one)
    # a transvection passes the precondition and does have the normal form
    J = Mat(F3, [[1, 1], [0, 1]])
    D = skew_cyclic_normal_form(J, F3.one)
    assert invariant_factors(D) == [Poly(F3, [1, 1])]


def test_dickson_block_property():
    # invariant factors of [[0,I],[-I,D]] = Dickson transforms of those of D
    rng = random.Random(12)
    for p in (3, 5, 7):
        field = GF(p)
        for _ in range(40):
            m = rng.randrange(1, 4)
            D = Mat(field, [[rng.randrange(p) for _ in range(m)] for _ in range(m)])
            I = Mat.identity(field, m)
            Z = Mat.zeros(field, m, m)
            P = Mat.block2(field, Z, I, -I, D)
            want = [f.dickson() for f in invariant_factors(D)]
            assert invariant_factors(P) == sorted(want, key=lambda f: f.sort_key())


# -- unipotent square root & Jordan-Chevalley ------------------------------------

def test_sqrt_unipotent():
    rng = random.Random(13)
    for field in (F3, F7):
        for n in (1, 2, 3, 4, 5):
            R = rand_invertible(rng, field, n)
            U = Mat.identity(field, n)
            for i in range(n - 1):
                U = Mat(field, [
                    [U.rows[r][c] if (r, c) != (i, i + 1) else field.one for c in range(n)]
                    for r in range(n)
                ])
            U = R.inverse() @ U @ R
            S = sqrt_unipotent(U)
            assert S @ S == U


def test_jordan_chevalley_examples():
    A = Mat(F3, [[2, 0], [0, 1]])
    assert jordan_chevalley(A) == A  # semisimple
    J = Mat(F3, [[1, 1], [0, 1]])
    assert jordan_chevalley(J) == Mat.identity(F3, 2)  # unipotent
    f = Poly(F3, [1, 0, 1]) ** 2
    A = Mat.companion(f)
    As = jordan_chevalley(A)
    assert minimal_polynomial(As) == Poly(F3, [1, 0, 1])
    assert As @ As == -Mat.identity(F3, 4)
    assert As @ A == A @ As
    U = A @ As.inverse()
    mu = minimal_polynomial(U)
    assert mu == Poly.x_minus(F3, 1) ** mu.degree  # unipotent cofactor


def test_jordan_chevalley_random():
    rng = random.Random(14)
    for _ in range(30):
        n = rng.randrange(1, 5)
        A = rand_invertible(rng, F3, n)
        As = jordan_chevalley(A)
        assert As @ A == A @ As
        N = A - As
        assert N.pow(n) == Mat.zeros(F3, n, n)  # nilpotent difference
        U = A @ As.inverse()
        mu = minimal_polynomial(U)
        assert mu == Poly.x_minus(F3, 1) ** mu.degree


# -- involution x skew-involution in GL --------------------------------------------

def test_gl_inv_skew_examples():
    # P with P^2 = -I: (I, P) works and the factorization must verify
    H = Mat(F3, [[0, 1], [-1, 0]])
    out = gl_inv_skew_factorization(H)
    assert out is not None
    S, K = out
    assert S @ S == Mat.identity(F3, 2) and K @ K == -Mat.identity(F3, 2) and S @ K == H
    # P = [[0,1],[1,0]] ~ -P^-1
    P = Mat(F7, [[0, 1], [1, 0]])
    S, K = gl_inv_skew_factorization(P)
    assert S @ S == Mat.identity(F7, 2) and K @ K == -Mat.identity(F7, 2) and S @ K == P
    assert S.inverse() @ P @ S == -P.inverse()
    # diag(2,1) over GF(7) is not similar to -P^-1
    assert gl_inv_skew_factorization(Mat(F7, [[2, 0], [0, 1]])) is None


def test_gl_inv_skew_random():
    rng = random.Random(15)
    hits = 0
    for _ in range(80):
        n = rng.randrange(1, 5)
        P = rand_invertible(rng, F3, n)
        odd = any(t % 2 for t, _ in linear_elementary_divisors(P @ P, F3.neg(F3.one)))
        if odd and P @ P != -Mat.identity(F3, n):
            with pytest.raises(PreconditionError):
                gl_inv_skew_factorization(P)
            continue
        out = gl_inv_skew_factorization(P)
        if is_similar(P, -P.inverse()):
            S, K = out
            I = Mat.identity(F3, n)
            assert S @ S == I and K @ K == -I and S @ K == P
            assert S.inverse() @ P @ S == -P.inverse()
            hits += 1
        else:
            assert out is None
    assert hits > 3


# -- skew-involution reverser for cyclic matrices ------------------------------------

def test_skew_reverser_cyclic_examples():
    A = Mat(F3, [[0, 1], [-1, 0]])
    eta = skew_reverser_cyclic(A)
    assert eta @ eta == -Mat.identity(F3, 2)
    assert eta.inverse() @ A @ eta == A.inverse()
    f = Poly(F3, [1, 0, 1]) ** 2
    A = Mat.companion(f)
    eta = skew_reverser_cyclic(A)
    assert eta @ eta == -Mat.identity(F3, 4)
    assert eta.inverse() @ A @ eta == A.inverse()
    with pytest.raises(PreconditionError):
        skew_reverser_cyclic(Mat.companion(Poly(F3, [1, 0, 0, 1])))  # odd-degree base


@pytest.mark.parametrize("p,coeffs", [
    (3, [1, 0, 1]),
    (7, [1, 0, 1]),
    (7, [3, 6, 1]),  # x^2 + 6x + 3 irreducible, even degree
    (3, [2, 2, 1]),
])
def test_skew_reverser_cyclic_powers(p, coeffs):
    field = GF(p)
    base = Poly(field, coeffs)
    for t in (1, 2):
        f = base ** t
        A = Mat.companion(f)
        if not is_similar(A, A.inverse()):
            continue
        eta = skew_reverser_cyclic(A)
        assert eta @ eta == -Mat.identity(field, f.degree)
        assert eta.inverse() @ A @ eta == A.inverse()

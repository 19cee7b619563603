"""The symplectic factorization building blocks, exercised on models and
their random conjugates."""

import random

import pytest

from sympinv.fields import GF
from sympinv.linalg import Mat, minimal_polynomial
from sympinv.linalg.factorizations import PreconditionError
from sympinv.poly import Poly
from sympinv.symplectic import (
    SymplecticElement,
    SymplecticSpace,
    is_hyperbolic,
    is_symplectic,
    random_conjugate,
    skew_reverser_for_pair,
    sp_inv_skew_cyclic,
    sp_inv_skew_hyperbolic,
    sp_pair_square_root,
    sp_two_skew_hyperbolic,
    symplectic_model,
)

F3 = GF(3)
F7 = GF(7)


def check_two_skew(el, pair):
    e1, e2 = pair
    ident = Mat.identity(el.field, el.dim)
    assert e1 @ e1 == -ident and e2 @ e2 == -ident
    assert e1 @ e2 == el.matrix
    assert is_symplectic(e1, el.space) and is_symplectic(e2, el.space)


def check_inv_skew(el, pair):
    s, e = pair
    ident = Mat.identity(el.field, el.dim)
    assert s @ s == ident and e @ e == -ident
    assert s @ e == el.matrix
    assert is_symplectic(s, el.space) and is_symplectic(e, el.space)
    # first line of the proof: conjugation by s sends phi to -phi^-1
    assert s.inverse() @ el.matrix @ s == -el.matrix.inverse()


def test_two_skew_hyperbolic_examples():
    V = SymplecticSpace(F3, 4)
    ident = SymplecticElement(Mat.identity(F3, 4), V)
    check_two_skew(ident, sp_two_skew_hyperbolic(ident))
    minus = SymplecticElement(-Mat.identity(F3, 4), V)
    check_two_skew(minus, sp_two_skew_hyperbolic(minus))
    J = Mat(F3, [[1, 1], [0, 1]])
    el = SymplecticElement(Mat.diag_blocks(F3, [J, J.transpose_inverse()]), V)
    check_two_skew(el, sp_two_skew_hyperbolic(el))


def test_two_skew_hyperbolic_random_conjugates():
    rng = random.Random(0)
    for field in (F3, F7):
        A = Mat(field, [[1, 1], [0, 1]])
        P = Mat.diag_blocks(field, [A, A.transpose_inverse()])
        base = SymplecticElement(P, SymplecticSpace(field, 4))
        for _ in range(5):
            el = random_conjugate(base, rng)
            check_two_skew(el, sp_two_skew_hyperbolic(el))


def test_pair_square_root_parity():
    # exists exactly on the nonhyperbolic side for even n
    mdl = symplectic_model(Mat.companion(Poly(F3, [1, 0, 1]) ** 2))
    sq = SymplecticElement(mdl.matrix @ mdl.matrix, mdl.space)
    psi = sp_pair_square_root(sq)
    assert psi.matrix @ psi.matrix == sq.matrix
    assert minimal_polynomial(psi.matrix) == Poly(F3, [1, 0, 1]) ** 2
    # a hyperbolic (x+1)-pair of even grade has no such root
    J = Mat(F3, [[1, 1], [0, 1]])
    hyp = SymplecticElement(
        -Mat.diag_blocks(F3, [J, J.transpose_inverse()]), SymplecticSpace(F3, 4)
    )
    assert is_hyperbolic(hyp)[0] is True
    with pytest.raises(ValueError):
        sp_pair_square_root(hyp)


def test_skew_reverser_for_pair_both_signs():
    rng = random.Random(1)
    mdl = symplectic_model(Mat.companion(Poly(F3, [1, 0, 1]) ** 2))
    sq = SymplecticElement(mdl.matrix @ mdl.matrix, mdl.space)
    for sign, el in ((F3.neg(F3.one), sq), (F3.one, SymplecticElement(-sq.matrix, sq.space))):
        for trial in range(3):
            cand = random_conjugate(el, rng) if trial else el
            eta = skew_reverser_for_pair(cand, sign, seed=trial)
            assert eta @ eta == -Mat.identity(F3, 4)
            assert eta.inverse() @ cand.matrix @ eta == cand.matrix.inverse()


def test_inv_skew_cyclic_cases():
    # (x^2+1)^n with n odd
    for n in (1, 3):
        el = symplectic_model(Mat.companion(Poly(F3, [1, 0, 1]) ** n))
        check_inv_skew(el, sp_inv_skew_cyclic(el))
    # p^t q^t with q the twist of p
    p = Poly(F3, [2, 1, 1])
    el = symplectic_model(Mat.companion(p * p.negate_variable()))
    check_inv_skew(el, sp_inv_skew_cyclic(el))
    # precondition failure: (x^2+1)^2 has nonhyperbolic square
    with pytest.raises(PreconditionError):
        sp_inv_skew_cyclic(symplectic_model(Mat.companion(Poly(F3, [1, 0, 1]) ** 2)))


def test_inv_skew_hyperbolic_routes():
    # A ~ -A: skew-sum shaped block
    A = Mat(F7, [[0, 1], [3, 0]])
    P = Mat.diag_blocks(F7, [A, A.transpose_inverse()])
    el = SymplecticElement(P, SymplecticSpace(F7, 4))
    check_inv_skew(el, sp_inv_skew_hyperbolic(el))
    # A a skew-involution: A ~ -A^-1
    H = Mat(F3, [[0, 1], [-1, 0]])
    P = Mat.diag_blocks(F3, [H, H.transpose_inverse()])
    el = SymplecticElement(P, SymplecticSpace(F3, 4))
    check_inv_skew(el, sp_inv_skew_hyperbolic(el))
    # identity block: neither similarity holds
    I2 = Mat.identity(F3, 2)
    el = SymplecticElement(Mat.identity(F3, 4), SymplecticSpace(F3, 4))
    with pytest.raises(ValueError):
        sp_inv_skew_hyperbolic(el)
    assert I2 is not None


def test_inv_skew_hyperbolic_random_conjugates():
    rng = random.Random(2)
    A = Mat(F3, [[0, 1], [2, 0]])
    base = SymplecticElement(
        Mat.diag_blocks(F3, [A, A.transpose_inverse()]), SymplecticSpace(F3, 4)
    )
    for _ in range(5):
        el = random_conjugate(base, rng)
        check_inv_skew(el, sp_inv_skew_hyperbolic(el))


def test_skewinv3_laws():
    """An involution inverting a cyclic isometry is skew-symplectic; a
    skew-involution inverting it is symplectic."""
    from sympinv.linalg import wonenburger_involutions, skew_reverser_cyclic
    from sympinv.symplectic import is_skew_symplectic

    el = symplectic_model(Mat.companion(Poly(F3, [1, 0, 1]) ** 2))
    # skew-involution reverser: symplectic (checked inside, re-checked here)
    eta = skew_reverser_cyclic(el.matrix)
    assert is_symplectic(eta, el.space)
    # involution reverser: S from the Wonenburger pair inverts phi
    S, _ = wonenburger_involutions(el.matrix)
    assert S.inverse() @ el.matrix @ S == el.matrix.inverse()
    assert is_skew_symplectic(S, el.space)

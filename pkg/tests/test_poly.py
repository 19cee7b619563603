import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympinv.fields import GF, QQ
from sympinv.poly import (
    Poly,
    factorize,
    inverse_mod,
    is_irreducible,
    radical,
    squarefree_decomposition,
)

F3 = GF(3)
F5 = GF(5)
F7 = GF(7)


def P(field, *coeffs):
    return Poly(field, list(coeffs))


def test_arith_basics():
    # gcd(x^2-1, x-1) = x-1 over Q
    f = P(QQ, -1, 0, 1)
    g = P(QQ, -1, 1)
    assert f.gcd(g) == g
    # divmod(x^3, x^2) = (x, 0)
    q, r = divmod(P(QQ, 0, 0, 0, 1), P(QQ, 0, 0, 1))
    assert q == P(QQ, 0, 1) and r.is_zero()
    # (x+1)(x+2) = x^2 + 2 over GF(3)
    assert P(F3, 1, 1) * P(F3, 2, 1) == P(F3, 2, 0, 1)


def test_reciprocal():
    # x - c -> x - c^-1
    f = P(F7, -3 % 7, 1)
    assert f.reciprocal() == P(F7, F7.neg(F7.inv(3)), 1)
    # x^2 + 1 self-reciprocal over GF(3)
    assert P(F3, 1, 0, 1).reciprocal() == P(F3, 1, 0, 1)
    # x^2 + x + 2 over GF(3): q* = q(0)^-1 x^2 q(1/x) = 2^-1 (2x^2 + x + 1) = x^2 + 2x + 2
    assert P(F3, 2, 1, 1).reciprocal() == P(F3, 2, 2, 1)


def test_double_reciprocal_identity():
    rng = random.Random(5)
    for _ in range(100):
        coeffs = [rng.randrange(1, 3)] + [rng.randrange(3) for _ in range(rng.randrange(5))]
        f = Poly(F3, coeffs)
        if f.coeffs[0] == 0:
            continue
        g = f.monic()
        assert g.reciprocal().reciprocal() == g


def test_dickson_small():
    # (x - d)^D = x^2 - d x + 1
    d = 2
    f = P(F5, F5.neg(d), 1)
    assert f.dickson() == P(F5, 1, F5.neg(d), 1)
    # x^D = x^2 + 1
    assert Poly.x(F5).dickson() == P(F5, 1, 0, 1)
    # (x^2)^D = x^4 + 2x^2 + 1 over GF(3)
    assert P(F3, 0, 0, 1).dickson() == P(F3, 1, 0, 2, 0, 1)
    # (x -/+ 2)^D = (x -/+ 1)^2: the self-reciprocal squared-linear targets
    for field in (F3, F5, F7):
        for s in (1, -1):
            f = Poly.x_minus(field, field.canon(2 * s))
            target = Poly.x_minus(field, field.canon(s))
            assert f.dickson() == target * target


def test_dickson_doubles_degree_and_multiplicative():
    rng = random.Random(7)
    for _ in range(60):
        f = Poly(F5, [rng.randrange(5) for _ in range(rng.randrange(1, 4))] + [1])
        g = Poly(F5, [rng.randrange(5) for _ in range(rng.randrange(1, 4))] + [1])
        assert f.dickson().degree == 2 * f.degree
        assert (f * g).dickson() == f.dickson() * g.dickson()


def test_dickson_inverse_round_trip():
    rng = random.Random(11)
    for lam in (1, 2):
        for _ in range(60):
            g = Poly(F3, [rng.randrange(3) for _ in range(rng.randrange(1, 5))] + [1])
            f = g.dickson(lam)
            assert f.dickson_inverse(lam) == g
    # not in the image: x^2 (needs constant 1 pattern)
    assert P(F3, 0, 0, 1).dickson_inverse() is None


def test_factorize_examples():
    # x^2+1 irreducible over GF(3)
    fz = factorize(P(F3, 1, 0, 1))
    assert fz.factors == [(P(F3, 1, 0, 1), 1)]
    # x^2+1 = (x+2)(x+3) over GF(5)
    fz = factorize(P(F5, 1, 0, 1))
    assert fz.factors == [(P(F5, 2, 1), 1), (P(F5, 3, 1), 1)]
    # x^4 - 1 = (x-1)(x+1)(x^2+1) over GF(3)
    fz = factorize(P(F3, -1, 0, 0, 0, 1))
    assert sorted((p.degree, e) for p, e in fz.factors) == [(1, 1), (1, 1), (2, 1)]
    assert (P(F3, 1, 0, 1), 1) in fz.factors


def _random_poly(rng, field, max_deg):
    d = rng.randrange(1, max_deg + 1)
    return Poly(field, [rng.randrange(field.p) for _ in range(d)] + [rng.randrange(1, field.p)])


@pytest.mark.parametrize("p", [3, 5, 7])
def test_factorize_reconstructs_and_factors_irreducible(p):
    field = GF(p)
    rng = random.Random(p)
    for _ in range(60):
        f = _random_poly(rng, field, 8)
        fz = factorize(f)
        assert fz.product(field) == f
        for q, _ in fz.factors:
            assert is_irreducible(q)


def test_factorize_rejects_rationals():
    with pytest.raises(ValueError):
        factorize(P(QQ, 1, 0, 1))


def test_radical():
    f = Poly.x_minus(F3, F3.one) ** 4
    assert radical(f) == Poly.x_minus(F3, F3.one)
    assert radical(P(F3, 1, 0, 1)) == P(F3, 1, 0, 1)
    g = (P(F3, 1, 0, 1) ** 2) * Poly.x_minus(F3, F3.one)
    assert radical(g) == P(F3, 1, 0, 1) * Poly.x_minus(F3, F3.one)


def test_squarefree_char_p_power():
    # (x+1)^3 over GF(3) has zero derivative; the p-th root branch must handle it
    f = P(F3, 1, 1) ** 3
    assert squarefree_decomposition(f) == [(P(F3, 1, 1), 3)]
    f = (P(F3, 1, 1) ** 3) * (P(F3, 1, 0, 1) ** 2)
    assert sorted(squarefree_decomposition(f), key=lambda t: t[1]) == [
        (P(F3, 1, 0, 1), 2),
        (P(F3, 1, 1), 3),
    ]


def test_inverse_mod():
    m = P(F3, 1, 0, 1)
    a = P(F3, 1, 1)
    ai = inverse_mod(a, m)
    assert (a * ai) % m == Poly.one(F3)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=0, max_value=3 ** 6 - 1),
    st.integers(min_value=0, max_value=3 ** 6 - 1),
)
def test_poly_mul_degree_and_commutativity(a, b):
    def decode(n):
        return Poly(F3, [(n // 3**i) % 3 for i in range(6)])

    f, g = decode(a), decode(b)
    assert f * g == g * f
    if not f.is_zero() and not g.is_zero():
        assert (f * g).degree == f.degree + g.degree


def test_json_round_trip():
    f = P(F7, 1, 2, 0, 3)
    assert Poly.from_json(F7, f.to_json()) == f

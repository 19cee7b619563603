"""The compiled kernel and the pure fallback must agree operation by
operation; the group layer only sees the selected backend."""

import random

import pytest

from sympinv._kernels import BACKEND
from sympinv._kernels import pure

try:
    from sympinv._kernels import _speedups as compiled
except ImportError:
    compiled = None

BOTH = [pure] if compiled is None else [pure, compiled]


def rand_bytes(rng, n, q):
    return bytes(rng.randrange(q) for _ in range(n * n))


def rand_invertible(rng, impl, n, q):
    while True:
        a = rand_bytes(rng, n, q)
        if impl.mat_inv(a, n, q) is not None:
            return a


@pytest.mark.skipif(compiled is None, reason="compiled kernel not built")
def test_backends_agree_mat_ops():
    rng = random.Random(0)
    for n, q in [(2, 3), (2, 7), (4, 3), (4, 11), (6, 5)]:
        for _ in range(50):
            a = rand_bytes(rng, n, q)
            b = rand_bytes(rng, n, q)
            assert pure.mat_mul(a, b, n, q) == compiled.mat_mul(a, b, n, q)
            assert pure.mat_inv(a, n, q) == compiled.mat_inv(a, n, q)
            assert pure.square_kind(a, n, q) == compiled.square_kind(a, n, q)


@pytest.mark.skipif(compiled is None, reason="compiled kernel not built")
def test_backends_agree_closure_and_orbits():
    from sympinv.smallgroups import standard_generators, pack

    for n, q in [(1, 3), (1, 5)]:
        gens = [pack(g) for g in standard_generators(n, q)]
        s1 = pure.mul_closure(gens, 2 * n, q, 10_000)
        s2 = compiled.mul_closure(gens, 2 * n, q, 10_000)
        assert s1 == s2
        ginvs = [pure.mat_inv(g, 2 * n, q) for g in gens]
        x = sorted(s1)[1]
        o1 = pure.conj_orbit(x, gens, ginvs, 2 * n, q)
        o2 = compiled.conj_orbit(x, gens, ginvs, 2 * n, q)
        assert set(o1) == set(o2)
        # witnesses may differ in path but must both conjugate the root to y
        for impl, orbit in ((pure, o1), (compiled, o2)):
            for y, alpha in list(orbit.items())[:10]:
                ai = impl.mat_inv(alpha, 2 * n, q)
                assert impl.mat_mul(ai, impl.mat_mul(x, alpha, 2 * n, q), 2 * n, q) == y


@pytest.mark.skipif(compiled is None, reason="compiled kernel not built")
def test_backends_agree_product_witness():
    rng = random.Random(1)
    for impl_pair in [(pure, compiled)]:
        a, b = impl_pair
        n, q = 2, 7
        cands = [rand_invertible(rng, pure, n, q) for _ in range(30)]
        phi = rand_invertible(rng, pure, n, q)
        for eps in (1, -1):
            assert a.find_product_witness(phi, cands, eps, n, q) == b.find_product_witness(
                phi, cands, eps, n, q
            )


def test_identity_helpers():
    for impl in BOTH:
        assert impl.identity_bytes(2) == bytes([1, 0, 0, 1])
        assert impl.neg_identity_bytes(2, 3) == bytes([2, 0, 0, 2])
        assert impl.square_kind(impl.identity_bytes(3), 3, 5) == 1
        assert impl.square_kind(impl.neg_identity_bytes(3, 5), 3, 5) == 1  # (-I)^2 = I
        rot = bytes([0, 1, 4, 0])  # [[0,1],[-1,0]] mod 5 squares to -I
        assert impl.square_kind(rot, 2, 5) == -1


def test_backend_selected():
    assert BACKEND in ("cython", "pure")

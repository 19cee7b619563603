"""Pure-Python mod-q kernels on packed byte matrices.

Group elements are row-major bytes of length n*n with entries in 0..q-1.
The compiled twin in _speedups.pyx implements the identical interface; the
package selects whichever is available at import time.
"""

from __future__ import annotations

BACKEND = "pure"


def mat_mul(a: bytes, b: bytes, n: int, q: int) -> bytes:
    out = bytearray(n * n)
    for i in range(n):
        ib = i * n
        row = a[ib:ib + n]
        for j in range(n):
            acc = 0
            for k in range(n):
                acc += row[k] * b[k * n + j]
            out[ib + j] = acc % q
    return bytes(out)


def mat_inv(a: bytes, n: int, q: int):
    """Inverse modulo prime q, or None if singular."""
    aug = [[a[i * n + j] for j in range(n)] + [1 if i == j else 0 for j in range(n)]
           for i in range(n)]
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, n) if aug[i][c] % q), None)
        if pr is None:
            return None
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = pow(aug[r][c], q - 2, q)
        aug[r] = [(x * inv) % q for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % q for x, y in zip(aug[i], aug[r])]
        r += 1
    out = bytearray(n * n)
    for i in range(n):
        for j in range(n):
            out[i * n + j] = aug[i][n + j]
    return bytes(out)


def identity_bytes(n: int) -> bytes:
    out = bytearray(n * n)
    for i in range(n):
        out[i * n + i] = 1
    return bytes(out)


def neg_identity_bytes(n: int, q: int) -> bytes:
    out = bytearray(n * n)
    for i in range(n):
        out[i * n + i] = q - 1
    return bytes(out)


def square_kind(a: bytes, n: int, q: int) -> int:
    """+1 if a^2 = I, -1 if a^2 = -I, else 0."""
    sq = mat_mul(a, a, n, q)
    plus = True
    minus = True
    for i in range(n):
        for j in range(n):
            v = sq[i * n + j]
            want = 1 if i == j else 0
            if v != want:
                plus = False
            if v != ((q - want) % q):
                minus = False
            if not plus and not minus:
                return 0
    return 1 if plus else -1


def mul_closure(gens: list, n: int, q: int, limit: int):
    """BFS closure under right multiplication; None if `limit` is exceeded."""
    seen = {identity_bytes(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mat_mul(x, g, n, q)
                if y not in seen:
                    if len(seen) >= limit:
                        return None
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def conj_orbit(x: bytes, gens: list, ginvs: list, n: int, q: int) -> dict:
    """BFS conjugation orbit of x; maps each element y to alpha with
    alpha^-1 x alpha = y."""
    out = {x: identity_bytes(n)}
    frontier = [x]
    while frontier:
        nxt = []
        for y in frontier:
            ay = out[y]
            for g, gi in zip(gens, ginvs):
                z = mat_mul(gi, mat_mul(y, g, n, q), n, q)
                if z not in out:
                    out[z] = mat_mul(ay, g, n, q)
                    nxt.append(z)
        frontier = nxt
    return out


def find_product_witness(phi: bytes, sigmas: list, eps2: int, n: int, q: int) -> int:
    """First index i with (sigmas[i] * phi)^2 = eps2 * I, or -1."""
    for i, s in enumerate(sigmas):
        if square_kind(mat_mul(s, phi, n, q), n, q) == eps2:
            return i
    return -1

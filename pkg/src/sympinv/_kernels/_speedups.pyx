# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-q kernels on packed byte matrices (see pure.py for the contract)."""

from libc.string cimport memcmp

BACKEND = "cython"

DEF NMAX = 16


cdef inline void _mul_into(const unsigned char* a, const unsigned char* b,
                           unsigned char* out, int n, int q) noexcept nogil:
    cdef int i, j, k, acc
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc += a[i * n + k] * b[k * n + j]
            out[i * n + j] = <unsigned char>(acc % q)


def mat_mul(bytes a, bytes b, int n, int q):
    cdef unsigned char buf[NMAX * NMAX]
    cdef const unsigned char* pa = a
    cdef const unsigned char* pb = b
    _mul_into(pa, pb, buf, n, q)
    return bytes(buf[:n * n])


def mat_inv(bytes a, int n, int q):
    cdef int aug[NMAX][2 * NMAX]
    cdef int i, j, r, c, pr, f, inv, x
    cdef const unsigned char* pa = a
    for i in range(n):
        for j in range(n):
            aug[i][j] = pa[i * n + j]
            aug[i][n + j] = 1 if i == j else 0
    r = 0
    for c in range(n):
        pr = -1
        for i in range(r, n):
            if aug[i][c] % q != 0:
                pr = i
                break
        if pr == -1:
            return None
        if pr != r:
            for j in range(2 * n):
                x = aug[r][j]
                aug[r][j] = aug[pr][j]
                aug[pr][j] = x
        inv = _pow_mod(aug[r][c], q - 2, q)
        for j in range(2 * n):
            aug[r][j] = (aug[r][j] * inv) % q
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                for j in range(2 * n):
                    aug[i][j] = (aug[i][j] - f * aug[r][j]) % q
                    if aug[i][j] < 0:
                        aug[i][j] += q
        r += 1
    cdef unsigned char out[NMAX * NMAX]
    for i in range(n):
        for j in range(n):
            out[i * n + j] = <unsigned char>aug[i][n + j]
    return bytes(out[:n * n])


cdef int _pow_mod(int base, int e, int q) noexcept nogil:
    cdef long long r = 1, b = base % q
    while e:
        if e & 1:
            r = (r * b) % q
        b = (b * b) % q
        e >>= 1
    return <int>r


def identity_bytes(int n):
    cdef bytearray out = bytearray(n * n)
    cdef int i
    for i in range(n):
        out[i * n + i] = 1
    return bytes(out)


def neg_identity_bytes(int n, int q):
    cdef bytearray out = bytearray(n * n)
    cdef int i
    for i in range(n):
        out[i * n + i] = q - 1
    return bytes(out)


cdef int _square_kind_raw(const unsigned char* a, int n, int q) noexcept nogil:
    cdef unsigned char sq[NMAX * NMAX]
    cdef int i, j, v, want
    cdef bint plus = True, minus = True
    _mul_into(a, a, sq, n, q)
    for i in range(n):
        for j in range(n):
            v = sq[i * n + j]
            want = 1 if i == j else 0
            if v != want:
                plus = False
            if v != (q - want) % q:
                minus = False
            if not plus and not minus:
                return 0
    if plus:
        return 1
    return -1


def square_kind(bytes a, int n, int q):
    cdef const unsigned char* pa = a
    return _square_kind_raw(pa, n, q)


def mul_closure(list gens, int n, int q, long limit):
    cdef set seen = set()
    cdef list frontier, nxt
    cdef bytes x, g, y
    ident = identity_bytes(n)
    seen.add(ident)
    frontier = [ident]
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


def conj_orbit(bytes x, list gens, list ginvs, int n, int q):
    cdef dict out = {}
    cdef list frontier, nxt
    cdef bytes y, z, g, gi, ay
    cdef Py_ssize_t t
    out[x] = identity_bytes(n)
    frontier = [x]
    while frontier:
        nxt = []
        for y in frontier:
            ay = out[y]
            for t in range(len(gens)):
                g = gens[t]
                gi = ginvs[t]
                z = mat_mul(gi, mat_mul(y, g, n, q), n, q)
                if z not in out:
                    out[z] = mat_mul(ay, g, n, q)
                    nxt.append(z)
        frontier = nxt
    return out


def find_product_witness(bytes phi, list sigmas, int eps2, int n, int q):
    cdef unsigned char prod[NMAX * NMAX]
    cdef const unsigned char* pphi = phi
    cdef const unsigned char* ps
    cdef bytes s
    cdef Py_ssize_t i
    for i in range(len(sigmas)):
        s = sigmas[i]
        ps = s
        _mul_into(ps, pphi, prod, n, q)
        if _square_kind_raw(prod, n, q) == eps2:
            return i
    return -1

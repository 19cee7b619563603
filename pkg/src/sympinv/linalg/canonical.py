"""Similarity invariants: Smith form of xI - A, cyclic decomposition, and
rank-sequence elementary divisors.

Invariant factors come from diagonalizing the polynomial matrix xI - A over
K[x], which is exact over both GF(p) and the rationals.  The cyclic
decomposition additionally produces generator vectors, giving a rational
canonical basis; that is what all the constructive factorizations build on.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..poly import Poly, factorize
from .mat import Mat, Subspace, express_in_rows, krylov, vec_poly, vector_annihilator

MAX_ORDER_SCAN = 24  # scalar candidates tried before falling back to factoring


# ---------------------------------------------------------------------------
# Smith normal form over K[x]
# ---------------------------------------------------------------------------

def _char_matrix(A: Mat):
    F = A.field
    n = A.nrows
    x = Poly.x(F)
    out = [[Poly.constant(F, F.neg(A.rows[i][j])) for j in range(n)] for i in range(n)]
    for i in range(n):
        out[i][i] = out[i][i] + x
    return out


def smith_invariant_factors(pm: list[list[Poly]]) -> list[Poly]:
    """Nonconstant diagonal entries d1 | d2 | ... of the Smith form of pm."""
    m = [row[:] for row in pm]
    n = len(m)
    diag = []
    for k in range(n):
        while True:
            # smallest-degree nonzero entry into the pivot slot
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    if not m[i][j].is_zero() and (best is None or m[i][j].degree < m[best[0]][best[1]].degree):
                        best = (i, j)
            if best is None:
                m[k][k] = Poly.zero(m[0][0].field)
                break
            bi, bj = best
            m[k], m[bi] = m[bi], m[k]
            for row in m:
                row[k], row[bj] = row[bj], row[k]
            pivot = m[k][k]
            dirty = False
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    q = m[i][k] // pivot
                    m[i] = [a - q * b for a, b in zip(m[i], m[k])]
                    dirty = dirty or not m[i][k].is_zero()
            for j in range(k + 1, n):
                if not m[k][j].is_zero():
                    q = m[k][j] // pivot
                    for i in range(n):
                        m[i][j] = m[i][j] - q * m[i][k]
                    dirty = dirty or not m[k][j].is_zero()
            if dirty:
                continue
            # pivot must divide the rest of the submatrix
            offender = None
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    if not (m[i][j] % pivot).is_zero():
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            m[k] = [a + b for a, b in zip(m[k], m[offender])]
        diag.append(m[k][k])
    return [d.monic() for d in diag if d.degree >= 1]


# ---------------------------------------------------------------------------
# Cyclic decomposition with explicit generators
# ---------------------------------------------------------------------------

def minimal_polynomial(A: Mat) -> Poly:
    F = A.field
    n = A.nrows
    mu = Poly.one(F)
    for i in range(n):
        e = tuple(F.one if j == i else F.zero for j in range(n))
        mu = mu.lcm(vector_annihilator(A, e))
        if mu.degree == n:
            break
    return mu


def max_order_vector(A: Mat):
    """(v, ann(v)) with ann(v) = minimal polynomial of A."""
    F = A.field
    n = A.nrows
    if n == 0:
        return (), Poly.one(F)
    v = tuple(F.one if j == 0 else F.zero for j in range(n))
    f = vector_annihilator(A, v)
    for i in range(1, n):
        e = tuple(F.one if j == i else F.zero for j in range(n))
        g = vector_annihilator(A, e)
        if g.divides(f):
            continue
        target = f.lcm(g)
        v, f = _combine_to_order(A, v, f, e, g, target)
    return v, f


def _combine_to_order(A, v, f, w, g, target):
    """A vector with annihilator lcm(f, g) built from v and w."""
    F = A.field
    if f.divides(g):
        return w, g
    # cheap scan first: v + c*w works for all but finitely many c
    candidates = list(F.elements())[1:MAX_ORDER_SCAN] if F.kind == "prime" else [
        F.from_int(k) for k in range(1, MAX_ORDER_SCAN)
    ]
    for c in candidates:
        cand = tuple(F.add(a, F.mul(c, b)) for a, b in zip(v, w))
        if vector_annihilator(A, cand) == target:
            return cand, target
    if F.kind != "prime":
        raise ArithmeticError("max-order vector scan exhausted over the rationals")
    # split lcm into coprime halves via factorization
    ef = {p: e for p, e in factorize(f).factors}
    eg = {p: e for p, e in factorize(g).factors}
    fhat = Poly.one(F)
    ghat = Poly.one(F)
    for p in set(ef) | set(eg):
        a, b = ef.get(p, 0), eg.get(p, 0)
        if a >= b:
            fhat = fhat * p**a
        else:
            ghat = ghat * p**b
    v2 = vec_poly(f // fhat, v, A)
    w2 = vec_poly(g // ghat, w, A)
    cand = tuple(F.add(a, b) for a, b in zip(v2, w2))
    assert vector_annihilator(A, cand) == target
    return cand, target


def cyclic_decomposition(A: Mat):
    """Generators [(u_k, f_k)] with V = (+) <u_k> and f_1 = mu, f_(k+1) | f_k."""
    F = A.field
    n = A.nrows
    if n == 0:
        return []
    v, mu = max_order_vector(A)
    k_rows, ann = krylov(A, v)
    assert ann == mu
    gens = [(v, mu)]
    if len(k_rows) == n:
        return gens
    comp = Subspace(F, k_rows, n).complement_in_full()
    full = list(k_rows) + list(comp)
    m = len(comp)
    ahat_rows = []
    for c in comp:
        coords = express_in_rows(F, full, A.apply(c))
        ahat_rows.append(coords[len(k_rows):])
    Ahat = Mat(F, ahat_rows)
    for w_hat, g in cyclic_decomposition(Ahat):
        w = [F.zero] * n
        for cj, basis_row in zip(w_hat, comp):
            if cj != F.zero:
                for t in range(n):
                    w[t] = F.add(w[t], F.mul(cj, basis_row[t]))
        w = tuple(w)
        # strip the leak into <v>: w g(A) = v h(A) with g | h
        wg = vec_poly(g, w, A)
        h_coeffs = express_in_rows(F, k_rows, wg)
        assert h_coeffs is not None, "conductor image escaped the cyclic subspace"
        h = Poly(F, h_coeffs)
        quot, rem = divmod(h, g)
        assert rem.is_zero(), "conductor does not divide the leak polynomial"
        corr = vec_poly(quot, v, A)
        w2 = tuple(F.sub(a, b) for a, b in zip(w, corr))
        assert vector_annihilator(A, w2) == g
        gens.append((w2, g))
    return gens


def rcf_transform(A: Mat):
    """(T, anns): T A T^-1 = diag(companion(f) for f in anns), anns descending."""
    F = A.field
    gens = cyclic_decomposition(A)
    rows = []
    for u, f in gens:
        w = u
        for _ in range(f.degree):
            rows.append(w)
            w = A.apply(w)
    T = Mat(F, rows) if rows else Mat(F, [])
    return T, [f for _, f in gens]


# ---------------------------------------------------------------------------
# Similarity invariants and elementary divisors
# ---------------------------------------------------------------------------

@dataclass
class SimilarityInvariants:
    invariant_factors: list  # ascending divisibility; product = char poly
    elementary_divisors: list | None  # [(irreducible Poly, exponent, multiplicity)]


def invariant_factors(A: Mat) -> list[Poly]:
    """Ascending divisibility chain; the last entry is the minimal polynomial."""
    if not A.is_square():
        raise ValueError("invariant factors of a non-square matrix")
    if A.nrows == 0:
        return []
    return smith_invariant_factors(_char_matrix(A))


def similarity_invariants(A: Mat) -> SimilarityInvariants:
    facs = invariant_factors(A)
    eldivs = None
    if A.field.kind == "prime":
        table: dict[tuple, int] = {}
        order: dict[tuple, tuple] = {}
        for f in facs:
            for p, e in factorize(f).factors:
                key = (p.sort_key(), e)
                table[key] = table.get(key, 0) + 1
                order[key] = (p, e)
        eldivs = sorted(
            ((order[k][0], order[k][1], m) for k, m in table.items()),
            key=lambda t: (t[0].sort_key(), t[1]),
        )
    return SimilarityInvariants(invariant_factors=facs, elementary_divisors=eldivs)


def eldiv_multiset(A: Mat) -> dict:
    """{(irreducible Poly, exponent): multiplicity} over a prime field."""
    out = {}
    for p, t, m in similarity_invariants(A).elementary_divisors:
        out[(p, t)] = m
    return out


def linear_elementary_divisors(A: Mat, c) -> list[tuple[int, int]]:
    """Multiplicities of (x-c)^t from the rank sequence of (A - cI)^k.

    Valid over any field; multiplicity of (x-c)^t is r_(t-1) - 2 r_t + r_(t+1).
    """
    F = A.field
    n = A.nrows
    M = A - Mat.scalar(F, n, c)
    ranks = [n]
    P = Mat.identity(F, n)
    while True:
        P = P @ M
        r = P.rank()
        ranks.append(r)
        if r == ranks[-2]:
            break
    out = []
    for t in range(1, len(ranks)):
        r_prev = ranks[t - 1]
        r_t = ranks[t] if t < len(ranks) else ranks[-1]
        r_next = ranks[t + 1] if t + 1 < len(ranks) else ranks[-1]
        mult = r_prev - 2 * r_t + r_next
        if mult > 0:
            out.append((t, mult))
    return out


def is_similar(A: Mat, B: Mat) -> bool:
    if A.field != B.field or A.nrows != B.nrows or not A.is_square() or not B.is_square():
        raise ValueError("similarity needs square matrices of equal size over one field")
    return invariant_factors(A) == invariant_factors(B)


def conjugating_matrix(A: Mat, B: Mat):
    """Invertible R with R A R^-1 = B, or None if not similar."""
    if not is_similar(A, B):
        return None
    TA, anns_a = rcf_transform(A)
    TB, anns_b = rcf_transform(B)
    assert anns_a == anns_b
    R = TB.inverse() @ TA
    return R


# ---------------------------------------------------------------------------
# Bahn / Fix / Neg spaces
# ---------------------------------------------------------------------------

def spaces(A: Mat, which: str, j=1) -> Subspace:
    """Bahn^j = im (A-1)^j, Fix^j = ker (A-1)^j, Neg^j = ker (A+1)^j.

    j may be a positive integer or the string "inf" for the stabilized space.
    """
    F = A.field
    n = A.nrows
    one = Mat.identity(F, n)
    if which == "Bahn":
        M = A - one
    elif which == "Fix":
        M = A - one
    elif which == "Neg":
        M = A + one
    else:
        raise ValueError(f"unknown space kind {which!r}")

    def level(k):
        P = M.pow(k)
        if which == "Bahn":
            return Subspace.from_mat(P.row_space(), n)
        return Subspace.from_mat(P.left_kernel(), n)

    if j == "inf":
        prev = level(1)
        k = 2
        while True:
            cur = level(k)
            if cur.dim == prev.dim:
                return prev
            prev = cur
            k += 1
    if not isinstance(j, int) or j < 1:
        raise ValueError("j must be a positive integer or 'inf'")
    return level(j)

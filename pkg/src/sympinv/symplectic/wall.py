"""Wall-form machinery: the form on the path space, its discriminant class,
the antitriangular normal form for unipotent cyclic isometries, and the
big-transvection normal form.

The Wall form is defined by w(u(1-phi), v(1-phi)) = f(u, v(1-phi)) on
Bahn(phi); its discriminant square class is a complete conjugacy invariant
for unipotent cyclic isometries.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..linalg import Mat, Subspace, express_in_rows, linear_elementary_divisors, minimal_polynomial
from ..poly import Poly
from .space import SymplecticElement, SymplecticSpace, restrict_block


@dataclass
class WallFormData:
    path_basis: Subspace
    gram_omega: Mat
    theta: object
    theta_class: object  # "square"/"nonsquare" over GF(p); signed squarefree int over Q


def wall_form(el: SymplecticElement) -> WallFormData:
    """Gram matrix of the Wall form on the canonical basis of Bahn(phi)."""
    F = el.field
    M = el.matrix
    N = Mat.identity(F, el.dim) - M  # v(1 - phi) = v N
    path = Subspace.from_mat(N.row_space(), el.dim)
    rows = []
    for b in path.basis.rows:
        p = N.solve_left(b)
        assert p is not None
        rows.append([el.form(p, b2) for b2 in path.basis.rows])
    gram = Mat(F, rows) if rows else Mat(F, [])
    theta = gram.det() if gram.nrows else F.one
    if theta == F.zero:
        raise ArithmeticError("Wall form must be nondegenerate")
    if F.kind == "prime":
        cls = F.square_class(theta)
    else:
        cls = F.square_class_rep(theta)
    return WallFormData(path_basis=path, gram_omega=gram, theta=theta, theta_class=cls)


def theta_class(el: SymplecticElement):
    return wall_form(el).theta_class


def is_unipotent_cyclic(el: SymplecticElement) -> bool:
    mu = minimal_polynomial(el.matrix)
    F = el.field
    return mu == Poly.x_minus(F, F.one) ** el.dim


def sp_conjugate_unipotent_cyclic(phi: SymplecticElement, psi: SymplecticElement) -> bool:
    """Unipotent cyclic isometries are conjugate iff their discriminant
    classes agree."""
    if phi.space != psi.space:
        raise ValueError("elements live in different spaces")
    if not (is_unipotent_cyclic(phi) and is_unipotent_cyclic(psi)):
        raise ValueError("both elements must be unipotent and cyclic")
    return theta_class(phi) == theta_class(psi)


# ---------------------------------------------------------------------------
# subquotient of a formed space
# ---------------------------------------------------------------------------

def formed_subquotient(M: Mat, gram: Mat, sub_rows, rad_rows):
    """Induced (M_hat, gram_hat, rep_rows) on span(sub)/span(rad).

    Both spans must be M-invariant with rad inside sub, and rad must be the
    radical of the form restricted to sub, so the quotient form is regular.
    """
    F = M.field
    rad = list(rad_rows)
    reps = []
    current = list(rad)
    rk = Mat(F, current).rank() if current else 0
    for b in sub_rows:
        if Mat(F, current + [b]).rank() > rk:
            current.append(b)
            reps.append(tuple(b))
            rk += 1
    frame = rad + reps
    m_rows = []
    for r in reps:
        coords = express_in_rows(F, frame, M.apply(r))
        assert coords is not None, "subspace not invariant"
        m_rows.append(coords[len(rad):])
    g_rows = [[_form(F, gram, a, b) for b in reps] for a in reps]
    M_hat = Mat(F, m_rows) if m_rows else Mat(F, [])
    G_hat = Mat(F, g_rows) if g_rows else Mat(F, [])
    return M_hat, G_hat, reps


def _form(F, gram, u, w):
    gu = gram.apply(u)
    acc = F.zero
    for x, y in zip(gu, w):
        acc = F.add(acc, F.mul(x, y))
    return acc


def induced_on_bahn_mod_fix(el: SymplecticElement) -> SymplecticElement:
    """phi-hat on Bahn(phi)/Fix(phi) for unipotent cyclic phi."""
    F = el.field
    M = el.matrix
    N = Mat.identity(F, el.dim) - M
    bahn = N.row_space().rows
    fix = N.left_kernel().rows
    M_hat, G_hat, _ = formed_subquotient(M, el.space.gram, bahn, fix)
    return SymplecticElement(M_hat, SymplecticSpace(F, gram=G_hat))


# ---------------------------------------------------------------------------
# antitriangular normal form (unipotent cyclic)
# ---------------------------------------------------------------------------

def _adapted_vector(M: Mat, gram: Mat):
    """u outside Bahn with f(u nu^j, u nu^(j+1)) = 0 for 0 <= j <= n-2,
    where nu = 1 - phi and dim = 2n.  Follows the inductive correction
    u = v + lam z through the Bahn/Fix subquotient."""
    F = M.field
    dim = M.nrows
    n = dim // 2
    N = Mat.identity(F, dim) - M
    bahn = Subspace.from_mat(N.row_space(), dim)
    if n == 1:
        for i in range(dim):
            e = tuple(F.one if j == i else F.zero for j in range(dim))
            if not bahn.contains_vector(e):
                return e
        raise AssertionError("no vector outside the path space")
    fix = N.left_kernel().rows
    M_hat, G_hat, reps = formed_subquotient(M, gram, bahn.basis.rows, fix)
    u_hat = _adapted_vector(M_hat, G_hat)
    w = [F.zero] * dim
    for c, rep in zip(u_hat, reps):
        if c != F.zero:
            for t in range(dim):
                w[t] = F.add(w[t], F.mul(c, rep[t]))
    w = tuple(w)
    v = N.solve_left(w)
    assert v is not None
    c_vec = tuple(
        F.sub(a, b) for a, b in zip(M.apply(v), M.inverse().apply(v))
    )  # v (phi - phi^-1)
    fix2 = N.pow(2).left_kernel().rows
    z = None
    for cand in fix2:
        if _form(F, gram, cand, c_vec) != F.zero:
            z = cand
            break
    assert z is not None, "correction vector not found in Fix^2"
    lam = F.neg(F.div(_form(F, gram, v, M.apply(v)), _form(F, gram, z, c_vec)))
    u = tuple(F.add(a, F.mul(lam, b)) for a, b in zip(v, z))
    return u


def wall_antitriangular(el: SymplecticElement) -> Mat:
    """The unique upper antitriangular congruence representative of the Wall
    form of a cyclic isometry with minimal polynomial (x-1)^(2n)."""
    if not is_unipotent_cyclic(el) or el.dim % 2 != 0 or el.dim == 0:
        raise ValueError("element must be unipotent cyclic of even grade")
    F = el.field
    M = el.matrix
    dim = el.dim
    n = dim // 2
    N = Mat.identity(F, dim) - M
    u = _adapted_vector(M, el.space.gram)
    # rows u_0 = u, u_1 = u nu, ..., u_(2n-1)
    us = [u]
    for _ in range(2 * n - 1):
        us.append(N.apply(us[-1]))
    for j in range(n - 1):
        assert el.form(us[j], us[j + 1]) == F.zero
    A = Mat(F, [
        [el.form(us[i - 1], us[j]) for j in range(1, 2 * n)] for i in range(1, 2 * n)
    ])
    return A


def theta_from_antitriangular(el: SymplecticElement):
    """Theta via the (n,n) entry: a_nn = (-1)^(n+1) theta."""
    A = wall_antitriangular(el)
    F = el.field
    n = el.dim // 2
    sign = F.one if (n + 1) % 2 == 0 else F.neg(F.one)
    return F.mul(sign, A.rows[n - 1][n - 1])


# ---------------------------------------------------------------------------
# big transvections
# ---------------------------------------------------------------------------

def is_big_transvection(el: SymplecticElement) -> bool:
    F = el.field
    M = el.matrix
    N = Mat.identity(F, el.dim) - M
    bahn = Subspace.from_mat(N.row_space(), el.dim)
    fix = Subspace.from_mat(N.left_kernel(), el.dim)
    return fix.contains(bahn)


def complementary_lagrangian(space: SymplecticSpace, l_rows):
    """Some Lagrangian complementary to span(l_rows), by direct linear solves."""
    F = space.field
    n = space.dim // 2
    out = []
    for i in range(n):
        # unknown w: f(u_j, w) = delta_(ij) for all j; f(w_k, w) = 0 for k < i
        rows = []
        rhs = []
        for j, u in enumerate(l_rows):
            rows.append(space.gram.apply(u))  # f(u, w) = (u G) . w
            rhs.append(F.one if i == j else F.zero)
        for w_prev in out:
            rows.append(space.gram.apply(w_prev))
            rhs.append(F.zero)
        # solve rows . w = rhs componentwise: w satisfies M w' = rhs
        sys = Mat(F, rows).transpose()
        w = sys.solve_left(tuple(rhs))
        assert w is not None, "Lagrangian completion failed"
        out.append(tuple(w))
    return out


@dataclass
class BigTransvectionData:
    base_change: Mat       # rows: symplectic basis (fixed Lagrangian first)
    normal_form: Mat       # [[I, 0], [S, I]] on row vectors = [[I, S], [0, I]] on columns
    s_block: Mat           # S = 0 (+) T after congruence normalization
    t_block: Mat           # the regular part, congruent to the Wall form


def big_transvection_data(el: SymplecticElement) -> BigTransvectionData:
    if not is_big_transvection(el):
        raise ValueError("element is not a big transvection")
    F = el.field
    M = el.matrix
    dim = el.dim
    n = dim // 2
    N = Mat.identity(F, dim) - M
    bahn = Subspace.from_mat(N.row_space(), dim)
    fix = Subspace.from_mat(N.left_kernel(), dim)
    # Lagrangian L with Bahn <= L <= Fix: extend inside Fix, staying isotropic
    L = list(bahn.basis.rows)
    while len(L) < n:
        Lsub = Subspace(F, L, dim)
        cand_space = Lsub.perp(el.space.gram).intersection(fix)
        added = False
        for v in cand_space.basis.rows:
            if not Lsub.contains_vector(v):
                L.append(v)
                added = True
                break
        assert added, "cannot extend to a Lagrangian inside Fix"
    from .space import hyperbolic_basis

    mprime = complementary_lagrangian(el.space, L)
    C = hyperbolic_basis(el.space, L, mprime)
    phi_c = C @ M @ C.inverse()
    S = phi_c.submatrix(range(n, dim), range(n))
    assert phi_c == Mat.block2(F, Mat.identity(F, n), Mat.zeros(F, n, n), S, Mat.identity(F, n))
    assert S.is_symmetric()
    # congruence Q S Q' = 0 (+) T with T regular
    ker_rows = list(S.left_kernel().rows)
    comp_rows = Subspace(F, ker_rows, n).complement_in_full()
    Q = Mat(F, ker_rows + comp_rows)
    S_norm = Q @ S @ Q.transpose()
    b = len(comp_rows)
    T = S_norm.submatrix(range(n - b, n), range(n - b, n))
    A1 = Q.transpose().inverse()
    D = Mat.diag_blocks(F, [A1, A1.transpose_inverse()])
    C2 = D @ C
    nf = C2 @ M @ C2.inverse()
    assert nf == Mat.block2(F, Mat.identity(F, n), Mat.zeros(F, n, n), S_norm, Mat.identity(F, n))
    return BigTransvectionData(base_change=C2, normal_form=nf, s_block=S_norm, t_block=T)


def symmetric_rank_disc(A: Mat):
    """(rank, discriminant square class of the regular part) of a symmetric form."""
    F = A.field
    ker = A.left_kernel().rows
    comp = Subspace(F, list(ker), A.nrows).complement_in_full()
    if not comp:
        return 0, "square" if F.kind == "prime" else 1
    Q = Mat(F, comp)
    T = Q @ A @ Q.transpose()
    d = T.det()
    if F.kind == "prime":
        return T.nrows, F.square_class(d)
    return T.nrows, F.square_class_rep(d)


def symmetric_congruent_finite(A: Mat, B: Mat) -> bool:
    """Congruence decision for symmetric forms over a prime field
    (rank and discriminant classify)."""
    return symmetric_rank_disc(A) == symmetric_rank_disc(B)


# ---------------------------------------------------------------------------
# the symmetric form of SKEWINV6
# ---------------------------------------------------------------------------

def g_form(el: SymplecticElement, m: int) -> Mat:
    """Gram of g(a, b) = f(a (1-phi)^(2m-1), b) for phi bicyclic with
    elementary divisors (x-1)^(2m) twice; its radical is Bahn(phi)."""
    F = el.field
    eldivs = linear_elementary_divisors(el.matrix, F.one)
    if eldivs != [(2 * m, 2)] or el.dim != 4 * m:
        raise ValueError("element must be bicyclic with divisors (x-1)^(2m) twice")
    N = (Mat.identity(F, el.dim) - el.matrix).pow(2 * m - 1)
    gram_g = N @ el.space.gram
    assert gram_g.is_symmetric()
    rad = Subspace.from_mat(gram_g.left_kernel(), el.dim)
    bahn = Subspace.from_mat((Mat.identity(F, el.dim) - el.matrix).row_space(), el.dim)
    assert rad == bahn, "radical of g must equal the path space"
    return gram_g

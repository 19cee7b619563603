"""Helpers for building symplectic elements with prescribed module structure
and for moving between an arbitrary regular alternating Gram and the
standard one."""

from __future__ import annotations

from ..linalg import Mat, Subspace
from ..linalg.factorizations import scan_solution_space
from .space import SymplecticElement, SymplecticSpace, random_symplectic, standard_gram


def invariant_alternating_grams(M: Mat) -> list[Mat]:
    """Basis of {G : M G M' = G, G' = -G}."""
    F = M.field
    n = M.nrows
    rows = []
    eqs = []
    for i in range(n):
        for j in range(n):
            eqs.append(("aut", i, j))
            if i <= j:
                eqs.append(("sym", i, j))
    for k in range(n):
        for l in range(n):
            row = []
            for kind, i, j in eqs:
                if kind == "aut":
                    c = F.mul(M.rows[i][k], M.rows[j][l])
                    if i == k and j == l:
                        c = F.sub(c, F.one)
                    row.append(c)
                else:
                    c = F.zero
                    if (k, l) == (i, j):
                        c = F.add(c, F.one)
                    if (l, k) == (i, j):
                        c = F.add(c, F.one)
                    row.append(c)
            rows.append(row)
    ker = Mat(F, rows).left_kernel()
    return [Mat(F, [r[i * n:(i + 1) * n] for i in range(n)]) for r in ker.rows]


def symplectic_model(M: Mat) -> SymplecticElement:
    """A symplectic element with matrix M, for some compatible regular form.

    Scans the space of M-invariant alternating Grams for an invertible one;
    raises if M preserves no regular alternating form.
    """
    basis = invariant_alternating_grams(M)
    G = scan_solution_space(basis, lambda X: X.inverse() is not None)
    if G is None:
        raise ValueError("matrix preserves no regular alternating form")
    return SymplecticElement(M, SymplecticSpace(M.field, gram=G))


def symplectic_basis(gram: Mat) -> Mat:
    """Rows (u_1..u_n, w_1..w_n) with C G C' the standard form."""
    F = gram.field
    dim = gram.nrows
    us, ws = [], []
    remaining = Subspace.full(F, dim)
    while remaining.dim:
        u = remaining.basis.rows[0]
        w = None
        for cand in remaining.basis.rows[1:]:
            val = _form(F, gram, u, cand)
            if val != F.zero:
                w = tuple(F.mul(F.inv(val), x) for x in cand)
                break
        assert w is not None, "form is degenerate on the remaining block"
        us.append(u)
        ws.append(w)
        span = Subspace(F, us + ws, dim)
        remaining = span.perp(gram)
    C = Mat(F, us + ws)
    assert C @ gram @ C.transpose() == standard_gram(F, dim)
    return C


def to_standard(el: SymplecticElement) -> tuple[SymplecticElement, Mat]:
    """(element on the standard space, base change C): matrix_std = C M C^-1."""
    C = symplectic_basis(el.space.gram)
    M_std = C @ el.matrix @ C.inverse()
    std = SymplecticSpace(el.field, dim=el.dim)
    return SymplecticElement(M_std, std), C


def direct_sum(*els: SymplecticElement) -> SymplecticElement:
    F = els[0].field
    M = Mat.diag_blocks(F, [e.matrix for e in els])
    G = Mat.diag_blocks(F, [e.space.gram for e in els])
    return SymplecticElement(M, SymplecticSpace(F, gram=G))


def conjugate(el: SymplecticElement, R: Mat) -> SymplecticElement:
    """R^-1 M R on the same space (R must be an isometry of the space)."""
    return SymplecticElement(R.inverse() @ el.matrix @ R, el.space)


def random_conjugate(el: SymplecticElement, rng, steps=12) -> SymplecticElement:
    R = random_symplectic(el.space, rng, steps=steps)
    return conjugate(el, R)


def _form(F, gram, u, w):
    acc = F.zero
    gu = gram.apply(u)
    for x, y in zip(gu, w):
        acc = F.add(acc, F.mul(x, y))
    return acc

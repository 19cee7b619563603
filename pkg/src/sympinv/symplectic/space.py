"""Symplectic spaces and their isometries.

A space is an even-dimensional row-vector space with an invertible
antisymmetric Gram matrix G; the form evaluates as f(u, w) = u G w'.  The
default Gram is the standard skew-sum [[0, I], [-I, 0]].  Elements are
automorphs (P G P' = G); restricted blocks carry their own (non-standard)
Gram, so every construction here works on arbitrary regular subblocks.
"""

from __future__ import annotations

from ..fields import check_same_field
from ..linalg import Mat, Subspace, express_in_rows


class NotSymplecticError(ValueError):
    """Matrix is not an automorph of the space's form."""


class SymplecticSpace:
    __slots__ = ("field", "dim", "gram")

    def __init__(self, field, dim=None, gram: Mat | None = None):
        if gram is None:
            if dim is None or dim % 2 != 0 or dim < 0:
                raise ValueError("dimension must be a nonnegative even integer")
            gram = standard_gram(field, dim)
        dim = gram.nrows
        if dim % 2 != 0:
            raise ValueError("symplectic spaces have even dimension")
        if not gram.is_antisymmetric():
            raise ValueError("Gram matrix must be antisymmetric")
        if dim and gram.inverse() is None:
            raise ValueError("Gram matrix must be invertible")
        self.field = field
        self.dim = dim
        self.gram = gram

    def form(self, u, w):
        """f(u, w) = u G w'."""
        F = self.field
        gu = self.gram.apply(u)  # u G ... careful: u G gives row; dot with w
        acc = F.zero
        for x, y in zip(gu, w):
            acc = F.add(acc, F.mul(x, y))
        return acc

    def is_standard(self):
        return self.gram == standard_gram(self.field, self.dim)

    def __eq__(self, other):
        return (
            isinstance(other, SymplecticSpace)
            and self.field == other.field
            and self.gram == other.gram
        )

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        tag = "standard" if self.is_standard() else "gram"
        return f"SymplecticSpace(dim={self.dim}, {tag}, {self.field})"

    def to_json(self):
        if self.is_standard():
            return {"dim": self.dim, "gram": "standard"}
        return {"dim": self.dim, "gram": self.gram.to_json()}

    @classmethod
    def from_json(cls, field, obj):
        if obj.get("gram", "standard") == "standard":
            return cls(field, dim=int(obj["dim"]))
        return cls(field, gram=Mat.from_json(obj["gram"], field))


def standard_gram(field, dim):
    """[-I \\ I] = [[0, I], [-I, 0]]."""
    n = dim // 2
    I = Mat.identity(field, n)
    return Mat.skew_sum(-I, I)


def is_symplectic(P: Mat, space: SymplecticSpace) -> bool:
    if P.nrows != space.dim or not P.is_square():
        raise ValueError("matrix size does not match the space")
    return P @ space.gram @ P.transpose() == space.gram


def is_skew_symplectic(P: Mat, space: SymplecticSpace) -> bool:
    if P.nrows != space.dim or not P.is_square():
        raise ValueError("matrix size does not match the space")
    return P @ space.gram @ P.transpose() == -space.gram


class SymplecticElement:
    __slots__ = ("matrix", "space")

    def __init__(self, matrix: Mat, space: SymplecticSpace, check=True):
        check_same_field(matrix.field, space.field)
        if check and not is_symplectic(matrix, space):
            raise NotSymplecticError("matrix does not preserve the form")
        self.matrix = matrix
        self.space = space

    @property
    def field(self):
        return self.matrix.field

    @property
    def dim(self):
        return self.space.dim

    def form(self, u, w):
        return self.space.form(u, w)

    def inverse(self):
        return SymplecticElement(self.matrix.inverse(), self.space, check=False)

    def __matmul__(self, other):
        return SymplecticElement(self.matrix @ other.matrix, self.space, check=False)

    def __neg__(self):
        return SymplecticElement(-self.matrix, self.space, check=False)

    def __eq__(self, other):
        return (
            isinstance(other, SymplecticElement)
            and self.matrix == other.matrix
            and self.space == other.space
        )

    def __hash__(self):
        return hash((self.matrix, self.space))

    def __repr__(self):
        return f"SymplecticElement({self.matrix!r})"

    def to_json(self):
        return {"space": self.space.to_json(), "matrix": self.matrix.to_json()}

    @classmethod
    def from_json(cls, obj, field=None):
        from ..fields import field_from_json

        if field is None:
            field = field_from_json(obj["matrix"]["field"])
        space = SymplecticSpace.from_json(field, obj["space"])
        return cls(Mat.from_json(obj["matrix"], field), space)


def transvection(space: SymplecticSpace, v, c) -> Mat:
    """x -> x + c f(x, v) v; symplectic for every v, c."""
    F = space.field
    # f(x, v) = sum_i x_i (G v')_i
    gvcol = [None] * space.dim
    for i in range(space.dim):
        acc = F.zero
        for j in range(space.dim):
            acc = F.add(acc, F.mul(space.gram.rows[i][j], v[j]))
        gvcol[i] = acc
    rows = []
    for i in range(space.dim):
        row = [F.one if i == j else F.zero for j in range(space.dim)]
        coef = F.mul(c, gvcol[i])
        for j in range(space.dim):
            row[j] = F.add(row[j], F.mul(coef, v[j]))
        rows.append(row)
    return Mat(F, rows)


def random_symplectic(space: SymplecticSpace, rng, steps=20) -> Mat:
    """Product of random transvections (seeded rng for reproducibility)."""
    F = space.field
    out = Mat.identity(F, space.dim)
    made = 0
    while made < steps:
        v = tuple(F.random_element(rng) for _ in range(space.dim))
        if all(x == F.zero for x in v):
            continue
        c = F.random_element(rng)
        if c == F.zero:
            c = F.one
        out = out @ transvection(space, v, c)
        made += 1
    return out


def restrict_block(M: Mat, gram: Mat, basis_rows) -> tuple[Mat, Mat]:
    """(M_b, G_b): the action and form of an invariant subspace in its own
    coordinates.  basis_rows must span an M-invariant subspace."""
    F = M.field
    rows = []
    for b in basis_rows:
        img = M.apply(b)
        coords = express_in_rows(F, list(basis_rows), img)
        if coords is None:
            raise ValueError("subspace is not invariant")
        rows.append(coords)
    B = Mat(F, list(basis_rows)) if basis_rows else Mat(F, [])
    G_b = B @ gram @ B.transpose() if basis_rows else Mat(F, [])
    return (Mat(F, rows) if rows else Mat(F, [])), G_b


def perp_rows(gram: Mat, basis_rows, ncols) -> list:
    """Canonical basis rows of the orthogonal complement of span(basis_rows)."""
    field = gram.field
    sub = Subspace(field, list(basis_rows), ncols)
    return list(sub.perp(gram).basis.rows)


def hyperbolic_basis(space: SymplecticSpace, l1_rows, l2_rows) -> Mat:
    """Basis matrix C (rows u_1..u_n, w_1..w_n) from a pair of complementary
    Lagrangians, with C G C' the standard form."""
    F = space.field
    n = space.dim // 2
    if len(l1_rows) != n or len(l2_rows) != n:
        raise ValueError("Lagrangian halves must have half dimension")
    U = Mat(F, list(l1_rows))
    B = Mat(F, list(l2_rows))
    # pairing P[i][k] = f(u_i, b_k); the dual rows are P^-T B
    P = U @ space.gram @ B.transpose()
    Pinv = P.inverse()
    if Pinv is None:
        raise ValueError("Lagrangians are not complementary")
    W = Pinv.transpose() @ B
    C = Mat(F, list(U.rows) + list(W.rows))
    assert C @ space.gram @ C.transpose() == standard_gram(F, space.dim)
    return C

"""Exact dense matrices over a field, row-vector convention.

Vectors are rows; a linear map with matrix M sends v to v*M, so products
compose left to right.  This matches the convention used throughout the
symplectic layer (forms evaluate as f(u, w) = u G w').  0x0 matrices are
legal everywhere and behave as identities of the empty space.
"""

from __future__ import annotations

from .. import poly as polymod
from ..fields import check_same_field


class Mat:
    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        rows = tuple(tuple(field.canon(x) for x in r) for r in rows)
        if rows:
            w = len(rows[0])
            if any(len(r) != w for r in rows):
                raise ValueError("ragged matrix")
        self.field = field
        self.rows = rows

    @classmethod
    def _raw(cls, field, rows):
        """No-copy constructor for rows already in canonical form."""
        m = cls.__new__(cls)
        m.field = field
        m.rows = rows
        return m

    # -- constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, field, n, c):
        z = field.zero
        return cls(field, [[c if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_rows(cls, field, rows):
        return cls(field, rows)

    @classmethod
    def companion(cls, f: polymod.Poly):
        """Companion matrix of monic f: cyclic row basis u, uA, ..., uA^(d-1)."""
        F = f.field
        if not f.is_monic() or f.degree < 1:
            raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
        d = f.degree
        z, o = F.zero, F.one
        rows = [[o if j == i + 1 else z for j in range(d)] for i in range(d - 1)]
        rows.append([F.neg(f.coeff(j)) for j in range(d)])
        return cls(F, rows)

    @classmethod
    def diag_blocks(cls, field, blocks):
        n = sum(b.nrows for b in blocks)
        out = [[field.zero] * n for _ in range(n)]
        at = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    out[at + i][at + j] = b.rows[i][j]
            at += b.nrows
        return cls(field, out)

    @classmethod
    def block2(cls, field, a, b, c, d):
        """[[a, b], [c, d]] from four equally-sized square blocks."""
        n = a.nrows
        rows = []
        for i in range(n):
            rows.append(list(a.rows[i]) + list(b.rows[i]))
        for i in range(n):
            rows.append(list(c.rows[i]) + list(d.rows[i]))
        return cls(field, rows)

    @classmethod
    def skew_sum(cls, a, b):
        """[A \\ B] = [[0, B], [A, 0]]."""
        F = a.field
        za = Mat.zeros(F, a.nrows, a.ncols)
        zb = Mat.zeros(F, b.nrows, b.ncols)
        return cls.block2(F, za, b, a, zb)

    # -- shape and access ---------------------------------------------------
    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def submatrix(self, row_idx, col_idx):
        return Mat(self.field, [[self.rows[i][j] for j in col_idx] for i in row_idx])

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        return "Mat[" + "; ".join(" ".join(str(x) for x in r) for r in self.rows) + "]"

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        check_same_field(self.field, other.field)
        F = self.field
        return Mat(F, [
            [F.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)
        ])

    def __sub__(self, other):
        check_same_field(self.field, other.field)
        F = self.field
        return Mat(F, [
            [F.sub(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)
        ])

    def __neg__(self):
        F = self.field
        return Mat(F, [[F.neg(a) for a in r] for r in self.rows])

    def scale(self, c):
        F = self.field
        return Mat(F, [[F.mul(c, a) for a in r] for r in self.rows])

    def __matmul__(self, other):
        check_same_field(self.field, other.field)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        F = self.field
        bt = tuple(zip(*other.rows)) if other.rows else ()
        if F.kind == "prime":
            p = F.p
            out = tuple(
                tuple(sum(a * b for a, b in zip(r, c)) % p for c in bt)
                for r in self.rows
            )
            return Mat._raw(F, out)
        out = tuple(tuple(_dot(F, r, c) for c in bt) for r in self.rows)
        return Mat._raw(F, out)

    def transpose(self):
        return Mat._raw(self.field, tuple(zip(*self.rows)) if self.rows else ())

    def trace(self):
        F = self.field
        t = F.zero
        for i in range(self.nrows):
            t = F.add(t, self.rows[i][i])
        return t

    def apply(self, v):
        """Row vector image v*M."""
        F = self.field
        if len(v) != self.nrows:
            raise ValueError("vector/matrix size mismatch")
        cols = self.ncols
        if F.kind == "prime":
            p = F.p
            out = [0] * cols
            for vi, row in zip(v, self.rows):
                if vi:
                    for j in range(cols):
                        out[j] += vi * row[j]
            return tuple(x % p for x in out)
        out = [F.zero] * cols
        for vi, row in zip(v, self.rows):
            if vi == F.zero:
                continue
            for j in range(cols):
                out[j] = F.add(out[j], F.mul(vi, row[j]))
        return tuple(out)

    def pow(self, k: int):
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if k < 0:
            inv = self.inverse()
            if inv is None:
                raise ZeroDivisionError("negative power of a singular matrix")
            return inv.pow(-k)
        result = Mat.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    # -- elimination ----------------------------------------------------------
    def rref(self):
        """(reduced row echelon form, pivot column list)."""
        F = self.field
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        if F.kind == "prime":
            p = F.p
            for c in range(self.ncols):
                pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
                if pr is None:
                    continue
                rows[r], rows[pr] = rows[pr], rows[r]
                inv = pow(rows[r][c], p - 2, p)
                rows[r] = [(inv * x) % p for x in rows[r]]
                for i in range(len(rows)):
                    if i != r and rows[i][c]:
                        f = rows[i][c]
                        rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
                pivots.append(c)
                r += 1
                if r == len(rows):
                    break
            return Mat._raw(F, tuple(tuple(row) for row in rows)), pivots
        for c in range(self.ncols):
            pr = next((i for i in range(r, len(rows)) if rows[i][c] != F.zero), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = F.inv(rows[r][c])
            rows[r] = [F.mul(inv, x) for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c] != F.zero:
                    f = rows[i][c]
                    rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return Mat(F, rows), pivots

    def rank(self):
        return len(self.rref()[1])

    def det(self):
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        F = self.field
        n = self.nrows
        rows = [list(r) for r in self.rows]
        det = F.one
        for c in range(n):
            pr = next((i for i in range(c, n) if rows[i][c] != F.zero), None)
            if pr is None:
                return F.zero
            if pr != c:
                rows[c], rows[pr] = rows[pr], rows[c]
                det = F.neg(det)
            det = F.mul(det, rows[c][c])
            inv = F.inv(rows[c][c])
            for i in range(c + 1, n):
                if rows[i][c] != F.zero:
                    f = F.mul(inv, rows[i][c])
                    rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[c])]
        return det

    def inverse(self):
        """Inverse matrix, or None if singular."""
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        F = self.field
        n = self.nrows
        if F.kind == "prime":
            p = F.p
            aug = [list(r) + [1 if i == j else 0 for j in range(n)]
                   for i, r in enumerate(self.rows)]
            for c in range(n):
                pr = next((i for i in range(c, n) if aug[i][c]), None)
                if pr is None:
                    return None
                aug[c], aug[pr] = aug[pr], aug[c]
                inv = pow(aug[c][c], p - 2, p)
                aug[c] = [(inv * x) % p for x in aug[c]]
                for i in range(n):
                    if i != c and aug[i][c]:
                        f = aug[i][c]
                        aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[c])]
            return Mat._raw(F, tuple(tuple(row[n:]) for row in aug))
        aug = [list(r) + [F.one if i == j else F.zero for j in range(n)]
               for i, r in enumerate(self.rows)]
        r = 0
        for c in range(n):
            pr = next((i for i in range(r, n) if aug[i][c] != F.zero), None)
            if pr is None:
                return None
            aug[r], aug[pr] = aug[pr], aug[r]
            inv = F.inv(aug[r][c])
            aug[r] = [F.mul(inv, x) for x in aug[r]]
            for i in range(n):
                if i != r and aug[i][c] != F.zero:
                    f = aug[i][c]
                    aug[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(aug[i], aug[r])]
            r += 1
        return Mat(F, [row[n:] for row in aug])

    def transpose_inverse(self):
        """A+ = (A')^-1."""
        inv = self.transpose().inverse()
        if inv is None:
            raise ZeroDivisionError("transpose inverse of a singular matrix")
        return inv

    def left_kernel(self):
        """Canonical (RREF) basis rows of {v : v M = 0}."""
        F = self.field
        n = self.nrows
        # v M = 0  <=>  M' v' = 0: compute the null space of M' as row vectors.
        R, pivots = self.transpose().rref()
        free = [j for j in range(n) if j not in pivots]
        basis = []
        for fc in free:
            v = [F.zero] * n
            v[fc] = F.one
            for i, pc in enumerate(pivots):
                v[pc] = F.neg(R.rows[i][fc])
            basis.append(v)
        return Mat(F, basis).rref()[0] if basis else Mat(F, [])

    def row_space(self):
        R, pivots = self.rref()
        return Mat(self.field, R.rows[: len(pivots)])

    def solve_left(self, b):
        """Some v with v M = b (row vectors), or None if inconsistent."""
        F = self.field
        aug_rows = [list(self.col(j)) + [b[j]] for j in range(self.ncols)]
        R, pivots = Mat(F, aug_rows).rref() if aug_rows else (Mat(F, []), [])
        n = self.nrows
        v = [F.zero] * n
        for i, pc in enumerate(pivots):
            if pc == n:
                return None  # pivot in the augmented column
            v[pc] = R.rows[i][n]
        # verify (free variables set to zero)
        if self.apply(tuple(v)) != tuple(F.canon(x) for x in b):
            return None
        return tuple(v)

    def is_symmetric(self):
        return self.is_square() and self.rows == self.transpose().rows

    def is_antisymmetric(self):
        return self.is_square() and (-self).rows == self.transpose().rows

    # -- serialization --------------------------------------------------------
    def to_json(self):
        return {
            "field": self.field.to_json(),
            "rows": [[self.field.scalar_to_json(x) for x in r] for r in self.rows],
        }

    @classmethod
    def from_json(cls, obj, field=None):
        from ..fields import field_from_json

        if field is None:
            field = field_from_json(obj["field"])
        return cls(field, [[field.scalar_from_json(x) for x in r] for r in obj["rows"]])


def _dot(F, a, b):
    acc = F.zero
    for x, y in zip(a, b):
        if x != F.zero and y != F.zero:
            acc = F.add(acc, F.mul(x, y))
    return acc


def dot(F, a, b):
    return _dot(F, a, b)


class Subspace:
    """Row span with a canonical reduced-row-echelon basis."""

    __slots__ = ("field", "basis", "ncols")

    def __init__(self, field, rows, ncols):
        m = Mat(field, rows) if rows else Mat(field, [])
        reduced = m.row_space() if rows else m
        self.field = field
        self.basis = reduced
        self.ncols = ncols

    @classmethod
    def full(cls, field, n):
        return cls(field, Mat.identity(field, n).rows, n)

    @classmethod
    def from_mat(cls, m: Mat, ncols=None):
        return cls(m.field, m.rows, ncols if ncols is not None else m.ncols)

    @property
    def dim(self):
        return self.basis.nrows

    def contains_vector(self, v) -> bool:
        if self.dim == 0:
            return all(x == self.field.zero for x in v)
        stacked = Mat(self.field, list(self.basis.rows) + [v])
        return stacked.rank() == self.dim

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(r) for r in other.basis.rows)

    def coords_of(self, v):
        """Coefficients of v in the basis rows, or None."""
        if self.dim == 0:
            return () if all(x == self.field.zero for x in v) else None
        return _express(self.field, self.basis.rows, v)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace(self.field, list(self.basis.rows) + list(other.basis.rows), self.ncols)

    def intersection(self, other: "Subspace") -> "Subspace":
        # (a | b) with a*A - b*B = 0 gives the common vectors a*A
        F = self.field
        A, B = self.basis, other.basis
        if A.nrows == 0 or B.nrows == 0:
            return Subspace(F, [], self.ncols)
        stacked = Mat(F, list(A.rows) + [[F.neg(x) for x in r] for r in B.rows])
        ker = stacked.left_kernel()
        rows = []
        for k in ker.rows:
            coeffs = k[: A.nrows]
            v = Mat(F, [coeffs]) @ A
            rows.append(v.rows[0])
        return Subspace(F, rows, self.ncols)

    def perp(self, gram: Mat) -> "Subspace":
        """{v : v G b' = 0 for all basis rows b}."""
        if self.dim == 0:
            return Subspace.full(self.field, self.ncols)
        m = gram @ self.basis.transpose()
        return Subspace.from_mat(m.left_kernel(), self.ncols)

    def complement_in_full(self):
        """Coordinate vectors extending the basis to the full space."""
        F = self.field
        rows = list(self.basis.rows)
        out = []
        rk = len(rows) and Mat(F, rows).rank() or 0
        for j in range(self.ncols):
            e = [F.zero] * self.ncols
            e[j] = F.one
            if Mat(F, rows + [e]).rank() > rk:
                rows.append(e)
                out.append(tuple(e))
                rk += 1
        return out


def _express(F, basis_rows, v):
    if not basis_rows:
        return None
    m = Mat(F, basis_rows)
    aug = [list(m.col(j)) + [v[j]] for j in range(m.ncols)]
    R, pivots = Mat(F, aug).rref()
    k = len(basis_rows)
    out = [F.zero] * k
    for i, pc in enumerate(pivots):
        if pc == k:
            return None
        out[pc] = R.rows[i][k]
    if m.apply(tuple(out)) != tuple(F.canon(x) for x in v):
        return None
    return tuple(out)


def express_in_rows(F, basis_rows, v):
    """Coefficients c with sum c_i * basis_rows[i] = v, or None."""
    return _express(F, basis_rows, v)


def mat_poly(f: polymod.Poly, A: Mat) -> Mat:
    """f(A) by Horner."""
    F = A.field
    acc = Mat.zeros(F, A.nrows, A.nrows)
    for c in reversed(f.coeffs):
        acc = acc @ A + Mat.scalar(F, A.nrows, c)
    return acc


def vec_poly(f: polymod.Poly, v, A: Mat):
    """v * f(A) without forming f(A)."""
    F = A.field
    out = [F.zero] * len(v)
    w = tuple(v)
    for c in f.coeffs:
        if c != F.zero:
            for j in range(len(v)):
                out[j] = F.add(out[j], F.mul(c, w[j]))
        w = A.apply(w)
    return tuple(out)


def krylov(A: Mat, v):
    """(rows [v, vA, ..., vA^(d-1)], monic annihilator of v)."""
    F = A.field
    rows = []
    w = tuple(F.canon(x) for x in v)
    while True:
        coeffs = express_in_rows(F, rows, w) if rows else (None if any(x != F.zero for x in w) else ())
        if coeffs is not None:
            ann = [F.neg(c) for c in coeffs] + [F.one]
            return rows, polymod.Poly(F, ann)
        rows.append(w)
        w = A.apply(w)


def vector_annihilator(A: Mat, v) -> polymod.Poly:
    return krylov(A, v)[1]

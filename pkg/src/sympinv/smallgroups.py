"""Exhaustive generation of small symplectic groups Sp(2n, q) and the
brute-force oracles that ground-truth every criterion.

Elements are packed canonical byte strings (row-major residues) so that
Sp(4,3) with its 51840 elements fits in a hash set; all products run
through the mod-q kernel (compiled when available).  Conjugacy classes are
conjugation orbits with conjugator witnesses kept per element, which makes
the conjugacy oracle a pair of dictionary lookups.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels as K
from .fields import GF
from .linalg import Mat
from .symplectic import SymplecticSpace, standard_gram, transvection

ELEMENT_BUDGET = 10_000_000

MANDATORY = [(1, 3), (1, 5), (1, 7), (1, 11), (2, 3)]


def sp_order(n: int, q: int) -> int:
    order = q ** (n * n)
    for i in range(1, n + 1):
        order *= q ** (2 * i) - 1
    return order


def pack(M: Mat) -> bytes:
    return bytes(x for row in M.rows for x in row)


def unpack(data: bytes, dim: int, field) -> Mat:
    return Mat(field, [[data[i * dim + j] for j in range(dim)] for i in range(dim)])


def standard_generators(n: int, q: int) -> list[Mat]:
    """Symplectic transvections along a short list of directions; enough to
    generate (checked against the order formula at build time)."""
    field = GF(q)
    space = SymplecticSpace(field, 2 * n)
    dim = 2 * n
    dirs = []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        dirs.append(tuple(e))
    for i in range(n - 1):
        e = [0] * dim
        e[i] = 1
        e[i + 1] = 1
        dirs.append(tuple(e))
        f = [0] * dim
        f[n + i] = 1
        f[n + i + 1] = 1
        dirs.append(tuple(f))
        g = [0] * dim
        g[i] = 1
        g[n + i + 1] = 1
        dirs.append(tuple(g))
    gens = []
    cvals = [field.one]
    if q > 3:
        cvals.append(field.canon(_primitive_root(q)))
    for v in dirs:
        for c in cvals:
            gens.append(transvection(space, v, c))
    return gens


def _primitive_root(q: int) -> int:
    for g in range(2, q):
        seen = set()
        x = 1
        for _ in range(q - 1):
            x = (x * g) % q
            seen.add(x)
        if len(seen) == q - 1:
            return g
    raise ValueError(f"no primitive root mod {q}")


@dataclass
class ClassRecord:
    class_id: int
    rep: bytes
    size: int
    order_of_element: int


class GroupTable:
    """Fully enumerated Sp(2n, q) with conjugacy structure on demand."""

    def __init__(self, n: int, q: int, elements: set, generators: list[bytes]):
        self.n = n
        self.q = q
        self.dim = 2 * n
        self.field = GF(q)
        self.elements = elements
        self.generators = generators
        self.order = len(elements)
        self._classes: list[ClassRecord] | None = None
        self._conjugators: list[dict] | None = None
        self._class_of: dict | None = None
        self._involutions: list[bytes] | None = None
        self._skew_involutions: list[bytes] | None = None

    # -- raw byte ops -------------------------------------------------------
    def mul(self, a: bytes, b: bytes) -> bytes:
        return K.mat_mul(a, b, self.dim, self.q)

    def inv(self, a: bytes) -> bytes:
        out = K.mat_inv(a, self.dim, self.q)
        assert out is not None
        return out

    def identity(self) -> bytes:
        return K.identity_bytes(self.dim)

    def to_mat(self, a: bytes) -> Mat:
        return unpack(a, self.dim, self.field)

    def from_mat(self, M: Mat) -> bytes:
        return pack(M)

    def element_order(self, a: bytes) -> int:
        ident = self.identity()
        x = a
        k = 1
        while x != ident:
            x = self.mul(x, a)
            k += 1
        return k

    def __contains__(self, a) -> bool:
        data = a if isinstance(a, bytes) else pack(a)
        return data in self.elements

    # -- conjugacy ------------------------------------------------------------
    def _build_classes(self):
        gens = self.generators
        ginvs = [self.inv(g) for g in gens]
        classes = []
        conjugators = []
        class_of = {}
        for x in sorted(self.elements):
            if x in class_of:
                continue
            orbit = K.conj_orbit(x, gens, ginvs, self.dim, self.q)
            cid = len(classes)
            for y in orbit:
                class_of[y] = cid
            classes.append(
                ClassRecord(
                    class_id=cid, rep=x, size=len(orbit),
                    order_of_element=self.element_order(x),
                )
            )
            conjugators.append(orbit)
        assert sum(c.size for c in classes) == self.order
        self._classes = classes
        self._conjugators = conjugators
        self._class_of = class_of

    def conjugacy_classes(self) -> list[ClassRecord]:
        if self._classes is None:
            self._build_classes()
        return self._classes

    def class_of(self, a: bytes) -> int:
        if self._class_of is None:
            self._build_classes()
        return self._class_of[a]

    def conjugator_from_rep(self, a: bytes) -> bytes:
        """alpha with rep^alpha = a, rep the class representative."""
        if self._conjugators is None:
            self._build_classes()
        return self._conjugators[self.class_of(a)][a]

    # -- censuses --------------------------------------------------------------
    def involutions(self) -> list[bytes]:
        if self._involutions is None:
            self._involutions = sorted(
                x for x in self.elements if K.square_kind(x, self.dim, self.q) == 1
            )
        return self._involutions

    def skew_involutions(self) -> list[bytes]:
        if self._skew_involutions is None:
            self._skew_involutions = sorted(
                x for x in self.elements if K.square_kind(x, self.dim, self.q) == -1
            )
        return self._skew_involutions

    def space(self) -> SymplecticSpace:
        return SymplecticSpace(self.field, self.dim)


class BudgetExceededError(RuntimeError):
    pass


def generate_group(n: int, q: int, limit: int = ELEMENT_BUDGET) -> GroupTable:
    """Breadth-first closure from the standard transvection generators."""
    expected = sp_order(n, q)
    if expected > limit:
        raise BudgetExceededError(
            f"|Sp({2*n},{q})| = {expected} exceeds the element budget {limit}"
        )
    gens = [pack(g) for g in standard_generators(n, q)]
    elements = K.mul_closure(gens, 2 * n, q, limit)
    if elements is None:
        raise BudgetExceededError(f"closure of Sp({2*n},{q}) exceeded {limit} elements")
    table = GroupTable(n, q, elements, gens)
    assert table.order == expected, (
        f"closure order {table.order} != formula {expected}; generator set too small"
    )
    return table


_group_cache: dict = {}


def cached_group(n: int, q: int) -> GroupTable:
    if (n, q) not in _group_cache:
        _group_cache[(n, q)] = generate_group(n, q)
    return _group_cache[(n, q)]


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def oracle_product(phi, G: GroupTable, kinds: tuple[int, int]):
    """First (sigma, tau) with sigma^2 = eps1 I, tau^2 = eps2 I, phi = sigma tau.

    Scans the census of the requested involution kind; (sigma^-1 phi)^2 is
    checked via (sigma phi)^2, which equals it for sigma^2 = +-I.
    """
    eps1, eps2 = kinds
    data = phi if isinstance(phi, bytes) else pack(phi)
    if data not in G.elements:
        raise ValueError("element does not belong to the group")
    sigmas = G.involutions() if eps1 == 1 else G.skew_involutions()
    idx = K.find_product_witness(data, sigmas, eps2, G.dim, G.q)
    if idx < 0:
        return None
    sigma = sigmas[idx]
    tau = G.mul(G.inv(sigma), data)
    assert K.square_kind(tau, G.dim, G.q) == eps2
    assert G.mul(sigma, tau) == data
    return G.to_mat(sigma), G.to_mat(tau)


def oracle_conjugate(phi, psi, G: GroupTable):
    """alpha in G with alpha^-1 phi alpha = psi, or None (class lookup)."""
    a = phi if isinstance(phi, bytes) else pack(phi)
    b = psi if isinstance(psi, bytes) else pack(psi)
    if a not in G.elements or b not in G.elements:
        raise ValueError("elements do not belong to the group")
    if G.class_of(a) != G.class_of(b):
        return None
    alpha_a = G.conjugator_from_rep(a)  # rep^alpha_a = a
    alpha_b = G.conjugator_from_rep(b)
    alpha = G.mul(G.inv(alpha_a), alpha_b)
    check = G.mul(G.inv(alpha), G.mul(a, alpha))
    assert check == b
    return G.to_mat(alpha)


def is_reversible_in(G: GroupTable, a: bytes) -> bool:
    return G.class_of(a) == G.class_of(G.inv(a))

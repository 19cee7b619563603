"""Dense univariate polynomials over a field, with factorization over GF(p).

Coefficients are stored lowest degree first with no trailing zeros; the zero
polynomial has an empty coefficient tuple and degree -1.  Factorization is
squarefree decomposition, then distinct-degree splitting, then Cantor-
Zassenhaus equal-degree splitting driven by a seeded PRNG (the seed is
recorded on the result so runs are reproducible).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .fields import check_same_field


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = [field.canon(c) for c in coeffs]
        while cs and cs[-1] == field.zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, field):
        return cls(field, [])

    @classmethod
    def one(cls, field):
        return cls(field, [field.one])

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero, field.one])

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @classmethod
    def x_minus(cls, field, c):
        return cls(field, [field.neg(c), field.one])

    # -- basics -----------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (self.field.one,)

    @property
    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def sort_key(self):
        return (self.degree, tuple(repr(c) for c in self.coeffs))

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        check_same_field(self.field, other.field)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, [F.add(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __sub__(self, other):
        check_same_field(self.field, other.field)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, [F.sub(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        check_same_field(self.field, other.field)
        F = self.field
        if self.is_zero() or other.is_zero():
            return Poly.zero(F)
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == F.zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    def scale(self, c):
        F = self.field
        return Poly(F, [F.mul(c, a) for a in self.coeffs])

    def shift(self, k: int):
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Poly(self.field, (self.field.zero,) * k + self.coeffs)

    def __divmod__(self, other):
        check_same_field(self.field, other.field)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        d = other.degree
        lead_inv = F.inv(other.leading)
        quo = [F.zero] * max(0, len(rem) - d)
        for i in range(len(rem) - d - 1, -1, -1):
            c = F.mul(rem[i + d], lead_inv)
            quo[i] = c
            if c != F.zero:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = F.sub(rem[i + j], F.mul(c, b))
        return Poly(F, quo), Poly(F, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, k: int):
        result = Poly.one(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def powmod(self, k: int, modulus: "Poly"):
        result = Poly.one(self.field) % modulus
        base = self % modulus
        while k:
            if k & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            k >>= 1
        return result

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading))

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def lcm(self, other):
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field)
        return ((self * other) // self.gcd(other)).monic()

    def derivative(self):
        F = self.field
        return Poly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def compose_mod(self, inner: "Poly", modulus: "Poly"):
        """self(inner) reduced mod modulus (Horner)."""
        F = self.field
        acc = Poly.zero(F)
        for c in reversed(self.coeffs):
            acc = (acc * inner + Poly.constant(F, c)) % modulus
        return acc

    def divides(self, other) -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    # -- the transforms -----------------------------------------------------
    def reciprocal(self):
        """q*(x) = q(0)^-1 x^deg(q) q(1/x).  Requires q(0) != 0."""
        F = self.field
        if self.is_zero() or self.coeffs[0] == F.zero:
            raise ValueError("reciprocal requires nonzero constant term")
        c0_inv = F.inv(self.coeffs[0])
        return Poly(F, [F.mul(c0_inv, c) for c in reversed(self.coeffs)])

    def is_self_reciprocal(self) -> bool:
        return not self.is_zero() and self.coeffs[0] != self.field.zero and self.reciprocal() == self

    def dickson(self, lam=None):
        """f(x + lam/x) x^n for monic f of degree n; doubles the degree."""
        F = self.field
        if lam is None:
            lam = F.one
        if not self.is_monic():
            raise ValueError("Dickson transform requires a monic polynomial")
        n = self.degree
        ring_lam = Poly(F, [lam, F.zero, F.one])  # x^2 + lam
        out = Poly.zero(F)
        for k, c in enumerate(self.coeffs):
            if c != F.zero:
                out = out + (ring_lam**k).scale(c).shift(n - k)
        return out

    def dickson_inverse(self, lam=None):
        """The monic g with g(x + lam/x) x^m = self, or None if there is none.

        The coefficient map g -> g^D is triangular: x^(m-k)(x^2+lam)^k has
        leading term x^(m+k), so g's coefficients are read off top down.
        """
        F = self.field
        if lam is None:
            lam = F.one
        if not self.is_monic() or self.degree % 2 != 0 or self.degree == 0:
            return None
        m = self.degree // 2
        ring_lam = Poly(F, [lam, F.zero, F.one])
        residual = self
        g = [F.zero] * (m + 1)
        for k in range(m, -1, -1):
            g[k] = residual.coeff(m + k)
            if g[k] != F.zero:
                residual = residual - (ring_lam**k).scale(g[k]).shift(m - k)
        if not residual.is_zero():
            return None
        return Poly(F, g)

    def negate_variable(self):
        """Monic image of x -> -x, i.e. (-1)^deg f(-x)."""
        F = self.field
        n = self.degree
        out = [
            F.mul(c, F.one if (n - i) % 2 == 0 else F.neg(F.one))
            for i, c in enumerate(self.coeffs)
        ]
        return Poly(F, out)

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == self.field.zero:
                continue
            if i == 0:
                terms.append(f"{c}")
            else:
                xs = "x" if i == 1 else f"x^{i}"
                terms.append(xs if c == self.field.one else f"{c}*{xs}")
        return " + ".join(terms)

    def to_json(self):
        return [self.field.scalar_to_json(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, field, obj):
        return cls(field, [field.scalar_from_json(c) for c in obj])


@dataclass
class Factorization:
    """unit * prod(p_i^e_i) with the p_i monic irreducible and distinct."""

    unit: object
    factors: list  # [(Poly, int)]
    seed: int = 0

    def product(self, field):
        out = Poly.constant(field, self.unit)
        for p, e in self.factors:
            out = out * p**e
        return out


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree parts with multiplicities (char-p aware)."""
    F = f.field
    if f.is_zero():
        raise ZeroDivisionError("cannot decompose the zero polynomial")
    f = f.monic()
    if f.degree == 0:
        return []
    parts: dict[Poly, int] = {}

    def accumulate(g: Poly, mult: int):
        for q, e in _squarefree_monic(g):
            parts[q] = parts.get(q, 0) + e * mult

    def _squarefree_monic(g: Poly):
        out = []
        d = g.gcd(g.derivative())
        w = g // d
        i = 1
        while not w.is_one():
            y = w.gcd(d)
            z = w // y
            if z.degree > 0:
                out.append((z, i))
            w = y
            d = d // y
            i += 1
        if not d.is_one():
            # d = u(x^p); over GF(p) the p-th root keeps the same coefficients
            p = F.p
            root = Poly(F, [d.coeff(p * i) for i in range(d.degree // p + 1)])
            for q, e in _squarefree_monic(root):
                out.append((q, p * e))
        return out

    accumulate(f, 1)
    return sorted(parts.items(), key=lambda t: t[0].sort_key())


def _distinct_degree(f: Poly, q: int):
    """Split squarefree monic f into (product of degree-d irreducibles, d)."""
    F = f.field
    out = []
    h = Poly.x(F)
    x = Poly.x(F)
    d = 0
    while f.degree > 0:
        d += 1
        if 2 * d > f.degree:
            out.append((f, f.degree))
            break
        h = h.powmod(q, f)
        g = (h - x).gcd(f)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    return out


def _equal_degree_split(f: Poly, d: int, q: int, rng: random.Random):
    """Cantor-Zassenhaus on a squarefree product of degree-d irreducibles."""
    if f.degree == d:
        return [f]
    F = f.field
    e = (q**d - 1) // 2
    while True:
        a = Poly(F, [rng.randrange(q) for _ in range(f.degree)])
        if a.degree < 1:
            continue
        g = a.gcd(f)
        if 0 < g.degree < f.degree:
            left, right = g, f // g
        else:
            b = a.powmod(e, f) - Poly.one(F)
            g = b.gcd(f)
            if 0 < g.degree < f.degree:
                left, right = g, f // g
            else:
                continue
        return _equal_degree_split(left, d, q, rng) + _equal_degree_split(right, d, q, rng)


def factorize(f: Poly, seed: int = 0) -> Factorization:
    """Complete factorization into monic irreducibles over a prime field."""
    F = f.field
    if F.kind != "prime":
        raise ValueError("factorization is only supported over prime fields")
    if f.is_zero():
        raise ZeroDivisionError("cannot factor the zero polynomial")
    unit = f.leading
    rng = random.Random(seed)
    factors: dict[Poly, int] = {}
    for g, mult in squarefree_decomposition(f):
        for h, d in _distinct_degree(g, F.p):
            for irr in _equal_degree_split(h, d, F.p, rng):
                factors[irr.monic()] = factors.get(irr.monic(), 0) + mult
    ordered = sorted(factors.items(), key=lambda t: t[0].sort_key())
    return Factorization(unit=unit, factors=ordered, seed=seed)


def radical(f: Poly) -> Poly:
    """Monic product of the distinct irreducible factors of f."""
    out = Poly.one(f.field)
    for g, _ in squarefree_decomposition(f):
        out = out * g
    return out


def is_irreducible(f: Poly) -> bool:
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    fz = factorize(f)
    return len(fz.factors) == 1 and fz.factors[0][1] == 1


def ext_gcd(a: Poly, b: Poly):
    """(g, u, v) with u*a + v*b = g, g the monic gcd."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lead_inv = F.inv(r0.leading)
    return r0.scale(lead_inv), s0.scale(lead_inv), t0.scale(lead_inv)


def inverse_mod(a: Poly, modulus: Poly) -> Poly:
    """Inverse of a modulo `modulus`; raises if not coprime."""
    g, u, _ = ext_gcd(a % modulus, modulus)
    if not g.is_one():
        raise ZeroDivisionError(f"{a!r} is not invertible mod {modulus!r}")
    return u % modulus

"""Exact scalar arithmetic over odd prime fields GF(p) and the rationals.

Field elements are plain Python objects: canonical residues ``0..p-1`` (int)
for GF(p), and :class:`fractions.Fraction` for the rationals.  A field object
carries the operations; matrices and polynomials hold a reference to their
field and raw element values.  Characteristic 2 is rejected everywhere.
"""

from __future__ import annotations

from fractions import Fraction


class FieldMismatchError(ValueError):
    """Operands belong to different fields."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """GF(p) for an odd prime p, elements canonical residues in ``range(p)``."""

    kind = "prime"
    __slots__ = ("p",)

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p == 2:
            raise ValueError("characteristic 2 is unsupported")
        self.p = p

    # -- basic arithmetic ------------------------------------------------
    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def canon(self, a) -> int:
        return int(a) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            return pow(self.inv(a), -k, self.p)
        return pow(a, k, self.p)

    def from_int(self, n: int):
        return n % self.p

    # -- squares ----------------------------------------------------------
    def is_square(self, a) -> bool:
        """Euler criterion; defined for nonzero a only."""
        a = a % self.p
        if a == 0:
            raise ZeroDivisionError("square class of zero is undefined")
        return pow(a, (self.p - 1) // 2, self.p) == 1

    def square_class(self, a) -> str:
        return "square" if self.is_square(a) else "nonsquare"

    def square_class_rep(self, a):
        """Canonical representative of the square class: 1 or the least nonsquare."""
        if self.is_square(a):
            return 1
        n = 2
        while self.is_square(n):
            n += 1
        return n

    def sqrt(self, a):
        """A square root of a, or None if a is a nonsquare."""
        a = a % self.p
        if a == 0:
            return 0
        if not self.is_square(a):
            return None
        if self.p % 4 == 3:
            return pow(a, (self.p + 1) // 4, self.p)
        for r in range(1, self.p):
            if r * r % self.p == a:
                return r
        return None  # unreachable

    # -- iteration / misc ---------------------------------------------------
    def elements(self):
        return range(self.p)

    def random_element(self, rng):
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    # -- serialization ------------------------------------------------------
    def to_json(self):
        return {"kind": "prime", "p": self.p}

    def scalar_to_json(self, a):
        return int(a % self.p)

    def scalar_from_json(self, obj):
        if not isinstance(obj, int):
            raise ValueError(f"GF({self.p}) scalar must be an integer, got {obj!r}")
        return obj % self.p


def _squarefree_part(n: int) -> int:
    """Largest squarefree divisor of n > 0."""
    part = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            if e % 2 == 1:
                part *= d
        d += 1
    return part * n


class RationalField:
    """The rationals, elements ``fractions.Fraction`` (always reduced)."""

    kind = "rational"
    __slots__ = ()

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def canon(self, a) -> Fraction:
        return Fraction(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return Fraction(a) / b

    def pow(self, a, k: int):
        return Fraction(a) ** k

    def from_int(self, n: int):
        return Fraction(n)

    def is_square(self, a) -> bool:
        a = Fraction(a)
        if a == 0:
            raise ZeroDivisionError("square class of zero is undefined")
        if a < 0:
            return False
        n, d = a.numerator, a.denominator
        return _squarefree_part(n) == 1 and _squarefree_part(d) == 1

    def square_class(self, a) -> str:
        return "square" if self.is_square(a) else "nonsquare"

    def square_class_rep(self, a):
        """Signed squarefree integer representing the square class of a."""
        a = Fraction(a)
        if a == 0:
            raise ZeroDivisionError("square class of zero is undefined")
        sign = -1 if a < 0 else 1
        return sign * _squarefree_part(abs(a.numerator) * a.denominator)

    def sqrt(self, a):
        a = Fraction(a)
        if a == 0:
            return Fraction(0)
        if not self.is_square(a):
            return None
        return Fraction(
            _int_sqrt(a.numerator), _int_sqrt(a.denominator)
        )

    def elements(self):
        raise TypeError("cannot enumerate the rationals")

    def random_element(self, rng):
        return Fraction(rng.randint(-5, 5), rng.randint(1, 5))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"

    def to_json(self):
        return {"kind": "rational"}

    def scalar_to_json(self, a):
        a = Fraction(a)
        if a.denominator == 1:
            return int(a)
        return f"{a.numerator}/{a.denominator}"

    def scalar_from_json(self, obj):
        if isinstance(obj, int):
            return Fraction(obj)
        if isinstance(obj, str):
            return Fraction(obj)
        raise ValueError(f"rational scalar must be int or 'num/den' string, got {obj!r}")


def _int_sqrt(n: int) -> int:
    import math

    r = math.isqrt(n)
    assert r * r == n
    return r


QQ = RationalField()

_prime_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """Cached prime-field constructor, so field objects compare by identity too."""
    if p not in _prime_cache:
        _prime_cache[p] = PrimeField(p)
    return _prime_cache[p]


def field_from_json(obj) -> PrimeField | RationalField:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError(f"bad field descriptor: {obj!r}")
    if obj["kind"] == "prime":
        return GF(int(obj["p"]))
    if obj["kind"] == "rational":
        return QQ
    raise ValueError(f"unknown field kind {obj['kind']!r}")


def check_same_field(f, g):
    if f != g:
        raise FieldMismatchError(f"mixed fields {f} and {g}")

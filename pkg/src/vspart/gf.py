"""Exact arithmetic in GF(p^e) with integer-coded elements.

Elements of GF(p^e) are coded as the integers 0..q-1: the base-p digits of
a code are the coefficients of the residue polynomial, constant term in the
least significant digit.  Code 0 is the additive identity and code 1 the
multiplicative identity.  The reducing modulus is the lexicographically
smallest monic irreducible polynomial of degree e over GF(p), coefficients
compared from the constant term upward, so every run agrees on the element
labels.  For e = 1 the modulus is the placeholder x (never used).

Polynomials over a field are tuples of element codes, constant term first.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Tuple

from .errors import FieldTooLarge, NotPrime

FIELD_ORDER_LIMIT = 1 << 20

# Full add/mul/inv tables are built for fields up to this order; larger
# fields fall back to per-call polynomial arithmetic.
_TABLE_LIMIT = 256

Poly = Tuple[int, ...]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class FieldSpec:
    """The finite field GF(p^e) on element codes 0..q-1.

    Instances are immutable and safe to share between threads; arithmetic
    tables are built once in the constructor for small orders.
    """

    def __init__(self, p: int, e: int, modulus: Poly):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = tuple(modulus)
        self._add_table = None
        self._mul_table = None
        self._inv_table = None
        if self.q <= _TABLE_LIMIT:
            self._build_tables()

    # -- construction helpers -------------------------------------------

    def _build_tables(self) -> None:
        q = self.q
        add = [[self._add_raw(a, b) for b in range(q)] for a in range(q)]
        mul = [[self._mul_raw(a, b) for b in range(q)] for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = mul[a].index(1)
        self._add_table = add
        self._mul_table = mul
        self._inv_table = inv

    def _digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(a % p)
            a //= p
        return out

    def _from_digits(self, digits: list[int]) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.p + d
        return code

    def _add_raw(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        da, db = self._digits(a), self._digits(b)
        return self._from_digits([(x + y) % self.p for x, y in zip(da, db)])

    def _mul_raw(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        p = self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # Reduce by the monic modulus.
        m = self.modulus
        for k in range(len(prod) - 1, self.e - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                shift = k - self.e
                for i in range(self.e):
                    prod[shift + i] = (prod[shift + i] - c * m[i]) % p
        return self._from_digits(prod[: self.e])

    # -- public arithmetic ----------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_raw(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        return self._from_digits([(-d) % self.p for d in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        r = 1
        base = a
        while k > 0:
            if k & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            k >>= 1
        return r

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    # -- value semantics --------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.e == other.e
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.q})"


# -- polynomial helpers over an arbitrary FieldSpec ------------------------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(field: FieldSpec, a: Poly, b: Poly) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = field.add(out[i + j], field.mul(x, y))
    return _poly_trim(out)

def _poly_rem(field: FieldSpec, a, m: Poly) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    r = list(a)
    dm = len(m) - 1
    while len(_poly_trim(r)) - 1 >= dm and r:
        k = len(r) - 1
        c = r[k]
        if c == 0:
            r.pop()
            continue
        shift = k - dm
        for i in range(dm + 1):
            r[shift + i] = field.sub(r[shift + i], field.mul(c, m[i]))
        r = _poly_trim(r)
    return r


def _monic_polys(field: FieldSpec, degree: int) -> Iterator[Poly]:
    """All monic polynomials of the given degree, lex order on lower coefficients."""
    q = field.q
    for code in range(q**degree):
        lower = []
        c = code
        for _ in range(degree):
            lower.append(c % q)
            c //= q
        yield tuple(lower) + (1,)


def _poly_is_irreducible(field: FieldSpec, poly: Poly) -> bool:
    degree = len(poly) - 1
    for d in range(1, degree // 2 + 1):
        for divisor in _monic_polys(field, d):
            if not _poly_rem(field, poly, divisor):
                return False
    return True


def lex_least_irreducible(field: FieldSpec, degree: int) -> Poly:
    """Lexicographically least monic irreducible of the given degree.

    Coefficients are compared from the constant term upward.  Degree 1
    yields the polynomial x, matching the prime-field placeholder.
    """
    for candidate in _monic_polys(field, degree):
        if _poly_is_irreducible(field, candidate):
            return candidate
    raise RuntimeError(f"no irreducible of degree {degree} over {field}")


@lru_cache(maxsize=None)
def make_field(p: int, e: int) -> FieldSpec:
    """Build GF(p^e) with the canonical modulus.

    Raises NotPrime for composite p and FieldTooLarge beyond the desk-scale
    guard p^e <= 2^20.  Results are cached, so equal parameters share tables.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    if p**e > FIELD_ORDER_LIMIT:
        raise FieldTooLarge(f"{p}^{e} exceeds the guard 2^20")
    prime = FieldSpec(p, 1, (0, 1))
    if e == 1:
        return prime
    modulus = lex_least_irreducible(prime, e)
    return FieldSpec(p, e, modulus)


def field_from_order(q: int) -> FieldSpec:
    """GF(q) for a prime power q; raises ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = q
    for d in range(2, q + 1):
        if d * d > q:
            break
        if q % d == 0:
            p = d
            break
    e = 0
    m = q
    while m % p == 0 and m > 1:
        m //= p
        e += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return make_field(p, e)


class ExtField:
    """GF(q^m) built as a degree-m extension of a base FieldSpec.

    Elements are length-m coefficient tuples over the base field, constant
    term first, so they double as coordinate vectors of the base-field
    vector space being given multiplicative structure.  The modulus is the
    lexicographically least monic irreducible of degree m over the base.
    """

    def __init__(self, base: FieldSpec, degree: int):
        if degree < 1:
            raise ValueError("extension degree must be >= 1")
        self.base = base
        self.degree = degree
        self.order = base.q**degree
        self.modulus = lex_least_irreducible(base, degree)

    def zero(self) -> Poly:
        return (0,) * self.degree

    def one(self) -> Poly:
        return (1,) + (0,) * (self.degree - 1)

    def power_basis(self, j: int) -> Poly:
        """The element x^j, valid for 0 <= j < degree."""
        if not 0 <= j < self.degree:
            raise ValueError("power outside the coefficient range")
        return tuple(1 if i == j else 0 for i in range(self.degree))

    def element(self, code: int) -> Poly:
        digits = []
        q = self.base.q
        for _ in range(self.degree):
            digits.append(code % q)
            code //= q
        return tuple(digits)

    def nonzero_elements(self) -> Iterator[Poly]:
        for code in range(1, self.order):
            yield self.element(code)

    def mul(self, a: Poly, b: Poly) -> Poly:
        prod = _poly_rem(self.base, _poly_mul(self.base, a, b), self.modulus)
        return tuple(prod) + (0,) * (self.degree - len(prod))

    def scale(self, a: Poly, vector: Tuple[Poly, ...]) -> Tuple[Poly, ...]:
        """Multiply every coordinate of a vector over this field by a."""
        return tuple(self.mul(a, c) for c in vector)

    def __repr__(self) -> str:
        return f"GF({self.base.q}^{self.degree})"

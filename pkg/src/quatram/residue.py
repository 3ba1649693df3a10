"""Arithmetic in the residue field GF(2^f).

Elements are stored as integer bitmasks over the polynomial basis
(bit j is the coefficient of t^j).  The defining modulus for each degree
is the lexicographically least irreducible polynomial, so canonical forms
are reproducible across runs; a caller may override the modulus.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _clmod(a: int, mod: int) -> int:
    dm = mod.bit_length()
    while a.bit_length() >= dm:
        a ^= mod << (a.bit_length() - dm)
    return a


def _clpowmod(a: int, n: int, mod: int) -> int:
    r = 1
    a = _clmod(a, mod)
    while n:
        if n & 1:
            r = _clmod(_clmul(r, a), mod)
        a = _clmod(_clmul(a, a), mod)
        n >>= 1
    return r


def _clgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _clmod(a, b)
    return a


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(mask: int, f: int) -> bool:
    """Irreducibility of a degree-f polynomial over GF(2)."""
    if mask.bit_length() != f + 1:
        return False
    x = 0b10
    if _clpowmod(x, 2**f, mask) != _clmod(x, mask):
        return False
    for d in _prime_divisors(f):
        h = _clpowmod(x, 2 ** (f // d), mask) ^ _clmod(x, mask)
        if _clgcd(mask, h) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(f: int) -> int:
    """Lexicographically least irreducible polynomial of degree f."""
    if f < 1:
        raise DomainError("inertia degree must be positive")
    for mask in range(1 << f, 1 << (f + 1)):
        if is_irreducible(mask, f):
            return mask
    raise AssertionError("unreachable: irreducible polynomials exist")


@dataclass(frozen=True)
class ResidueField:
    """GF(q), q = 2^f, with a fixed defining modulus."""

    f: int
    modulus: int

    def __post_init__(self):
        if not is_irreducible(self.modulus, self.f):
            raise DomainError(f"modulus {self.modulus:#b} is not irreducible of degree {self.f}")

    @property
    def q(self) -> int:
        return 1 << self.f

    def elem(self, bits: int) -> "ResidueElem":
        return ResidueElem(self, bits & (self.q - 1) if bits.bit_length() <= self.f else
                           _clmod(bits, self.modulus))

    def zero(self) -> "ResidueElem":
        return ResidueElem(self, 0)

    def one(self) -> "ResidueElem":
        return ResidueElem(self, 1)

    def gen(self) -> "ResidueElem":
        # the class of t; equals 0 when f = 1 (modulus is t itself)
        return self.elem(0b10)

    def elements(self):
        return (ResidueElem(self, b) for b in range(self.q))

    def trace_one(self) -> "ResidueElem":
        """Lex-least element of absolute trace 1 (the canonical lambda)."""
        for a in self.elements():
            if a.trace() == 1:
                return a
        raise AssertionError("unreachable: trace is onto GF(2)")

    def artin_schreier_root(self, a: "ResidueElem") -> "ResidueElem":
        """Some c with c^2 + c = a; requires trace(a) = 0."""
        if a.trace() != 0:
            raise DomainError("z^2+z=a has no root: trace(a)=1")
        for c in self.elements():
            if c * c + c == a:
                return c
        raise AssertionError("unreachable")


def field(f: int, modulus: int | None = None) -> ResidueField:
    return ResidueField(f, default_modulus(f) if modulus is None else modulus)


@dataclass(frozen=True)
class ResidueElem:
    field: ResidueField
    bits: int

    def _check(self, other: "ResidueElem"):
        if self.field != other.field:
            raise DomainError("residue elements from different fields")

    def __add__(self, other: "ResidueElem") -> "ResidueElem":
        self._check(other)
        return ResidueElem(self.field, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "ResidueElem") -> "ResidueElem":
        self._check(other)
        return ResidueElem(self.field, _clmod(_clmul(self.bits, other.bits), self.field.modulus))

    def __pow__(self, n: int) -> "ResidueElem":
        if n < 0:
            return self.inverse() ** (-n)
        return ResidueElem(self.field, _clpowmod(self.bits, n, self.field.modulus))

    def __bool__(self) -> bool:
        return self.bits != 0

    def inverse(self) -> "ResidueElem":
        if not self:
            raise DomainError("inverse of zero")
        return self ** (self.field.q - 2)

    def sqrt(self) -> "ResidueElem":
        # squaring is bijective in characteristic 2
        return self ** (self.field.q // 2)

    def trace(self) -> int:
        a, s = self, self
        for _ in range(self.field.f - 1):
            a = a * a
            s = s + a
        if s.bits not in (0, 1):
            raise AssertionError("trace landed outside GF(2)")
        return s.bits

    def order(self) -> int:
        if not self:
            raise DomainError("zero has no multiplicative order")
        n, a = 1, self
        while a.bits != 1:
            a = a * self
            n += 1
        return n

    def is_cube_root_of_unity(self) -> bool:
        """Whether a^2 + a + 1 = 0, i.e. a has order 3."""
        if self.bits in (0, 1):
            raise DomainError("omega must be a nontrivial residue")
        one = self.field.one()
        return self * self + self + one == self.field.zero()

    def omega_class_canonical(self) -> "ResidueElem":
        """Canonical representative of {a, a+1}: the one with constant bit 0."""
        if self.bits in (0, 1):
            raise DomainError("omega must lie outside GF(2)")
        return ResidueElem(self.field, self.bits & ~1)

    def __repr__(self):
        return f"Res({self.bits:#x}/f{self.field.f})"


def trace(a: ResidueElem) -> int:
    """Absolute trace to GF(2); 1 iff z^2 + z = a is irreducible."""
    return a.trace()

"""Exact scalars over the rationals and over prime fields GF(p).

Rationals are plain :class:`fractions.Fraction` values.  Residues modulo a
prime are :class:`ModP` values, which support the usual arithmetic
operators so that the rest of the package can be written once for both
kinds of field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator, Union

from .errors import CapExceededError, ParseError

RATIONALS = "Q"
PRIME_FIELD = "GF"

#: Largest modulus accepted for GF(p).  Root extraction is unit enumeration
#: for small p, so the cap keeps everything at desk scale.
MAX_MODULUS = 2**31

#: Up to this many units, ``nth_roots`` over GF(p) enumerates every unit.
#: Above it a discrete-logarithm route is used instead.
ENUMERATION_LIMIT = 1 << 16

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_FIELD_RE = re.compile(r"^\s*GF\(\s*(\d+)\s*\)\s*$", re.IGNORECASE)


class ModP:
    """A residue class modulo the prime ``p``, kept in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> "ModP":
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other
        if isinstance(other, int):
            return ModP(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.value * other.value, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "ModP":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return ModP(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return ModP(pow(self.value, exponent, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"ModP({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)

    def __reduce__(self):
        return (ModP, (self.value, self.p))


Scalar = Union[Fraction, ModP]


@lru_cache(maxsize=256)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: ``FieldSpec("Q")`` or ``FieldSpec("GF", p)``."""

    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.modulus is not None:
                raise ParseError("the rationals take no modulus")
        elif self.kind == PRIME_FIELD:
            p = self.modulus
            if not isinstance(p, int) or not is_prime(p):
                raise ParseError(f"GF modulus must be prime, got {p!r}")
            if p > MAX_MODULUS:
                raise CapExceededError(f"modulus {p} exceeds cap {MAX_MODULUS}")
        else:
            raise ParseError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(PRIME_FIELD, p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``"Q"`` or ``"GF(p)"``."""
        if not isinstance(text, str):
            raise ParseError(f"field spec must be a string, got {text!r}")
        if text.strip().upper() == "Q":
            return cls.rationals()
        m = _FIELD_RE.match(text)
        if not m:
            raise ParseError(f"cannot parse field spec {text!r}")
        return cls.prime(int(m.group(1)))

    def __str__(self):
        return "Q" if self.kind == RATIONALS else f"GF({self.modulus})"

    @property
    def is_prime_field(self) -> bool:
        return self.kind == PRIME_FIELD

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __call__(self, value) -> Scalar:
        """Coerce an int, Fraction, scalar string or residue into this field."""
        if isinstance(value, str):
            return self.parse_scalar(value)
        if isinstance(value, bool):
            value = int(value)
        if self.kind == RATIONALS:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise ParseError(f"cannot coerce {value!r} into Q")
        p = self.modulus
        if isinstance(value, ModP):
            if value.p != p:
                raise ParseError(f"cannot coerce {value!r} into GF({p})")
            return value
        if isinstance(value, int):
            return ModP(value, p)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ParseError(f"{value} has no image in GF({p})")
            return ModP(value.numerator, p) / ModP(value.denominator, p)
        raise ParseError(f"cannot coerce {value!r} into GF({p})")

    def parse_scalar(self, text: str) -> Scalar:
        """Parse ``[sign]int[/den]``; over GF(p) the result is reduced mod p."""
        m = _RATIONAL_RE.match(text)
        if not m:
            raise ParseError(f"cannot parse scalar {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return self(Fraction(num, den))

    def format_scalar(self, x: Scalar) -> str:
        return str(self(x))

    def sort_key(self, x: Scalar):
        return x.value if isinstance(x, ModP) else x

    def units(self) -> Iterator[ModP]:
        """All nonzero elements of GF(p), in residue order."""
        if self.kind != PRIME_FIELD:
            raise ValueError("the rationals have infinitely many units")
        p = self.modulus
        return (ModP(v, p) for v in range(1, p))

    def nth_roots(self, c: Scalar, m: int) -> list[Scalar]:
        return nth_roots(c, m, self)


def integer_root(a: int, m: int) -> int | None:
    """Exact nonnegative ``m``-th root of ``a >= 0``, or None if not a perfect power."""
    if a < 0 or m < 1:
        raise ValueError("need a >= 0 and m >= 1")
    if a < 2 or m == 1:
        return a
    x = 1 << -(-a.bit_length() // m)
    while True:
        y = ((m - 1) * x + a // x ** (m - 1)) // m
        if y >= x:
            break
        x = y
    return x if x**m == a else None


def _factor(n: int) -> list[int]:
    primes = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        primes.append(n)
    return primes


@lru_cache(maxsize=64)
def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    order = p - 1
    qs = _factor(order)
    for g in range(2, p):
        if all(pow(g, order // q, p) != 1 for q in qs):
            return g
    raise ArithmeticError(f"no primitive root mod {p}")  # unreachable for prime p


def discrete_log(g: int, c: int, p: int) -> int:
    """Baby-step giant-step: smallest k >= 0 with g**k == c (mod p)."""
    n = p - 1
    s = isqrt(n) + 1
    table = {}
    e = 1
    for j in range(s):
        table.setdefault(e, j)
        e = e * g % p
    step = pow(g, -s, p)
    y = c % p
    for i in range(s + 1):
        if y in table:
            return (i * s + table[y]) % n
        y = y * step % p
    raise ArithmeticError(f"{c} is not a power of {g} mod {p}")


@lru_cache(maxsize=4096)
def _gf_roots(c: int, m: int, p: int) -> tuple[int, ...]:
    if p - 1 <= ENUMERATION_LIMIT:
        return tuple(x for x in range(1, p) if pow(x, m, p) == c)
    # x = g**y, then m*y = log(c) (mod p-1)
    n = p - 1
    g = primitive_root(p)
    k = discrete_log(g, c, p)
    d = gcd(m, n)
    if k % d:
        return ()
    nd = n // d
    y0 = (k // d) * pow(m // d, -1, nd) % nd if nd > 1 else 0
    return tuple(sorted(pow(g, y0 + j * nd, p) for j in range(d)))


def nth_roots(c: Scalar, m: int, f: FieldSpec) -> list[Scalar]:
    """Every ``x`` in the unit group of ``f`` with ``x**m == c``, sorted.

    Over GF(p) small fields are handled by enumerating all units.  Over Q a
    root exists only when numerator and denominator are perfect powers, with
    a sign pair for even ``m``.
    """
    if m < 1:
        raise ValueError(f"root degree must be positive, got {m}")
    c = f(c)
    if c == 0:
        raise ValueError("nth_roots needs a nonzero argument")
    if f.is_prime_field:
        return [ModP(x, f.modulus) for x in _gf_roots(c.value, m, f.modulus)]
    negative = c < 0
    if negative and m % 2 == 0:
        return []
    a = abs(c)
    num = integer_root(a.numerator, m)
    den = integer_root(a.denominator, m)
    if num is None or den is None:
        return []
    r = Fraction(num, den)
    if negative:
        return [-r]
    return [-r, r] if m % 2 == 0 else [r]

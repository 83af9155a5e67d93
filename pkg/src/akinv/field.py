"""Exact base fields: the rationals and prime fields F_p.

Coefficients are stored "raw" inside polynomials for speed (``Fraction``
over Q, a canonical residue ``int`` over F_p); the :class:`Field` object
owns the arithmetic.  :class:`Scalar` wraps a raw value together with its
field for use at API boundaries.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction


class FieldError(ValueError):
    """Invalid field construction or mixing of incompatible fields."""


@functools.lru_cache(maxsize=256)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Q when ``characteristic == 0``, otherwise F_p."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if characteristic != 0 and not is_prime(characteristic):
            raise FieldError(f"characteristic must be 0 or prime, got {characteristic}")
        self.characteristic = characteristic

    # -- construction -----------------------------------------------------
    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"Fp({self.characteristic})"

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __call__(self, value):
        """Coerce ``value`` (int, Fraction, Scalar or ``"a/b"`` string) to a raw element."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldError(f"cannot coerce {value!r} into {self!r}")
            return value.value
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if p == 0:
            if isinstance(value, Fraction):
                return value
            if isinstance(value, int):
                return Fraction(value)
            raise FieldError(f"cannot coerce {type(value).__name__} into Q")
        if isinstance(value, int):
            return value % p
        if isinstance(value, Fraction):
            den = value.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator {value.denominator} vanishes mod {p}")
            return value.numerator * pow(den, -1, p) % p
        raise FieldError(f"cannot coerce {type(value).__name__} into {self!r}")

    def element(self, value) -> "Scalar":
        return Scalar(self(value), self)

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    # -- arithmetic on raw values ----------------------------------------
    def add(self, a, b):
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a, b):
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def mul(self, a, b):
        p = self.characteristic
        return a * b if p == 0 else (a * b) % p

    def neg(self, a):
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return 1 / a if p == 0 else pow(a, -1, p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        p = self.characteristic
        if e < 0:
            return self.pow(self.inv(a), -e)
        return a**e if p == 0 else pow(a, e, p)

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    def format(self, a) -> str:
        return str(a)

    def elements(self):
        """Enumerate F_p in order 0..p-1; Q is enumerated as 0, 1, -1, 2, -2, ..."""
        if self.characteristic:
            yield from range(self.characteristic)
            return
        yield Fraction(0)
        n = 1
        while True:
            yield Fraction(n)
            yield Fraction(-n)
            n += 1


QQ = Field(0)


@functools.lru_cache(maxsize=64)
def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class Scalar:
    """An element of a :class:`Field`, immutable and hashable."""

    value: object
    field: Field

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldError(
                    f"mismatched characteristics {self.characteristic} and {other.characteristic}"
                )
            return other.value
        return self.field(other)

    def __add__(self, other):
        return Scalar(self.field.add(self.value, self._other(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field.sub(self.value, self._other(other)), self.field)

    def __rsub__(self, other):
        return Scalar(self.field.sub(self._other(other), self.value), self.field)

    def __mul__(self, other):
        return Scalar(self.field.mul(self.value, self._other(other)), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field.div(self.value, self._other(other)), self.field)

    def __rtruediv__(self, other):
        return Scalar(self.field.div(self._other(other), self.value), self.field)

    def __neg__(self):
        return Scalar(self.field.neg(self.value), self.field)

    def __pow__(self, e: int):
        return Scalar(self.field.pow(self.value, e), self.field)

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def inverse(self) -> "Scalar":
        return Scalar(self.field.inv(self.value), self.field)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field(other)
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.characteristic))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        if isinstance(self.value, Fraction):
            if self.value.denominator != 1:
                raise ValueError(f"{self.value} is not an integer")
            return self.value.numerator
        return int(self.value)

    def __repr__(self):
        return f"{self.value} in {self.field!r}"

    def __str__(self):
        return str(self.value)


def binomial(n: int, r: int) -> int:
    """Exact C(n, r); zero when r > n (convenient in Leibniz-style sums)."""
    if n < 0 or r < 0:
        raise ValueError("binomial arguments must be natural numbers")
    return math.comb(n, r)


def base_digits(n: int, p: int) -> list[int]:
    """Little-endian base-p digits of n (empty list for 0)."""
    digits = []
    while n:
        n, d = divmod(n, p)
        digits.append(d)
    return digits


def binomial_mod_p(n: int, r: int, p: int) -> Scalar:
    """C(n, r) mod p by Lucas' theorem: the product of digit-wise binomials."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if n < 0 or r < 0:
        raise ValueError("binomial arguments must be natural numbers")
    F = GF(p)
    if r > n:
        return Scalar(0, F)
    result = 1
    while n or r:
        n, nd = divmod(n, p)
        r, rd = divmod(r, p)
        if rd > nd:
            return Scalar(0, F)
        result = result * math.comb(nd, rd) % p
    return Scalar(result, F)


def binomial_in(field: Field, n: int, r: int):
    """C(n, r) as a raw element of ``field`` (Lucas in characteristic p)."""
    if field.characteristic:
        return binomial_mod_p(n, r, field.characteristic).value
    return Fraction(binomial(n, r))

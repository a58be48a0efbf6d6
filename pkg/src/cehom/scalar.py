"""Exact coefficient fields: prime fields F_p (p odd) and the rationals.

Scalars are plain Python values: ints in ``[0, p)`` for a prime field and
:class:`fractions.Fraction` for the rationals.  A field object carries the
arithmetic so that the linear algebra and the complex builders never need to
know which field they are working over.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

Scalar = Union[int, Fraction]


class FieldError(ValueError):
    """Invalid field specification or undefined field operation."""


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
    """Arithmetic context shared by :class:`PrimeField` and :class:`Rationals`."""

    characteristic: int

    @property
    def name(self) -> str:
        raise NotImplementedError

    def zero(self) -> Scalar:
        return self.from_integer(0)

    def one(self) -> Scalar:
        return self.from_integer(1)

    def from_integer(self, n: int) -> Scalar:
        raise NotImplementedError

    def element(self, x) -> Scalar:
        """Coerce an int, Fraction or residue into this field."""
        raise NotImplementedError

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return self.add(a, self.negate(b))

    def negate(self, a: Scalar) -> Scalar:
        raise NotImplementedError

    def multiply(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def invert(self, a: Scalar) -> Scalar:
        raise NotImplementedError

    def divide(self, a: Scalar, b: Scalar) -> Scalar:
        return self.multiply(a, self.invert(b))

    def is_zero(self, a: Scalar) -> bool:
        return a == 0

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise FieldError(f"prime must be an integer, got {self.p!r}")
        if self.p == 2:
            raise FieldError("even characteristic unsupported (the CE differential needs 1/2)")
        if not is_prime(self.p):
            raise FieldError(f"{self.p} is not a prime")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return f"F_{self.p}"

    def from_integer(self, n: int) -> int:
        return n % self.p

    def element(self, x) -> int:
        if isinstance(x, bool):
            raise FieldError("booleans are not field elements")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Rational):
            den = x.denominator % self.p
            if den == 0:
                raise FieldError(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(den, -1, self.p) % self.p
        raise FieldError(f"cannot coerce {x!r} into F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def negate(self, a):
        return -a % self.p

    def multiply(self, a, b):
        return a * b % self.p

    def invert(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 is not invertible in F_{self.p}")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0


@dataclass(frozen=True)
class Rationals(Field):
    @property
    def characteristic(self) -> int:
        return 0

    @property
    def name(self) -> str:
        return "Q"

    def from_integer(self, n: int) -> Fraction:
        return Fraction(n)

    def element(self, x) -> Fraction:
        if isinstance(x, bool):
            raise FieldError("booleans are not field elements")
        if isinstance(x, (int, Rational)):
            return Fraction(x)
        raise FieldError(f"cannot coerce {x!r} into Q")

    def add(self, a, b):
        return a + b

    def negate(self, a):
        return -a

    def multiply(self, a, b):
        return a * b

    def invert(self, a):
        if a == 0:
            raise ZeroDivisionError("0 is not invertible in Q")
        return 1 / Fraction(a)


QQ = Rationals()


def field_create(value) -> Field:
    """Build a field from ``"Q"``, an odd prime, or a string such as ``"5"``.

    >>> field_create(5).from_integer(7)
    2
    """
    if isinstance(value, Field):
        return value
    if isinstance(value, str):
        s = value.strip()
        if s.upper() in ("Q", "QQ", "RATIONALS"):
            return QQ
        if s.upper().startswith("F_"):
            s = s[2:]
        try:
            value = int(s)
        except ValueError:
            raise FieldError(f"unrecognised field {value!r}") from None
    return PrimeField(value)

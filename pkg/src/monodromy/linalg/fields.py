"""Exact scalar fields: the rationals and prime fields F_p.

Elements of ``QQ`` are :class:`fractions.Fraction` values; elements of
``GF(p)`` are :class:`ModInt` values. Both support the usual arithmetic
operators, so the matrix and polynomial code is written once against
operators and a :class:`Field` handle that knows how to build constants.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Union

Scalar = Union[Fraction, "ModInt"]


class Field:
    """Common interface of the supported exact fields."""

    characteristic: int = 0

    def __call__(self, value) -> Scalar:
        raise NotImplementedError

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def tag(self) -> str:
        raise NotImplementedError

    def to_str(self, x: Scalar) -> str:
        raise NotImplementedError

    def sort_key(self, x: Scalar):
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.tag()


class RationalField(Field):
    characteristic = 0

    def __call__(self, value) -> Fraction:
        if isinstance(value, ModInt):
            raise TypeError("cannot coerce an F_p element into Q")
        if isinstance(value, str):
            return Fraction(value.strip())
        return Fraction(value)

    def tag(self) -> str:
        return "Q"

    def to_str(self, x: Fraction) -> str:
        return str(x)

    def sort_key(self, x: Fraction):
        return x

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")


QQ = RationalField()


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"F_p needs a prime modulus, got {p}")
        self.characteristic = p

    @property
    def p(self) -> int:
        return self.characteristic

    def __call__(self, value) -> "ModInt":
        p = self.characteristic
        if isinstance(value, ModInt):
            if value.p != p:
                raise TypeError(f"element of F_{value.p} used in F_{p}")
            return value
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes mod {p}")
            return ModInt(value.numerator * pow(value.denominator, -1, p), p)
        return ModInt(int(value), p)

    def tag(self) -> str:
        return f"Fp:{self.characteristic}"

    def to_str(self, x: "ModInt") -> str:
        return str(x.v)

    def sort_key(self, x: "ModInt"):
        return x.v

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("Fp", self.characteristic))


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(text: str) -> Field:
    """Parse ``"Q"`` or ``"Fp:<prime>"``."""
    text = text.strip()
    if text in ("Q", "QQ"):
        return QQ
    if text.startswith("Fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise ValueError(f"bad field {text!r}") from None
        return GF(p)
    raise ValueError(f"bad field {text!r} (expected 'Q' or 'Fp:<prime>')")


class ModInt:
    """Residue class modulo a prime, always stored reduced in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise TypeError("mixed prime fields")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return ModInt(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return ModInt(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return ModInt(pow(self.v, -1, self.p), self.p) ** (-e)
        return ModInt(pow(self.v, e, self.p), self.p)

    def __eq__(self, other) -> bool:
        if isinstance(other, ModInt):
            return self.p == other.p and self.v == other.v
        if isinstance(other, (int, Fraction)):
            o = self._coerce(other)
            return (self.v - o) % self.p == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.v, self.p))

    def __bool__(self) -> bool:
        return self.v != 0

    def __repr__(self) -> str:
        return f"{self.v} (mod {self.p})"

    def __str__(self) -> str:
        return str(self.v)


def field_of(x) -> Field:
    if isinstance(x, ModInt):
        return GF(x.p)
    return QQ

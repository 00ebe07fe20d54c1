"""Univariate polynomials over an exact field, coefficients lowest degree first."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from typing import List, Sequence, Tuple

from .fields import QQ, Field, ModInt, Scalar


class Polynomial:
    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs: Sequence, field: Field = QQ):
        self.field = field
        cs = [field(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Scalar, ...] = tuple(cs)

    @classmethod
    def constant(cls, c, field: Field = QQ) -> "Polynomial":
        return cls([c], field)

    @classmethod
    def z(cls, field: Field = QQ) -> "Polynomial":
        return cls([0, 1], field)

    @classmethod
    def linear(cls, root, field: Field = QQ) -> "Polynomial":
        """The monic polynomial ``z - root``."""
        return cls([-field(root), 1], field)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lc = self.coeffs[-1]
        return Polynomial([c / lc for c in self.coeffs], self.field)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        z = self.field.zero
        return Polynomial([(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n)],
                          self.field)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs], self.field)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = self.field(other)
            return Polynomial([c * x for x in self.coeffs], self.field)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial([], self.field)
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Polynomial(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        out = Polynomial.constant(1, self.field)
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.leading
        q = [self.field.zero] * max(len(rem) - dq, 0)
        while len(rem) - 1 >= dq and rem:
            shift = len(rem) - 1 - dq
            f = rem[-1] / lc
            q[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - f * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return Polynomial(q, self.field), Polynomial(rem, self.field)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x) -> Scalar:
        return poly_eval(self, x)

    def reversed_monic(self) -> "Polynomial":
        """The monic reciprocal ``z^d p(1/z) / p(0)``; roots are inverted."""
        if not self.coeffs or self.coeffs[0] == 0:
            raise ValueError("reciprocal needs a nonzero constant term")
        return Polynomial(list(reversed(self.coeffs)), self.field).monic()

    def sort_key(self):
        return (self.degree, tuple(self.field.sort_key(c) for c in self.coeffs))

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Polynomial({self.render()!r}, {self.field.tag()})"

    def render(self, var: str = "z") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            s = _scalar_str(c)
            neg = s.startswith("-")
            mag = s[1:] if neg else s
            if i == 0:
                body = mag
            else:
                mono = var if i == 1 else f"{var}^{i}"
                if mag == "1":
                    body = mono
                elif "/" in mag:
                    body = f"({mag}){mono}"
                else:
                    body = f"{mag}{mono}"
            if not terms:
                terms.append(("-" if neg else "") + body)
            else:
                terms.append(("- " if neg else "+ ") + body)
        return " ".join(terms)


def _scalar_str(c) -> str:
    if isinstance(c, ModInt):
        return str(c.v)
    return str(c)


def poly_eval(p: Polynomial, x) -> Scalar:
    x = p.field(x)
    acc = p.field.zero
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd (the zero polynomial only when both inputs are zero)."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_divexact(p: Polynomial, q: Polynomial) -> Polynomial:
    quo, rem = divmod(p, q)
    if not rem.is_zero():
        raise ValueError(f"{q} does not divide {p}")
    return quo


def poly_product(polys, field: Field = QQ) -> Polynomial:
    return reduce(lambda a, b: a * b, polys, Polynomial.constant(1, field))


def parse_polynomial(text: str, field: Field = QQ) -> Polynomial:
    """Parse strings such as ``"z^2 - 3z + 1"`` or ``"z^2 - (1/2)z"``."""
    import re

    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    terms = re.findall(r"[+-][^+-]+", s)
    if "".join(terms) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    coeffs = {}
    for t in terms:
        sign = -1 if t[0] == "-" else 1
        body = t[1:]
        m = re.fullmatch(r"\(?([0-9/]*)\)?(z(\^([0-9]+))?)?", body)
        if not m or (not m.group(1) and not m.group(2)):
            raise ValueError(f"cannot parse term {t!r} in {text!r}")
        c = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        deg = 0 if not m.group(2) else (int(m.group(4)) if m.group(4) else 1)
        coeffs[deg] = coeffs.get(deg, Fraction(0)) + sign * c
    n = max(coeffs) + 1
    return Polynomial([coeffs.get(i, 0) for i in range(n)], field)


def factor(p: Polynomial) -> List[Tuple[Polynomial, int]]:
    """Irreducible monic factors with multiplicities, sorted canonically.

    Over Q this is integer-polynomial factorization; over F_p the standard
    finite-field algorithms. Both are delegated to sympy.
    """
    from sympy import Poly, symbols

    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.degree == 0:
        return []
    z = symbols("z")
    field = p.field
    hi_first = list(reversed(p.coeffs))
    if field.characteristic == 0:
        sp = Poly([_to_sympy_rational(c) for c in hi_first], z, domain="QQ")
        _, facs = sp.factor_list()
        out = []
        for f, e in facs:
            cs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
            out.append((Polynomial(cs, field).monic(), e))
    else:
        mod = field.characteristic
        sp = Poly([c.v for c in hi_first], z, modulus=mod)
        _, facs = sp.factor_list()
        out = []
        for f, e in facs:
            cs = [int(c) % mod for c in reversed(f.all_coeffs())]
            out.append((Polynomial(cs, field).monic(), e))
    out.sort(key=lambda t: (t[0].sort_key(), t[1]))
    return out


def _to_sympy_rational(c: Fraction):
    from sympy import Rational

    return Rational(c.numerator, c.denominator)

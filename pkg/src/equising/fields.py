"""Coefficient fields.

Three kinds of coefficients are used:

* ``QQ`` -- exact rationals, stored as :class:`gmpy2.mpq`;
* ``GF(p)`` -- residues modulo a prime ``p``, stored as plain ``int`` in ``[0, p)``;
* ``FunctionField(params)`` -- rational functions in the family parameters over
  QQ, used when the parameters are kept transcendental ("generic" fibres).

Every field exposes the same small surface (``convert``, ``add``, ``mul``,
``inv``, ...) so polynomial code never branches on the coefficient type.  The
attribute ``p`` is ``0`` for QQ, the prime for GF(p) and ``None`` for function
fields; the hot kernels use it to pick a specialised loop.
"""

from __future__ import annotations

import operator
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

DEFAULT_PRIME = 2147483647
SECOND_PRIME = 2147483629


class Field:
    p: int | None = 0
    name = "field"

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class RationalField(Field):
    p = 0
    name = "QQ"

    zero = mpq(0)
    one = mpq(1)
    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)
    neg = staticmethod(operator.neg)

    def convert(self, value):
        if isinstance(value, str):
            return mpq(Fraction(value))
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        return mpq(value)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def to_str(self, a) -> str:
        return str(a)

    def to_fraction(self, a) -> Fraction:
        return Fraction(int(a.numerator), int(a.denominator))


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 3 or not gmpy2.is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        self.p = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def convert(self, value):
        p = self.p
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, int):
            return value % p
        num, den = int(value.numerator), int(value.denominator)
        if den % p == 0:
            raise ZeroDivisionError(f"denominator divisible by {p}")
        return num * pow(den, -1, p) % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def to_str(self, a) -> str:
        return str(a)


class FunctionField(Field):
    """QQ(params): exact rational functions in the family parameters."""

    p = None

    def __init__(self, params):
        from sympy import QQ as _SQQ
        from sympy.polys.fields import field

        self.params = tuple(params)
        if not self.params:
            raise ValueError("function field needs at least one parameter")
        self._K, *gens = field(",".join(self.params), _SQQ)
        self.gens = tuple(gens)
        self._sqq = _SQQ
        self.name = "QQ(" + ",".join(self.params) + ")"
        self.zero = self._K.zero
        self.one = self._K.one

    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)
    neg = staticmethod(operator.neg)

    def convert(self, value):
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            value = mpq(value.numerator, value.denominator)
        if isinstance(value, int):
            return self._K(value)
        if type(value) is type(mpq(0)):
            return self._K(self._sqq.convert(value))
        return self._K(value)

    def gen(self, name: str):
        return self.gens[self.params.index(name)]

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def to_str(self, a) -> str:
        return str(a.as_expr()).replace("**", "^")


QQ = RationalField()


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


def parse_field(spec: str) -> Field:
    """``"q"`` -> QQ, ``"fp:<prime>"`` -> GF(prime)."""
    spec = spec.strip().lower()
    if spec in ("q", "qq"):
        return QQ
    if spec.startswith("fp:"):
        p = int(spec[3:])
        if p <= 2**30:
            raise ValueError("prime field mode requires p > 2^30")
        return PrimeField(p)
    raise ValueError(f"unknown field {spec!r}")


def next_prime_below(p: int) -> int:
    q = p - 2 if p % 2 else p - 1
    while not gmpy2.is_prime(q):
        q -= 2
    return q

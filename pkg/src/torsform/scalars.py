"""Exact scalars: l-adic valuations, the local ring at l, and Q_l/Z_l residues."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from numbers import Rational

from sympy import isprime

__all__ = [
    "LPrime",
    "LocalRational",
    "PairingValue",
    "lval",
    "reduce_mod_Zl",
    "in_local_ring",
]


class LPrime(int):
    """A positive integer that has been checked to be prime."""

    def __new__(cls, value):
        if isinstance(value, bool) or int(value) != value:
            raise ValueError(f"prime must be an integer, got {value!r}")
        value = int(value)
        if value < 2 or not isprime(value):
            raise ValueError(f"{value} is not prime")
        return super().__new__(cls, value)

    def __repr__(self):
        return f"LPrime({int(self)})"


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, LocalRational):
        return x.to_fraction()
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _int_val(n: int, l: int) -> int:
    n = abs(n)
    k = 0
    while n % l == 0:
        n //= l
        k += 1
    return k


def lval(x, l) -> int:
    """Exponent of ``l`` in the nonzero rational ``x``.

    >>> lval(8, 2), lval(Fraction(3, 4), 2), lval(5, 2)
    (3, -2, 0)
    """
    x = _as_fraction(x)
    if x == 0:
        raise ValueError("valuation of zero is undefined")
    return _int_val(x.numerator, l) - _int_val(x.denominator, l)


def in_local_ring(x, l) -> bool:
    """True when ``x`` has no ``l`` in its denominator."""
    return _as_fraction(x).denominator % l != 0


@dataclass(frozen=True)
class LocalRational:
    """A rational number whose reduced denominator is prime to ``prime``."""

    numerator: int
    denominator: int
    prime: int

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        if gcd(self.numerator, self.denominator) != 1:
            raise ValueError("fraction is not in lowest terms")
        if self.denominator % self.prime == 0:
            raise ValueError(f"denominator {self.denominator} is divisible by {self.prime}")

    @classmethod
    def from_fraction(cls, x, prime) -> "LocalRational":
        x = _as_fraction(x)
        return cls(x.numerator, x.denominator, int(prime))

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


@dataclass(frozen=True, order=True)
class PairingValue:
    """Element ``c / l**m`` of Q_l/Z_l in canonical form.

    The numerator is reduced mod ``l**m`` and is prime to ``l`` unless it is
    zero, in which case ``exponent`` is 0.  Equality of group elements is
    therefore field-wise equality.
    """

    numerator: int
    exponent: int
    prime: int

    def __post_init__(self):
        l, c, m = self.prime, self.numerator, self.exponent
        if m < 0 or not 0 <= c < l**m or (c == 0 and m != 0) or (c != 0 and c % l == 0):
            raise ValueError(f"non-canonical residue {c}/{l}^{m}")

    @classmethod
    def zero(cls, prime) -> "PairingValue":
        return cls(0, 0, int(prime))

    def is_zero(self) -> bool:
        return self.numerator == 0

    def to_fraction(self) -> Fraction:
        """Representative in [0, 1)."""
        return Fraction(self.numerator, self.prime**self.exponent)

    def __add__(self, other: "PairingValue") -> "PairingValue":
        if not isinstance(other, PairingValue):
            return NotImplemented
        if other.prime != self.prime:
            raise ValueError("cannot add residues at different primes")
        return reduce_mod_Zl(self.to_fraction() + other.to_fraction(), self.prime)

    def __neg__(self) -> "PairingValue":
        return reduce_mod_Zl(-self.to_fraction(), self.prime)

    def __sub__(self, other: "PairingValue") -> "PairingValue":
        return self + (-other)

    def __mul__(self, k: int) -> "PairingValue":
        if not isinstance(k, int):
            return NotImplemented
        return reduce_mod_Zl(k * self.to_fraction(), self.prime)

    __rmul__ = __mul__

    def __str__(self):
        return f"{self.numerator}/{self.prime**self.exponent}"

    @classmethod
    def parse(cls, text: str, prime) -> "PairingValue":
        """Inverse of ``str``; rejects anything that is not already canonical."""
        num, _, den = text.partition("/")
        c, d = int(num), int(den)
        l = int(prime)
        m = 0
        while d % l == 0:
            d //= l
            m += 1
        if d != 1:
            raise ValueError(f"{text!r} is not of the form c/{l}^m")
        return cls(c, m, l)


def reduce_mod_Zl(x, l) -> PairingValue:
    """Image of the rational ``x`` in Q_l/Z_l.

    Write ``x = a / (l**m * d)`` with ``d`` prime to ``l``; the result is
    ``c / l**m`` with ``c = a * d**-1 mod l**m``, then stripped of common
    factors of ``l``.
    """
    x = _as_fraction(x)
    l = int(l)
    den = x.denominator
    m = 0
    while den % l == 0:
        den //= l
        m += 1
    if m == 0:
        return PairingValue(0, 0, l)
    modulus = l**m
    c = x.numerator * pow(den, -1, modulus) % modulus
    # c is prime to l here since x was in lowest terms
    return PairingValue(c, m, l)

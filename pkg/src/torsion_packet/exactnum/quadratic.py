"""Exact arithmetic in real quadratic fields Q(sqrt(D)).

An element is a + b*sqrt(D) with rational a, b and a squarefree radicand
D >= 2.  Rational values are represented with b = 0; their radicand is a
formality and equality ignores it, so the same rational compares equal
across fields.  Signs and comparisons are decided exactly by rational
arithmetic (compare a^2 against D*b^2), never by floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .cyclotomic import MinPoly

Scalar = Union[int, Fraction]


def squarefree_part(n: int) -> tuple[int, int]:
    """Decompose a positive integer as n = s^2 * D with D squarefree.

    Returns (s, D).  Trial division is plenty here: inputs are small
    discriminants of quadratic minimal polynomials.
    """
    if n <= 0:
        raise ValueError(f"squarefree_part expects a positive integer, got {n}")
    s, d = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            count = 0
            while n % p == 0:
                n //= p
                count += 1
            s *= p ** (count // 2)
            if count % 2:
                d *= p
        p += 1 if p == 2 else 2
    d *= n
    return s, d


class QuadraticElem:
    """a + b*sqrt(d) with d squarefree, d >= 2."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Scalar, b: Scalar, d: int):
        if d < 2:
            raise ValueError(f"radicand must be >= 2, got {d}")
        s, sf = squarefree_part(d)
        if s != 1:
            raise ValueError(f"radicand must be squarefree, got {d} = {s}^2 * {sf}")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticElem is immutable")

    @classmethod
    def rational(cls, value: Scalar, d: int = 2) -> QuadraticElem:
        """A rational value as a quadratic element (the radicand is inert)."""
        return cls(value, 0, d)

    @classmethod
    def sqrt(cls, d: int) -> QuadraticElem:
        return cls(0, 1, d)

    # ----- structure ----------------------------------------------------

    def is_rational(self) -> bool:
        return self.b == 0

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> QuadraticElem:
        """The Galois conjugate a - b*sqrt(d)."""
        return QuadraticElem(self.a, -self.b, self.d)

    def trace(self) -> Fraction:
        """Sum with the Galois conjugate: 2a."""
        return 2 * self.a

    def norm(self) -> Fraction:
        """Product with the Galois conjugate: a^2 - d*b^2."""
        return self.a * self.a - self.d * self.b * self.b

    def minpoly(self) -> MinPoly:
        """x^2 - trace*x + norm for irrational elements, x - a otherwise."""
        if self.is_rational():
            return MinPoly([-self.a, 1])
        return MinPoly([self.norm(), -self.trace(), 1])

    def sign(self) -> int:
        """Exact sign under the embedding sqrt(d) -> positive real root."""
        a, b = self.a, self.b
        if b == 0:
            return 0 if a == 0 else (1 if a > 0 else -1)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # Opposite signs: compare a^2 with d*b^2 (equality would force
        # sqrt(d) rational, impossible for squarefree d >= 2).
        lhs, rhs = a * a, self.d * b * b
        if lhs == rhs:
            raise ArithmeticError(f"sqrt({self.d}) cannot be rational")
        bigger_is_a = lhs > rhs
        return (1 if a > 0 else -1) if bigger_is_a else (1 if b > 0 else -1)

    # ----- arithmetic ---------------------------------------------------

    def _aligned(self, other) -> tuple[QuadraticElem, QuadraticElem] | None:
        """Both operands over a common radicand, or None if incompatible type."""
        if isinstance(other, (int, Fraction)):
            return self, QuadraticElem(other, 0, self.d)
        if not isinstance(other, QuadraticElem):
            return None
        if other.d == self.d:
            return self, other
        if other.b == 0:
            return self, QuadraticElem(other.a, 0, self.d)
        if self.b == 0:
            return QuadraticElem(self.a, 0, other.d), other
        raise ValueError(f"radicand mismatch: sqrt({self.d}) vs sqrt({other.d})")

    def __add__(self, other):
        pair = self._aligned(other)
        if pair is None:
            return NotImplemented
        lhs, rhs = pair
        return QuadraticElem(lhs.a + rhs.a, lhs.b + rhs.b, lhs.d)

    __radd__ = __add__

    def __neg__(self) -> QuadraticElem:
        return QuadraticElem(-self.a, -self.b, self.d)

    def __sub__(self, other):
        pair = self._aligned(other)
        if pair is None:
            return NotImplemented
        lhs, rhs = pair
        return lhs + (-rhs)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        pair = self._aligned(other)
        if pair is None:
            return NotImplemented
        lhs, rhs = pair
        return QuadraticElem(
            lhs.a * rhs.a + lhs.d * lhs.b * rhs.b,
            lhs.a * rhs.b + lhs.b * rhs.a,
            lhs.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadraticElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero quadratic element")
        return QuadraticElem(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        pair = self._aligned(other)
        if pair is None:
            return NotImplemented
        lhs, rhs = pair
        return lhs * rhs.inverse()

    def __rtruediv__(self, other):
        pair = self._aligned(other)
        if pair is None:
            return NotImplemented
        lhs, rhs = pair
        return rhs * lhs.inverse()

    def __pow__(self, n: int) -> QuadraticElem:
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadraticElem(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadraticElem):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.d == other.d and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other) -> bool:
        diff = self - other
        if diff is NotImplemented:
            return NotImplemented
        return diff.sign() < 0

    def __le__(self, other) -> bool:
        diff = self - other
        if diff is NotImplemented:
            return NotImplemented
        return diff.sign() <= 0

    def __gt__(self, other) -> bool:
        diff = self - other
        if diff is NotImplemented:
            return NotImplemented
        return diff.sign() > 0

    def __ge__(self, other) -> bool:
        diff = self - other
        if diff is NotImplemented:
            return NotImplemented
        return diff.sign() >= 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self) -> str:
        return f"QuadraticElem({self})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.d})"
        if self.b == 1:
            tail = root
        elif self.b == -1:
            tail = f"-{root}"
        else:
            tail = f"{self.b}*{root}"
        if self.a == 0:
            return tail
        op = "-" if self.b < 0 else "+"
        mag = tail.lstrip("-")
        return f"{self.a} {op} {mag}"


def quadratic_from_minpoly(p: MinPoly, which_root: int = 1) -> QuadraticElem:
    """The real root (-t +- sqrt(disc))/2 of a degree-2 minimal polynomial.

    ``which_root`` selects the sign of the sqrt(D) coefficient (+1 or -1).
    Rejects polynomials whose discriminant is not a positive non-square,
    since only those have a real quadratic-field model.
    """
    if p.degree != 2:
        raise ValueError(f"expected a quadratic, got degree {p.degree}")
    if which_root not in (1, -1):
        raise ValueError("which_root must be +1 or -1")
    c0, c1, _ = p.coeffs
    disc = c1 * c1 - 4 * c0
    if disc <= 0:
        raise ValueError(f"discriminant {disc} is not positive; no real quadratic model")
    s, d = squarefree_part(disc.numerator * disc.denominator)
    if d == 1:
        raise ValueError(f"discriminant {disc} is a perfect square; the roots are rational")
    b = Fraction(s, 2 * disc.denominator) * which_root
    root = QuadraticElem(-c1 / 2, b, d)
    if root.trace() != -c1 or root.norm() != c0:
        raise ArithmeticError("quadratic root failed the trace/norm round-trip")
    return root

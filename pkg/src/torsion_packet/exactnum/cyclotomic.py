"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(m)-1)
reduced modulo the m-th cyclotomic polynomial.  The representation is
canonical: two elements are equal iff their coordinate tuples match, and
the zero element has the all-zero vector.  That makes the orbit
deduplication in :func:`minimal_polynomial` a plain set lookup.

Galois automorphisms sigma_k : zeta -> zeta^k for gcd(k, m) = 1 act by
permuting power-basis exponents and re-reducing; degrees of elements are
computed as Galois orbit sizes rather than by factoring polynomials.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from ..errors import ArithmeticInconsistencyError
from .polynomial import Fraction as Rational  # noqa: F401  (re-export convenience)
from .polynomial import RationalPoly, cyclotomic_int_coeffs, euler_phi

Scalar = Union[int, Fraction]


class _Conductor:
    """Cached per-conductor data: reduction table and unit group."""

    __slots__ = ("m", "degree", "minpoly_ints", "power_table", "units")

    def __init__(self, m: int):
        self.m = m
        d = euler_phi(m)
        self.degree = d
        self.minpoly_ints = cyclotomic_int_coeffs(m)
        # power_table[j] = coordinates of zeta^j; products of two reduced
        # elements need exponents up to 2d-2, Galois images need up to m-1.
        size = max(m, 2 * d - 1)
        table = []
        cur = [0] * d
        cur[0] = 1
        table.append(tuple(cur))
        phi = self.minpoly_ints
        for _ in range(1, size):
            high = cur[d - 1]
            cur = [0] + cur[: d - 1]
            if high:
                for i in range(d):
                    if phi[i]:
                        cur[i] -= high * phi[i]
            table.append(tuple(cur))
        self.power_table = tuple(table)
        self.units = tuple(k for k in range(1, m + 1) if math.gcd(k, m) == 1)


@lru_cache(maxsize=None)
def _conductor(m: int) -> _Conductor:
    if m < 1:
        raise ValueError(f"conductor must be a positive integer, got {m}")
    return _Conductor(m)


def _cleared(coeffs: tuple[Fraction, ...]) -> tuple[list[int], int]:
    # Common-denominator form (numerators, denominator) for integer-only loops.
    den = 1
    for c in coeffs:
        q = c.denominator
        if q != 1:
            den = den * q // math.gcd(den, q)
    if den == 1:
        return [c.numerator for c in coeffs], 1
    return [int(c * den) for c in coeffs], den


def _reduce_product(vec: list[int], ctx: _Conductor) -> list[int]:
    d = ctx.degree
    table = ctx.power_table
    for j in range(len(vec) - 1, d - 1, -1):
        vj = vec[j]
        if vj:
            row = table[j]
            for i in range(d):
                if row[i]:
                    vec[i] += vj * row[i]
    return vec[:d]


class CyclotomicElem:
    """An element of Q(zeta_m) in the reduced power basis.

    Instances are immutable; all operations return new elements.
    Arithmetic between elements requires matching conductors (use
    :meth:`to_conductor` to move into a larger field explicitly).
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable[Scalar]):
        ctx = _conductor(m)
        cs = tuple(c if isinstance(c, Fraction) else Fraction(c) for c in coeffs)
        if len(cs) != ctx.degree:
            raise ValueError(
                f"conductor {m} needs {ctx.degree} coordinates, got {len(cs)}"
            )
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicElem is immutable")

    # ----- constructors -------------------------------------------------

    @classmethod
    def zero(cls, m: int) -> CyclotomicElem:
        return cls(m, [0] * euler_phi(m))

    @classmethod
    def one(cls, m: int) -> CyclotomicElem:
        return cls.from_rational(m, 1)

    @classmethod
    def from_rational(cls, m: int, value: Scalar) -> CyclotomicElem:
        coeffs = [Fraction(value)] + [Fraction(0)] * (euler_phi(m) - 1)
        return cls(m, coeffs)

    @classmethod
    def zeta(cls, m: int, power: int = 1) -> CyclotomicElem:
        """zeta_m^power as a reduced element."""
        ctx = _conductor(m)
        return cls(m, ctx.power_table[power % m])

    # ----- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def is_real(self) -> bool:
        """Whether the element is fixed by complex conjugation."""
        return self.conjugate() == self

    def conjugate(self) -> CyclotomicElem:
        """Image under complex conjugation zeta -> zeta^(-1)."""
        return galois_apply(self, -1)

    def to_conductor(self, m2: int) -> CyclotomicElem:
        """Embed into Q(zeta_m2) for a multiple m2 of the conductor."""
        if m2 % self.m:
            raise ValueError(f"{m2} is not a multiple of the conductor {self.m}")
        if m2 == self.m:
            return self
        ctx2 = _conductor(m2)
        step = m2 // self.m
        nums, den = _cleared(self.coeffs)
        acc = [0] * ctx2.degree
        for j, c in enumerate(nums):
            if c:
                row = ctx2.power_table[(j * step) % m2]
                for i in range(ctx2.degree):
                    if row[i]:
                        acc[i] += c * row[i]
        return CyclotomicElem(m2, (Fraction(v, den) for v in acc))

    def restrict(self, m2: int) -> CyclotomicElem:
        """Express the element in Q(zeta_m2) for a divisor m2 of the conductor.

        Raises ValueError if the element does not lie in the subfield.
        """
        if self.m % m2:
            raise ValueError(f"{m2} does not divide the conductor {self.m}")
        if m2 == self.m:
            return self
        ctx = _conductor(self.m)
        d2 = euler_phi(m2)
        step = self.m // m2
        # Solve sum_j b_j * zeta_m^(j*step) = self by Gaussian elimination.
        cols = [ctx.power_table[(j * step) % self.m] for j in range(d2)]
        rows = [[Fraction(cols[j][i]) for j in range(d2)] + [self.coeffs[i]] for i in range(ctx.degree)]
        sol: list[int | None] = [None] * d2
        r = 0
        for c in range(d2):
            pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            pr = rows[r]
            inv = 1 / pr[c]
            rows[r] = pr = [v * inv for v in pr]
            for i in range(len(rows)):
                if i != r and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
            sol[c] = r
            r += 1
        values = [Fraction(0)] * d2
        for c in range(d2):
            if sol[c] is not None:
                values[c] = rows[sol[c]][-1]
        for i in range(r, len(rows)):
            if rows[i][-1] != 0:
                raise ValueError(f"element of Q(zeta_{self.m}) does not lie in Q(zeta_{m2})")
        # Rank-deficient columns would leave free variables; the basis images
        # are linearly independent, so every column has a pivot.
        if any(s is None for s in sol):
            raise ArithmeticInconsistencyError("subfield basis images were not independent")
        candidate = CyclotomicElem(m2, values)
        if candidate.to_conductor(self.m) != self:
            raise ValueError(f"element of Q(zeta_{self.m}) does not lie in Q(zeta_{m2})")
        return candidate

    # ----- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CyclotomicElem):
            if other.m != self.m:
                raise ValueError(
                    f"conductor mismatch ({self.m} vs {other.m}); embed explicitly via to_conductor"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicElem.from_rational(self.m, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CyclotomicElem(self.m, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CyclotomicElem(self.m, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self) -> CyclotomicElem:
        return CyclotomicElem(self.m, (-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicElem(self.m, (c * other for c in self.coeffs))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_rational():
            return CyclotomicElem(self.m, (self.coeffs[0] * c for c in other.coeffs))
        if other.is_rational():
            return CyclotomicElem(self.m, (other.coeffs[0] * c for c in self.coeffs))
        ctx = _conductor(self.m)
        na, da = _cleared(self.coeffs)
        nb, db = _cleared(other.coeffs)
        out = [0] * (2 * ctx.degree - 1)
        for i, a in enumerate(na):
            if a:
                for j, b in enumerate(nb):
                    if b:
                        out[i + j] += a * b
        red = _reduce_product(out, ctx)
        den = da * db
        return CyclotomicElem(self.m, (Fraction(v, den) for v in red))

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicElem:
        """Multiplicative inverse, by the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        if self.is_rational():
            return CyclotomicElem.from_rational(self.m, 1 / self.coeffs[0])
        ctx = _conductor(self.m)
        r0 = [Fraction(c) for c in ctx.minpoly_ints]
        s0 = [Fraction(0)]
        r1 = list(self.coeffs)
        while r1 and r1[-1] == 0:
            r1.pop()
        s1 = [Fraction(1)]
        while len(r1) > 1:
            # one full division step: r0 = q*r1 + r
            q = [Fraction(0)] * (len(r0) - len(r1) + 1)
            rem = r0[:]
            for k in range(len(rem) - len(r1), -1, -1):
                c = rem[k + len(r1) - 1] / r1[-1]
                if c:
                    q[k] = c
                    for i, rc in enumerate(r1):
                        rem[k + i] -= c * rc
            while rem and rem[-1] == 0:
                rem.pop()
            # s_next = s0 - q*s1
            prod = [Fraction(0)] * (len(q) + len(s1) - 1)
            for i, a in enumerate(q):
                if a:
                    for j, b in enumerate(s1):
                        if b:
                            prod[i + j] += a * b
            s_next = [
                (s0[i] if i < len(s0) else Fraction(0)) - (prod[i] if i < len(prod) else Fraction(0))
                for i in range(max(len(s0), len(prod)))
            ]
            while s_next and s_next[-1] == 0:
                s_next.pop()
            r0, r1 = r1, rem
            s0, s1 = s1, s_next
        if not r1:
            raise ArithmeticInconsistencyError(
                "nonzero element shared a factor with the cyclotomic modulus"
            )
        c = r1[0]
        inv = [v / c for v in s1]
        inv += [Fraction(0)] * (ctx.degree - len(inv))
        result = CyclotomicElem(self.m, inv[: ctx.degree])
        if not (result * self == CyclotomicElem.one(self.m)):
            raise ArithmeticInconsistencyError("inverse verification failed")
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            q = Fraction(other)
            return CyclotomicElem(self.m, (c / q for c in self.coeffs))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_rational():
            q = other.to_rational()
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return CyclotomicElem(self.m, (c / q for c in self.coeffs))
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int) -> CyclotomicElem:
        if n < 0:
            return self.inverse() ** (-n)
        result = CyclotomicElem.one(self.m)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, CyclotomicElem):
            return self.m == other.m and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.m, self.coeffs))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # ----- embeddings ---------------------------------------------------

    def complex_embedding(self) -> complex:
        """Floating-point value under zeta_m -> exp(2*pi*i/m).

        A convenience for sanity cross-checks and presentation ordering;
        never part of an exact decision.
        """
        total = 0j
        for j, c in enumerate(self.coeffs):
            if c:
                angle = 2.0 * math.pi * j / self.m
                total += float(c) * complex(math.cos(angle), math.sin(angle))
        return total

    def __repr__(self) -> str:
        return f"CyclotomicElem(m={self.m}, {self._pretty()})"

    def _pretty(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            var = "1" if j == 0 else ("z" if j == 1 else f"z^{j}")
            parts.append(f"{c}*{var}" if j else f"{c}")
        return " + ".join(parts)


def galois_apply(e: CyclotomicElem, k: int) -> CyclotomicElem:
    """Apply the automorphism sigma_k : zeta -> zeta^k, for gcd(k, m) = 1.

    sigma_1 is the identity and sigma_k . sigma_l = sigma_(k*l mod m);
    sigma_(-1) is complex conjugation.
    """
    m = e.m
    if math.gcd(k, m) != 1:
        raise ValueError(f"k = {k} is not coprime to the conductor {m}")
    kk = k % m
    if m == 1 or kk == 1:
        return e
    ctx = _conductor(m)
    nums, den = _cleared(e.coeffs)
    acc = [0] * ctx.degree
    for j, c in enumerate(nums):
        if c:
            row = ctx.power_table[(j * kk) % m]
            for i in range(ctx.degree):
                if row[i]:
                    acc[i] += c * row[i]
    return CyclotomicElem(m, (Fraction(v, den) for v in acc))


def conductor_units(m: int) -> tuple[int, ...]:
    """Representatives of (Z/m)^*, ascending."""
    return _conductor(m).units


def inv_one_minus_zeta(m: int, c: int) -> CyclotomicElem:
    """Closed-form inverse of 1 - zeta_m^c for c not divisible by m.

    For any m-th root of unity z != 1 one has
    1/(1 - z) = sum_{j=0}^{m-1} (m - 1 - 2j)/(2m) * z^j,
    which avoids the Euclidean algorithm entirely.
    """
    cc = c % m
    if cc == 0:
        raise ZeroDivisionError("1 - zeta^c is zero when m divides c")
    ctx = _conductor(m)
    acc = [0] * ctx.degree
    for j in range(m):
        w = m - 1 - 2 * j
        if w:
            row = ctx.power_table[(cc * j) % m]
            for i in range(ctx.degree):
                if row[i]:
                    acc[i] += w * row[i]
    den = 2 * m
    return CyclotomicElem(m, (Fraction(v, den) for v in acc))


class MinPoly:
    """A monic irreducible polynomial over Q, as produced by a Galois orbit.

    Coefficients are stored constant-term first; the leading coefficient
    is always 1.  ``trace`` and ``norm`` are the usual sum and product of
    the roots.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar]):
        cs = tuple(Fraction(c) for c in coeffs)
        if not cs or cs[-1] != 1:
            raise ValueError("MinPoly requires monic coefficients, constant term first")
        if len(cs) < 2:
            raise ValueError("MinPoly must have positive degree")
        self.coeffs: tuple[Fraction, ...]
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("MinPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def trace(self) -> Fraction:
        return -self.coeffs[-2]

    @property
    def norm(self) -> Fraction:
        sign = -1 if self.degree % 2 else 1
        return sign * self.coeffs[0]

    @property
    def is_unit(self) -> bool:
        """Whether the root is an algebraic unit: integer coefficients and
        constant term +-1 (so both the root and its inverse are algebraic
        integers)."""
        return all(c.denominator == 1 for c in self.coeffs) and abs(self.coeffs[0]) == 1

    def as_poly(self) -> RationalPoly:
        return RationalPoly(self.coeffs)

    def __call__(self, point):
        return self.as_poly()(point)

    def __eq__(self, other) -> bool:
        if isinstance(other, MinPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, RationalPoly):
            return self.as_poly() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"MinPoly({str(self.as_poly())!r})"

    def __str__(self) -> str:
        return str(self.as_poly())


def galois_orbit(e: CyclotomicElem) -> list[CyclotomicElem]:
    """The distinct images of ``e`` under all automorphisms of Q(zeta_m)."""
    seen: set[tuple] = set()
    orbit: list[CyclotomicElem] = []
    for k in conductor_units(e.m):
        img = galois_apply(e, k)
        if img.coeffs not in seen:
            seen.add(img.coeffs)
            orbit.append(img)
    return orbit


def minimal_polynomial(e: CyclotomicElem) -> MinPoly:
    """Minimal polynomial of ``e`` over Q, as the product over its Galois orbit.

    The orbit product is automatically irreducible, so the degree of the
    result equals the orbit size.  A non-rational coefficient in the
    product indicates an arithmetic bug and aborts.
    """
    orbit = galois_orbit(e)
    one = CyclotomicElem.one(e.m)
    poly: list[CyclotomicElem] = [one]
    for root in orbit:
        nxt = [CyclotomicElem.zero(e.m)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * root
        poly = nxt
    coeffs = []
    for c in poly:
        if not c.is_rational():
            raise ArithmeticInconsistencyError(
                f"Galois orbit product of {e!r} has a non-rational coefficient {c!r}"
            )
        coeffs.append(c.to_rational())
    return MinPoly(coeffs)

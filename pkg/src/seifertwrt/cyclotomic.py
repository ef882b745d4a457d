"""Exact arithmetic in cyclotomic fields Q(zeta_r) for odd r >= 3.

A :class:`CyclotomicNumber` is a vector of ``euler_phi(r)`` integers over a
single positive denominator, representing a polynomial in ``zeta = e^{2*pi*i/r}``
reduced modulo the r-th cyclotomic polynomial.  All arithmetic (including
inversion and Galois twists) is exact; a numerical embedding into C is
available at float or arbitrary mpmath precision for cross-checks only.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .numtheory import NonInvertible

Rational = int | Fraction


class InvalidLevel(ValueError):
    """Raised when a root-of-unity level is outside the supported domain."""


class LevelMismatch(ValueError):
    """Raised when combining cyclotomic numbers of different levels."""


class DivisionByZero(ZeroDivisionError):
    """Raised when inverting or dividing by the zero cyclotomic number."""


class NotADivisor(ValueError):
    """Raised when an order argument fails to divide the level."""


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    """Euler's totient of ``n >= 1`` by trial-division factorization."""
    if n < 1:
        raise InvalidLevel(f"totient needs n >= 1, got {n}")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            result -= result // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_exact_div_int(num: Sequence[int], den: Sequence[int]) -> tuple[int, ...]:
    """Quotient of exact integer polynomial division (remainder must vanish).

    Coefficient lists are low-degree first; ``den`` must be monic up to sign.
    """
    num_work = list(num)
    den_list = list(den)
    while den_list and den_list[-1] == 0:
        den_list.pop()
    lead = den_list[-1]
    if abs(lead) != 1:
        raise ValueError("divisor must have leading coefficient +-1")
    deg_d = len(den_list) - 1
    deg_n = len(num_work) - 1
    while deg_n >= 0 and num_work[deg_n] == 0:
        deg_n -= 1
    quotient = [0] * (deg_n - deg_d + 1)
    for k in range(deg_n - deg_d, -1, -1):
        coef = num_work[k + deg_d] // lead
        quotient[k] = coef
        if coef:
            for i, d in enumerate(den_list):
                num_work[k + i] -= coef * d
    if any(num_work):
        raise ValueError("division left a nonzero remainder")
    return tuple(quotient)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, low-degree first."""
    if n < 1:
        raise InvalidLevel(f"cyclotomic polynomial needs n >= 1, got {n}")
    if n == 1:
        return (-1, 1)
    # Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, exactly.
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    quotient: tuple[int, ...] = tuple(num)
    for d in range(1, n):
        if n % d == 0:
            quotient = _poly_exact_div_int(quotient, cyclotomic_polynomial(d))
    return quotient


def _check_level(r: int) -> None:
    if r < 3 or r % 2 == 0:
        raise InvalidLevel(f"level must be odd and >= 3, got {r}")


@lru_cache(maxsize=None)
def _reduction_rows(r: int) -> tuple[tuple[int, ...], ...]:
    """Rows ``x^k mod Phi_r`` (basis coefficients, length phi) for k = phi .. 2r-4."""
    phi = euler_phi(r)
    top = [-c for c in cyclotomic_polynomial(r)[:phi]]  # x^phi in the basis
    rows = [tuple(top)]
    current = list(top)
    for _ in range(phi + 1, 2 * r - 3):
        shifted = [0] + current[: phi - 1]
        lead = current[phi - 1]
        if lead:
            for i in range(phi):
                shifted[i] += lead * top[i]
        current = shifted
        rows.append(tuple(current))
    return tuple(rows)


def _reduce_int_vector(r: int, vec: list[int]) -> list[int]:
    """Reduce an integer coefficient vector (power basis) modulo ``Phi_r``."""
    phi = euler_phi(r)
    if len(vec) <= phi:
        return vec + [0] * (phi - len(vec))
    rows = _reduction_rows(r)
    out = vec[:phi] + [0] * (phi - min(phi, len(vec)))
    for k in range(phi, len(vec)):
        c = vec[k]
        if c:
            row = rows[k - phi]
            for i in range(phi):
                out[i] += c * row[i]
    return out


class CyclotomicNumber:
    """An element of Q(zeta_r), stored exactly.

    ``CyclotomicNumber(r, coeffs, den)`` interprets ``coeffs[i]`` (integers or
    Fractions) as the coefficient of ``zeta_r**i``; indices are folded modulo
    ``r``, the result is reduced modulo the cyclotomic polynomial, and the
    stored form is a tuple of ``euler_phi(r)`` integers over one positive
    denominator with no common factor.
    """

    __slots__ = ("r", "_num", "_den")

    def __init__(self, r: int, coeffs: Iterable[Rational] = (), den: int = 1):
        _check_level(r)
        if den == 0:
            raise DivisionByZero("denominator must be nonzero")
        folded: list[Fraction] = [Fraction(0)] * r
        for i, c in enumerate(coeffs):
            if c:
                folded[i % r] += Fraction(c)
        common = 1
        for c in folded:
            common = common * c.denominator // gcd(common, c.denominator)
        ints = [int(c * common) for c in folded]
        reduced = _reduce_int_vector(r, ints)
        num, final_den = _normalize(reduced, den * common)
        self.r = r
        self._num = num
        self._den = final_den

    @classmethod
    def _raw(cls, r: int, num: Sequence[int], den: int) -> "CyclotomicNumber":
        """Internal: wrap an already-reduced basis vector, normalizing only."""
        self = object.__new__(cls)
        self.r = r
        self._num, self._den = _normalize(list(num), den)
        return self

    @classmethod
    def zero(cls, r: int) -> "CyclotomicNumber":
        _check_level(r)
        return cls._raw(r, [0] * euler_phi(r), 1)

    @classmethod
    def one(cls, r: int) -> "CyclotomicNumber":
        return cls.from_rational(r, 1)

    @classmethod
    def from_rational(cls, r: int, value: Rational) -> "CyclotomicNumber":
        _check_level(r)
        frac = Fraction(value)
        num = [0] * euler_phi(r)
        num[0] = frac.numerator
        return cls._raw(r, num, frac.denominator)

    # -- structural accessors -------------------------------------------------

    @property
    def denominator(self) -> int:
        return self._den

    def coefficients(self) -> tuple[Fraction, ...]:
        """Basis coefficients (powers ``zeta^0 .. zeta^{phi-1}``) as Fractions."""
        return tuple(Fraction(n, self._den) for n in self._num)

    def integer_coefficients(self) -> tuple[tuple[int, ...], int]:
        """The canonical ``(numerators, denominator)`` pair."""
        return self._num, self._den

    def is_zero(self) -> bool:
        return all(n == 0 for n in self._num)

    def is_rational(self) -> bool:
        return all(n == 0 for n in self._num[1:])

    def as_rational(self) -> Fraction:
        """The value as a Fraction; raises ``ValueError`` if not rational."""
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def is_algebraic_integer(self) -> bool:
        """True iff the element lies in Z[zeta_r] (denominator one)."""
        return self._den == 1

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "CyclotomicNumber | None":
        if isinstance(other, CyclotomicNumber):
            if other.r != self.r:
                raise LevelMismatch(f"levels differ: {self.r} vs {other.r}")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(self.r, other)
        return None

    def __add__(self, other) -> "CyclotomicNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        num = [a * o._den + b * self._den for a, b in zip(self._num, o._num)]
        return CyclotomicNumber._raw(self.r, num, self._den * o._den)

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber._raw(self.r, [-n for n in self._num], self._den)

    def __sub__(self, other) -> "CyclotomicNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "CyclotomicNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "CyclotomicNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._num, o._num
        conv = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        reduced = _reduce_int_vector(self.r, conv)
        return CyclotomicNumber._raw(self.r, reduced, self._den * o._den)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse via the extended Euclidean algorithm.

        Runs over Q[x] against the (irreducible) cyclotomic polynomial, so
        the gcd is a nonzero constant whenever ``self`` is nonzero.
        """
        if self.is_zero():
            raise DivisionByZero("zero has no inverse")
        phi_poly = [Fraction(c) for c in cyclotomic_polynomial(self.r)]
        a = [Fraction(n, self._den) for n in self._num]
        # Invariant: u * self + (something) * Phi_r = rem, tracked only in u.
        r0, r1 = phi_poly, list(a)
        u0, u1 = [Fraction(0)], [Fraction(1)]
        while any(c != 0 for c in r1):
            q, rem = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, rem
            u0, u1 = u1, _poly_sub(u0, _poly_mul(q, u1))
        const = next(c for c in r0 if c != 0)
        if any(c != 0 for c in r0[1:]) or _poly_degree(r0) > 0:
            raise ArithmeticError("cyclotomic polynomial was not irreducible?")
        inv_coeffs = [c / const for c in u0]
        return CyclotomicNumber(self.r, inv_coeffs)

    def __pow__(self, exponent: int) -> "CyclotomicNumber":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CyclotomicNumber.one(self.r)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other) -> "CyclotomicNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "CyclotomicNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # -- Galois action --------------------------------------------------------

    def galois(self, t: int) -> "CyclotomicNumber":
        """Apply the field automorphism ``zeta -> zeta**t`` (``gcd(t, r) = 1``)."""
        t %= self.r
        if gcd(t, self.r) != 1:
            raise NonInvertible(f"{t} is not a unit modulo {self.r}")
        vec = [0] * self.r
        for i, n in enumerate(self._num):
            if n:
                vec[(t * i) % self.r] += n
        reduced = _reduce_int_vector(self.r, vec)
        return CyclotomicNumber._raw(self.r, reduced, self._den)

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugation, i.e. the Galois twist by -1."""
        return self.galois(-1)

    # -- numerics and comparisons --------------------------------------------

    def to_complex(self, precision: int | None = None):
        """Numerical value: a ``complex`` (default) or an ``mpmath.mpc``.

        ``precision`` is in decimal digits; when given, mpmath evaluates the
        embedding with that working precision.
        """
        if precision is None:
            total = 0j
            for k, n in enumerate(self._num):
                if n:
                    total += n * cmath.exp(2j * cmath.pi * k / self.r)
            return total / self._den
        import mpmath

        with mpmath.workdps(precision):
            total = mpmath.mpc(0)
            for k, n in enumerate(self._num):
                if n:
                    total += n * mpmath.expjpi(mpmath.mpf(2 * k) / self.r)
            return total / self._den

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, CyclotomicNumber):
            if other.r == self.r:
                return self._num == other._num and self._den == other._den
            # Constants are level-independent; anything else is incomparable.
            if self.is_rational() and other.is_rational():
                return self.as_rational() == other.as_rational()
            return False
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.as_rational() == Fraction(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.as_rational())
        return hash((self.r, self._num, self._den))

    def __repr__(self) -> str:
        return f"CyclotomicNumber(r={self.r}, {self})"

    def __str__(self) -> str:
        terms: list[str] = []
        for k, n in enumerate(self._num):
            if n == 0:
                continue
            mag = abr = abs(n)
            if k == 0:
                body = f"{abr}"
            else:
                z = "z" if k == 1 else f"z^{k}"
                body = z if mag == 1 else f"{abr}*{z}"
            if not terms:
                terms.append(body if n > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if n > 0 else f"- {body}")
        poly = " ".join(terms) if terms else "0"
        if self._den == 1:
            return poly
        return f"({poly})/{self._den}"


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        den = -den
        num = [-n for n in num]
    g = den
    for n in num:
        g = gcd(g, n)
        if g == 1:
            break
    if g > 1:
        den //= g
        num = [n // g for n in num]
    return tuple(num), den


def _poly_degree(p: Sequence[Fraction]) -> int:
    for i in range(len(p) - 1, -1, -1):
        if p[i] != 0:
            return i
    return -1


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, ai in enumerate(a):
        out[i] += ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return out


def _poly_divmod_frac(
    num: Sequence[Fraction], den: Sequence[Fraction]
) -> tuple[list[Fraction], list[Fraction]]:
    dn = _poly_degree(num)
    dd = _poly_degree(den)
    rem = list(num[: dn + 1]) if dn >= 0 else [Fraction(0)]
    if dd < 0:
        raise DivisionByZero("polynomial division by zero")
    quot = [Fraction(0)] * max(dn - dd + 1, 1)
    lead = den[dd]
    for k in range(dn - dd, -1, -1):
        coef = rem[k + dd] / lead
        quot[k] = coef
        if coef:
            for i in range(dd + 1):
                rem[k + i] -= coef * den[i]
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def root_power(r: int, k: int) -> CyclotomicNumber:
    """The root of unity ``zeta_r ** k`` as an exact cyclotomic number."""
    _check_level(r)
    vec = [0] * r
    vec[k % r] = 1
    return CyclotomicNumber(r, vec)


def gauss_sum(r: int, c: int) -> CyclotomicNumber:
    """The quadratic Gauss sum ``sum_{x=1}^{c} zeta_r^{(r/c) x^2}`` for ``c | r``.

    For ``c = 1`` this is 1; for ``c = r`` it is the classical Gauss sum of
    conductor r.  Raises :class:`NotADivisor` when ``c`` does not divide ``r``.
    """
    _check_level(r)
    if c < 1 or r % c != 0:
        raise NotADivisor(f"{c} does not divide {r}")
    step = r // c
    vec = [0] * r
    for x in range(1, c + 1):
        vec[(step * x * x) % r] += 1
    return CyclotomicNumber(r, vec)

"""Integer and rational number theory helpers.

Everything here is exact: big integers, ``fractions.Fraction``, and small
combinatorial recursions.  These are the primitives the rest of the package
is assembled from -- modular inverses, Jacobi symbols, Dedekind sums, and
negative continued-fraction ("good") expansions of rationals together with
the Bezout-type data read off from their partial numerators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd


class NonInvertible(ValueError):
    """Raised when an element has no inverse modulo the given modulus."""


class InvalidModulus(ValueError):
    """Raised when a modulus is outside the domain of the operation."""


class NotCoprime(ValueError):
    """Raised when arguments required to be coprime are not."""


class ZeroNumerator(ValueError):
    """Raised when a rational that must be nonzero has numerator zero."""


class IndexOutOfRange(ValueError):
    """Raised when a recursion index lies outside its documented range."""


def sign(x: int | Fraction) -> int:
    """Sign of ``x`` as an integer in ``{-1, 0, 1}``."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: return ``(g, x, y)`` with ``a*x + b*y = g = gcd(a, b)``.

    ``g`` is nonnegative whenever ``(a, b) != (0, 0)``.
    """
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def mod_inverse(a: int, m: int) -> int:
    """Inverse of ``a`` modulo ``m``, reduced to ``0..m-1``.

    Raises :class:`NonInvertible` if ``gcd(a, m) != 1`` and
    :class:`InvalidModulus` if ``m < 1``.
    """
    if m < 1:
        raise InvalidModulus(f"modulus must be positive, got {m}")
    try:
        return pow(a, -1, m)
    except ValueError as exc:
        raise NonInvertible(f"{a} is not invertible modulo {m}") from exc


def jacobi(a: int, b: int) -> int:
    """Jacobi symbol ``(a/b)`` for odd positive ``b``; ``a`` may be any integer.

    Returns 0 iff ``gcd(a, b) > 1``.  Raises :class:`InvalidModulus` for even
    or nonpositive ``b``.
    """
    if b <= 0 or b % 2 == 0:
        raise InvalidModulus(f"lower argument must be odd and positive, got {b}")
    a %= b
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if b % 8 in (3, 5):
                result = -result
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            result = -result
        a %= b
    return result if b == 1 else 0


def _sawtooth(x: Fraction) -> Fraction:
    """The periodic Bernoulli function ((x)): 0 at integers, else x - floor(x) - 1/2."""
    if x.denominator == 1:
        return Fraction(0)
    floor = x.numerator // x.denominator
    return x - floor - Fraction(1, 2)


def dedekind_sum(q: int, p: int) -> Fraction:
    """Dedekind sum ``s(q, p)`` for coprime ``q, p`` with ``p != 0``.

    Uses the convention ``s(q, p) = s(q * sign(p), |p|)`` for negative ``p``,
    and the direct defining sum over residues (exact, O(|p|)).
    """
    if p == 0:
        raise ZeroNumerator("Dedekind sum needs p != 0")
    if gcd(q, p) != 1:
        raise NotCoprime(f"Dedekind sum needs gcd(q, p) = 1, got ({q}, {p})")
    if p < 0:
        q, p = -q, -p
    total = Fraction(0)
    for k in range(1, p):
        total += _sawtooth(Fraction(k, p)) * _sawtooth(Fraction(q * k, p))
    return total


@dataclass(frozen=True)
class GoodExpansion:
    """A rational ``p/q`` written as a negative continued fraction.

    ``ms`` stores the entries high-first: ``ms = (m_l, ..., m_1)`` with

        p/q = m_l - 1/(m_{l-1} - 1/(... - 1/m_1)),

    ``l >= 2``, and for ``q >= 2`` all of ``m_1 .. m_{l-1}`` at least 2
    (integers take the two-entry form ``(p+1, 1)``).  Use
    :func:`good_expansion` to build one; the raw constructor performs no
    validation (handy for tests that probe edge conventions).
    """

    p: int
    q: int
    ms: tuple[int, ...]

    @property
    def l(self) -> int:  # noqa: E743 - matches the standard name for the length
        return len(self.ms)

    def entry(self, i: int) -> int:
        """Entry ``m_i`` with ``i = 1`` the innermost, ``i = l`` the outermost."""
        if not 1 <= i <= self.l:
            raise IndexOutOfRange(f"entry index {i} outside 1..{self.l}")
        return self.ms[self.l - i]

    def value(self) -> Fraction:
        """Evaluate the continued fraction back to a rational (self-check)."""
        acc = Fraction(self.ms[-1])
        for m in self.ms[-2::-1]:
            acc = m - 1 / acc
        return acc


@lru_cache(maxsize=None)
def good_expansion(p: int, q: int) -> GoodExpansion:
    """Canonical good expansion of ``p/q`` for ``q >= 1``, ``gcd(p, q) = 1``.

    The expansion always has length ``l >= 2``; for ``q >= 2`` every entry
    below the outermost one is at least 2 (only the outermost entry may be
    small or negative), while integers expand as ``p = (p+1) - 1/1``.
    """
    if q < 1:
        raise InvalidModulus(f"denominator must be >= 1, got {q}")
    if p == 0:
        raise ZeroNumerator("numerator must be nonzero")
    if gcd(p, q) != 1:
        raise NotCoprime(f"need gcd(p, q) = 1, got ({p}, {q})")
    if q == 1:
        return GoodExpansion(p, q, (p + 1, 1))
    top = p // q + 1  # ceil(p/q), noting q does not divide p here
    ms = [top]
    # p/q = top - 1/(q/(top*q - p)); expand the rest with ceiling division,
    # which keeps every further entry >= 2.
    b, a = q, top * q - p
    while a != 0:
        m = -((-b) // a)  # ceil(b/a)
        ms.append(m)
        b, a = a, m * a - b
    return GoodExpansion(p, q, tuple(ms))


def partial_numerator(e: GoodExpansion, j: int, i: int) -> int:
    """Continuant ``N_{j,i}`` of entries ``m_j, m_{j-1}, ..., m_i``.

    Defined by ``N_{i-2,i} = 0``, ``N_{i-1,i} = 1`` and
    ``N_{j,i} = m_j * N_{j-1,i} - N_{j-2,i}``.  Requires ``1 <= i`` and
    ``i - 1 <= j <= l``.
    """
    if i < 1 or j < i - 1 or j > e.l:
        raise IndexOutOfRange(f"(j, i) = ({j}, {i}) outside range for l = {e.l}")
    prev2, prev1 = 0, 1  # N_{i-2,i}, N_{i-1,i}
    for k in range(i, j + 1):
        prev2, prev1 = prev1, e.entry(k) * prev1 - prev2
    return prev1


@dataclass(frozen=True)
class BezoutPair:
    """Integers ``(a_star, b_star)`` with ``p*b_star + q*a_star = 1`` for a leg ``p/q``."""

    a_star: int
    b_star: int


def star_pair(e: GoodExpansion) -> BezoutPair:
    """The Bezout pair ``(q_star, p_star)`` read off the partial numerators.

    With ``q_star = N_{l,2}`` and ``p_star = -N_{l-1,2}``, the continuant
    determinant identity ``N_{l,1}*N_{l-1,2} - N_{l,2}*N_{l-1,1} = -1``
    together with ``N_{l,1} = p``, ``N_{l-1,1} = q`` gives
    ``p*p_star + q*q_star = 1``.  Requires ``l >= 2``.
    """
    if e.l < 2:
        raise IndexOutOfRange("star pair needs an expansion of length >= 2")
    q_star = partial_numerator(e, e.l, 2)
    p_star = -partial_numerator(e, e.l - 1, 2)
    return BezoutPair(q_star, p_star)


def s_surd_residue(p: int, q: int, r: int) -> int:
    """The residue ``-12 s^surd(q, p) mod r`` entering the fibered-sum exponent.

    Computed from the good expansion of ``p/q`` as
    ``3(l - 1 + sign p) - sum(ms) - p' * (q_star + q) (mod r)`` where
    ``p'`` is the inverse of ``p`` mod ``r``.  Requires ``gcd(p, r) = 1``
    and odd ``r >= 3``.
    """
    if r < 3 or r % 2 == 0:
        raise InvalidModulus(f"level must be odd and >= 3, got {r}")
    e = good_expansion(p, q)
    q_star = star_pair(e).a_star
    p_prime = mod_inverse(p, r)
    return (3 * (e.l - 1 + sign(p)) - sum(e.ms) - p_prime * (q_star + q)) % r

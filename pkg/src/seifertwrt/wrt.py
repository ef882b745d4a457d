"""Closed-form quantum invariants of Seifert fibered spaces at odd levels.

For odd ``r >= 3`` this module evaluates the SO(3) invariant ``xi_r`` of
``X(p_1/q_1, ..., p_n/q_n)`` exactly in ``Q(zeta_r)`` by a single sum of at
most ``r - 1`` terms, using Gauss sums attached to ``c_k = gcd(r, p_k)`` and
integer exponents assembled from good expansions (no rational Dedekind sums
appear at evaluation time).  On top of it sit the normalizations
``tau'_r`` and ``Theta_r``, a simplified evaluator for the all-coprime case,
a numerical evaluator in the shape of Rozansky's residue formula for
cross-checks, and the circle-bundle-over-the-trefoil-family closed form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cyclotomic import CyclotomicNumber, gauss_sum, root_power
from .numtheory import (
    good_expansion,
    jacobi,
    mod_inverse,
    s_surd_residue,
    sign,
    star_pair,
)
from .seifert import SeifertData, b_counts_closed_form, top_invariants


class HypothesisViolated(ValueError):
    """Raised when input data violates a formula's standing hypotheses."""


@dataclass(frozen=True)
class LegData:
    """Everything the evaluator needs about one leg ``p/q`` at level ``r``.

    ``c = gcd(r, |p|)``; ``(q_star, p_star)`` is the Bezout pair
    ``p*p_star + q*q_star = 1`` read off the good expansion (optionally
    perturbed by an integer ``shift``: ``q_star += shift*p``,
    ``p_star -= shift*q``); ``pc_prime`` inverts ``p/c`` modulo ``r/c``
    (zero when ``r = c``); ``p_prime`` inverts ``p`` modulo ``r`` when
    ``c = 1``; ``sf`` and ``jac`` are the sign and Jacobi-symbol factors of
    the leg's closed Gauss-sum evaluation; ``exponent_const`` is the leg's
    contribution ``3(l - 1 + sign p) - sum(ms) + shift`` to the global
    root-of-unity exponent.
    """

    p: int
    q: int
    r: int
    c: int
    l: int  # noqa: E741 - the customary name for the expansion length
    ms: tuple[int, ...]
    q_star: int
    p_star: int
    pc_prime: int
    p_prime: int | None
    sf: int
    jac: int
    shift: int
    exponent_const: int

    def chi_terms(self, j: int) -> tuple[tuple[int, int], ...]:
        """Active ``(sign, exponent)`` pairs of the leg factor at color ``j``.

        The two candidate branches are ``d = j -+ q_star``; a branch is active
        iff ``c`` divides ``d``, and contributes
        ``+-zeta^(t*E)`` with
        ``E = -pc_prime*q*d*(d/c) - p_star*(q_star -+ 2j)``.
        For ``c = 1`` both branches are always active; for ``c > 1`` at most
        one is (and none when ``c | j``).
        """
        out = []
        d = j - self.q_star
        if d % self.c == 0:
            e = -self.pc_prime * self.q * d * (d // self.c) - self.p_star * (
                self.q_star - 2 * j
            )
            out.append((1, e))
        d = j + self.q_star
        if d % self.c == 0:
            e = -self.pc_prime * self.q * d * (d // self.c) - self.p_star * (
                self.q_star + 2 * j
            )
            out.append((-1, e))
        return tuple(out)


def leg_data(p: int, q: int, r: int, shift: int = 0) -> LegData:
    """Assemble :class:`LegData` for leg ``p/q`` at level ``r``."""
    c = gcd(r, abs(p))
    e = good_expansion(p, q)
    bez = star_pair(e)
    q_star = bez.a_star + shift * p
    p_star = bez.b_star - shift * q
    rc = r // c
    pc_prime = 0 if rc == 1 else mod_inverse(p // c, rc)
    p_prime = mod_inverse(p, r) if c == 1 else None
    sf = (-1) ** (((r - 1) // 2) * ((c - 1) // 2))
    jac = jacobi(p // c, rc) * jacobi(q, c)
    exponent_const = 3 * (e.l - 1 + sign(p)) - sum(e.ms) + shift
    return LegData(
        p=p,
        q=q,
        r=r,
        c=c,
        l=e.l,
        ms=e.ms,
        q_star=q_star,
        p_star=p_star,
        pc_prime=pc_prime,
        p_prime=p_prime,
        sf=sf,
        jac=jac,
        shift=shift,
        exponent_const=exponent_const,
    )


def _check_level_and_unit(r: int, t: int) -> int:
    if r < 3 or r % 2 == 0:
        raise HypothesisViolated(f"level must be odd and >= 3, got {r}")
    t %= r
    if gcd(t, r) != 1:
        raise HypothesisViolated(f"evaluation parameter {t} is not a unit mod {r}")
    return t


def xi_closed_form(
    M: SeifertData,
    r: int,
    t: int = 1,
    star_shifts=None,
) -> CyclotomicNumber:
    """Exact ``xi_r(M)`` evaluated at ``zeta_r**t``, by the closed formula.

    ``star_shifts`` optionally perturbs each leg's Bezout pair; the result is
    independent of it (property-tested), which exercises the built-in
    compensating exponent.
    """
    t = _check_level_and_unit(r, t)
    tops = top_invariants(M)
    if star_shifts is None:
        star_shifts = (0,) * M.n
    if len(star_shifts) != M.n:
        raise ValueError("need one shift per leg")
    legs = [leg_data(p, q, r, shift) for (p, q), shift in zip(M.legs, star_shifts)]

    exponent = -3 * tops.sign_H_over_P + sum(leg.exponent_const for leg in legs)
    pre = root_power(r, t * exponent)
    if ((r + 1) // 2) % 2 == 1:
        s0 = tops.sign_P * (-tops.sign_H_over_P + 1 - tops.sign_H_abs)
        pre = pre * s0
    central = root_power(r, 2 * t) - root_power(r, -2 * t)
    pre = pre * central ** (-2 + tops.sign_H_abs)
    g_r = gauss_sum(r, r).galois(t)
    if tops.sign_H_abs:
        pre = pre * ((-2) * g_r).inverse()
    for leg in legs:
        pre = pre * (leg.sf * leg.jac)
        pre = pre * gauss_sum(r, leg.c).galois(t)

    total = CyclotomicNumber.zero(r)
    two_minus_n = 2 - M.n
    for j in range(1, r):
        factor = CyclotomicNumber.one(r)
        zero = False
        for leg in legs:
            terms = leg.chi_terms(j)
            if not terms:
                zero = True
                break
            vec = [0] * r
            for s, e in terms:
                vec[(t * e) % r] += s
            factor = factor * CyclotomicNumber(r, vec)
        if zero or factor.is_zero():
            continue
        if two_minus_n != 0:
            central_j = root_power(r, 2 * t * j) - root_power(r, -2 * t * j)
            factor = factor * central_j**two_minus_n
        total = total + factor
    return pre * total


@dataclass(frozen=True)
class InvariantResult:
    """The bundle of invariants of one ``(M, r)`` evaluation at ``A = zeta^(1/4)``.

    ``xi`` is exact; ``tau`` is the numerical ``tau'_r`` (a complex or an
    mpmath complex, depending on the requested precision); ``theta`` would be
    ``xi / 2**nu`` and is reported through its integrality flag.
    """

    manifold: SeifertData
    r: int
    t: int
    xi: CyclotomicNumber
    nu: int
    b_plus: int
    b_minus: int
    tau: complex
    xi_is_integral: bool
    theta_is_integral: bool


def tau_prime(M: SeifertData, r: int, precision: int | None = None) -> InvariantResult:
    """``tau'_r(M)`` and friends, evaluated at ``A = zeta_r**(1/4 mod r)``.

    ``tau' = (sin(pi/r)/sqrt(r))**nu * xi_r(M, A)``; for ``nu = 0`` this is
    just the exact ``xi`` embedded numerically.
    """
    t = mod_inverse(4, r)
    xi = xi_closed_form(M, r, t)
    tops = top_invariants(M)
    b_plus, b_minus, _ = b_counts_closed_form(M)
    if precision is None:
        tau = xi.to_complex()
        if tops.nu:
            tau *= math.sin(math.pi / r) / math.sqrt(r)
    else:
        import mpmath

        with mpmath.workdps(precision):
            tau = xi.to_complex(precision=precision)
            if tops.nu:
                tau *= mpmath.sinpi(mpmath.mpf(1) / r) / mpmath.sqrt(r)
    halves = 2**tops.nu
    return InvariantResult(
        manifold=M,
        r=r,
        t=t,
        xi=xi,
        nu=tops.nu,
        b_plus=b_plus,
        b_minus=b_minus,
        tau=tau,
        xi_is_integral=xi.is_algebraic_integer(),
        theta_is_integral=(xi / halves).is_algebraic_integer(),
    )


def xi_all_coprime(M: SeifertData, r: int) -> CyclotomicNumber:
    """``xi_r`` at ``A = zeta**(1/4 mod r)`` when every ``p_k`` is coprime to ``r``.

    A streamlined restatement of the general formula: all Gauss sums of
    composite conductor disappear and the per-leg data reduces to inverses
    modulo ``r``.  Raises :class:`HypothesisViolated` when some
    ``gcd(p_k, r) > 1``.
    """
    t = _check_level_and_unit(r, mod_inverse(4, r))
    tops = top_invariants(M)
    for p, _ in M.legs:
        if gcd(p, r) != 1:
            raise HypothesisViolated(f"leg numerator {p} shares a factor with {r}")
    P_prime = mod_inverse(tops.P, r)
    exponent = (
        -3 * tops.sign_H_over_P
        + P_prime * tops.H
        + sum(s_surd_residue(p, q, r) for p, q in M.legs)
    )
    base = root_power(r, t * exponent)
    if ((r + 1) // 2) % 2 == 1:
        base = base * (-tops.sign_H_over_P + 1 - tops.sign_H_abs)
    base = base * (jacobi(abs(tops.P), r) * tops.sign_P)
    central = root_power(r, 2 * t) - root_power(r, -2 * t)
    base = base * central ** (-2 + tops.sign_H_abs)
    if tops.sign_H_abs:
        base = base * ((-2) * gauss_sum(r, r)).inverse()

    quad = (P_prime * tops.H) % r
    p_primes = [mod_inverse(p, r) for p, _ in M.legs]
    total = CyclotomicNumber.zero(r)
    two_minus_n = 2 - M.n
    for j in range(1, r):
        factor = root_power(r, (-quad * j * j) * t)
        for pp in p_primes:
            factor = factor * (
                root_power(r, 2 * pp * j * t) - root_power(r, -2 * pp * j * t)
            )
        if factor.is_zero():
            continue
        if two_minus_n != 0:
            central_j = root_power(r, 2 * t * j) - root_power(r, -2 * t * j)
            factor = factor * central_j**two_minus_n
        total = total + factor
    return base * total


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


def tau_rozansky_numeric(M: SeifertData, r: int, precision: int | None = None):
    """Numerical ``tau'_r(M)`` in residue form, for cross-checking.

    Evaluates the stationary-phase-shaped expression (sum over odd residues
    ``beta`` modulo ``2r``) with floating arithmetic -- ``complex`` by
    default, mpmath at ``precision`` decimal digits when given.  Standing
    hypotheses: ``r`` prime, ``r >= 5``, ``H != 0``, and all ``p_k, q_k``
    nonzero modulo ``r``; otherwise :class:`HypothesisViolated`.
    """
    if not _is_prime(r) or r < 5:
        raise HypothesisViolated(f"need a prime level >= 5, got {r}")
    tops = top_invariants(M)
    if tops.H == 0:
        raise HypothesisViolated("needs H != 0")
    for p, q in M.legs:
        if p % r == 0 or q % r == 0:
            raise HypothesisViolated(
                f"leg {p}/{q} has an entry divisible by the level {r}"
            )

    if precision is None:
        sqrt = math.sqrt
        def e_r(x):
            return cmath.exp(2j * cmath.pi * x / r)
        imag_unit = 1j
        quarter_turn = cmath.exp(1j * cmath.pi / 4)
    else:
        import mpmath

        ctx = mpmath.mp
        prev = ctx.dps
        ctx.dps = precision
        sqrt = mpmath.sqrt
        def e_r(x):
            return mpmath.expjpi(mpmath.mpf(2 * x) / r)
        imag_unit = mpmath.mpc(0, 1)
        quarter_turn = mpmath.expjpi(mpmath.mpf(1) / 4)
    try:
        P_prime = mod_inverse(tops.P, r)
        two_prime = mod_inverse(2, r)
        four_prime = mod_inverse(4, r)
        m12_total = sum(s_surd_residue(p, q, r) for p, q in M.legs)
        s_hp = tops.sign_H_over_P
        eps_sq = 1 if r % 4 == 1 else -1
        angle = s_hp * (eps_sq + Fraction(3 * (r - 2), r))
        # quarter_turn**angle, kept exact in the rational exponent:
        if precision is None:
            gauss_phase = cmath.exp(1j * cmath.pi * float(angle) / 4)
        else:
            import mpmath

            gauss_phase = mpmath.expjpi(
                mpmath.mpf(angle.numerator) / (4 * angle.denominator)
            )
        pref = (
            imag_unit
            / (2 * sqrt(r))
            * gauss_phase
            * (jacobi(abs(tops.P), r) * tops.sign_P)
            * e_r((four_prime * (P_prime * tops.H + m12_total)) % r)
            / (e_r(two_prime) - e_r(r - two_prime))
        )
        coef = (four_prime * P_prime * tops.H) % r
        p_primes = [mod_inverse(p, r) for p, _ in M.legs]
        two_minus_n = 2 - M.n
        total = 0
        for beta in range(1, 2 * r, 2):
            if beta == r:
                continue
            term = e_r((-coef * beta * beta) % r)
            central = e_r((two_prime * beta) % r) - e_r((-two_prime * beta) % r)
            term *= central**two_minus_n
            for pp in p_primes:
                term *= e_r((two_prime * pp * beta) % r) - e_r(
                    (-two_prime * pp * beta) % r
                )
            total += term
        return pref * total
    finally:
        if precision is not None:
            ctx.dps = prev


TREFOIL_ZERO = SeifertData(legs=((-2, 1), (3, 1), (6, 1)))


def tref_xi_closed(r: int, t: int = 1) -> CyclotomicNumber:
    """``xi_r`` of the zero-framed trefoil surgery ``X(-2/1, 3/1, 6/1)``.

    Requires ``gcd(r, 3) = 1`` (for ``3 | r`` only the general evaluators
    apply).  Vanishes for ``r = 1 (mod 3)``; for ``r = 2 (mod 3)`` equals
    ``zeta^(-4t) * 2r / (zeta^(2t) - zeta^(-2t))**2``.
    """
    t = _check_level_and_unit(r, t)
    if r % 3 == 0:
        raise HypothesisViolated(f"closed trefoil form needs gcd(r, 3) = 1, got {r}")
    if r % 3 == 1:
        return CyclotomicNumber.zero(r)
    central = root_power(r, 2 * t) - root_power(r, -2 * t)
    return root_power(r, -4 * t) * (2 * r) * central**-2


def tref_closed_form(r: int, precision: int | None = None) -> InvariantResult:
    """The trefoil-surgery invariants straight from the closed form."""
    t = mod_inverse(4, r)
    xi = tref_xi_closed(r, t)
    if precision is None:
        tau = xi.to_complex() * (math.sin(math.pi / r) / math.sqrt(r))
    else:
        import mpmath

        with mpmath.workdps(precision):
            tau = xi.to_complex(precision=precision) * (
                mpmath.sinpi(mpmath.mpf(1) / r) / mpmath.sqrt(r)
            )
    return InvariantResult(
        manifold=TREFOIL_ZERO,
        r=r,
        t=t,
        xi=xi,
        nu=1,
        b_plus=5,
        b_minus=1,
        tau=tau,
        xi_is_integral=xi.is_algebraic_integer(),
        theta_is_integral=(xi / 2).is_algebraic_integer(),
    )

"""Truncated p-adic arithmetic modulo p**e.

A unit g splits as g = omega(g) * <g> where omega(g) is the Teichmüller
representative (a (p-1)-th root of unity congruent to g mod p) and <g> is a
one-unit (congruent to 1 mod p). One-units are interpolated to p-adic
exponents through exp/log; the series below are exact mod p**e.

Series terms are divided by k (or k!) exactly: numerators are carried at a
working precision p**(e + V) where V covers the largest p-valuation of any
divisor, the p-part is stripped by integer division and the p-free part is
inverted mod p**e.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NotAUnitError
from .modarith import Residue, _split_prime_power, inverse


@dataclass(frozen=True)
class TeichDecomposition:
    g: Residue
    omega: Residue
    one_unit: Residue


@dataclass(frozen=True)
class PadicSeriesBudget:
    """How many series terms are summed and at what precision.

    Each term of log(1 + z) or exp(t) with k beyond ``term_count`` has
    valuation at least e, so dropping it is exact mod p**e.
    """

    term_count: int
    working_exponent: int

    @classmethod
    def for_log(cls, p: int, e: int) -> "PadicSeriesBudget":
        k = 2 * e
        return cls(k, e + _ilog(k, p))

    @classmethod
    def for_exp(cls, p: int, e: int) -> "PadicSeriesBudget":
        k = 2 * e
        return cls(k, e + _legendre(k, p))


def _ilog(n: int, p: int) -> int:
    """floor(log_p(n)) for n >= 1, in integers."""
    v = 0
    while p ** (v + 1) <= n:
        v += 1
    return v


def _legendre(n: int, p: int) -> int:
    """p-adic valuation of n!."""
    v, q = 0, p
    while q <= n:
        v += n // q
        q *= p
    return v


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _unit_check(g: Residue) -> tuple[int, int]:
    p, e = _split_prime_power(g.modulus)
    if g.value % p == 0:
        raise NotAUnitError(g.value, g.modulus, math.gcd(g.value, g.modulus))
    return p, e


def teichmuller(g: Residue) -> Residue:
    p, e = _unit_check(g)
    # g^(p^(e-1)) is the fixed point of x -> x^p reached after e-1 steps
    return Residue(pow(g.value, p ** (e - 1), g.modulus), g.modulus)


def one_unit_part(g: Residue) -> Residue:
    omega = teichmuller(g)
    return Residue(g.value * inverse(omega.value, g.modulus), g.modulus)


def decompose(g: Residue) -> TeichDecomposition:
    omega = teichmuller(g)
    return TeichDecomposition(g, omega, Residue(g.value * inverse(omega.value, g.modulus), g.modulus))


def padic_log(u: Residue) -> Residue:
    """log(u) = sum_{k>=1} (-1)^(k+1) (u-1)^k / k, for u = 1 (mod p)."""
    p, e = _split_prime_power(u.modulus)
    if u.value % p != 1 % p:
        raise DomainError(f"log needs a one-unit; {u.value} is not 1 mod {p}")
    q = u.modulus
    budget = PadicSeriesBudget.for_log(p, e)
    work = p**budget.working_exponent
    z = (u.value - 1) % work
    acc = 0
    zk = 1
    for k in range(1, budget.term_count + 1):
        zk = zk * z % work
        v = _valuation(k, p)
        num = zk // p**v
        term = num * inverse(k // p**v, q) % q
        acc += term if k % 2 else -term
    return Residue(acc, q)


def padic_exp(t: Residue) -> Residue:
    """exp(t) = sum_{k>=0} t^k / k!, for t = 0 (mod p), p odd."""
    p, e = _split_prime_power(t.modulus)
    if t.value % p:
        raise DomainError(f"exp needs t divisible by {p}; got {t.value}")
    q = t.modulus
    budget = PadicSeriesBudget.for_exp(p, e)
    work = p**budget.working_exponent
    acc = 1
    tk = 1
    fact = 1
    for k in range(1, budget.term_count + 1):
        tk = tk * t.value % work
        fact *= k
        v = _valuation(fact, p)
        num = tk // p**v
        acc += num * inverse(fact // p**v, q)
    return Residue(acc, q)


def one_unit_power(u: Residue, x: int) -> Residue:
    """u**x for a one-unit u and any integer x (including negative ones).

    The order of a one-unit mod p**e divides p**(e-1), so the exponent is
    reduced modulo that; this agrees with exp(x * log(u)).
    """
    p, e = _split_prime_power(u.modulus)
    if u.value % p != 1 % p:
        raise DomainError(f"{u.value} is not a one-unit mod {p}")
    return Residue(pow(u.value, x % p ** (e - 1), u.modulus), u.modulus)

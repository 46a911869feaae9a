"""Exact modular arithmetic over small moduli.

Everything here is a pure function of its inputs. Values are kept below
2**63 by the ``PrimePower`` contract; Python integers give us the
double-width intermediate for free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .errors import DegenerateInputError, NotAUnitError, NotInvertibleError

WORD_LIMIT = 1 << 63
# p**(e + HEADROOM) must fit in a signed 64-bit word (padic working precision)
HEADROOM = 4


def is_prime(n: int) -> bool:
    """Deterministic trial division; fine for desk-scale n."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of n >= 1 by trial division, as ((q, k), ...) sorted by q."""
    if n < 1:
        raise DegenerateInputError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@dataclass(frozen=True)
class PrimePower:
    p: int
    e: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 3 or not is_prime(self.p):
            raise ValueError("p must be an odd prime")
        if not isinstance(self.e, int) or self.e < 1:
            raise ValueError("e must be a positive integer")
        if self.p ** (self.e + HEADROOM) >= WORD_LIMIT:
            raise ValueError(
                f"p^(e+{HEADROOM}) = {self.p}^{self.e + HEADROOM} exceeds 63 bits"
            )

    @property
    def modulus(self) -> int:
        return self.p**self.e

    @property
    def phi(self) -> int:
        return self.p ** (self.e - 1) * (self.p - 1)

    def units(self) -> list[int]:
        return [a for a in range(1, self.modulus) if a % self.p]

    def residue(self, value: int) -> "Residue":
        return Residue(value, self.modulus)


@dataclass(frozen=True)
class Residue:
    """A congruence class, normalised to [0, modulus) on construction."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise DegenerateInputError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def __int__(self) -> int:
        return self.value

    def __mul__(self, other: "Residue") -> "Residue":
        _same_modulus(self, other)
        return Residue(self.value * other.value, self.modulus)

    def __add__(self, other: "Residue") -> "Residue":
        _same_modulus(self, other)
        return Residue(self.value + other.value, self.modulus)

    def __sub__(self, other: "Residue") -> "Residue":
        _same_modulus(self, other)
        return Residue(self.value - other.value, self.modulus)

    def __neg__(self) -> "Residue":
        return Residue(-self.value, self.modulus)

    def is_unit(self) -> bool:
        return math.gcd(self.value, self.modulus) == 1

    def __repr__(self) -> str:
        return f"{self.value} mod {self.modulus}"


def _same_modulus(a: Residue, b: Residue) -> None:
    if a.modulus != b.modulus:
        raise ValueError(f"modulus mismatch: {a.modulus} vs {b.modulus}")


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, u, v) with a*u + b*v = g = gcd(a, b) >= 0."""
    if a == 0 and b == 0:
        raise DegenerateInputError("egcd(0, 0) is undefined")
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def mod_pow(base: Residue, exp: int) -> Residue:
    if exp < 0:
        raise ValueError("negative exponent; invert first")
    # builtin three-argument pow is square-and-multiply
    return Residue(pow(base.value, exp, base.modulus), base.modulus)


def inverse(a: int, n: int) -> int:
    """Integer-level inverse of a mod n."""
    try:
        return pow(a, -1, n)
    except ValueError:
        raise NotInvertibleError(a % n, n, math.gcd(a, n)) from None


def mod_inv(a: Residue) -> Residue:
    return Residue(inverse(a.value, a.modulus), a.modulus)


def crt_pair(r1: Residue, r2: Residue) -> Residue:
    """Combine x = r1 (mod m1), x = r2 (mod m2) for coprime m1, m2."""
    m1, m2 = r1.modulus, r2.modulus
    g, u, _ = egcd(m1, m2)
    if g != 1:
        raise ValueError(f"moduli {m1} and {m2} are not coprime (gcd {g})")
    # x = r1 + m1 * t with m1 * t = r2 - r1 (mod m2)
    t = (r2.value - r1.value) * u % m2
    return Residue(r1.value + m1 * t, m1 * m2)


def _split_prime_power(n: int) -> tuple[int, int]:
    fac = factorize(n)
    if len(fac) != 1:
        raise ValueError(f"{n} is not a prime power")
    return fac[0]


@lru_cache(maxsize=1 << 16)
def order_int(g: int, n: int) -> int:
    """Multiplicative order of g modulo n = p**e (n may also be 1)."""
    g %= n
    if n == 1:
        return 1
    d = math.gcd(g, n)
    if d != 1:
        raise NotAUnitError(g, n, d)
    p, e = _split_prime_power(n)
    phi = p ** (e - 1) * (p - 1)
    k = phi
    for q, _ in factorize(phi):
        while k % q == 0 and pow(g, k // q, n) == 1:
            k //= q
    return k


def mult_order(g: Residue) -> int:
    return order_int(g.value, g.modulus)


def is_generator(g: Residue) -> bool:
    p, e = _split_prime_power(g.modulus)
    return mult_order(g) == p ** (e - 1) * (p - 1)


def find_generator(pp: PrimePower) -> Residue:
    """Smallest generator >= 2 of the unit group mod p**e."""
    n = pp.modulus
    for a in range(2, n):
        if a % pp.p and is_generator(Residue(a, n)):
            return Residue(a, n)
    raise AssertionError(f"no generator mod {n}")  # unreachable for odd p


def bsgs_dlog(g: Residue, h: Residue, order: int) -> Optional[int]:
    """Least x >= 0 with g**x = h, or None when h is outside <g>.

    Baby-step giant-step with ceil(sqrt(order)) baby steps.
    """
    _same_modulus(g, h)
    n = g.modulus
    if order < 1:
        raise ValueError("order must be positive")
    step = math.isqrt(order - 1) + 1
    table: dict[int, int] = {}
    cur = 1
    for j in range(step):
        table.setdefault(cur, j)
        cur = cur * g.value % n
    giant = pow(inverse(g.value, n), step, n)
    gamma = h.value
    for i in range(step + 1):
        j = table.get(gamma)
        if j is not None:
            x = i * step + j
            if x < order:
                return x
            return None
        gamma = gamma * giant % n
    return None

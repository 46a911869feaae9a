"""Solutions of the discrete Lambert congruence x * g**x = c (mod p**e).

For each class x0 in {1..m}, m = ord_p(g), the map restricted to
x = x0 (mod m) becomes x * omega^x0 * <g>^x, whose root mod p is lifted to
p**e digit by digit and glued to x0 by CRT. ``brute_force`` is the
exhaustive oracle the Hensel path is checked against.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import InvariantViolation, PreconditionError
from .modarith import PrimePower, Residue, crt_pair, inverse, order_int


class Method(str, enum.Enum):
    HENSEL = "hensel"
    BRUTE_FORCE = "brute_force"


@dataclass(frozen=True)
class DwpInstance:
    pp: PrimePower
    g: Residue
    c: Residue
    m: int = field(init=False)

    def __post_init__(self):
        q = self.pp.modulus
        if self.g.modulus != q or self.c.modulus != q:
            raise ValueError("g and c must be residues mod p^e")
        p = self.pp.p
        if self.g.value % p == 0:
            raise ValueError(f"g must not be divisible by p={p}")
        if self.c.value % p == 0:
            raise ValueError(f"c must not be divisible by p={p}")
        object.__setattr__(self, "m", order_int(self.g.value % p, p))

    @classmethod
    def of(cls, p: int, e: int, g: int, c: int) -> "DwpInstance":
        pp = PrimePower(p, e)
        return cls(pp, pp.residue(g), pp.residue(c))

    @property
    def p(self) -> int:
        return self.pp.p

    @property
    def e(self) -> int:
        return self.pp.e

    @property
    def modulus(self) -> int:
        return self.pp.modulus

    @property
    def range_bound(self) -> int:
        return self.pp.modulus * self.m

    def reduced(self, e: int) -> "DwpInstance":
        return DwpInstance.of(self.p, e, self.g.value, self.c.value)

    def evaluate(self, x: int) -> int:
        """x * g**x mod p**e."""
        q = self.modulus
        return x * pow(self.g.value, x, q) % q

    def __str__(self) -> str:
        return f"x*{self.g.value}^x = {self.c.value} (mod {self.p}^{self.e})"


@dataclass(frozen=True)
class SolutionSet:
    instance: DwpInstance
    solutions: tuple[int, ...]
    range_bound: int
    method: Method

    def __len__(self) -> int:
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    @property
    def m(self) -> int:
        return self.instance.m

    def pairs(self) -> list[tuple[int, int]]:
        """(x mod m, x mod p^e) for each solution."""
        m, q = self.instance.m, self.instance.modulus
        return [(x % m, x % q) for x in self.solutions]


def _lift_ints(p: int, e: int, c: int, w: int, u: int, a: int, d_inv: int) -> int:
    # root of h(x) = x*w*u^x - c mod p^e from a root a mod p; d_inv = w^-1 mod p
    q = p**e
    ord_bound = p ** (e - 1)
    x = a % p
    pk = 1
    for k in range(1, e):
        pk *= p
        hx = (x * w * pow(u, x % ord_bound, q) - c) % q
        if hx % pk:
            raise InvariantViolation(f"lift lost its root at step {k}: h({x}) = {hx}")
        t = -(hx // pk) * d_inv % p
        x += t * pk
    return x % q or q


def _split(instance: DwpInstance) -> tuple[int, int]:
    q, p, e = instance.modulus, instance.p, instance.e
    omega = pow(instance.g.value, p ** (e - 1), q)
    u = instance.g.value * inverse(omega, q) % q
    return omega, u


def hensel_lift(instance: DwpInstance, x0: int, a: int) -> int:
    """Lift a root a (mod p) of x * omega^x0 * <g>^x - c to the unique root in {1..p^e}."""
    p, e, q = instance.p, instance.e, instance.modulus
    c = instance.c.value
    omega, u = _split(instance)
    w = pow(omega, x0, q)
    if w % p == 0:
        raise InvariantViolation("derivative omega^x0 vanished mod p")
    if a % p == 0 or (a * w - c) % p:
        raise PreconditionError(f"{a} is not a nonzero root mod {p} for class x0={x0}")
    if e == 1:
        return a
    return _lift_ints(p, e, c, w, u, a, inverse(w, p))


def solve_mod_p(instance: DwpInstance) -> SolutionSet:
    """The m solutions in {1..p*m} of x * g^x = c (mod p)."""
    if instance.e != 1:
        instance = instance.reduced(1)
    p, m, g, c = instance.p, instance.m, instance.g.value, instance.c.value
    sols = []
    for x0 in range(1, m + 1):
        x1 = c * inverse(pow(g, x0, p), p) % p
        x = crt_pair(Residue(x0, m), Residue(x1, p)).value
        sols.append(x or p * m)
    return SolutionSet(instance, tuple(sorted(sols)), p * m, Method.HENSEL)


def solve_all(instance: DwpInstance) -> SolutionSet:
    """All m solutions in {1..p^e*m} via Hensel lifting and CRT."""
    p, e, q, m = instance.p, instance.e, instance.modulus, instance.m
    c = instance.c.value
    omega, u = _split(instance)
    omega_inv_p = inverse(omega % p, p)
    # CRT constants for x = x0 (mod m), x = x1 (mod q)
    q_inv_m = inverse(q, m) if m > 1 else 0
    bound = q * m
    ord_bound = p ** (e - 1)
    sols = []
    w = 1
    w_inv_p = 1
    c_p = c % p
    for x0 in range(1, m + 1):
        w = w * omega % q
        w_inv_p = w_inv_p * omega_inv_p % p
        x1 = c_p * w_inv_p % p
        # same digit-by-digit correction as _lift_ints, inlined for the sweep hot path
        pk = 1
        for _ in range(e - 1):
            pk *= p
            hx = (x1 * w * pow(u, x1 % ord_bound, q) - c) % q
            x1 += (-(hx // pk) * w_inv_p % p) * pk
        x = (x1 + q * ((x0 - x1) * q_inv_m % m)) % bound
        sols.append(x or bound)
    sols.sort()
    return SolutionSet(instance, tuple(sols), bound, Method.HENSEL)


def brute_force(instance: DwpInstance, upper: int | None = None) -> SolutionSet:
    """Every x in {1..upper}, p not dividing x, with x * g^x = c (mod p^e)."""
    if upper is None:
        upper = instance.range_bound
    if upper < 0:
        raise ValueError("upper must be non-negative")
    p, q = instance.p, instance.modulus
    g, c = instance.g.value, instance.c.value
    sols = []
    gx = 1
    for x in range(1, upper + 1):
        gx = gx * g % q
        if x % p and x * gx % q == c:
            sols.append(x)
    return SolutionSet(instance, tuple(sols), upper, Method.BRUTE_FORCE)


def count_solutions(instance: DwpInstance) -> int:
    return instance.m


def check_solution_set(sol: SolutionSet) -> None:
    """Raise AssertionError if ``sol`` breaks any SolutionSet invariant."""
    inst = sol.instance
    xs = sol.solutions
    assert list(xs) == sorted(xs), "solutions not sorted"
    for x in xs:
        assert 1 <= x <= sol.range_bound, f"{x} outside 1..{sol.range_bound}"
        assert x % inst.p, f"{x} divisible by p"
        assert inst.evaluate(x) == inst.c.value, f"{x} is not a solution"
    if sol.range_bound == inst.range_bound:
        assert len(xs) == inst.m, f"expected {inst.m} solutions, got {len(xs)}"
        assert len({x % inst.m for x in xs}) == inst.m, "solutions collide mod m"


__all__ = [
    "DwpInstance",
    "Method",
    "SolutionSet",
    "brute_force",
    "check_solution_set",
    "count_solutions",
    "hensel_lift",
    "solve_all",
    "solve_mod_p",
]

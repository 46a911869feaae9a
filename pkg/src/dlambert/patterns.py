"""Verifiers for the structural patterns in discrete Lambert solution sets.

Each check returns a ``PatternReport``. A report with verdict ``fails``
always carries a witness that ``recheck`` can re-derive from scratch by
direct congruence evaluation, without going through the Hensel solver.
"""

from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Optional

from .errors import PreconditionError
from .modarith import PrimePower, Residue, inverse, is_generator, order_int
from .solver import DwpInstance, solve_all


class PatternId(str, enum.Enum):
    C_PRIME_BIJECTION = "c_prime_bijection"
    SUM_MOD_P = "sum_mod_p"
    SUM_MOD_M = "sum_mod_m"
    CONJECTURE_A = "conjecture_A"
    CONJECTURE_B = "conjecture_B"
    INVERSE_IDENTITY = "inverse_identity"
    NEGATION_IDENTITY = "negation_identity"
    SPECIAL_PAIR = "special_pair"
    ORDER_FORMULA = "order_formula"


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class PatternReport:
    pattern_id: PatternId
    instance: dict[str, int]
    verdict: Verdict
    witness: Optional[dict[str, Any]] = None

    def __post_init__(self):
        if self.verdict is Verdict.FAILS and not self.witness:
            raise ValueError(f"{self.pattern_id.value}: a failing report needs a witness")

    @property
    def ok(self) -> bool:
        return self.verdict is not Verdict.FAILS

    def sort_key(self) -> tuple:
        i = self.instance
        return (i.get("p", 0), i.get("e", 0), i.get("g", 0), i.get("c", 0), self.pattern_id.value)

    def summary(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.instance.items())
        return f"{self.pattern_id.value}({args}): {self.verdict.value}  {self.witness or ''}"


@dataclass(frozen=True)
class OrderPair:
    m_p: int
    m_pe: int

    def __post_init__(self):
        if self.m_pe % self.m_p:
            raise ValueError("ord_p(g) must divide ord_{p^e}(g)")

    @classmethod
    def of(cls, pp: PrimePower, g: int) -> "OrderPair":
        return cls(order_int(g % pp.p, pp.p), order_int(g, pp.modulus))


def _desc(inst: DwpInstance) -> dict[str, int]:
    return {"p": inst.p, "e": inst.e, "g": inst.g.value, "c": inst.c.value}


def _verdict(ok: bool) -> Verdict:
    return Verdict.HOLDS if ok else Verdict.FAILS


def check_c_prime_bijection(
    instance: DwpInstance, j: int, c_prime: Optional[int] = None
) -> PatternReport:
    """Solutions for c' = x_j (mod p) match the solutions for c one-to-one mod p.

    ``j`` indexes the sorted solutions of ``instance`` from 1. ``c_prime``
    defaults to the least positive residue of x_j mod p.
    """
    sols_c = solve_all(instance).solutions
    m = instance.m
    if not 1 <= j <= m:
        raise ValueError(f"j must lie in 1..{m}")
    p = instance.p
    x_j = sols_c[j - 1]
    desc = _desc(instance) | {"j": j}
    if c_prime is None:
        c_prime = x_j % p
    desc["c_prime"] = c_prime
    if (c_prime - x_j) % p:
        return PatternReport(
            PatternId.C_PRIME_BIJECTION, desc, Verdict.NOT_APPLICABLE,
            {"reason": f"c' = {c_prime} is not congruent to x_j = {x_j} mod {p}"},
        )
    other = DwpInstance(instance.pp, instance.g, instance.pp.residue(c_prime))
    sols_cp = solve_all(other).solutions

    by_residue = defaultdict(list)
    for k, x in enumerate(sols_c, start=1):
        by_residue[x % p].append(k)
    matching = {}
    bad = None
    for i, x in enumerate(sols_cp, start=1):
        ks = by_residue.get(x % p, [])
        if len(ks) != 1:
            bad = {"i": i, "x_i_cprime": x, "matching_k": ks}
            break
        matching[i] = ks[0]
    if bad is None and len(set(matching.values())) != len(matching):
        bad = {"reason": "two solutions for c' matched the same k", "matching": matching}
    witness = {"solutions_c": list(sols_c), "solutions_c_prime": list(sols_cp)}
    if bad is None:
        witness["matching"] = matching
        return PatternReport(PatternId.C_PRIME_BIJECTION, desc, Verdict.HOLDS, witness)
    return PatternReport(PatternId.C_PRIME_BIJECTION, desc, Verdict.FAILS, witness | bad)


def check_sums(instance: DwpInstance) -> tuple[PatternReport, PatternReport]:
    """Sum of the m solutions is 0 mod p (m >= 2) and 0 mod m (m odd)."""
    sols = solve_all(instance).solutions
    total = sum(sols)
    m, p = instance.m, instance.p
    desc = _desc(instance)
    witness = {"sum": total, "solutions": list(sols)}

    if m == 1:
        # the geometric-series argument divides by 1 - g, which is 0 mod p here
        mod_p = PatternReport(
            PatternId.SUM_MOD_P, desc, Verdict.NOT_APPLICABLE, witness | {"sum_mod_p": total % p}
        )
    else:
        mod_p = PatternReport(
            PatternId.SUM_MOD_P, desc, _verdict(total % p == 0), witness | {"sum_mod_p": total % p}
        )
    if m % 2:
        mod_m = PatternReport(
            PatternId.SUM_MOD_M, desc, _verdict(total % m == 0), witness | {"sum_mod_m": total % m}
        )
    else:
        mod_m = PatternReport(PatternId.SUM_MOD_M, desc, Verdict.NOT_APPLICABLE, witness)
    return mod_p, mod_m


def _conjecture_verdict(total: int, q: int, orders: OrderPair) -> bool:
    if total % q:
        return False
    if orders.m_p % 2 and total % orders.m_pe:
        return False
    return True


def check_conjecture(instance: DwpInstance) -> tuple[PatternReport, PatternReport]:
    """Sum-of-solutions conjecture mod p^e under two readings of its range.

    A sums the m_p solutions in {1..p^e*m_p}. B sums every solution in
    {1..p^e*m_{p^e}}; since x*g^x mod p^e has period p^e*m_p, those are the
    A-solutions plus their translates by multiples of p^e*m_p.
    """
    q = instance.modulus
    orders = OrderPair.of(instance.pp, instance.g.value)
    sols = solve_all(instance).solutions
    period = q * orders.m_p
    copies = orders.m_pe // orders.m_p
    sum_a = sum(sols)
    sum_b = copies * sum_a + period * orders.m_p * copies * (copies - 1) // 2
    desc = _desc(instance)
    base = {"m_p": orders.m_p, "m_pe": orders.m_pe, "solutions": list(sols)}

    reports = []
    for pid, total, bound in (
        (PatternId.CONJECTURE_A, sum_a, period),
        (PatternId.CONJECTURE_B, sum_b, q * orders.m_pe),
    ):
        witness = base | {
            "sum": total,
            "sum_mod_pe": total % q,
            "sum_mod_m_pe": total % orders.m_pe,
            "range_bound": bound,
        }
        if orders.m_p == 1:
            verdict = Verdict.NOT_APPLICABLE
        else:
            verdict = _verdict(_conjecture_verdict(total, q, orders))
        reports.append(PatternReport(pid, desc, verdict, witness))
    return reports[0], reports[1]


def check_inverse_negation(
    pp: PrimePower, g: int, x: int
) -> tuple[PatternReport, PatternReport]:
    """c*c' = x^2 and c'' = (-1)^x c, where c, c', c'' use g, g^-1, -g."""
    q = pp.modulus
    if g % pp.p == 0:
        raise PreconditionError(f"g must be a unit mod {pp.p}")
    c = x * pow(g, x, q) % q
    c1 = x * pow(inverse(g, q), x, q) % q
    c2 = x * pow(-g % q, x, q) % q
    desc = {"p": pp.p, "e": pp.e, "g": g % q, "x": x}
    lhs_inv, rhs_inv = c * c1 % q, x * x % q
    rhs_neg = (-c if x % 2 else c) % q
    inv = PatternReport(
        PatternId.INVERSE_IDENTITY, desc, _verdict(lhs_inv == rhs_inv),
        {"c": c, "c_prime": c1, "c_times_c_prime": lhs_inv, "x_squared": rhs_inv},
    )
    neg = PatternReport(
        PatternId.NEGATION_IDENTITY, desc, _verdict(c2 == rhs_neg),
        {"c": c, "c_double_prime": c2, "signed_c": rhs_neg},
    )
    return inv, neg


def special_pair(pp: PrimePower) -> tuple[int, int]:
    """(x, c) = ((p^e - p^(e-1))/2, (p^e + p^(e-1))/2)."""
    hi, lo = pp.modulus, pp.modulus // pp.p
    return (hi - lo) // 2, (hi + lo) // 2


def special_solution_check(pp: PrimePower, g: int) -> PatternReport:
    """x * g^x = c (mod p^e) for the special pair, for any generator g mod p^e."""
    q = pp.modulus
    if not is_generator(Residue(g, q)):
        raise PreconditionError(f"{g} is not a generator mod {q}")
    x, c = special_pair(pp)
    half_power = pow(g, x, q)
    lhs = x * half_power % q
    ok = lhs == c and half_power == q - 1
    return PatternReport(
        PatternId.SPECIAL_PAIR,
        {"p": pp.p, "e": pp.e, "g": g % q},
        _verdict(ok),
        {"x": x, "c": c, "x_g_x": lhs, "g_to_x": half_power},
    )


def order_formula(pp: PrimePower, n: int) -> int:
    half = pp.modulus // pp.p
    return half if n % 2 == 0 else 2 * half


def order_formula_check(pp: PrimePower, n: int) -> PatternReport:
    """ord_{p^e}((p-1)^n) is p^(e-1) for even n and 2 p^(e-1) for odd n."""
    if n < 2:
        raise PreconditionError("n must be at least 2")
    if math.gcd(pp.p, n) != 1:
        raise PreconditionError(f"gcd(p, n) = gcd({pp.p}, {n}) != 1")
    q = pp.modulus
    base = pow(pp.p - 1, n, q)
    actual = order_int(base, q)
    expected = order_formula(pp, n)
    return PatternReport(
        PatternId.ORDER_FORMULA,
        {"p": pp.p, "e": pp.e, "n": n},
        _verdict(actual == expected),
        {"base": base, "order": actual, "formula": expected},
    )


def _naive_solutions(p: int, e: int, g: int, c: int, upper: int) -> list[int]:
    q = p**e
    return [x for x in range(1, upper + 1) if x % p and x * pow(g, x, q) % q == c % q]


def _naive_order(a: int, n: int) -> int:
    k, acc = 1, a % n
    while acc != 1 % n:
        acc = acc * a % n
        k += 1
    return k


def recheck(report: PatternReport) -> bool:
    """Re-derive a report's verdict from its inputs by naive evaluation.

    Uses only direct congruence evaluation, pow and linear scans; nothing
    from the Hensel path. Returns True iff the recomputed verdict agrees.
    """
    i, w = report.instance, report.witness or {}
    pid = report.pattern_id
    if pid in (PatternId.INVERSE_IDENTITY, PatternId.NEGATION_IDENTITY):
        q = i["p"] ** i["e"]
        g, x = i["g"], i["x"]
        c = x * pow(g, x, q) % q
        if pid is PatternId.INVERSE_IDENTITY:
            ginv = next(b for b in range(1, q) if b * g % q == 1)
            ok = c * (x * pow(ginv, x, q)) % q == x * x % q
        else:
            ok = x * pow(q - g, x, q) % q == (-1) ** x * c % q
        return _verdict(ok) is report.verdict
    if pid is PatternId.SPECIAL_PAIR:
        q = i["p"] ** i["e"]
        x, c = special_pair(PrimePower(i["p"], i["e"]))
        ok = x * pow(i["g"], x, q) % q == c and pow(i["g"], x, q) == q - 1
        return _verdict(ok) is report.verdict
    if pid is PatternId.ORDER_FORMULA:
        q = i["p"] ** i["e"]
        got = _naive_order(pow(i["p"] - 1, i["n"], q), q)
        want = q // i["p"] * (1 if i["n"] % 2 == 0 else 2)
        return _verdict(got == want) is report.verdict

    p, e, g, c = i["p"], i["e"], i["g"], i["c"]
    q = p**e
    m_p = _naive_order(g, p)
    if pid is PatternId.C_PRIME_BIJECTION:
        if report.verdict is Verdict.NOT_APPLICABLE:
            return True
        s_c = _naive_solutions(p, e, g, c, q * m_p)
        s_cp = _naive_solutions(p, e, g, i["c_prime"], q * m_p)
        ok = all(sum(1 for y in s_c if (y - x) % p == 0) == 1 for x in s_cp)
        ok = ok and sorted(x % p for x in s_c) == sorted(x % p for x in s_cp)
        return _verdict(ok) is report.verdict
    if pid in (PatternId.SUM_MOD_P, PatternId.SUM_MOD_M):
        total = sum(_naive_solutions(p, e, g, c, q * m_p))
        if total != w.get("sum"):
            return False
        if pid is PatternId.SUM_MOD_P:
            want = Verdict.NOT_APPLICABLE if m_p == 1 else _verdict(total % p == 0)
        else:
            want = _verdict(total % m_p == 0) if m_p % 2 else Verdict.NOT_APPLICABLE
        return want is report.verdict
    if pid in (PatternId.CONJECTURE_A, PatternId.CONJECTURE_B):
        m_pe = _naive_order(g, q)
        bound = q * (m_p if pid is PatternId.CONJECTURE_A else m_pe)
        total = sum(_naive_solutions(p, e, g, c, bound))
        if total != w.get("sum"):
            return False
        if m_p == 1:
            return report.verdict is Verdict.NOT_APPLICABLE
        ok = total % q == 0 and (m_p % 2 == 0 or total % m_pe == 0)
        return _verdict(ok) is report.verdict
    raise ValueError(f"unknown pattern {pid}")

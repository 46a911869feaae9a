"""Exit criteria. Each test prints one PASS/FAIL line in the terminal summary.

All checks are exact integer comparisons; the only numeric threshold is the
50x speedup in criterion 10.
"""

import itertools
import math
import random
import time

import pytest

from conftest import naive_pow
from dlambert.elgamal import ElGamalParams, RangePolicy, forge_fixed_s2, forgery_instance, keygen, verify
from dlambert.modarith import PrimePower, Residue, is_generator
from dlambert.padic import decompose, one_unit_power, padic_exp, padic_log, teichmuller
from dlambert.patterns import (
    PatternId,
    Verdict,
    check_inverse_negation,
    check_sums,
    order_formula_check,
    recheck,
    special_solution_check,
)
from dlambert.solver import DwpInstance, brute_force, solve_all
from dlambert.sweep import SweepConfig, VerdictTable, report_from_record, run_sweep, write_records

GRID_PRIMES = (3, 5, 7, 11, 13)
GRID_E = (1, 2, 3)
CONJ_PRIMES = (3, 5, 7, 11, 13, 17)
CONJ_SEED = 20140729
SPEEDUP_FLOOR = 50.0


@pytest.fixture
def report(request):
    lines = request.config.__dict__.setdefault("_acceptance_lines", [])

    def _report(num, ok, detail):
        lines.append(f"[{num:>2}] {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return _report


def grid():
    for p in GRID_PRIMES:
        for e in GRID_E:
            for g, c in itertools.product(range(1, p), range(1, p)):
                yield DwpInstance.of(p, e, g, c)


def test_c01_oracle_equivalence(report):
    n = bad = 0
    first_bad = None
    for inst in grid():
        n += 1
        fast = solve_all(inst).solutions
        ok = (
            fast == brute_force(inst).solutions
            and len(fast) == inst.m
            and len({x % inst.m for x in fast}) == inst.m
        )
        if not ok:
            bad += 1
            first_bad = first_bad or str(inst)
    assert report(1, bad == 0, f"oracle equivalence: {n - bad}/{n} instances match brute force"
                  + (f", first mismatch {first_bad}" if bad else ""))


def test_c02_complete_residue_system(report):
    n = bad = 0
    for inst in grid():
        if not is_generator(Residue(inst.g.value, inst.p)):
            continue
        n += 1
        xs = solve_all(inst).solutions
        bad += sorted(x % (inst.p - 1) for x in xs) != list(range(inst.p - 1))
    assert report(2, bad == 0 and n > 0, f"complete residue system mod p-1: {n - bad}/{n} generator instances")


def test_c03_sum_identities(report):
    n_p = bad_p = n_m = bad_m = 0
    for inst in grid():
        if inst.m < 2:
            continue
        mod_p, mod_m = check_sums(inst)
        n_p += 1
        bad_p += mod_p.verdict is not Verdict.HOLDS
        if inst.m % 2:
            n_m += 1
            bad_m += mod_m.verdict is not Verdict.HOLDS
        # independent arithmetic on the raw sum
        total = mod_p.witness["sum"]
        assert total % inst.p == 0 or mod_p.verdict is Verdict.FAILS
    ok = bad_p == 0 and bad_m == 0
    assert report(3, ok, f"sum identities: mod p {n_p - bad_p}/{n_p}, mod m (odd m) {n_m - bad_m}/{n_m}")


def test_c04_conjecture_evidence(report, tmp_path):
    full = SweepConfig(CONJ_PRIMES, (1, 2, 3), pattern_ids=("conjecture_A", "conjecture_B"))
    sampled = SweepConfig(
        CONJ_PRIMES, (4,), c_selector=("sample", 1000, CONJ_SEED), pattern_ids=("conjecture_A", "conjecture_B")
    )
    t0 = time.perf_counter()
    records = run_sweep(full) + run_sweep(sampled)
    elapsed = time.perf_counter() - t0
    write_records(records, tmp_path / "conjecture.jsonl", "json-lines")
    table = VerdictTable.from_records(records)
    (tmp_path / "tables.txt").write_text(table.render())

    b_records = [r for r in records if r.pattern_id == "conjecture_B"]
    b_fail = [r for r in b_records if r.verdict == "fails"]
    b_fail_rechecked = all(recheck(report_from_record(r)) for r in b_fail)
    b_ok = not b_fail or b_fail_rechecked

    key = (3, 2, 2, 1, "conjecture_A")
    target = next((r for r in records if r.key() == key), None)
    # re-derive the literal-range sum by exhaustive scan, independent of the solver
    scan = [x for x in range(1, 19) if x % 3 and x * naive_pow(2, x, 9) % 9 == 1]
    target_ok = (
        target is not None
        and target.verdict == "fails"
        and target.sums == (sum(scan),)
        and sum(scan) == 15
        and 15 % 9 == 6
        and recheck(report_from_record(target))
    )
    # audit a seeded sample of interpretation-A failures against naive scans
    rng = random.Random(CONJ_SEED)
    a_fail_small = [r for r in records if r.pattern_id == "conjecture_A" and r.verdict == "fails" and r.p**r.e <= 2197]
    audit = rng.sample(a_fail_small, min(100, len(a_fail_small)))
    audit_ok = all(recheck(report_from_record(r)) for r in audit)

    b_holds = sum(r.verdict == "holds" for r in b_records)
    b_na = sum(r.verdict == "not_applicable" for r in b_records)
    a_fails = sum(r.verdict == "fails" for r in records if r.pattern_id == "conjecture_A")
    print(table.render())
    ok = b_ok and target_ok and audit_ok and elapsed < 30 * 60
    assert report(
        4,
        ok,
        f"conjecture sweep p<=17, e<=4 ({len(records)} records, {elapsed:.0f}s): "
        f"B holds {b_holds}, fails {len(b_fail)}, n/a (m_p=1) {b_na}; "
        f"A fails {a_fails} incl. (3,2,2,1) sum 15 = 6 mod 9; {len(audit)} A-failures re-verified",
    )


def test_c05_algebraic_identities(report):
    rng = random.Random(5054)
    bad = 0
    for _ in range(10_000):
        p = rng.choice(GRID_PRIMES)
        e = rng.choice(GRID_E)
        pp = PrimePower(p, e)
        q = pp.modulus
        g = rng.choice([a for a in range(1, q) if a % p]) if q < 50 else _unit(rng, q, p)
        x = rng.randint(1, q)
        bad += not all(r.verdict is Verdict.HOLDS for r in check_inverse_negation(pp, g, x))
    assert report(5, bad == 0, f"inverse/negation identities: {10_000 - bad}/10000 random cases")


def _unit(rng, q, p):
    while True:
        a = rng.randrange(1, q)
        if a % p:
            return a


def test_c06_special_pair(report):
    n = bad = 0
    for p in (3, 5, 7, 11):
        for e in GRID_E:
            pp = PrimePower(p, e)
            for g in range(2, pp.modulus):
                if g % p == 0 or not is_generator(Residue(g, pp.modulus)):
                    continue
                n += 1
                r = special_solution_check(pp, g)
                bad += r.verdict is not Verdict.HOLDS or not recheck(r)
    derived = 10 * naive_pow(2, 10, 25) % 25 == 15 and special_solution_check(PrimePower(5, 2), 2).ok
    assert report(6, bad == 0 and derived, f"special pair: {n - bad}/{n} generators, incl. 10*2^10 = 15 mod 25")


def test_c07_order_formula(report):
    n = bad = 0
    for p in GRID_PRIMES:
        for e in range(1, 5):
            for k in range(2, 11):
                if math.gcd(p, k) != 1:
                    continue
                n += 1
                r = order_formula_check(PrimePower(p, e), k)
                bad += r.verdict is not Verdict.HOLDS
    assert report(7, bad == 0, f"order formula for (p-1)^n: {n - bad}/{n} cases")


PADIC_MODULI = [(3, 2), (3, 3), (5, 2), (5, 3), (7, 2), (7, 3)]


def test_c08_padic_layer(report):
    failures = []
    for p, e in PADIC_MODULI:
        q = p**e
        one_units = list(range(1, q, p))
        logs = {u: padic_log(Residue(u, q)).value for u in one_units}
        for u in one_units:
            if padic_exp(Residue(logs[u], q)).value != u:
                failures.append(("exp(log)", q, u))
        for t in range(0, q, p):
            if padic_log(padic_exp(Residue(t, q))).value != t:
                failures.append(("log(exp)", q, t))
        for u, v in itertools.product(one_units, repeat=2):
            if logs[u * v % q] != (logs[u] + logs[v]) % q:
                failures.append(("hom", q, u, v))
        # Teichmüller: exactly one (p-1)-th root of unity above each class
        roots = [w for w in range(1, q) if w % p and pow(w, p - 1, q) == 1]
        for a in range(1, p):
            above = [w for w in roots if w % p == a]
            if len(above) != 1:
                failures.append(("teich-count", q, a))
                continue
            for g in range(a, q, p):
                if teichmuller(Residue(g, q)).value != above[0]:
                    failures.append(("teich", q, g))
        # finite-difference derivative with step p^(e-1)
        h = p ** (e - 1)
        for g in range(1, q):
            if g % p == 0:
                continue
            d = decompose(Residue(g, q))
            for x0 in range(p - 1):
                w = pow(d.omega.value, x0, q)
                for a in range(q):
                    fa = a * w * one_unit_power(d.one_unit, a).value % q
                    fb = (a + h) * w * one_unit_power(d.one_unit, a + h).value % q
                    diff = (fb - fa) % q
                    if diff % h or (diff // h - w) % p:
                        failures.append(("deriv", q, g, x0, a))
    moduli = ", ".join(str(p**e) for p, e in PADIC_MODULI)
    assert report(8, not failures, f"p-adic round trips, log homomorphism, Teichmüller uniqueness, derivative at {moduli}"
                  + (f"; first failure {failures[0]}" if failures else ""))


def test_c09_forgery(report):
    rng = random.Random(909)
    primes = [3, 5, 7, 11, 13, 17, 19, 23]
    n_sigs = bad = strict = 0
    for _ in range(50):
        p = rng.choice(primes)
        params = ElGamalParams(p, rng.choice([g for g in range(2, p) if is_generator(Residue(g, p))]))
        kp = keygen(params, rng.randint(1, max(1, p - 2)))
        msg = rng.randrange(10**6)
        s2 = rng.choice([s for s in range(1, p - 1) if math.gcd(s, p - 1) == 1])
        inst = forgery_instance(params, kp.h, msg, s2)
        a, b = inst.g.value, inst.c.value
        for sig in forge_fixed_s2(params, kp.h, msg, s2):
            n_sigs += 1
            ok = verify(params, kp.h, msg, sig, RangePolicy.EXTENDED) and sig.s1 * pow(a, sig.s1, p) % p == b
            bad += not ok
            strict += verify(params, kp.h, msg, sig, RangePolicy.STRICT)
    assert report(9, bad == 0 and n_sigs > 0,
                  f"forgery: {n_sigs - bad}/{n_sigs} forged signatures verify (extended); {strict} also pass strict")


def test_c10_speedup(report):
    rng = random.Random(1013)
    insts = []
    while len(insts) < 100:
        g, c = rng.randrange(1, 13), rng.randrange(1, 13**3)
        if c % 13:
            insts.append(DwpInstance.of(13, 3, g, c))

    def run(fn):
        t0 = time.perf_counter()
        for inst in insts:
            fn(inst)
        return time.perf_counter() - t0

    # interleave the two sides so background load hits both; keep the best of each
    hensel = brute = math.inf
    for _ in range(3):
        brute = min(brute, run(brute_force))
        for _ in range(3):
            hensel = min(hensel, run(solve_all))
    ratio = brute / hensel
    assert report(10, ratio >= SPEEDUP_FLOOR,
                  f"speedup at 13^3 over 100 instances: {ratio:.1f}x (floor {SPEEDUP_FLOOR:.0f}x); "
                  f"hensel {hensel * 1e3:.2f} ms, brute force {brute * 1e3:.1f} ms")

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import naive_order
from dlambert.errors import PreconditionError
from dlambert.modarith import PrimePower, Residue, is_generator
from dlambert.patterns import (
    OrderPair,
    PatternId,
    PatternReport,
    Verdict,
    check_c_prime_bijection,
    check_conjecture,
    check_inverse_negation,
    check_sums,
    order_formula_check,
    recheck,
    special_solution_check,
)
from dlambert.solver import DwpInstance, brute_force


def test_c_prime_m1_vacuous():
    r = check_c_prime_bijection(DwpInstance.of(5, 2, 1, 3), 1)
    assert r.verdict is Verdict.HOLDS


def test_c_prime_example():
    inst = DwpInstance.of(5, 1, 2, 1)
    r = check_c_prime_bijection(inst, 2)  # x_2 = 13
    assert r.instance["c_prime"] == 3
    assert r.verdict is Verdict.HOLDS
    # oracle: solutions for c' = 3 by scan, residues mod 5 match those for c = 1
    s_c = [7, 13, 14, 16]
    s_cp = brute_force(DwpInstance.of(5, 1, 2, 3)).solutions
    assert sorted(x % 5 for x in s_cp) == sorted(x % 5 for x in s_c)
    for i, k in r.witness["matching"].items():
        assert s_cp[i - 1] % 5 == s_c[k - 1] % 5
    assert recheck(r)


def test_c_prime_override_not_congruent():
    r = check_c_prime_bijection(DwpInstance.of(5, 1, 2, 1), 1, c_prime=1)
    assert r.verdict is Verdict.NOT_APPLICABLE


def test_c_prime_random_sweep():
    rng = random.Random(2024)
    for _ in range(150):
        p = rng.choice([3, 5, 7, 11, 13])
        e = rng.choice([1, 2])
        g, c = rng.randrange(1, p), rng.randrange(1, p**e)
        if c % p == 0:
            continue
        inst = DwpInstance.of(p, e, g, c)
        r = check_c_prime_bijection(inst, rng.randint(1, inst.m))
        assert r.verdict is Verdict.HOLDS, r.summary()


def test_sums_examples():
    mp, mm = check_sums(DwpInstance.of(5, 1, 2, 1))
    assert mp.verdict is Verdict.HOLDS and mp.witness["sum"] == 50
    assert mm.verdict is Verdict.NOT_APPLICABLE
    mp, mm = check_sums(DwpInstance.of(7, 1, 2, 1))
    assert mp.witness["sum"] == 21
    assert mp.verdict is Verdict.HOLDS and mm.verdict is Verdict.HOLDS
    mp, _ = check_sums(DwpInstance.of(7, 2, 1, 5))
    assert mp.verdict is Verdict.NOT_APPLICABLE
    assert mp.witness["sum_mod_p"] == 5


def test_conjecture_example():
    a, b = check_conjecture(DwpInstance.of(3, 2, 2, 1))
    assert a.verdict is Verdict.FAILS and a.witness["sum"] == 15 and a.witness["sum_mod_pe"] == 6
    assert b.verdict is Verdict.HOLDS and b.witness["sum"] == 153
    assert sum(brute_force(DwpInstance.of(3, 2, 2, 1), 54).solutions) == 153
    assert recheck(a) and recheck(b)


def test_conjecture_e1_reduces_to_sum_theorem():
    for p in (5, 7, 11):
        for g, c in itertools.product(range(2, p), range(1, p)):
            inst = DwpInstance.of(p, 1, g, c)
            a, b = check_conjecture(inst)
            assert a.witness["sum"] == b.witness["sum"]
            assert a.verdict == b.verdict


@pytest.mark.parametrize("p,e", [(3, 3), (5, 2), (7, 2)])
def test_conjecture_b_sum_matches_extended_scan(p, e):
    for g in range(2, p):
        for c in range(1, p**e, 3):
            if c % p == 0:
                continue
            inst = DwpInstance.of(p, e, g, c)
            _, b = check_conjecture(inst)
            assert b.witness["sum"] == sum(brute_force(inst, b.witness["range_bound"]).solutions)


def test_conjecture_deterministic():
    inst = DwpInstance.of(7, 2, 3, 10)
    assert check_conjecture(inst) == check_conjecture(inst)


def test_inverse_negation_examples():
    inv, neg = check_inverse_negation(PrimePower(5, 1), 2, 2)
    assert inv.witness["c"] == 3 and inv.witness["c_prime"] == 3
    assert inv.witness["c_times_c_prime"] == 4
    assert neg.witness["c_double_prime"] == 3
    assert inv.verdict is neg.verdict is Verdict.HOLDS
    inv, neg = check_inverse_negation(PrimePower(5, 2), 2, 25)
    assert inv.witness["c"] == inv.witness["c_prime"] == neg.witness["c_double_prime"] == 0
    assert inv.ok and neg.ok


@pytest.mark.parametrize("p,e", [(3, 2), (5, 2), (7, 1)])
def test_inverse_negation_exhaustive(p, e):
    pp = PrimePower(p, e)
    for g in range(1, pp.modulus):
        if g % p == 0:
            continue
        for x in range(1, pp.modulus + 1):
            for r in check_inverse_negation(pp, g, x):
                assert r.verdict is Verdict.HOLDS


def test_special_pair_examples():
    r = special_solution_check(PrimePower(5, 2), 2)
    assert (r.witness["x"], r.witness["c"]) == (10, 15)
    assert 10 * 1024 % 25 == 15
    assert r.verdict is Verdict.HOLDS
    r = special_solution_check(PrimePower(3, 1), 2)
    assert (r.witness["x"], r.witness["c"]) == (1, 2)
    assert r.verdict is Verdict.HOLDS


def test_special_pair_rejects_non_generator():
    with pytest.raises(PreconditionError):
        special_solution_check(PrimePower(7, 1), 2)


@pytest.mark.parametrize("p,e,n,order", [(5, 2, 2, 5), (5, 2, 3, 10), (5, 1, 2, 1)])
def test_order_formula_examples(p, e, n, order):
    r = order_formula_check(PrimePower(p, e), n)
    assert r.witness["order"] == order == naive_order((p - 1) ** n, p**e)
    assert r.verdict is Verdict.HOLDS


def test_order_formula_preconditions():
    with pytest.raises(PreconditionError):
        order_formula_check(PrimePower(5, 2), 5)
    with pytest.raises(PreconditionError):
        order_formula_check(PrimePower(5, 2), 1)


def test_order_pair():
    op = OrderPair.of(PrimePower(3, 2), 2)
    assert (op.m_p, op.m_pe) == (2, 6)
    with pytest.raises(ValueError):
        OrderPair(4, 6)


def test_failing_report_requires_witness():
    with pytest.raises(ValueError):
        PatternReport(PatternId.SUM_MOD_P, {"p": 3}, Verdict.FAILS, None)


@given(st.sampled_from([(3, 2), (5, 2), (7, 2), (11, 1), (13, 2)]), st.data())
def test_recheck_agrees(pe, data):
    p, e = pe
    q = p**e
    g = data.draw(st.integers(1, p - 1))
    c = data.draw(st.integers(1, q - 1).filter(lambda c: c % p))
    inst = DwpInstance.of(p, e, g, c)
    for r in (*check_sums(inst), *check_conjecture(inst), check_c_prime_bijection(inst, 1)):
        assert recheck(r), r.summary()


def test_recheck_catches_tampering():
    a, _ = check_conjecture(DwpInstance.of(3, 2, 2, 1))
    forged = PatternReport(a.pattern_id, a.instance, Verdict.HOLDS, a.witness)
    assert not recheck(forged)

"""Fixed-s2 ElGamal forgery on random small parameters.

For each trial, pick a prime, generator, key pair, message and s2 coprime
to p-1, solve the induced s1 * a^s1 = b (mod p) and verify every forged
signature under both range policies.

    python3 scripts/forgery_demo.py --trials 20 --seed 7
"""

import argparse
import math
import random

from dlambert.elgamal import ElGamalParams, RangePolicy, forge_fixed_s2, forgery_instance, keygen, verify
from dlambert.modarith import PrimePower, find_generator

PRIMES = (11, 13, 17, 19, 23, 29, 31, 101, 257, 1009)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    total = ext_ok = strict_ok = 0
    for _ in range(args.trials):
        p = rng.choice(PRIMES)
        params = ElGamalParams(p, find_generator(PrimePower(p, 1)).value)
        kp = keygen(params, rng.randint(1, p - 2))
        msg = rng.randrange(10**9)
        s2 = rng.choice([s for s in range(1, p - 1) if math.gcd(s, p - 1) == 1])
        inst = forgery_instance(params, kp.h, msg, s2)
        sigs = forge_fixed_s2(params, kp.h, msg, s2)
        ext = sum(verify(params, kp.h, msg, s, RangePolicy.EXTENDED) for s in sigs)
        strict = sum(verify(params, kp.h, msg, s, RangePolicy.STRICT) for s in sigs)
        total += len(sigs)
        ext_ok += ext
        strict_ok += strict
        print(f"p={p:<5} g={params.g:<3} h={kp.h:<5} msg={msg:<10} s2={s2:<4} "
              f"a={inst.g.value:<5} b={inst.c.value:<5} forged={len(sigs):<4} "
              f"extended={ext:<4} strict={strict}")
    print(f"\n{ext_ok}/{total} forged signatures verify with s1 in 1..p(p-1); "
          f"{strict_ok}/{total} also satisfy s1 < p")


if __name__ == "__main__":
    main()

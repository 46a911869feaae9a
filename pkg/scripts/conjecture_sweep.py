"""Sweep the sum-of-solutions conjecture over p <= 17, e <= 4.

e = 1..3 covers every unit c; e = 4 draws a seeded sample of c per (p, e).
Writes the records and a verdict table to --out, then prints a summary of
interpretation-B failures (expected: none) and the smallest A counterexample.

    python3 scripts/conjecture_sweep.py --out results --workers 4
"""

import argparse
import time
from pathlib import Path

from dlambert.patterns import recheck
from dlambert.sweep import SweepConfig, VerdictTable, report_from_record, run_sweep, write_records

PRIMES = (3, 5, 7, 11, 13, 17)
PATTERNS = ("conjecture_A", "conjecture_B")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--sample", type=int, default=1000, help="c values per (p, 4)")
    ap.add_argument("--seed", type=int, default=20140729)
    ap.add_argument("--format", choices=["json-lines", "csv"], default="json-lines")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    configs = [
        SweepConfig(PRIMES, (1, 2, 3), pattern_ids=PATTERNS),
        SweepConfig(PRIMES, (4,), c_selector=("sample", args.sample, args.seed), pattern_ids=PATTERNS),
    ]
    t0 = time.perf_counter()
    records = []
    for cfg in configs:
        records += run_sweep(cfg, workers=args.workers)
    elapsed = time.perf_counter() - t0

    ext = "jsonl" if args.format == "json-lines" else "csv"
    write_records(records, out / f"conjecture.{ext}", args.format)
    table = VerdictTable.from_records(records)
    (out / "conjecture_table.txt").write_text(table.render() + "\n")
    (out / "conjecture_e4.cfg").write_text(configs[1].dumps())

    print(table.render())
    print(f"\n{len(records)} records in {elapsed:.1f}s -> {out}")
    b_fail = [r for r in records if r.pattern_id == "conjecture_B" and r.verdict == "fails"]
    print(f"interpretation B failures: {len(b_fail)}")
    for r in b_fail[:10]:
        print(f"  {r.key()[:4]} sum={r.sums[0]} rechecked={recheck(report_from_record(r))}")
    a_fail = [r for r in records if r.pattern_id == "conjecture_A" and r.verdict == "fails"]
    if a_fail:
        r = a_fail[0]
        q = r.p**r.e
        print(f"interpretation A failures: {len(a_fail)}; first (p,e,g,c) = {r.key()[:4]}, "
              f"solutions {list(r.solutions)}, sum {r.sums[0]} = {r.sums[0] % q} mod {q}")


if __name__ == "__main__":
    main()

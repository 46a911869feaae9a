"""Command-line front end.

Exit codes: 0 success, 1 a requested verdict failed, 2 usage or validation
error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import elgamal, patterns
from .errors import PreconditionError
from .modarith import PrimePower, order_int
from .padic import decompose, padic_log
from .solver import DwpInstance, brute_force, count_solutions, solve_all
from .sweep import ConfigError, SweepConfig, VerdictTable, default_workers, run_sweep, write_records

EXIT_OK, EXIT_VERDICT, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

VERIFY_TARGETS = {
    "c_prime_bijection": ("c_prime_bijection",),
    "sums": ("sum_mod_p", "sum_mod_m"),
    "sum_mod_p": ("sum_mod_p",),
    "sum_mod_m": ("sum_mod_m",),
    "conjecture": ("conjecture_A", "conjecture_B"),
    "conjecture_A": ("conjecture_A",),
    "conjecture_B": ("conjecture_B",),
    "inverse_negation": ("inverse_identity", "negation_identity"),
    "inverse_identity": ("inverse_identity",),
    "negation_identity": ("negation_identity",),
    "special_pair": ("special_pair",),
    "order_formula": ("order_formula",),
}


class UsageError(Exception):
    pass


def _instance(args) -> DwpInstance:
    for name in ("p", "e", "g", "c"):
        if getattr(args, name, None) is None:
            raise UsageError(f"-{name} is required")
    try:
        return DwpInstance.of(args.p, args.e, args.g, args.c)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _prime_power(args) -> PrimePower:
    if args.p is None:
        raise UsageError("-p is required")
    try:
        return PrimePower(args.p, args.e)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_solve(args) -> int:
    inst = _instance(args)
    sol = solve_all(inst)
    print(f"instance: {inst}")
    print(f"m = ord_{inst.p}({inst.g.value % inst.p}) = {inst.m}")
    print(f"range: 1..{sol.range_bound}")
    print("solutions: " + ",".join(map(str, sol.solutions)))
    if args.oracle:
        ref = brute_force(inst)
        print("oracle: " + ("MATCH" if ref.solutions == sol.solutions else "MISMATCH"))
        if ref.solutions != sol.solutions:
            print("oracle solutions: " + ",".join(map(str, ref.solutions)))
            return EXIT_VERDICT
    return EXIT_OK


def cmd_count(args) -> int:
    inst = _instance(args)
    print(count_solutions(inst))
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = _instance(args)
    upper = args.upper if args.upper is not None else inst.range_bound
    sol = brute_force(inst, upper)
    print(f"instance: {inst}")
    print(f"range: 1..{upper}")
    print("solutions: " + ",".join(map(str, sol.solutions)))
    return EXIT_OK


def cmd_teichmuller(args) -> int:
    pp = _prime_power(args)
    if args.g is None or args.g % pp.p == 0:
        raise UsageError("-g must be given and coprime to p")
    d = decompose(pp.residue(args.g))
    print(f"g         = {d.g.value} mod {pp.modulus}")
    print(f"omega(g)  = {d.omega.value}")
    print(f"<g>       = {d.one_unit.value}")
    print(f"log <g>   = {padic_log(d.one_unit).value}")
    print(f"ord omega = {order_int(d.omega.value, pp.modulus)}")
    print(f"ord <g>   = {order_int(d.one_unit.value, pp.modulus)}")
    return EXIT_OK


def _verify_reports(target: str, args) -> list[patterns.PatternReport]:
    if target in ("inverse_identity", "negation_identity", "special_pair", "order_formula"):
        pp = _prime_power(args)
        if target == "order_formula":
            if args.n is None:
                raise UsageError("-n is required")
            return [patterns.order_formula_check(pp, args.n)]
        if target == "special_pair":
            if args.g is None:
                raise UsageError("-g is required")
            return [patterns.special_solution_check(pp, args.g)]
        if args.g is None or args.x is None:
            raise UsageError("-g and -x are required")
        return list(patterns.check_inverse_negation(pp, args.g, args.x))
    inst = _instance(args)
    if target == "c_prime_bijection":
        return [patterns.check_c_prime_bijection(inst, args.j, args.c_prime)]
    if target in ("sum_mod_p", "sum_mod_m"):
        return list(patterns.check_sums(inst))
    return list(patterns.check_conjecture(inst))


def cmd_verify(args) -> int:
    wanted = VERIFY_TARGETS[args.pattern_id]
    reports: dict[str, patterns.PatternReport] = {}
    for target in wanted:
        if target in reports:
            continue
        try:
            for r in _verify_reports(target, args):
                reports[r.pattern_id.value] = r
        except PreconditionError as exc:
            raise UsageError(str(exc)) from None
    selected = [reports[t] for t in wanted]
    for r in selected:
        print(r.summary() if args.verbose else _short(r))
    return EXIT_OK if all(r.ok for r in selected) else EXIT_VERDICT


def _short(r: patterns.PatternReport) -> str:
    w = dict(r.witness or {})
    for bulky in ("solutions", "solutions_c", "solutions_c_prime", "matching"):
        w.pop(bulky, None)
    extra = ", ".join(f"{k} = {v}" for k, v in w.items())
    return f"{r.pattern_id.value}: {r.verdict.value}" + (f" ({extra})" if extra else "")


def cmd_sweep(args) -> int:
    try:
        cfg = SweepConfig.load(args.config)
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConfigError as exc:
        raise UsageError(f"bad config: {exc}") from None
    if args.output:
        cfg.output_path = Path(args.output)
    if args.format:
        cfg.output_format = args.format
    if cfg.output_path is None:
        raise UsageError("no output_path in config and no --output given")
    workers = args.workers or (cfg.parallelism if cfg.parallelism > 1 else default_workers())
    records = run_sweep(cfg, workers=workers)
    try:
        write_records(records, cfg.output_path, cfg.output_format)
    except OSError as exc:
        print(f"cannot write results: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"{len(records)} records -> {cfg.output_path}")
    table = VerdictTable.from_records(records)
    if table.counts:
        print(table.render())
    return EXIT_OK


def cmd_attack(args) -> int:
    try:
        params = elgamal.ElGamalParams(args.p, args.g)
        kp = elgamal.keygen(params, args.x)
        inst = elgamal.forgery_instance(params, kp.h, args.m, args.s2)
    except (ValueError, PreconditionError) as exc:
        raise UsageError(str(exc)) from None
    forged = elgamal.forge_fixed_s2(params, kp.h, args.m, args.s2)
    policy = elgamal.RangePolicy(args.policy)
    print(f"public key h = {kp.h}; message = {args.m}; fixed s2 = {args.s2}")
    print(f"reduced to s1 * {inst.g.value}^s1 = {inst.c.value} (mod {args.p}), m = {inst.m}")
    passed = 0
    for sig in forged:
        ok = elgamal.verify(params, kp.h, args.m, sig, policy)
        passed += ok
        print(f"  (s1, s2) = ({sig.s1}, {sig.s2}): {'verifies' if ok else 'rejected'}")
    print(f"{passed}/{len(forged)} forged signatures pass {policy.value} verification")
    return EXIT_OK if passed == len(forged) else EXIT_VERDICT


def _add_instance_args(sp, need_c=True):
    sp.add_argument("-p", type=int, required=True, help="odd prime")
    sp.add_argument("-e", type=int, default=1, help="exponent (default 1)")
    sp.add_argument("-g", type=int, required=True)
    if need_c:
        sp.add_argument("-c", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dlambert", description="Discrete Lambert map toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="all solutions of x*g^x = c (mod p^e)")
    _add_instance_args(sp)
    sp.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("count", help="number of solutions, without enumerating")
    _add_instance_args(sp)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("oracle", help="exhaustive search")
    _add_instance_args(sp)
    sp.add_argument("--upper", type=int, help="search 1..upper (default p^e*m)")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("teichmuller", help="omega(g) * <g> decomposition mod p^e")
    _add_instance_args(sp, need_c=False)
    sp.set_defaults(func=cmd_teichmuller)

    sp = sub.add_parser("verify", help="check one solution-set pattern")
    sp.add_argument("pattern_id", choices=sorted(VERIFY_TARGETS))
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-e", type=int, default=1)
    sp.add_argument("-g", type=int)
    sp.add_argument("-c", type=int)
    sp.add_argument("-j", type=int, default=1, help="solution index for c_prime_bijection")
    sp.add_argument("--c-prime", type=int, dest="c_prime")
    sp.add_argument("-x", type=int, help="x for inverse_negation")
    sp.add_argument("-n", type=int, help="exponent for order_formula")
    sp.add_argument("-v", "--verbose", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="run a config-driven sweep and write records")
    sp.add_argument("config")
    sp.add_argument("--workers", type=int, help="worker processes (default: config, then $DLAMBERT_WORKERS)")
    sp.add_argument("--output")
    sp.add_argument("--format", choices=["json-lines", "csv"])
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("attack", help="fixed-s2 ElGamal forgery demo")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-g", type=int, required=True)
    sp.add_argument("-x", type=int, required=True, help="private key (to derive h)")
    sp.add_argument("-m", type=int, required=True, help="message")
    sp.add_argument("--s2", type=int, required=True)
    sp.add_argument("--policy", choices=["strict", "extended"], default="extended")
    sp.set_defaults(func=cmd_attack)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

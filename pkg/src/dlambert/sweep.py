"""Parameter sweeps over (p, e, g, c) with persisted, reproducible records.

Config files are flat ``key=value`` text::

    # comment
    p_list=3,5,7
    e_range=1-3
    g_selector=all-units          # or generators-only, or 2,3,5
    c_selector=sample(1000, 42)   # or all-units, or 1,2,3
    pattern_ids=conjecture_A,conjecture_B
    output_path=conjecture.jsonl
    output_format=json-lines      # or csv
    parallelism=4

``g`` ranges over residues 1..p-1 (classes mod p, used as integers mod
p^e); ``c`` ranges over units mod p^e.

Sampling uses a 64-bit LCG so that sampled c sets are reproducible in any
language: ``state = (6364136223846793005 * state + 1442695040888963407)
mod 2**64``, seeded with ``(seed + 1000003 * p + 10007 * e) mod 2**64``.
Each draw takes ``state >> 33``, maps it to ``1 + value mod (p^e - 1)`` and
keeps it if it is a unit not drawn before, until ``count`` values are
collected (or every unit is taken). The sample is returned sorted.
"""

from __future__ import annotations

import csv
import io
import json
import os
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, Union

from .modarith import PrimePower, Residue, is_generator, order_int
from .patterns import (
    PatternId,
    check_c_prime_bijection,
    check_conjecture,
    check_sums,
)
from .solver import DwpInstance, solve_all

WORKERS_ENV = "DLAMBERT_WORKERS"
SWEEP_PATTERNS = (
    "solve",
    PatternId.C_PRIME_BIJECTION.value,
    PatternId.SUM_MOD_P.value,
    PatternId.SUM_MOD_M.value,
    PatternId.CONJECTURE_A.value,
    PatternId.CONJECTURE_B.value,
)
FORMATS = ("json-lines", "csv")

_MASK64 = (1 << 64) - 1
LCG_MULT = 6364136223846793005
LCG_INC = 1442695040888963407


class ConfigError(ValueError):
    pass


class Lcg:
    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (LCG_MULT * self.state + LCG_INC) & _MASK64
        return self.state >> 33

    def below(self, n: int) -> int:
        return self.next() % n


def sample_units(p: int, e: int, count: int, seed: int) -> list[int]:
    q = p**e
    n_units = q - q // p
    if count >= n_units:
        return [c for c in range(1, q) if c % p]
    rng = Lcg(seed + 1000003 * p + 10007 * e)
    chosen: set[int] = set()
    while len(chosen) < count:
        c = 1 + rng.below(q - 1)
        if c % p:
            chosen.add(c)
    return sorted(chosen)


# selectors are ("all-units",), ("generators-only",), ("list", ints) or ("sample", count, seed)
Selector = tuple


def _parse_selector(text: str, allow_generators: bool, key: str) -> Selector:
    text = text.strip()
    if text == "all-units":
        return ("all-units",)
    if text == "generators-only":
        if not allow_generators:
            raise ConfigError(f"{key}: generators-only is only valid for g")
        return ("generators-only",)
    mo = re.fullmatch(r"sample\(\s*(\d+)\s*,\s*(-?\d+)\s*\)", text)
    if mo:
        if allow_generators:
            raise ConfigError(f"{key}: sampling is only supported for c")
        return ("sample", int(mo.group(1)), int(mo.group(2)))
    if text.startswith("sample"):
        raise ConfigError(f"{key}: sample needs both a count and a seed: sample(count, seed)")
    return ("list", _int_list(text, key))


def _int_list(text: str, key: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise ConfigError(f"{key}: expected comma-separated integers, got {text!r}") from None


def _parse_range(text: str, key: str) -> tuple[int, ...]:
    mo = re.fullmatch(r"\s*(\d+)\s*-\s*(\d+)\s*", text)
    if mo:
        lo, hi = int(mo.group(1)), int(mo.group(2))
        if lo > hi:
            raise ConfigError(f"{key}: empty range {text!r}")
        return tuple(range(lo, hi + 1))
    return _int_list(text, key)


def _selector_text(sel: Selector) -> str:
    if sel[0] == "list":
        return ",".join(map(str, sel[1]))
    if sel[0] == "sample":
        return f"sample({sel[1]}, {sel[2]})"
    return sel[0]


@dataclass
class SweepConfig:
    p_list: tuple[int, ...]
    e_range: tuple[int, ...]
    g_selector: Selector = ("all-units",)
    c_selector: Selector = ("all-units",)
    pattern_ids: tuple[str, ...] = ("solve",)
    output_path: Optional[Path] = None
    output_format: str = "json-lines"
    parallelism: int = 1

    def __post_init__(self):
        for p in self.p_list:
            for e in self.e_range:
                try:
                    PrimePower(p, e)
                except ValueError as exc:
                    raise ConfigError(f"(p, e) = ({p}, {e}): {exc}") from None
        for pid in self.pattern_ids:
            if pid not in SWEEP_PATTERNS:
                raise ConfigError(f"unknown pattern id {pid!r}; choose from {', '.join(SWEEP_PATTERNS)}")
        if self.output_format not in FORMATS:
            raise ConfigError(f"output_format must be one of {FORMATS}")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be >= 1")

    @classmethod
    def parse(cls, text: str, base_dir: Union[str, Path, None] = None) -> "SweepConfig":
        raw: dict[str, str] = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            raw[key] = value
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        for key in ("p_list", "e_range"):
            if key not in raw:
                raise ConfigError(f"missing required key {key}")
        kwargs = {
            "p_list": _int_list(raw["p_list"], "p_list"),
            "e_range": _parse_range(raw["e_range"], "e_range"),
        }
        if "g_selector" in raw:
            kwargs["g_selector"] = _parse_selector(raw["g_selector"], True, "g_selector")
        if "c_selector" in raw:
            kwargs["c_selector"] = _parse_selector(raw["c_selector"], False, "c_selector")
        if "pattern_ids" in raw:
            kwargs["pattern_ids"] = tuple(t.strip() for t in raw["pattern_ids"].split(",") if t.strip())
        if "output_path" in raw:
            out = Path(raw["output_path"])
            if base_dir is not None and not out.is_absolute():
                out = Path(base_dir) / out
            kwargs["output_path"] = out
        if "output_format" in raw:
            kwargs["output_format"] = raw["output_format"]
        if "parallelism" in raw:
            try:
                kwargs["parallelism"] = int(raw["parallelism"])
            except ValueError:
                raise ConfigError("parallelism must be an integer") from None
        return cls(**kwargs)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "SweepConfig":
        path = Path(path)
        return cls.parse(path.read_text(encoding="utf-8"), base_dir=path.parent)

    def dumps(self) -> str:
        lines = [
            f"p_list={','.join(map(str, self.p_list))}",
            f"e_range={','.join(map(str, self.e_range))}",
            f"g_selector={_selector_text(self.g_selector)}",
            f"c_selector={_selector_text(self.c_selector)}",
            f"pattern_ids={','.join(self.pattern_ids)}",
            f"output_format={self.output_format}",
            f"parallelism={self.parallelism}",
        ]
        if self.output_path is not None:
            lines.append(f"output_path={self.output_path}")
        return "\n".join(lines) + "\n"


def g_values(sel: Selector, p: int, e: int) -> list[int]:
    if sel[0] == "all-units":
        return list(range(1, p))
    if sel[0] == "generators-only":
        return [g for g in range(1, p) if is_generator(Residue(g, p))]
    if sel[0] == "list":
        return [g for g in sel[1] if g % p]
    raise ConfigError(f"unsupported g selector {sel}")


def c_values(sel: Selector, p: int, e: int) -> list[int]:
    q = p**e
    if sel[0] == "all-units":
        return [c for c in range(1, q) if c % p]
    if sel[0] == "sample":
        return sample_units(p, e, sel[1], sel[2])
    if sel[0] == "list":
        return sorted({c % q for c in sel[1] if c % p})
    raise ConfigError(f"unsupported c selector {sel}")


@dataclass(frozen=True)
class ResultRecord:
    p: int
    e: int
    g: int
    c: int
    pattern_id: str
    verdict: str = ""
    solutions: tuple[int, ...] = ()
    sums: tuple[int, ...] = ()
    m_p: int = 0
    m_pe: int = 0
    elapsed_us: int = 0

    def key(self) -> tuple:
        return (self.p, self.e, self.g, self.c, self.pattern_id)

    def without_timing(self) -> "ResultRecord":
        return ResultRecord(**{**self.__dict__, "elapsed_us": 0})

    # integers are written as decimal strings so no consumer truncates them
    def to_json(self) -> str:
        obj = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                obj[f.name] = [str(x) for x in v]
            elif isinstance(v, int):
                obj[f.name] = str(v)
            else:
                obj[f.name] = v
        return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "ResultRecord":
        obj = json.loads(line)
        return cls(**{f.name: _decode(f.name, obj[f.name]) for f in fields(cls)})

    def csv_row(self) -> list[str]:
        row = []
        for f in fields(self):
            v = getattr(self, f.name)
            row.append(";".join(map(str, v)) if isinstance(v, tuple) else str(v))
        return row

    @classmethod
    def from_csv_row(cls, row: Sequence[str]) -> "ResultRecord":
        kw = {}
        for f, cell in zip(fields(cls), row):
            if f.name in ("solutions", "sums"):
                kw[f.name] = tuple(int(t) for t in cell.split(";") if t)
            else:
                kw[f.name] = _decode(f.name, cell)
        return cls(**kw)


def _decode(name: str, v):
    if name in ("pattern_id", "verdict"):
        return v
    if name in ("solutions", "sums"):
        return tuple(int(x) for x in v)
    return int(v)


CSV_HEADER = [f.name for f in fields(ResultRecord)]


def write_records(records: Iterable[ResultRecord], path: Union[str, Path], fmt: str) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as fh:
        fh.write(dumps_records(records, fmt))


def dumps_records(records: Iterable[ResultRecord], fmt: str) -> str:
    if fmt == "json-lines":
        return "".join(r.to_json() + "\n" for r in records)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow(r.csv_row())
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt}")


def read_records(path: Union[str, Path], fmt: Optional[str] = None) -> list[ResultRecord]:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if fmt is None:
        fmt = "csv" if path.suffix == ".csv" else "json-lines"
    return loads_records(text, fmt)


def loads_records(text: str, fmt: str) -> list[ResultRecord]:
    if fmt == "json-lines":
        return [ResultRecord.from_json(line) for line in text.splitlines() if line.strip()]
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != CSV_HEADER:
        raise ValueError("CSV header does not match the record layout")
    return [ResultRecord.from_csv_row(r) for r in rows[1:]]


def evaluate_instance(p: int, e: int, g: int, c: int, pattern_ids: Sequence[str]) -> list[ResultRecord]:
    """All requested records for one (p, e, g, c)."""
    t0 = time.perf_counter_ns()
    inst = DwpInstance.of(p, e, g, c)
    m_p = inst.m
    m_pe = order_int(g, p**e)
    out = []
    wanted = set(pattern_ids)

    def rec(pid, verdict="", sols=(), sums=()):
        out.append(ResultRecord(p, e, g, c, pid, verdict, tuple(sols), tuple(sums), m_p, m_pe, 0))

    sols = None
    if "solve" in wanted:
        sols = solve_all(inst).solutions
        rec("solve", "", sols, (sum(sols),))
    if wanted & {"sum_mod_p", "sum_mod_m"}:
        for r in check_sums(inst):
            if r.pattern_id.value in wanted:
                rec(r.pattern_id.value, r.verdict.value, r.witness["solutions"], (r.witness["sum"],))
    if wanted & {"conjecture_A", "conjecture_B"}:
        for r in check_conjecture(inst):
            if r.pattern_id.value in wanted:
                rec(r.pattern_id.value, r.verdict.value, r.witness["solutions"], (r.witness["sum"],))
    if "c_prime_bijection" in wanted:
        r = check_c_prime_bijection(inst, 1)
        rec(r.pattern_id.value, r.verdict.value, r.witness["solutions_c"], (r.instance["c_prime"],))
    elapsed = (time.perf_counter_ns() - t0) // 1000
    # timing is per instance; attach it to every record of the instance
    return [ResultRecord(**{**r.__dict__, "elapsed_us": elapsed}) for r in out]


def _work_items(cfg: SweepConfig) -> Iterator[tuple[int, int, int, tuple[int, ...]]]:
    for p in cfg.p_list:
        for e in cfg.e_range:
            cs = tuple(c_values(cfg.c_selector, p, e))
            for g in g_values(cfg.g_selector, p, e):
                yield p, e, g, cs


def _run_item(item, pattern_ids) -> list[ResultRecord]:
    p, e, g, cs = item
    out = []
    for c in cs:
        out.extend(evaluate_instance(p, e, g, c, pattern_ids))
    return out


def _run_item_star(args):
    return _run_item(*args)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def run_sweep(cfg: SweepConfig, workers: Optional[int] = None) -> list[ResultRecord]:
    """Evaluate the grid; records come back sorted by (p, e, g, c, pattern_id)."""
    workers = workers or cfg.parallelism
    items = [(item, cfg.pattern_ids) for item in _work_items(cfg)]
    records: list[ResultRecord] = []
    if workers <= 1:
        for args in items:
            records.extend(_run_item_star(args))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for chunk in pool.map(_run_item_star, items):
                records.extend(chunk)
    records.sort(key=ResultRecord.key)
    return records


@dataclass
class VerdictTable:
    """holds / fails / not_applicable counts per (pattern_id, p, e)."""

    counts: dict[tuple[str, int, int], dict[str, int]] = field(default_factory=dict)

    @classmethod
    def from_records(cls, records: Iterable[ResultRecord]) -> "VerdictTable":
        t = cls()
        for r in records:
            if not r.verdict:
                continue
            row = t.counts.setdefault((r.pattern_id, r.p, r.e), {"holds": 0, "fails": 0, "not_applicable": 0})
            row[r.verdict] += 1
        return t

    def render(self) -> str:
        lines = [f"{'pattern':<18}{'p':>4}{'e':>3}{'holds':>9}{'fails':>8}{'n/a':>6}"]
        for (pid, p, e), row in sorted(self.counts.items()):
            lines.append(
                f"{pid:<18}{p:>4}{e:>3}{row['holds']:>9}{row['fails']:>8}{row['not_applicable']:>6}"
            )
        return "\n".join(lines)


def report_from_record(rec: ResultRecord):
    """Rebuild a PatternReport from a sweep record so ``patterns.recheck`` can audit it."""
    from .patterns import PatternReport, Verdict

    pid = PatternId(rec.pattern_id)
    instance = {"p": rec.p, "e": rec.e, "g": rec.g, "c": rec.c}
    witness = {"solutions": list(rec.solutions), "m_p": rec.m_p, "m_pe": rec.m_pe}
    if pid is PatternId.C_PRIME_BIJECTION:
        instance |= {"j": 1, "c_prime": rec.sums[0]}
    else:
        witness["sum"] = rec.sums[0]
    return PatternReport(pid, instance, Verdict(rec.verdict), witness)

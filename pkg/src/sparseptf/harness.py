"""Population sweeps, aggregation and report files."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator

import numpy as np

from . import __version__
from .atlas import MAX_ATLAS_VARS, Atlas
from .core import BooleanFunction, UsageError, verify_ptf
from .solvers import ALGORITHMS, GaConfig, solve

log = logging.getLogger(__name__)

SCHEMA = 1


class SweepIntegrityError(RuntimeError):
    """A solver produced a PTF that does not sign-represent its function."""


@dataclass(frozen=True)
class Population:
    kind: str  # "all", "first-half" or "sample"
    sample_size: int = 0
    seed: int = 0

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> "Population":
        if text in ("all", "first-half"):
            return cls(text)
        if text.startswith("sample:"):
            try:
                size = int(text.split(":", 1)[1])
            except ValueError as exc:
                raise UsageError(f"bad sample size in {text!r}") from exc
            return cls("sample", size, seed)
        raise UsageError(f"population must be all, first-half or sample:K, got {text!r}")

    def label(self) -> str:
        return f"sample:{self.sample_size}" if self.kind == "sample" else self.kind


@dataclass(frozen=True)
class SweepSpec:
    n: int
    algorithms: tuple[str, ...]
    population: Population
    ga: GaConfig = field(default_factory=GaConfig)
    seed: int = 0
    sort_key: str = "abs"
    descending: bool = False

    def __post_init__(self):
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise UsageError(f"unknown algorithm {a!r}")
        if len(set(self.algorithms)) != len(self.algorithms):
            raise UsageError("duplicate algorithm in sweep")
        if self.n < 1:
            raise UsageError("sweeps need n >= 1")
        if "3q" in self.algorithms and self.n < 2:
            raise UsageError("3q needs n >= 2")
        total = 1 << (1 << self.n)
        p = self.population
        if p.kind in ("all", "first-half") and self.n > 4:
            raise UsageError(f"population {p.kind!r} refused for n > 4")
        if p.kind == "sample" and not 0 < p.sample_size <= total:
            raise UsageError(f"sample size must lie in 1..{total}")
        if p.kind not in ("all", "first-half", "sample"):
            raise UsageError(f"unknown population kind {p.kind!r}")

    def echo(self) -> dict:
        return {
            "n": self.n,
            "algorithms": list(self.algorithms),
            "population": self.population.label(),
            "sample_seed": self.population.seed if self.population.kind == "sample" else None,
            "seed": self.seed,
            "ga": asdict(self.ga),
            "sort_key": self.sort_key,
            "descending": self.descending,
        }


def function_indices(n: int, population: Population) -> list[int]:
    total = 1 << (1 << n)
    if population.kind == "all":
        return list(range(total))
    if population.kind == "first-half":
        return list(range(total // 2))
    rng = np.random.default_rng(population.seed)
    size = population.sample_size
    if total <= 1 << 62:
        picks = rng.choice(total, size=size, replace=False)
        return sorted(int(v) for v in picks)
    seen: set[int] = set()
    nbits = 1 << n
    while len(seen) < size:
        seen.add(int("".join(map(str, rng.integers(0, 2, nbits).tolist())), 2))
    return sorted(seen)


def enumerate_functions(n: int, population: Population) -> Iterator[BooleanFunction]:
    for F in function_indices(n, population):
        yield BooleanFunction.from_index(n, F)


def ga_seed(spec_seed: int, F: int) -> int:
    """Per-function GA seed; depends only on the sweep seed and the function index."""
    return int(np.random.SeedSequence([spec_seed, F]).generate_state(1, np.uint64)[0])


# ---------------------------------------------------------------------------
# workers

_ATLAS: dict[int, Atlas] = {}


def _oracle_for(n: int):
    if n > MAX_ATLAS_VARS:
        return None
    if n not in _ATLAS:
        _ATLAS[n] = Atlas(n)
    return _ATLAS[n]


def _run_chunk(args) -> tuple[list[tuple[int, dict]], int | None]:
    spec, indices = args
    oracle = _oracle_for(spec.n)
    lp_before = oracle.lp_calls if oracle is not None else 0
    out = []
    for F in indices:
        bf = BooleanFunction.from_index(spec.n, F)
        rows = {}
        for alg in spec.algorithms:
            ga = GaConfig(**{**asdict(spec.ga), "seed": ga_seed(spec.seed, F)}) if alg == "ga" else None
            t0 = time.perf_counter()
            res = solve(bf, alg, oracle=oracle, ga=ga, key=spec.sort_key, descending=spec.descending)
            dt = time.perf_counter() - t0
            check = verify_ptf(res.ptf, bf)
            if not check:
                dump = {"F": F, "algorithm": alg, "ptf": res.ptf.to_json_obj(),
                        "violations": check.describe()}
                raise SweepIntegrityError(json.dumps(dump))
            rows[alg] = {
                "monomials": res.monomial_count,
                "seconds": dt,
                "oracle_calls": res.stats["oracle_calls"],
                "bound_missed": bool(res.stats.get("bound_missed", False)),
            }
        out.append((F, rows))
    lp = oracle.lp_calls - lp_before if oracle is not None else None
    return out, lp


# ---------------------------------------------------------------------------
# report

@dataclass
class AlgorithmSummary:
    histogram: dict[int, int]
    total_seconds: float
    oracle_calls: int
    bound_missed: int = 0

    @property
    def population(self) -> int:
        return sum(self.histogram.values())

    @property
    def average(self) -> Fraction:
        if not self.population:
            return Fraction(0)
        return Fraction(sum(k * v for k, v in self.histogram.items()), self.population)

    @property
    def average_seconds(self) -> float:
        return self.total_seconds / self.population if self.population else 0.0


@dataclass
class SweepReport:
    spec: dict
    population_size: int
    algorithms: dict[str, AlgorithmSummary]
    code_version: str = __version__
    lp_solves: int | None = None  # memo misses; depends on worker layout, kept out of report.json

    def to_json_obj(self) -> dict:
        """Deterministic content only: wall-clock figures live in ``timing.json``."""
        algs = {}
        for name, s in self.algorithms.items():
            algs[name] = {
                "histogram": [[k, v] for k, v in sorted(s.histogram.items())],
                "average_monomials": f"{s.average.numerator}/{s.average.denominator}",
                "average_monomials_float": float(s.average),
                "oracle_calls": s.oracle_calls,
                "bound_missed": s.bound_missed,
            }
        return {"schema": SCHEMA, "code_version": self.code_version, "spec": self.spec,
                "population_size": self.population_size, "algorithms": algs}

    def timing_obj(self) -> dict:
        return {
            "schema": SCHEMA,
            "lp_solves": self.lp_solves,
            "algorithms": {name: {"total_seconds": s.total_seconds, "average_seconds": s.average_seconds}
                           for name, s in self.algorithms.items()},
        }

    @classmethod
    def from_json_obj(cls, obj: dict, timing: dict | None = None) -> "SweepReport":
        if obj.get("schema") != SCHEMA:
            raise UsageError(f"unsupported report schema {obj.get('schema')!r}")
        algs = {}
        for name, a in obj["algorithms"].items():
            t = (timing or {}).get("algorithms", {}).get(name, {})
            algs[name] = AlgorithmSummary({int(k): int(v) for k, v in a["histogram"]},
                                          t.get("total_seconds", 0.0), a["oracle_calls"], a["bound_missed"])
        return cls(obj["spec"], obj["population_size"], algs, obj["code_version"],
                   (timing or {}).get("lp_solves"))


def sweep(spec: SweepSpec, workers: int = 1, chunk: int = 512) -> SweepReport:
    """Run every selected algorithm on every function of the population.

    Results are merged in function-index order, so the report does not depend
    on ``workers``.
    """
    indices = function_indices(spec.n, spec.population)
    chunks = [(spec, indices[i:i + chunk]) for i in range(0, len(indices), chunk)]
    hist = {a: Counter() for a in spec.algorithms}
    secs = {a: 0.0 for a in spec.algorithms}
    calls = {a: 0 for a in spec.algorithms}
    missed = {a: 0 for a in spec.algorithms}
    lp_total = 0 if spec.n <= MAX_ATLAS_VARS else None

    def consume(result):
        nonlocal lp_total
        rows, lp = result
        for _, per_alg in rows:
            for a, r in per_alg.items():
                hist[a][r["monomials"]] += 1
                secs[a] += r["seconds"]
                calls[a] += r["oracle_calls"]
                missed[a] += r["bound_missed"]
        if lp_total is not None and lp is not None:
            lp_total += lp

    if workers <= 1:
        for k, c in enumerate(chunks):
            consume(_run_chunk(c))
            log.debug("chunk %d/%d done", k + 1, len(chunks))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for result in pool.map(_run_chunk, chunks):
                consume(result)
    summaries = {a: AlgorithmSummary(dict(sorted(hist[a].items())), secs[a], calls[a], missed[a])
                 for a in spec.algorithms}
    return SweepReport(spec.echo(), len(indices), summaries, lp_solves=lp_total)


# ---------------------------------------------------------------------------
# files

def histogram_csv(report: SweepReport) -> str:
    buf = io.StringIO()
    buf.write(f"# spec={json.dumps(report.spec, sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["algorithm", "monomials", "count"])
    for name, s in report.algorithms.items():
        for k, v in sorted(s.histogram.items()):
            w.writerow([name, k, v])
    return buf.getvalue()


def summary_csv(report: SweepReport) -> str:
    buf = io.StringIO()
    buf.write(f"# spec={json.dumps(report.spec, sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["algorithm", "avg_monomials", "avg_seconds", "oracle_calls"])
    for name, s in report.algorithms.items():
        w.writerow([name, f"{float(s.average):.6f}", f"{s.average_seconds:.6g}", s.oracle_calls])
    return buf.getvalue()


def report_json(report: SweepReport) -> str:
    return json.dumps(report.to_json_obj(), indent=2, sort_keys=True) + "\n"


def emit_report(report: SweepReport, out_dir: str | os.PathLike, fmt: str = "csv") -> list[Path]:
    """Write the report files; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if fmt == "csv":
        files = {"histogram.csv": histogram_csv(report), "summary.csv": summary_csv(report)}
    elif fmt == "json":
        files = {"report.json": report_json(report)}
    else:
        raise UsageError(f"unknown report format {fmt!r}")
    files["timing.json"] = json.dumps(report.timing_obj(), indent=2, sort_keys=True) + "\n"
    for name, text in files.items():
        path = out / name
        path.write_text(text, encoding="utf-8")
        written.append(path)
    return written


def load_report(path: str | os.PathLike) -> SweepReport:
    path = Path(path)
    obj = json.loads(path.read_text(encoding="utf-8"))
    timing_path = path.with_name("timing.json")
    timing = json.loads(timing_path.read_text(encoding="utf-8")) if timing_path.exists() else None
    return SweepReport.from_json_obj(obj, timing)

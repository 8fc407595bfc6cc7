"""PTF search algorithms built on the eliminability oracle.

Every solver decides *which* monomials to drop using a boolean oracle
``oracle(bf, mask) -> bool`` (exact LP by default, or a shared memo such as
:class:`sparseptf.atlas.Atlas`), then builds the final polynomial from an
exact simplex witness for the chosen set, so each returned PTF carries a
certificate regardless of which oracle guided the search.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import BooleanFunction, Ptf, UsageError, spectrum, verify_ptf
from .feasibility import EliminationSet, IntegrityError, eliminable, is_eliminable, ptf_from_witness

Oracle = Callable[[BooleanFunction, int], bool]

ALGORITHMS = ("brute", "l", "b", "3q", "ga")


@dataclass(frozen=True)
class SolveResult:
    algorithm: str
    ptf: Ptf
    monomial_count: int
    eliminated: EliminationSet
    stats: dict = field(default_factory=dict, compare=False, hash=False)


class _CountingOracle:
    def __init__(self, oracle: Oracle | None):
        self.oracle = oracle or eliminable
        self.calls = 0

    def __call__(self, bf: BooleanFunction, mask: int) -> bool:
        self.calls += 1
        return self.oracle(bf, mask)


def _finish(bf: BooleanFunction, mask: int, algorithm: str, calls: int, started: float,
            **extra) -> SolveResult:
    E = EliminationSet(bf.n, mask)
    w = is_eliminable(bf, E)
    if w is None:
        raise IntegrityError(f"{algorithm}: oracle accepted mask {mask:#x} but the exact LP rejects it")
    ptf = ptf_from_witness(bf, E, w, source=algorithm)
    if not verify_ptf(ptf, bf):
        raise IntegrityError(f"{algorithm}: constructed PTF fails verification")
    stats = {"oracle_calls": calls, "elapsed": time.perf_counter() - started, **extra}
    return SolveResult(algorithm, ptf, ptf.monomial_count, E, stats)


# ---------------------------------------------------------------------------
# exhaustive density

@dataclass(frozen=True)
class DensityResult:
    density: int | None  # None when the budget ran out before the search finished
    result: SolveResult  # optimal PTF, or best upper bound found when incomplete
    complete: bool
    lower_bound: int

    def __iter__(self):
        yield self.density
        yield self.result


def brute_force_density(bf: BooleanFunction, budget: int | None = None,
                        oracle: Oracle | None = None) -> DensityResult:
    """Smallest kept set whose complement is eliminable, scanning cardinalities upward.

    ``budget`` caps the number of oracle calls; ``n > 4`` is refused without one.
    """
    if bf.n > 4 and budget is None:
        raise UsageError("brute force beyond n=4 needs an explicit budget")
    started = time.perf_counter()
    orc = _CountingOracle(oracle)
    size = bf.size
    full = (1 << size) - 1
    for c in range(size + 1):
        for kept in itertools.combinations(range(size), c):
            if budget is not None and orc.calls >= budget:
                best = l_heuristic(bf, oracle=oracle)
                res = _finish(bf, best.eliminated.mask, "brute", orc.calls + best.stats["oracle_calls"],
                              started, complete=False)
                return DensityResult(None, res, False, c)
            kmask = 0
            for j in kept:
                kmask |= 1 << j
            if orc(bf, full ^ kmask):
                res = _finish(bf, full ^ kmask, "brute", orc.calls, started, complete=True)
                if res.monomial_count != c:
                    # a kept coefficient vanished: contradicts minimality of c
                    raise IntegrityError("brute force found fewer monomials than its cardinality")
                return DensityResult(c, res, True, c)
    raise AssertionError("the full monomial set always represents f")


# ---------------------------------------------------------------------------
# heuristics

def monomial_order(bf: BooleanFunction, key: str = "abs", descending: bool = False) -> list[int]:
    """Monomials sorted by spectral coefficient (``key`` "abs" or "signed"), ties by index."""
    s = spectrum(bf).coeffs
    if key == "abs":
        vals = [abs(c) for c in s]
    elif key == "signed":
        vals = list(s)
    else:
        raise UsageError(f"unknown sort key {key!r}")
    if descending:
        return sorted(range(bf.size), key=lambda j: (-vals[j], j))
    return sorted(range(bf.size), key=lambda j: (vals[j], j))


def l_heuristic(bf: BooleanFunction, oracle: Oracle | None = None, key: str = "abs",
                descending: bool = False) -> SolveResult:
    """Greedy single pass: keep adding the next sorted monomial while the set stays eliminable."""
    started = time.perf_counter()
    orc = _CountingOracle(oracle)
    mask = 0
    for j in monomial_order(bf, key, descending):
        trial = mask | (1 << j)
        if orc(bf, trial):
            mask = trial
    return _finish(bf, mask, "l", orc.calls, started)


def b_heuristic(bf: BooleanFunction, oracle: Oracle | None = None, key: str = "abs",
                descending: bool = False) -> SolveResult:
    """Binary search for the longest eliminable prefix of the sorted monomial order."""
    started = time.perf_counter()
    orc = _CountingOracle(oracle)
    order = monomial_order(bf, key, descending)
    prefix = [0]
    for j in order:
        prefix.append(prefix[-1] | (1 << j))
    lo, hi = 1, bf.size - 1
    best = 0
    while lo <= hi:
        m = (lo + hi) // 2
        if orc(bf, prefix[m]):
            best = max(best, m)
            lo = m + 1
        else:
            hi = m - 1
    return _finish(bf, prefix[best], "b", orc.calls, started, prefix=best)


def quarter_blocks(n: int) -> list[tuple[tuple[int, int], int, int]]:
    """All ``((i, j), block, mask)``: monomials with a fixed presence pattern of x_i, x_j."""
    out = []
    for i, j in itertools.combinations(range(n), 2):
        for block in range(4):
            want_i, want_j = block & 1, block >> 1
            mask = 0
            for m in range(1 << n):
                if (m >> i) & 1 == want_i and (m >> j) & 1 == want_j:
                    mask |= 1 << m
            out.append(((i, j), block, mask))
    return out


def three_quarters(bf: BooleanFunction, oracle: Oracle | None = None) -> SolveResult:
    """Eliminate a whole quarter of the monomials defined by one variable pair.

    Among eliminable quarters the one whose constructed PTF is sparsest wins
    (ties: lowest pair, then lowest block).  If none is eliminable the full
    spectral polynomial is returned with ``bound_missed`` set.
    """
    if bf.n < 2:
        raise UsageError("three_quarters needs n >= 2")
    started = time.perf_counter()
    orc = _CountingOracle(oracle)
    best = None
    for pair, block, mask in quarter_blocks(bf.n):
        if not orc(bf, mask):
            continue
        res = _finish(bf, mask, "3q", 0, started)
        if best is None or res.monomial_count < best[0].monomial_count:
            best = (res, pair, block)
    if best is None:
        return _finish(bf, 0, "3q", orc.calls, started, bound_missed=True)
    res, pair, block = best
    stats = dict(res.stats, oracle_calls=orc.calls, elapsed=time.perf_counter() - started,
                 bound_missed=False, pair=list(pair), block=block)
    return SolveResult(res.algorithm, res.ptf, res.monomial_count, res.eliminated, stats)


# ---------------------------------------------------------------------------
# genetic algorithm

@dataclass(frozen=True)
class GaConfig:
    population: int = 16
    mutation_rate: float = 0.01
    generations: int = 100
    crossover_rate: float = 0.9
    tournament_size: int = 2
    elitism: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.population < 2:
            raise UsageError("GA population must be at least 2")
        for name in ("mutation_rate", "crossover_rate"):
            v = getattr(self, name)
            if not 0 <= v <= 1:
                raise UsageError(f"{name} must lie in [0, 1], got {v}")
        if self.generations < 0 or self.tournament_size < 1:
            raise UsageError("generations must be >= 0 and tournament_size >= 1")
        if not 0 <= self.elitism <= self.population:
            raise UsageError("elitism must lie in [0, population]")
        if not 0 <= self.seed < 1 << 64:
            raise UsageError("seed must be a 64-bit unsigned integer")


def ga_solve(bf: BooleanFunction, cfg: GaConfig = GaConfig(), oracle: Oracle | None = None) -> SolveResult:
    """Binary GA over elimination masks; fitness is the mask size if eliminable, else 0.

    Random draws are taken in fixed-shape batches per generation, so a run is
    a pure function of ``(f, cfg)``.
    """
    started = time.perf_counter()
    orc = _CountingOracle(oracle)
    rng = np.random.default_rng(cfg.seed)
    nbits = bf.size
    pop_size = cfg.population
    weights = 1 << np.arange(nbits, dtype=np.int64) if nbits < 63 else None
    cache: dict[int, int] = {}

    def fitness(g: int) -> int:
        v = cache.get(g)
        if v is None:
            v = bin(g).count("1") if orc(bf, g) else 0
            cache[g] = v
        return v

    def pack(bits: np.ndarray) -> list[int]:
        if weights is not None:
            return (bits.astype(np.int64) @ weights).tolist()
        return [sum(1 << b for b in np.flatnonzero(row).tolist()) for row in bits]

    pop = pack(rng.random((pop_size, nbits)) < 0.5)
    best_fit, best_g = 0, 0
    n_pairs = (pop_size - cfg.elitism + 1) // 2
    for gen in range(cfg.generations + 1):
        fits = [fitness(g) for g in pop]
        for g, fv in zip(pop, fits):
            if fv > best_fit:
                best_fit, best_g = fv, g
        if gen == cfg.generations:
            break
        ranked = sorted(range(pop_size), key=lambda i: (-fits[i], i))
        nxt = [pop[i] for i in ranked[:cfg.elitism]]
        contenders = rng.integers(0, pop_size, (n_pairs, 2, cfg.tournament_size)).tolist()
        do_cross = (rng.random(n_pairs) < cfg.crossover_rate).tolist()
        cuts = rng.integers(1, max(nbits, 2), n_pairs).tolist()
        flips = pack(rng.random((2 * n_pairs, nbits)) < cfg.mutation_rate)
        for k in range(n_pairs):
            a, b = (pop[min(c, key=lambda i: (-fits[i], i))] for c in contenders[k])
            if do_cross[k] and nbits > 1:
                low = (1 << cuts[k]) - 1
                a, b = (a & low) | (b & ~low), (b & low) | (a & ~low)
            nxt.append(a ^ flips[2 * k])
            nxt.append(b ^ flips[2 * k + 1])
        pop = nxt[:pop_size]
    return _finish(bf, best_g, "ga", orc.calls, started, best_fitness=best_fit,
                   distinct_genotypes=len(cache))


def solve(bf: BooleanFunction, algorithm: str, oracle: Oracle | None = None,
          ga: GaConfig | None = None, key: str = "abs", descending: bool = False) -> SolveResult:
    if algorithm == "brute":
        return brute_force_density(bf, oracle=oracle).result
    if algorithm == "l":
        return l_heuristic(bf, oracle, key, descending)
    if algorithm == "b":
        return b_heuristic(bf, oracle, key, descending)
    if algorithm == "3q":
        return three_quarters(bf, oracle)
    if algorithm == "ga":
        return ga_solve(bf, ga or GaConfig(), oracle)
    raise UsageError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")

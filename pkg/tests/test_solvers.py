import pytest

from sparseptf.atlas import Atlas
from sparseptf.core import BooleanFunction, UsageError, parse_bf, verify_ptf
from sparseptf.feasibility import witness_ok
from sparseptf.solvers import (GaConfig, b_heuristic, brute_force_density, ga_solve, l_heuristic,
                               monomial_order, quarter_blocks, solve, three_quarters)

from conftest import all_functions, random_functions
from test_feasibility import float_eliminable

TABLE2 = parse_bf("[-1,-1,-1,-1,-1,-1,1,1,-1,1,-1,1,-1,1,1,-1]")
# supports of the published L- and B-Heuristic rows
TABLE2_L_SUPPORT = {3, 5, 7, 10, 11, 12, 13, 14, 15}
TABLE2_B_SUPPORT = {3, 4, 5, 6, 8, 9, 10, 12, 13, 14}


def density_by_enumeration(bf):
    """Min over every kept set whose complement the float LP can eliminate."""
    size = bf.size
    full = (1 << size) - 1
    return min(bin(kept).count("1") for kept in range(1 << size) if float_eliminable(bf, full ^ kept))


def const(n):
    return BooleanFunction(n, (1,) * (1 << n))


# -- brute force -------------------------------------------------------------

def test_brute_examples(xor, and2):
    d, res = brute_force_density(xor)
    assert d == 1 and res.ptf.terms == {3: 1}
    assert brute_force_density(and2).density == 3
    for n in (1, 2, 3):
        d, res = brute_force_density(const(n))
        assert d == 1 and res.ptf.terms == {0: 1}


def test_brute_matches_enumeration_n2():
    for bf in all_functions(2):
        assert brute_force_density(bf).density == density_by_enumeration(bf)


def test_brute_budget():
    res = brute_force_density(TABLE2, budget=50)
    assert not res.complete and res.density is None
    assert verify_ptf(res.result.ptf, TABLE2)
    assert res.lower_bound <= res.result.monomial_count
    with pytest.raises(UsageError):
        brute_force_density(BooleanFunction.from_index(5, 12345))


# -- ordering ----------------------------------------------------------------

def test_monomial_order_examples(xor):
    assert monomial_order(xor) == [0, 1, 2, 3]
    assert monomial_order(const(3)) == [1, 2, 3, 4, 5, 6, 7, 0]
    bf = BooleanFunction.from_values([1, -1, -1, -1])  # |s| all equal -> index order
    assert monomial_order(bf) == [0, 1, 2, 3]
    assert monomial_order(xor, descending=True) == [3, 0, 1, 2]


# -- heuristics --------------------------------------------------------------

def test_l_heuristic_examples(xor):
    assert l_heuristic(xor).monomial_count == 1
    r = l_heuristic(const(3))
    assert r.ptf.terms == {0: 1}
    r = l_heuristic(TABLE2)
    assert r.monomial_count == 9 and set(r.ptf.terms) == TABLE2_L_SUPPORT


def test_b_heuristic_examples(xor):
    r = b_heuristic(xor)
    assert r.monomial_count == 1 and r.stats["prefix"] == 3
    assert b_heuristic(const(4)).monomial_count == 1
    r = b_heuristic(TABLE2)
    assert set(r.ptf.terms) == TABLE2_B_SUPPORT


def test_three_quarters_examples(xor):
    r = three_quarters(xor)
    assert r.monomial_count <= 3 and not r.stats["bound_missed"]
    r = three_quarters(TABLE2)
    assert r.monomial_count <= 12 and not r.stats["bound_missed"]
    r = three_quarters(const(4))
    assert r.monomial_count <= 12 and not r.stats["bound_missed"]
    with pytest.raises(UsageError):
        three_quarters(BooleanFunction.from_values([1, -1]))


def test_quarter_blocks_partition():
    for n in (2, 3, 4):
        blocks = quarter_blocks(n)
        assert len(blocks) == 4 * n * (n - 1) // 2
        for pair_start in range(0, len(blocks), 4):
            masks = [m for _, _, m in blocks[pair_start:pair_start + 4]]
            assert sum(bin(m).count("1") for m in masks) == 1 << n
            assert masks[0] | masks[1] | masks[2] | masks[3] == (1 << (1 << n)) - 1


def test_ga_determinism_and_contract():
    cfg = GaConfig(seed=1234)
    for bf in random_functions(4, 3, seed=2) + [const(4)]:
        a, b = ga_solve(bf, cfg), ga_solve(bf, cfg)
        assert a == b and a.stats["best_fitness"] == b.stats["best_fitness"]
        assert a.monomial_count <= bf.size and verify_ptf(a.ptf, bf)


def test_ga_fitness_law():
    for bf in random_functions(3, 20, seed=3):
        r = ga_solve(bf, GaConfig(seed=bf.index, generations=20))
        if r.stats["best_fitness"] > 0:
            assert r.stats["best_fitness"] == len(r.eliminated)
            assert r.monomial_count <= bf.size - r.stats["best_fitness"]


def test_ga_config_validation():
    for bad in (dict(population=1), dict(mutation_rate=1.5), dict(crossover_rate=-0.1), dict(seed=-1)):
        with pytest.raises(UsageError):
            GaConfig(**bad)


def test_solve_dispatch(xor):
    assert solve(xor, "brute").monomial_count == 1
    with pytest.raises(UsageError):
        solve(xor, "sa")


# -- invariants --------------------------------------------------------------

ALL = ("brute", "l", "b", "3q", "ga")


def _run_all(bf, oracle=None):
    out = {}
    for alg in ALL:
        if alg == "3q" and bf.n < 2:
            continue
        out[alg] = solve(bf, alg, oracle=oracle, ga=GaConfig(seed=bf.index, generations=30))
    return out


@pytest.mark.parametrize("n", [1, 2, 3])
def test_soundness_dominance_symmetry_exhaustive(n):
    atlas = Atlas(n)
    for bf in all_functions(n):
        res = _run_all(bf, atlas)
        neg = _run_all(-bf, atlas)
        dens = res["brute"].monomial_count
        for alg, r in res.items():
            assert verify_ptf(r.ptf, bf), (alg, bf.f)
            assert witness_ok(bf, r.eliminated.mask, [c for c in r.ptf.certificate])
            assert r.monomial_count == len(r.ptf.terms)
            assert r.monomial_count <= bf.size - len(r.eliminated)
            assert dens <= r.monomial_count
            assert neg[alg].monomial_count == r.monomial_count, alg
        assert res["l"].stats["oracle_calls"] <= bf.size
        assert res["b"].stats["oracle_calls"] <= n + 1
        if n >= 2:
            assert not res["3q"].stats["bound_missed"]
            assert res["3q"].monomial_count <= -(-3 * bf.size // 4)


def test_exact_oracle_and_atlas_give_identical_results():
    atlas = Atlas(4)
    for bf in random_functions(4, 25, seed=9):
        for alg in ("l", "b", "3q"):
            assert solve(bf, alg) == solve(bf, alg, oracle=atlas)


@pytest.mark.slow
def test_soundness_sampled_n4():
    atlas = Atlas(4)
    for bf in random_functions(4, 10_000, seed=2024):
        for alg in ("l", "b", "3q"):
            r = solve(bf, alg, oracle=atlas)
            assert verify_ptf(r.ptf, bf)
        assert l_heuristic(bf, atlas).stats["oracle_calls"] <= 16
        assert b_heuristic(bf, atlas).stats["oracle_calls"] <= 5

"""Eliminability oracle: can a set of monomials be annihilated by a positive vector?

For ``Q = diag(f) D`` a set ``E`` of monomials is eliminable when some ``k``
with every ``k[t] >= 1`` satisfies ``sum_t Q[t][j] k[t] = 0`` for all ``j`` in
``E``.  The polynomial with coefficients ``a = 2**-n D diag(f) k`` then
sign-represents ``f`` and has ``a[j] = 0`` on ``E``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import (BooleanFunction, Ptf, UsageError, common_denominator, evaluate_all, fwht,
                   hadamard_rows)
from .lp import phase_one


class IntegrityError(RuntimeError):
    """A certificate failed its exact check."""


@dataclass(frozen=True)
class EliminationSet:
    n: int
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < 1 << (1 << self.n):
            raise UsageError(f"mask {self.mask:#x} out of range for n={self.n}")

    @classmethod
    def of(cls, n: int, monomials: Iterable[int]) -> "EliminationSet":
        mask = 0
        for j in monomials:
            if not 0 <= j < 1 << n:
                raise UsageError(f"monomial {j} out of range for n={n}")
            mask |= 1 << j
        return cls(n, mask)

    @classmethod
    def full(cls, n: int) -> "EliminationSet":
        return cls(n, (1 << (1 << n)) - 1)

    def members(self) -> list[int]:
        return [j for j in range(1 << self.n) if (self.mask >> j) & 1]

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, j: int) -> bool:
        return bool((self.mask >> j) & 1)


@dataclass(frozen=True)
class Witness:
    k: tuple[Fraction, ...]


def lp_rows(bf: BooleanFunction, mask: int) -> tuple[list[list[int]], list[int]]:
    """Equality system in ``u = k - 1``: rows are eliminated monomials, ``rhs = -Q_E^T 1``."""
    rows, rhs = [], []
    f = bf.f
    for j, h in enumerate(hadamard_rows(bf.n)):
        if (mask >> j) & 1:
            row = [a * b for a, b in zip(f, h)]
            rows.append(row)
            rhs.append(-sum(row))
    return rows, rhs


def witness_ok(bf: BooleanFunction, mask: int, k: Iterable[Fraction]) -> bool:
    k = [Fraction(v) for v in k]
    if len(k) != bf.size or any(v < 1 for v in k):
        return False
    den = common_denominator(k)
    a = fwht([ft * v.numerator * (den // v.denominator) for ft, v in zip(bf.f, k)])
    return all(a[j] == 0 for j in range(bf.size) if (mask >> j) & 1)


def is_eliminable(bf: BooleanFunction, E: EliminationSet) -> Witness | None:
    """Exact decision; the witness is the terminal basic solution of the phase-1 simplex."""
    if E.n != bf.n:
        raise UsageError(f"elimination set has n={E.n}, function has n={bf.n}")
    rows, rhs = lp_rows(bf, E.mask)
    res = phase_one(rows, rhs)
    if not res.feasible:
        return None
    k = tuple(1 + u for u in res.u) if rows else tuple(Fraction(1) for _ in range(bf.size))
    if not witness_ok(bf, E.mask, k):
        raise IntegrityError("simplex returned a witness that fails the orthogonality check")
    return Witness(k)


def eliminable(bf: BooleanFunction, mask: int) -> bool:
    return is_eliminable(bf, EliminationSet(bf.n, mask)) is not None


def ptf_from_witness(bf: BooleanFunction, E: EliminationSet, w: Witness, source: str = "") -> Ptf:
    """Coefficients ``2**-n D diag(f) k`` rescaled to coprime integers; the certificate is scaled alike."""
    if not witness_ok(bf, E.mask, w.k):
        raise IntegrityError("witness does not certify the elimination set")
    den = common_denominator(w.k)
    raw = fwht([ft * v.numerator * (den // v.denominator) for ft, v in zip(bf.f, w.k)])
    # raw = den * 2**n * a; integer rescale only needs the gcd of raw
    g = 0
    for c in raw:
        g = math.gcd(g, c)
    terms = {j: Fraction(c // g) for j, c in enumerate(raw) if c != 0}
    # p(t) = f_t * k_t * den * 2**n / g
    scale = Fraction(den * bf.size, g)
    cert = tuple(v * scale for v in w.k)
    return Ptf(bf.n, terms, certificate=cert, source=source)


def check_certificate(p: Ptf, bf: BooleanFunction) -> None:
    """Raise unless ``p(t) == f[t] * k[t]`` holds exactly at every assignment."""
    if p.certificate is None:
        raise IntegrityError("PTF carries no certificate")
    for t, v in enumerate(evaluate_all(p)):
        if v != bf.f[t] * p.certificate[t]:
            raise IntegrityError(f"certificate identity fails at t={t}")

"""Symmetry-reduced memo for the eliminability oracle (n <= 4).

Eliminability of ``(f, E)`` is invariant under a group acting on functions
and monomials together:

* input translation ``f(t) -> f(t ^ a)``: monomials unchanged;
* character product ``f(t) -> f(t) * (-1)**popcount(t & S)``: ``j -> j ^ S``;
* invertible linear input maps ``f(t) -> f(A t)`` over GF(2): ``j -> A^T j``;
* output negation.

Each function is mapped to its orbit representative together with the
monomial permutation carrying queries there, so the exact LP is solved once
per representative query.  For n = 4 the 65536 functions fall into a handful
of orbits, which turns whole-population sweeps into mostly dictionary hits.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .core import BooleanFunction, UsageError
from .feasibility import eliminable

MAX_ATLAS_VARS = 4


def _generators(n: int) -> list[tuple[str, list[int], list[int], int]]:
    """(kind, input source map, monomial map, character mask) per generator."""
    size = 1 << n
    ident = list(range(size))
    gens = []
    for i in range(n):
        gens.append(("flip", [t ^ (1 << i) for t in range(size)], ident, 0))
    for i in range(n):
        gens.append(("char", ident, [j ^ (1 << i) for j in range(size)], 1 << i))
    for i in range(n):
        for i2 in range(n):
            if i == i2:
                continue
            # x_i <- x_i xor x_i2 on inputs; transpose acts on monomials
            src = [t ^ (((t >> i2) & 1) << i) for t in range(size)]
            mono = [j ^ (((j >> i) & 1) << i2) for j in range(size)]
            gens.append(("lin", src, mono, 0))
    return gens


class Atlas:
    """Boolean eliminability oracle shared across all functions of one arity."""

    def __init__(self, n: int):
        if not 1 <= n <= MAX_ATLAS_VARS:
            raise UsageError(f"atlas supports 1 <= n <= {MAX_ATLAS_VARS}, got {n}")
        self.n = n
        self.size = 1 << n
        self._build()
        self.memo: dict[tuple[int, int], bool] = {}
        self.lp_calls = 0
        self.hits = 0

    def _build(self) -> None:
        n, size = self.n, self.size
        nfun = 1 << size
        bits = ((np.arange(nfun, dtype=np.int64)[:, None] >> np.arange(size)) & 1).astype(np.int64)
        weights = (1 << np.arange(size, dtype=np.int64))
        edges = []
        for kind, src, mono, s in _generators(n):
            img = bits[:, src]
            if kind == "char":
                chi = np.array([bin(t & s).count("1") & 1 for t in range(size)], dtype=np.int64)
                img = img ^ chi  # sign flip of f where the character is -1
            edges.append(((img @ weights).tolist(), mono))
        neg = (nfun - 1) ^ np.arange(nfun, dtype=np.int64)
        edges.append((neg.tolist(), list(range(size))))

        rep = [-1] * nfun
        perm: list[tuple[int, ...] | None] = [None] * nfun
        reps = []
        for start in range(nfun):
            if rep[start] >= 0:
                continue
            reps.append(start)
            rep[start] = start
            perm[start] = tuple(range(size))
            queue = deque([start])
            while queue:
                F = queue.popleft()
                pf = perm[F]
                for image, mono in edges:
                    G = image[F]
                    if rep[G] < 0:
                        rep[G] = start
                        # query mask for G maps to F via mono, then to the representative via pf
                        perm[G] = tuple(pf[mono[j]] for j in range(size))
                        queue.append(G)
        self.rep = rep
        self.perm = perm
        self.representatives = reps

    def canonical(self, bf: BooleanFunction, mask: int) -> tuple[int, int]:
        F = bf.index
        p = self.perm[F]
        out = 0
        j = 0
        while mask:
            if mask & 1:
                out |= 1 << p[j]
            mask >>= 1
            j += 1
        return self.rep[F], out

    def __call__(self, bf: BooleanFunction, mask: int) -> bool:
        if bf.n != self.n:
            raise UsageError(f"atlas built for n={self.n}, got n={bf.n}")
        key = self.canonical(bf, mask)
        v = self.memo.get(key)
        if v is None:
            self.lp_calls += 1
            v = eliminable(BooleanFunction.from_index(self.n, key[0]), key[1])
            self.memo[key] = v
        else:
            self.hits += 1
        return v

"""Recover the variable/assignment convention behind a published truth table.

A convention maps bit ``k`` of the assignment index to variable ``perm[k]``
and picks which bit value means ``+1``.  A published polynomial is checked
by evaluating it directly at every assignment under the convention.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Mapping

from .core import BooleanFunction, Ptf, parse_polynomial


@dataclass(frozen=True)
class Convention:
    perm: tuple[int, ...]  # perm[k] = variable carried by bit k of t
    zero_is_plus: bool  # True: bit value 0 means +1 (the library's own convention)

    @property
    def is_native(self) -> bool:
        return self.zero_is_plus and self.perm == tuple(range(len(self.perm)))

    def describe(self) -> str:
        pol = "bit=0 -> +1" if self.zero_is_plus else "bit=1 -> +1"
        mapping = ", ".join(f"bit{k}->x{v}" for k, v in enumerate(self.perm))
        return f"{mapping}; {pol}"


def _value(terms: Mapping[int, Fraction], xs: list[int]) -> Fraction:
    total = Fraction(0)
    for j, c in terms.items():
        sign = 1
        for k, x in enumerate(xs):
            if (j >> k) & 1:
                sign *= x
        total += c * sign
    return total


def represents(terms: Mapping[int, Fraction], f: list[int], conv: Convention) -> bool:
    n = len(conv.perm)
    for t, ft in enumerate(f):
        xs = [0] * n
        for k in range(n):
            bit = (t >> k) & 1
            xs[conv.perm[k]] = (1 if bit == 0 else -1) if conv.zero_is_plus else (1 if bit else -1)
        v = _value(terms, xs)
        if v == 0 or (v > 0) != (ft > 0):
            return False
    return True


def calibrate(f: list[int], polynomials: Mapping[str, Mapping[int, Fraction]]) -> list[Convention]:
    """Every convention under which all given polynomials sign-represent ``f``."""
    n = (len(f) - 1).bit_length()
    hits = []
    for zero_is_plus in (True, False):
        for perm in itertools.permutations(range(n)):
            conv = Convention(perm, zero_is_plus)
            if all(represents(p, f, conv) for p in polynomials.values()):
                hits.append(conv)
    return hits


def table2() -> tuple[BooleanFunction, dict[str, Ptf]]:
    """The published hard 4-variable example and its four polynomials."""
    raw = json.loads(resources.files("sparseptf.data").joinpath("table2.json").read_text(encoding="utf-8"))
    bf = BooleanFunction.from_values(raw["function"])
    polys = {name: Ptf(raw["n"], parse_polynomial(text, raw["n"]), source=f"table2-{name}")
             for name, text in raw["polynomials"].items()}
    return bf, polys


def calibrate_table2() -> list[Convention]:
    bf, polys = table2()
    return calibrate(list(bf.f), {k: p.terms for k, p in polys.items()})

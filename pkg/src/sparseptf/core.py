"""Boolean functions, monomials, spectra and sparse PTFs over {-1, +1}.

Convention used everywhere: at assignment index ``t`` variable ``x_k`` is +1
when bit ``k`` of ``t`` is 0 and -1 when it is 1.  Monomial ``j`` is the
product of the variables whose bits are set in ``j``, so the value of
monomial ``j`` at assignment ``t`` is ``(-1) ** popcount(t & j)``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

MAX_VARS = 12


class UsageError(ValueError):
    """Malformed input: bad index, bad text form, mismatched sizes."""


def popcount(x: int) -> int:
    return bin(x).count("1")


def hadamard_entry(t: int, j: int, n: int | None = None) -> int:
    """Entry ``D[t][j]`` of the Sylvester Hadamard matrix: monomial j at assignment t."""
    if t < 0 or j < 0:
        raise UsageError(f"negative index (t={t}, j={j})")
    if n is not None and (t >= 1 << n or j >= 1 << n):
        raise UsageError(f"index out of range for n={n} (t={t}, j={j})")
    return -1 if popcount(t & j) & 1 else 1


@lru_cache(maxsize=None)
def hadamard_rows(n: int) -> tuple[tuple[int, ...], ...]:
    size = 1 << n
    return tuple(tuple(hadamard_entry(t, j) for t in range(size)) for j in range(size))


def hadamard_matrix(n: int) -> list[list[int]]:
    return [list(r) for r in hadamard_rows(n)]


def fwht(values: Sequence[int]) -> list[int]:
    """Unnormalised Walsh-Hadamard butterfly; returns ``D @ values`` (integers stay integers)."""
    a = list(values)
    size = len(a)
    if size & (size - 1) or size == 0:
        raise UsageError(f"length {size} is not a power of two")
    h = 1
    while h < size:
        for start in range(0, size, 2 * h):
            for i in range(start, start + h):
                x, y = a[i], a[i + h]
                a[i], a[i + h] = x + y, x - y
        h *= 2
    return a


def _log2_exact(size: int) -> int:
    if size <= 0 or size & (size - 1):
        raise UsageError(f"length {size} is not a power of two")
    return size.bit_length() - 1


@dataclass(frozen=True)
class BooleanFunction:
    """Truth vector ``f`` of 2**n signs, ``f[t]`` being the value at assignment ``t``."""

    n: int
    f: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VARS:
            raise UsageError(f"n={self.n} outside supported range 0..{MAX_VARS}")
        if len(self.f) != 1 << self.n:
            raise UsageError(f"truth vector has length {len(self.f)}, expected {1 << self.n}")
        if any(v not in (-1, 1) for v in self.f):
            raise UsageError("truth vector entries must be exactly -1 or +1")
        object.__setattr__(self, "_index", sum(1 << t for t, v in enumerate(self.f) if v == 1))

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "BooleanFunction":
        vals = tuple(int(v) for v in values)
        return cls(_log2_exact(len(vals)), vals)

    @classmethod
    def from_index(cls, n: int, index: int) -> "BooleanFunction":
        """Function whose value at ``t`` is +1 iff bit ``t`` of ``index`` is set."""
        if not 0 <= index < 1 << (1 << n):
            raise UsageError(f"function index {index} out of range for n={n}")
        return cls(n, tuple(1 if (index >> t) & 1 else -1 for t in range(1 << n)))

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def index(self) -> int:
        return self._index

    def __neg__(self) -> "BooleanFunction":
        return BooleanFunction(self.n, tuple(-v for v in self.f))


@dataclass(frozen=True)
class Spectrum:
    n: int
    coeffs: tuple[Fraction, ...]

    def reconstruct(self) -> list[Fraction]:
        size = 1 << self.n
        return [sum((c * hadamard_entry(t, j) for j, c in enumerate(self.coeffs)), Fraction(0))
                for t in range(size)]

    def support(self) -> list[int]:
        return [j for j, c in enumerate(self.coeffs) if c != 0]


def spectrum(bf: BooleanFunction) -> Spectrum:
    """Exact spectral coefficients ``s = 2**-n D f`` via the butterfly transform."""
    raw = fwht(bf.f)
    return Spectrum(bf.n, tuple(Fraction(v, bf.size) for v in raw))


def degree(j: int) -> int:
    return popcount(j)


def monomial_vars(j: int) -> list[int]:
    return [k for k in range(j.bit_length()) if (j >> k) & 1]


@dataclass(frozen=True)
class Ptf:
    """Sparse polynomial: monomial index -> nonzero exact coefficient.

    ``certificate`` is the positive vector ``k`` (already scaled alongside the
    coefficients) such that the polynomial evaluates to ``f[t] * k[t]``.
    """

    n: int
    terms: Mapping[int, Fraction]
    certificate: tuple[Fraction, ...] | None = None
    source: str = ""

    def __post_init__(self):
        clean = {}
        for j, c in self.terms.items():
            if not 0 <= j < 1 << self.n:
                raise UsageError(f"monomial {j} out of range for n={self.n}")
            c = Fraction(c)
            if c == 0:
                raise UsageError(f"zero coefficient stored for monomial {j}")
            clean[int(j)] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @property
    def monomial_count(self) -> int:
        return len(self.terms)

    def __hash__(self):
        return hash((self.n, tuple(self.terms.items()), self.certificate, self.source))

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"vars": monomial_vars(j), "coeff": _frac_str(c)} for j, c in self.terms.items()],
            "source": self.source,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "Ptf":
        try:
            n = int(obj["n"])
            terms: dict[int, Fraction] = {}
            for term in obj["terms"]:
                j = 0
                for v in term["vars"]:
                    if not 0 <= int(v) < n:
                        raise UsageError(f"variable {v} out of range for n={n}")
                    j |= 1 << int(v)
                terms[j] = terms.get(j, Fraction(0)) + Fraction(str(term["coeff"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, UsageError):
                raise
            raise UsageError(f"malformed PTF JSON: {exc}") from exc
        terms = {j: c for j, c in terms.items() if c != 0}
        return cls(n, terms, source=str(obj.get("source", "")))

    @classmethod
    def from_json(cls, text: str) -> "Ptf":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed PTF JSON: {exc}") from exc
        return cls.from_json_obj(obj)

    def pretty(self) -> str:
        return format_polynomial(self.terms)


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def format_polynomial(terms: Mapping[int, Fraction]) -> str:
    """Human-readable form, e.g. ``-2·x0 +3·x3·x1·x0``; variables listed high to low."""
    if not terms:
        return "0"
    parts = []
    for j, c in sorted(terms.items()):
        names = [f"x{k}" for k in reversed(monomial_vars(j))]
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        if not names:
            body = str(mag)
        elif mag == 1:
            body = "·".join(names)
        else:
            body = "·".join([str(mag)] + names)
        parts.append(f"{sign}{body}")
    out = " ".join(parts)
    return out[1:] if out.startswith("+") else out


_TERM_RE = re.compile(r"([+-]?)\s*([^+-]+)")


def parse_polynomial(text: str, n: int) -> dict[int, Fraction]:
    """Inverse of :func:`format_polynomial`; also accepts ``*`` or ``\\cdot`` and ``x_0`` names."""
    cleaned = text.replace("\\cdot", "·").replace("*", "·").replace("$", "").replace("x_", "x")
    cleaned = cleaned.replace(" ", "")
    terms: dict[int, Fraction] = {}
    if cleaned in ("", "0"):
        return terms
    for sign, body in _TERM_RE.findall(cleaned):
        coeff = Fraction(1)
        j = 0
        for factor in body.split("·"):
            if not factor:
                continue
            if factor.startswith("x"):
                k = int(factor[1:])
                if not 0 <= k < n:
                    raise UsageError(f"variable x{k} out of range for n={n}")
                if (j >> k) & 1:
                    raise UsageError(f"repeated variable x{k} in a monomial")
                j |= 1 << k
            else:
                coeff *= Fraction(factor)
        if sign == "-":
            coeff = -coeff
        terms[j] = terms.get(j, Fraction(0)) + coeff
    return {j: c for j, c in terms.items() if c != 0}


def common_denominator(values: Iterable[Fraction]) -> int:
    den = 1
    for v in values:
        d = v.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    return den


def evaluate_all(p: Ptf) -> list[Fraction]:
    """Values at every assignment at once (one integer butterfly)."""
    size = 1 << p.n
    den = common_denominator(p.terms.values())
    dense = [0] * size
    for j, c in p.terms.items():
        dense[j] = c.numerator * (den // c.denominator)
    return [Fraction(v, den) for v in fwht(dense)]


def evaluate_ptf(p: Ptf, t: int) -> Fraction:
    if not 0 <= t < 1 << p.n:
        raise UsageError(f"assignment {t} out of range for n={p.n}")
    total = Fraction(0)
    for j, c in p.terms.items():
        total += c if hadamard_entry(t, j) > 0 else -c
    return total


@dataclass(frozen=True)
class Violation:
    t: int
    value: Fraction
    kind: str  # "zero" or "wrong-sign"


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(f"t={v.t}: {v.kind} (value {v.value})" for v in self.violations)


def verify_ptf(p: Ptf, bf: BooleanFunction) -> VerificationReport:
    """Check ``sgn(p(t)) == f[t]`` at every assignment; zeros are their own failure kind."""
    if p.n != bf.n:
        raise UsageError(f"PTF has n={p.n} but function has n={bf.n}")
    bad = []
    for t, (ft, v) in enumerate(zip(bf.f, evaluate_all(p))):
        if v == 0:
            bad.append(Violation(t, v, "zero"))
        elif (v > 0) != (ft > 0):
            bad.append(Violation(t, v, "wrong-sign"))
    return VerificationReport(not bad, tuple(bad))


# text forms -----------------------------------------------------------------

def parse_bf(text: str) -> BooleanFunction:
    """Accepts ``"0110"`` (char t, '1' -> +1), a JSON list of +-1, or ``"n:HEX"``."""
    s = text.strip()
    if not s:
        raise UsageError("empty Boolean function text")
    if s.startswith("["):
        try:
            vals = json.loads(s)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad JSON truth vector: {exc}") from exc
        if not isinstance(vals, list) or any(isinstance(v, bool) or v not in (-1, 1) for v in vals):
            raise UsageError("JSON truth vector must contain only -1 and +1")
        return BooleanFunction.from_values(vals)
    if ":" in s:
        head, _, hexpart = s.partition(":")
        try:
            n = int(head)
            index = int(hexpart, 16)
        except ValueError as exc:
            raise UsageError(f"bad hex form {s!r}") from exc
        if not 0 <= n <= MAX_VARS:
            raise UsageError(f"n={n} outside supported range")
        return BooleanFunction.from_index(n, index)
    if set(s) - {"0", "1"}:
        raise UsageError(f"binary form may contain only '0' and '1': {s!r}")
    return BooleanFunction.from_values(1 if ch == "1" else -1 for ch in s)


def format_bf(bf: BooleanFunction, form: str = "binary") -> str:
    if form == "binary":
        return "".join("1" if v == 1 else "0" for v in bf.f)
    if form == "json":
        return json.dumps(list(bf.f), separators=(",", ":"))
    if form == "hex":
        return f"{bf.n}:{bf.index:X}"
    raise UsageError(f"unknown format {form!r}")

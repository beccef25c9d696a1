"""Truncated bivariate series in x and q over the rationals.

Exponents live on an integer grid: the x-exponent is stored doubled
(``charge2``) and the q-exponent quadrupled (``weight4``), so x^(1/2) and
q^(1/4) need no fractional arithmetic.  Every series carries a hard cap on
``weight4``; anything above it is dropped as soon as it is produced.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple


class Bidegree(NamedTuple):
    charge2: int
    weight4: int

    @property
    def charge(self) -> Fraction:
        return Fraction(self.charge2, 2)

    @property
    def weight(self) -> Fraction:
        return Fraction(self.weight4, 4)

    def __str__(self) -> str:
        return f"({self.charge}, {self.weight})"


def _sort_key(bd: tuple[int, int]) -> tuple[int, int]:
    return (bd[1], bd[0])


class BivariateSeries:
    """Immutable sparse map ``(charge2, weight4) -> Fraction`` truncated at ``cap4``."""

    __slots__ = ("_cap4", "_terms")

    def __init__(self, cap4: int, terms: Mapping[tuple[int, int], object] | Iterable = ()):
        self._cap4 = int(cap4)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Bidegree, Fraction] = {}
        for (c2, w4), coeff in items:
            if w4 > self._cap4:
                continue
            key = Bidegree(int(c2), int(w4))
            value = clean.get(key, Fraction(0)) + Fraction(coeff)
            if value:
                clean[key] = value
            else:
                clean.pop(key, None)
        self._terms = {k: clean[k] for k in sorted(clean, key=_sort_key)}

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls, cap4: int) -> "BivariateSeries":
        return cls(cap4)

    @classmethod
    def one(cls, cap4: int) -> "BivariateSeries":
        return cls(cap4, {(0, 0): 1})

    @classmethod
    def monomial(cls, cap4: int, charge2: int, weight4: int, coeff=1) -> "BivariateSeries":
        return cls(cap4, {(charge2, weight4): coeff})

    @classmethod
    def from_q_coefficients(cls, cap4: int, coeffs: Iterable[int]) -> "BivariateSeries":
        """Series in q alone; ``coeffs[e]`` multiplies q^e."""
        return cls(cap4, {(0, 4 * e): c for e, c in enumerate(coeffs) if c})

    # -- accessors -----------------------------------------------------------

    @property
    def cap4(self) -> int:
        return self._cap4

    @property
    def terms(self) -> dict[Bidegree, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Bidegree, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, charge2: int, weight4: int) -> Fraction:
        if weight4 > self._cap4:
            raise ValueError(f"weight4={weight4} lies above the cap {self._cap4}")
        return self._terms.get(Bidegree(charge2, weight4), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self._cap4 == other._cap4 and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._cap4, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"BivariateSeries(cap4={self._cap4}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (c2, w4), coeff in self._terms.items():
            factors = []
            if c2:
                factors.append(_power("x", Fraction(c2, 2)))
            if w4:
                factors.append(_power("q", Fraction(w4, 4)))
            mono = " ".join(factors)
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag} {mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic ----------------------------------------------------------

    def _check_cap(self, other: "BivariateSeries") -> None:
        if self._cap4 != other._cap4:
            raise ValueError(f"mismatched caps: {self._cap4} vs {other._cap4}")

    def __add__(self, other: "BivariateSeries") -> "BivariateSeries":
        self._check_cap(other)
        return BivariateSeries(self._cap4, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "BivariateSeries":
        return BivariateSeries(self._cap4, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "BivariateSeries") -> "BivariateSeries":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BivariateSeries(self._cap4, {k: v * other for k, v in self._terms.items()})
        self._check_cap(other)
        out: dict[tuple[int, int], Fraction] = {}
        cap = self._cap4
        for (c1, w1), a in self._terms.items():
            for (c2, w2), b in other._terms.items():
                w = w1 + w2
                if w > cap:
                    # terms are sorted by weight4
                    break
                key = (c1 + c2, w)
                out[key] = out.get(key, 0) + a * b
        return BivariateSeries(cap, out)

    __rmul__ = __mul__

    def shift(self, dcharge2: int, dweight4: int) -> "BivariateSeries":
        """Multiply by x^(dcharge2/2) q^(dweight4/4)."""
        return BivariateSeries(
            self._cap4, {(c + dcharge2, w + dweight4): v for (c, w), v in self._terms.items()}
        )

    def substitute_x_by_xqk(self, k: int) -> "BivariateSeries":
        """x^r q^s -> x^r q^(s + k r), i.e. weight4 grows by 2 k charge2."""
        return BivariateSeries(
            self._cap4, {(c, w + 2 * k * c): v for (c, w), v in self._terms.items()}
        )

    def at_x_equal_one(self) -> "BivariateSeries":
        """Specialize x = 1, collapsing every charge onto charge2 = 0."""
        return BivariateSeries(self._cap4, [((0, w), v) for (c, w), v in self._terms.items()])

    def with_cap(self, cap4: int) -> "BivariateSeries":
        if cap4 > self._cap4:
            raise ValueError("cannot raise the cap of a truncated series")
        return BivariateSeries(cap4, self._terms)

    def restrict_charge(self, max_charge2: int) -> "BivariateSeries":
        return BivariateSeries(
            self._cap4, {k: v for k, v in self._terms.items() if k.charge2 <= max_charge2}
        )

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "cap4": self._cap4,
            "terms": [[c, w, _frac_str(v)] for (c, w), v in self._terms.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Mapping) -> "BivariateSeries":
        return cls(data["cap4"], [((c, w), Fraction(v)) for c, w, v in data["terms"]])

    @classmethod
    def from_json(cls, text: str) -> "BivariateSeries":
        return cls.from_dict(json.loads(text))


def _frac_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _power(var: str, exp: Fraction) -> str:
    if exp == 1:
        return var
    if exp.denominator == 1:
        return f"{var}^{exp.numerator}"
    return f"{var}^({exp})"


def add(a: BivariateSeries, b: BivariateSeries) -> BivariateSeries:
    return a + b


def mul(a: BivariateSeries, b: BivariateSeries) -> BivariateSeries:
    return a * b


def substitute_x_by_xqk(a: BivariateSeries, k: int) -> BivariateSeries:
    return a.substitute_x_by_xqk(k)


# ---------------------------------------------------------------------------
# q-series with the Rogers-Ramanujan flavour


def _q_partition_counts(parts: Iterable[int], top: int) -> list[int]:
    counts = [0] * (top + 1)
    counts[0] = 1
    for part in parts:
        for e in range(part, top + 1):
            counts[e] += counts[e - part]
    return counts


def euler_factor_inverse(n: int, cap4: int) -> BivariateSeries:
    """Truncated 1/((1-q)(1-q^2)...(1-q^n))."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    top = cap4 // 4
    if top < 0:
        return BivariateSeries.zero(cap4)
    return BivariateSeries.from_q_coefficients(cap4, _q_partition_counts(range(1, n + 1), top))


def rr_sum(a: int, cap4: int, max_charge: int | None = None) -> BivariateSeries:
    """sum_{n>=0} x^n q^(n^2 + a n) / (q)_n, truncated in weight and charge.

    The x^(1/2) q^(1/4) prefactor of the charged character is not included.
    """
    if a not in (0, 1):
        raise ValueError("a must be 0 or 1")
    top = cap4 // 4
    terms: dict[tuple[int, int], int] = {}
    n = 0
    while n * n + a * n <= top and (max_charge is None or n <= max_charge):
        lead = n * n + a * n
        counts = _q_partition_counts(range(1, n + 1), top - lead)
        for e, c in enumerate(counts):
            if c:
                terms[(2 * n, 4 * (lead + e))] = c
        n += 1
    return BivariateSeries(cap4, terms)


_RR_RESIDUES = (frozenset({1, 4}), frozenset({2, 3}))


def rr_product(residues: Iterable[int], cap4: int) -> BivariateSeries:
    """prod over parts p = r (mod 5), r in ``residues``, of 1/(1 - q^p)."""
    res = frozenset(int(r) % 5 for r in residues)
    if res not in _RR_RESIDUES:
        raise ValueError(f"residue set must be {{1,4}} or {{2,3}}, got {sorted(res)}")
    top = cap4 // 4
    parts = [p for p in range(1, top + 1) if p % 5 in res]
    return BivariateSeries.from_q_coefficients(cap4, _q_partition_counts(parts, max(top, 0)))


def recursion_residual(F: BivariateSeries) -> BivariateSeries:
    """F(x,q) - F(xq,q) - x q F(xq^2,q)."""
    return F - F.substitute_x_by_xqk(1) - F.substitute_x_by_xqk(2).shift(2, 4)


# ---------------------------------------------------------------------------
# brute-force partition oracles


def partitions(total: int, parts: int, min_part: int = 1) -> Iterator[tuple[int, ...]]:
    """All partitions of ``total`` into exactly ``parts`` parts >= ``min_part``.

    Parts are listed in weakly decreasing order; the output order is
    lexicographically decreasing.
    """

    def gen(remaining: int, count: int, cap: int) -> Iterator[tuple[int, ...]]:
        if count == 0:
            if remaining == 0:
                yield ()
            return
        lo = max(min_part, -(-remaining // count))
        for first in range(min(cap, remaining - min_part * (count - 1)), lo - 1, -1):
            for rest in gen(remaining - first, count - 1, first):
                yield (first,) + rest

    if total < 0 or parts < 0:
        return iter(())
    return gen(total, parts, total)


def diff2_count(weight: int, parts: int, min_part: int = 1) -> int:
    """Count partitions with consecutive parts differing by at least 2.

    Enumerates every partition of ``weight`` into ``parts`` parts of size at
    least ``min_part`` and filters by the gap condition.
    """
    if min_part not in (1, 2):
        raise ValueError("min_part must be 1 or 2")
    return sum(
        1
        for p in partitions(weight, parts, min_part)
        if all(p[i] - p[i + 1] >= 2 for i in range(len(p) - 1))
    )

"""The polynomial model C[y_-1, y_-2, ...] and the quadratic relations r_n.

A monomial y_{-j_1}...y_{-j_k} is stored as the tuple of its indices in
decreasing order.  The ideal generated by the r_n is bigraded, so each
(charge, weight) piece is handled by exact linear algebra on its own; no
Groebner machinery is needed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from prinspace.checks import Check, first_failure
from prinspace.linalg import EchelonBasis
from prinspace.principal import LAMBDA0, character
from prinspace.series import BivariateSeries, partitions

YMonomial = tuple[int, ...]


def _canon(mono: Iterable[int]) -> YMonomial:
    return tuple(sorted(mono, reverse=True))


class YPolynomial:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[YMonomial, Fraction] = {}
        for mono, coeff in items:
            key = _canon(mono)
            acc[key] = acc.get(key, 0) + Fraction(coeff)
        self._terms = {m: acc[m] for m in sorted(acc, key=lambda m: (len(m), sum(m), m)) if acc[m]}

    @classmethod
    def monomial(cls, mono: Iterable[int], coeff=1) -> "YPolynomial":
        return cls({tuple(mono): coeff})

    @property
    def terms(self) -> dict[YMonomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, YPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "YPolynomial") -> "YPolynomial":
        return YPolynomial(list(self._terms.items()) + list(other._terms.items()))

    def __sub__(self, other: "YPolynomial") -> "YPolynomial":
        return self + other * -1

    def __mul__(self, other) -> "YPolynomial":
        if isinstance(other, (int, Fraction)):
            return YPolynomial({m: c * other for m, c in self._terms.items()})
        out = []
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                out.append((m1 + m2, c1 * c2))
        return YPolynomial(out)

    __rmul__ = __mul__

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(len(m), sum(m)) for m in self._terms}

    def __repr__(self) -> str:
        return f"YPolynomial({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mono, coeff in self._terms.items():
            body = "*".join(_factor_str(j, e) for j, e in _powers(mono)) or "1"
            if coeff == 1 and mono:
                pieces.append(body)
            elif coeff == -1 and mono:
                pieces.append("-" + body)
            else:
                pieces.append(f"{coeff}*{body}" if mono else str(coeff))
        return " + ".join(pieces).replace("+ -", "- ")


def _powers(mono: YMonomial) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for j in mono:
        if out and out[-1][0] == j:
            out[-1] = (j, out[-1][1] + 1)
        else:
            out.append((j, 1))
    return out


def _factor_str(j: int, e: int) -> str:
    return f"y_{-j}" if e == 1 else f"y_{-j}^{e}"


def relation(n: int) -> YPolynomial:
    """r_n = sum over ordered pairs i, j < 0 with i + j = n of y_i y_j."""
    if n > -2:
        raise ValueError(f"r_n is defined for n <= -2, got {n}")
    return YPolynomial(((-i, -(n - i)), 1) for i in range(n + 1, 0))


def monomials(r: int, s: int) -> list[YMonomial]:
    """Monomials of charge r (factor count) and weight s (index sum)."""
    return list(partitions(s, r, 1))


def ideal_component_span(r: int, s: int) -> list[YPolynomial]:
    """Products m * r_n landing at charge r and weight s."""
    if r < 2:
        return []
    out = []
    for n in range(-2, -s - 1, -1):
        for m in monomials(r - 2, s + n):
            out.append(YPolynomial.monomial(m) * relation(n))
    return out


def _echelon(polys: Iterable[YPolynomial]) -> EchelonBasis:
    return EchelonBasis(p.terms for p in polys)


def quotient_dim(r: int, s: int) -> int:
    return len(monomials(r, s)) - _echelon(ideal_component_span(r, s)).rank


def hilbert_series(max_charge: int, cap4: int) -> BivariateSeries:
    """Bigraded dimensions of A / sum_n A r_n."""
    terms = {}
    for r in range(max_charge + 1):
        for s in range(cap4 // 4 + 1):
            d = quotient_dim(r, s)
            if d:
                terms[(2 * r, 4 * s)] = d
    return BivariateSeries(cap4, terms)


def shift_S(p: YPolynomial) -> YPolynomial:
    """y_{-1} -> 0 and y_{-j} -> y_{-j+1} for j >= 2, extended multiplicatively."""
    return YPolynomial(
        (tuple(j - 1 for j in m), c) for m, c in p.terms.items() if 1 not in m
    )


def raise_indices(mono: Iterable[int]) -> YMonomial:
    """The lifting y_{-j} -> y_{-j-1}; S undoes it."""
    return tuple(j + 1 for j in mono)


def verify_S_stability(max_charge: int, cap4: int) -> Check:
    """S maps the ideal into itself, and every generator m r_n has an explicit S-preimage."""
    rows = []
    spans: dict[tuple[int, int], EchelonBasis] = {}

    def span_at(r: int, s: int) -> EchelonBasis:
        if (r, s) not in spans:
            spans[(r, s)] = _echelon(ideal_component_span(r, s))
        return spans[(r, s)]

    for r in range(2, max_charge + 1):
        for s in range(cap4 // 4 + 1):
            image_ok = True
            preimage_ok = True
            for n in range(-2, -s - 1, -1):
                for m in monomials(r - 2, s + n):
                    gen = YPolynomial.monomial(m) * relation(n)
                    if not span_at(r, s - r).contains(shift_S(gen).terms):
                        image_ok = False
                    lifted = YPolynomial.monomial(raise_indices(m)) * relation(n - 2)
                    if shift_S(lifted) != gen:
                        preimage_ok = False
            rows.append(
                {
                    "charge2": 2 * r,
                    "weight4": 4 * s,
                    "image_in_ideal": image_ok,
                    "preimage": preimage_ok,
                    "ok": image_ok and preimage_ok,
                }
            )
    rows.sort(key=lambda row: (row["weight4"], row["charge2"]))
    return first_failure("S_stability", rows)


def cross_check_hilbert(max_charge: int, cap4: int, chi0: BivariateSeries | None = None, **kw) -> Check:
    """Quotient by the r_n against the Fock-space character of W(Lambda_0)."""
    hs = hilbert_series(max_charge, cap4)
    if chi0 is None:
        chi0 = character(LAMBDA0, max_charge, cap4, **kw)
    rows = []
    for r in range(max_charge + 1):
        for s in range(cap4 // 4 + 1):
            a = hs.coefficient(2 * r, 4 * s)
            b = chi0.coefficient(2 * r, 4 * s)
            rows.append({"charge2": 2 * r, "weight4": 4 * s, "hilbert": int(a), "character": int(b), "ok": a == b})
    rows.sort(key=lambda row: (row["weight4"], row["charge2"]))
    return first_failure("hilbert_cross_check", rows)

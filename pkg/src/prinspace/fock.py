"""The lattice Fock space V_P = M(1) (x) C[P] for P = (1/2) Z alpha.

A basis state is a Heisenberg monomial h(-n_1)...h(-n_j) (a partition,
stored with parts in decreasing order) paired with a lattice point
e^{k alpha/2}.  Vectors are finite rational combinations of basis states.

Conventions: <alpha, alpha> = 2, the Heisenberg generators satisfy
[h(m), h(n)] = 2 m delta_{m+n,0}, and h(n) for n > 0 acts on M(1) as the
derivation 2n d/dh(-n).  Vertex operators for lattice vectors are

    Y(e^lam, x) = E^-(-lam, x) E^+(-lam, x) e^lam x^lam,

with x^lam e^mu = x^<lam, mu> e^mu.  All coefficients are exact.
"""

from __future__ import annotations

import json
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Iterable, Iterator, Mapping, NamedTuple

from prinspace.series import Bidegree, partitions

Parts = tuple[int, ...]


class LatticePoint(NamedTuple):
    """lambda = (k/2) alpha."""

    k: int

    def pairing(self, other: "LatticePoint") -> Fraction:
        return Fraction(self.k * other.k, 2)

    @property
    def charge2(self) -> int:
        return self.k

    @property
    def weight4(self) -> int:
        return self.k * self.k


ALPHA = LatticePoint(2)
HALF_ALPHA = LatticePoint(1)


class BasisState(NamedTuple):
    parts: Parts
    k: int

    @property
    def bidegree(self) -> Bidegree:
        return Bidegree(self.k, 4 * sum(self.parts) + self.k * self.k)

    def __str__(self) -> str:
        mono = "".join(f"h(-{p})" for p in self.parts) or "1"
        return f"{mono}⊗e^({Fraction(self.k, 2)}α)"


def _merge(a: Parts, b: Parts) -> Parts:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


class FockVector:
    """Immutable finite combination ``BasisState -> Fraction``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[BasisState, Fraction] = {}
        for state, coeff in items:
            state = BasisState(tuple(sorted(state[0], reverse=True)), int(state[1]))
            acc[state] = acc.get(state, 0) + Fraction(coeff)
        self._terms = {s: c for s, c in acc.items() if c}

    @classmethod
    def _raw(cls, terms: dict[BasisState, Fraction]) -> "FockVector":
        # trusted path: keys canonical, caller drops zeros
        v = object.__new__(cls)
        v._terms = {s: c for s, c in terms.items() if c}
        return v

    @classmethod
    def basis(cls, parts: Iterable[int] = (), k: int = 0) -> "FockVector":
        return cls({(tuple(parts), k): 1})

    @property
    def terms(self) -> dict[BasisState, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[BasisState, Fraction]]:
        return sorted(self._terms.items())

    def coefficient(self, state: BasisState) -> Fraction:
        return self._terms.get(state, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self._terms)
        for s, c in other._terms.items():
            out[s] = out.get(s, 0) + c
        return FockVector._raw(out)

    def __neg__(self) -> "FockVector":
        return FockVector._raw({s: -c for s, c in self._terms.items()})

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def __mul__(self, scalar) -> "FockVector":
        scalar = Fraction(scalar)
        return FockVector._raw({s: c * scalar for s, c in self._terms.items()})

    __rmul__ = __mul__

    def bidegrees(self) -> set[Bidegree]:
        return {s.bidegree for s in self._terms}

    def bidegree(self) -> Bidegree:
        """The common bidegree of a nonzero homogeneous vector."""
        degs = self.bidegrees()
        if len(degs) != 1:
            raise ValueError(f"vector is not homogeneous: {sorted(degs)}")
        return next(iter(degs))

    def in_VQ(self) -> bool:
        return all(s.k % 2 == 0 for s in self._terms)

    def __repr__(self) -> str:
        return f"FockVector({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({c})·{s}" for s, c in self.items())

    def to_dict(self) -> dict:
        return {
            "terms": [
                {"parts": list(s.parts), "k": s.k, "coeff": f"{c.numerator}/{c.denominator}"}
                for s, c in self.items()
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Mapping) -> "FockVector":
        return cls(((tuple(t["parts"]), t["k"]), Fraction(t["coeff"])) for t in data["terms"])

    @classmethod
    def from_json(cls, text: str) -> "FockVector":
        return cls.from_dict(json.loads(text))


VACUUM = FockVector.basis((), 0)  # v_{Lambda_0}
CHARGED_VACUUM = FockVector.basis((), 1)  # v_{Lambda_1} = e^{alpha/2}


# ---------------------------------------------------------------------------
# Heisenberg and lattice operators


def heis_act(n: int, v: FockVector) -> FockVector:
    """Action of alpha(n) = h(n) at level 1."""
    out: dict[BasisState, Fraction] = {}
    for s, c in v._terms.items():
        if n < 0:
            key = BasisState(_merge(s.parts, (-n,)), s.k)
            out[key] = out.get(key, 0) + c
        elif n == 0:
            out[s] = out.get(s, 0) + c * s.k
        else:
            mult = s.parts.count(n)
            if not mult:
                continue
            parts = list(s.parts)
            parts.remove(n)
            key = BasisState(tuple(parts), s.k)
            out[key] = out.get(key, 0) + c * 2 * n * mult
    return FockVector._raw(out)


def lattice_shift(mu: LatticePoint | int, v: FockVector) -> FockVector:
    """The operator e^mu: relabel e^lambda -> e^(lambda + mu)."""
    dk = mu.k if isinstance(mu, LatticePoint) else int(mu)
    return FockVector._raw({BasisState(s.parts, s.k + dk): c for s, c in v._terms.items()})


@lru_cache(maxsize=None)
def _creation_component(l: int, degree: int) -> tuple[tuple[Parts, Fraction], ...]:
    """x^degree coefficient of E^-(-lam, x) = exp(sum_n (l/2) h(-n) x^n / n)."""
    half = Fraction(l, 2)
    out = []
    for size in range(degree + 1):
        for p in partitions(degree, size):
            coeff = Fraction(1)
            for i, m in Counter(p).items():
                coeff *= (half / i) ** m / factorial(m)
            if coeff:
                out.append((p, coeff))
    return tuple(out)


@lru_cache(maxsize=None)
def _annihilation_expansion(l: int, parts: Parts) -> tuple[tuple[int, Parts, Fraction], ...]:
    """E^+(-lam, x) on a monomial, as (x-degree b, monomial, coeff) for x^{-b}.

    E^+(-lam, x) acts as the translation h(-i) -> h(-i) - l x^{-i}.
    """
    mult = sorted(Counter(parts).items(), reverse=True)
    out = []
    for removed in product(*(range(m + 1) for _, m in mult)):
        coeff = Fraction(1)
        b = 0
        kept: list[int] = []
        for (i, m), j in zip(mult, removed):
            coeff *= comb(m, j) * (-l) ** j
            b += i * j
            kept.extend([i] * (m - j))
        if coeff:
            out.append((b, tuple(kept), coeff))
    return tuple(out)


def vertex_component(lam: LatticePoint | int, t2: int, v: FockVector) -> FockVector:
    """Coefficient of x^(t2/2) in Y(1 (x) e^lam, x) v."""
    l = lam.k if isinstance(lam, LatticePoint) else int(lam)
    out: dict[BasisState, Fraction] = {}
    for s, c in v._terms.items():
        # x^lam contributes x^(l k / 2), i.e. l*k in half-units
        base2 = l * s.k
        new_k = s.k + l
        for b, kept, ca in _annihilation_expansion(l, s.parts):
            twice_a = t2 - base2 + 2 * b
            if twice_a < 0 or twice_a % 2:
                continue
            for created, cc in _creation_component(l, twice_a // 2):
                key = BasisState(_merge(kept, created), new_k)
                out[key] = out.get(key, 0) + c * ca * cc
    return FockVector._raw(out)


def x_alpha(m: int, v: FockVector) -> FockVector:
    """x_alpha(m): the coefficient of x^(-m-1) in Y(e^alpha, x)."""
    return vertex_component(ALPHA, 2 * (-m - 1), v)


def square_bound(v: FockVector) -> int:
    """J such that only j in [n - J, J] contribute to sum_{i+j=n} x(i) x(j) v."""
    c2, w4 = v.bidegree()
    return (w4 - (c2 + 2) ** 2) // 4 + 1


def square_window(v: FockVector, depth: int = 12) -> range:
    """The top ``depth + 1`` values of n at which sum_{i+j=n} x(i) x(j) v can be nonzero.

    Above 2J - 4 every product x(i) x(j) v vanishes; below, the window is cut
    off by choice since the sum has infinitely many candidate n.
    """
    top = 2 * square_bound(v) - 4
    return range(top - depth, top + 1)


def square_sum(n: int, v: FockVector) -> FockVector:
    """sum_{i+j=n} x_alpha(i) x_alpha(j) v over the finite effective range."""
    if v.is_zero():
        return v
    J = square_bound(v)
    total = FockVector()
    for j in range(n - J, J + 1):
        total = total + x_alpha(n - j, x_alpha(j, v))
    return total


# ---------------------------------------------------------------------------
# the intertwining operator on V_Q


def phase_on_VQ(v: FockVector) -> FockVector:
    """e^{i pi alpha/2} on V_Q: e^{m alpha} picks up (-1)^m."""
    out = {}
    for s, c in v._terms.items():
        if s.k % 2:
            raise ValueError(f"phase_on_VQ needs a vector of V_Q, found lattice label {s.k}/2")
        out[s] = -c if (s.k // 2) % 2 else c
    return FockVector._raw(out)


def o_operator(v: FockVector) -> FockVector:
    """o(e^{alpha/2}): constant term of Y(e^{alpha/2}, x) e^{i pi alpha/2} on V_Q."""
    return vertex_component(HALF_ALPHA, 0, phase_on_VQ(v))


def e_half(v: FockVector) -> FockVector:
    return lattice_shift(HALF_ALPHA, v)


def basis_states(max_weight4: int, lattice: Iterable[int]) -> Iterator[BasisState]:
    """Every basis state with the given lattice labels and weight4 <= max_weight4."""
    for k in lattice:
        room = max_weight4 - k * k
        if room < 0:
            continue
        for total in range(room // 4 + 1):
            for size in range(total + 1):
                for p in partitions(total, size):
                    yield BasisState(p, k)

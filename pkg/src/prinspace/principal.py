"""Principal subspaces W(Lambda_0), W(Lambda_1) realized in the Fock space.

A component is indexed by the number ``r`` of x_alpha(-j) factors and their
total index ``s`` (the weight above the highest weight vector).  Its true
bidegree is (r, s) for Lambda_0 and (r + 1/2, s + 1/4) for Lambda_1.  Every
monomial of the right shape is realized and the span is row-reduced, so the
relations among monomials come out of the rank computation rather than being
assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from prinspace.cache import ComponentCache
from prinspace.checks import Check, first_failure
from prinspace.fock import CHARGED_VACUUM, VACUUM, FockVector, e_half, o_operator, x_alpha
from prinspace.linalg import EchelonBasis, Matrix
from prinspace.series import Bidegree, BivariateSeries, partitions, recursion_residual

YMonomial = tuple[int, ...]  # indices j of y_{-j}, decreasing

LAMBDA0 = 0
LAMBDA1 = 1
LABEL_NAMES = {LAMBDA0: "vacuum", LAMBDA1: "charged"}


class StructuralError(RuntimeError):
    """An operator image escaped the component it must land in."""


def highest_weight_vector(label: int) -> FockVector:
    return VACUUM if label == LAMBDA0 else CHARGED_VACUUM


def bidegree_of(label: int, r: int, s: int) -> Bidegree:
    return Bidegree(2 * r + label, 4 * s + label)


def enumerate_monomials(label: int, r: int, s: int, model: str = "reduced") -> list[YMonomial]:
    """Spanning monomials of W(Lambda_label) with r factors and index sum s.

    For Lambda_1 the default draws from C[y_-2, y_-3, ...]; ``model="full"``
    uses every index (y_-1 kills v_{Lambda_1}, so the span is the same).
    """
    if r < 0 or s < 0:
        return []
    min_part = 2 if (label == LAMBDA1 and model == "reduced") else 1
    return list(partitions(s, r, min_part))


@lru_cache(maxsize=None)
def _realize_cached(label: int, mono: YMonomial) -> FockVector:
    if not mono:
        return highest_weight_vector(label)
    # largest index last keeps the intermediate vectors at low weight
    return x_alpha(-mono[0], _realize_cached(label, mono[1:]))


def realize(label: int, mono: Iterable[int], order: Iterable[int] | None = None) -> FockVector:
    """p(x_alpha(-1), x_alpha(-2), ...) v_{Lambda_label} for a monomial p.

    ``order`` applies the factors in that explicit sequence (rightmost
    first) instead of the memoized canonical order.
    """
    if order is None:
        return _realize_cached(label, tuple(sorted(mono, reverse=True)))
    v = highest_weight_vector(label)
    for j in reversed(list(order)):
        v = x_alpha(-j, v)
    return v


@dataclass
class GradedComponentBasis:
    label: int
    r: int
    s: int
    spanning: list[tuple[YMonomial, FockVector]]
    reduced: list[FockVector]
    dim: int = field(init=False)

    def __post_init__(self):
        self.dim = len(self.reduced)

    @property
    def bidegree(self) -> Bidegree:
        return bidegree_of(self.label, self.r, self.s)

    def echelon(self) -> EchelonBasis:
        return EchelonBasis(v.terms for v in self.reduced)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "r": self.r,
            "s": self.s,
            "charge2": self.bidegree.charge2,
            "weight4": self.bidegree.weight4,
            "spanning": [{"monomial": list(m), "vector": v.to_dict()} for m, v in self.spanning],
            "reduced": [v.to_dict() for v in self.reduced],
            "dim": self.dim,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GradedComponentBasis":
        return cls(
            data["label"],
            data["r"],
            data["s"],
            [(tuple(e["monomial"]), FockVector.from_dict(e["vector"])) for e in data["spanning"]],
            [FockVector.from_dict(v) for v in data["reduced"]],
        )


def _compute_component(label: int, r: int, s: int, model: str) -> GradedComponentBasis:
    spanning = [(m, realize(label, m)) for m in enumerate_monomials(label, r, s, model)]
    target = bidegree_of(label, r, s)
    ech = EchelonBasis()
    for m, v in spanning:
        if v and v.bidegree() != target:
            raise StructuralError(f"monomial {m} realized outside bidegree {target}")
        ech.add(v.terms)
    reduced = [FockVector(row) for row in ech.rows()]
    return GradedComponentBasis(label, r, s, spanning, reduced)


def component_basis(
    label: int, r: int, s: int, cache: ComponentCache | None = None, model: str = "reduced"
) -> GradedComponentBasis:
    if cache is None or model != "reduced":
        return _compute_component(label, r, s, model)
    bd = bidegree_of(label, r, s)
    key = (label, bd.charge2, bd.weight4)
    hit = cache.load(key)
    if hit is not None:
        try:
            return GradedComponentBasis.from_dict(hit)
        except (KeyError, TypeError, ValueError):
            pass
    comp = _compute_component(label, r, s, model)
    cache.store(key, comp.to_dict())
    return comp


def component_dim(label: int, r: int, s: int, cache: ComponentCache | None = None) -> int:
    if r < 0 or s < 0:
        return 0
    return component_basis(label, r, s, cache).dim


def _cells(label: int, max_charge: int, cap4: int) -> list[tuple[int, int]]:
    top = (cap4 - label) // 4
    return [(r, s) for r in range(max_charge + 1) for s in range(top + 1)]


def dimension_table(
    label: int, max_charge: int, cap4: int, cache: ComponentCache | None = None, mapper=map
) -> list[tuple[int, int, int, int]]:
    """Rows (label, charge2, weight4, dim) in canonical (weight4, charge2) order.

    ``mapper`` lets callers fan the cells out (e.g. ``executor.map``).
    """
    cells = _cells(label, max_charge, cap4)
    dims = list(mapper(_dim_job, [(label, r, s, cache) for r, s in cells]))
    rows = [(label, *bidegree_of(label, r, s), d) for (r, s), d in zip(cells, dims)]
    return sorted(rows, key=lambda row: (row[2], row[1]))


def _dim_job(args) -> int:
    label, r, s, cache = args
    return component_dim(label, r, s, cache)


def character(
    label: int, max_charge: int, cap4: int, cache: ComponentCache | None = None, mapper=map
) -> BivariateSeries:
    """sum dim W(Lambda)_{r,s} x^r q^s over charges <= max_charge and weight4 <= cap4."""
    table = dimension_table(label, max_charge, cap4, cache, mapper)
    return BivariateSeries(cap4, {(c2, w4): d for _, c2, w4, d in table if d})


# ---------------------------------------------------------------------------
# verifiers


def verify_shift_relation(max_charge: int, cap4: int, cache: ComponentCache | None = None) -> Check:
    """dim W(L0)_{r,s} == dim W(L1)_{r+1/2, r+s+1/4} for every W(L0) cell in range."""
    rows = []
    for r, s in _cells(LAMBDA0, max_charge, cap4):
        d0 = component_dim(LAMBDA0, r, s, cache)
        d1 = component_dim(LAMBDA1, r, r + s, cache)
        src, dst = bidegree_of(LAMBDA0, r, s), bidegree_of(LAMBDA1, r, r + s)
        rows.append(
            {
                "charge2": src.charge2,
                "weight4": src.weight4,
                "image_charge2": dst.charge2,
                "image_weight4": dst.weight4,
                "dim_source": d0,
                "dim_image": d1,
                "ok": d0 == d1,
            }
        )
    rows.sort(key=lambda row: (row["weight4"], row["charge2"]))
    return first_failure("shift_relation", rows)


def _image_matrix(op, source: GradedComponentBasis, target: GradedComponentBasis) -> Matrix:
    ech = target.echelon()
    columns = []
    for v in source.reduced:
        image = op(v)
        coords = ech.coordinates(image.terms)
        if coords is None:
            raise StructuralError(
                f"image of a basis vector of W(L{source.label})_{source.bidegree} "
                f"is not in W(L{target.label})_{target.bidegree}"
            )
        columns.append(coords)
    return Matrix.from_columns(target.dim, columns)


def _empty(label: int, r: int, s: int) -> GradedComponentBasis:
    return GradedComponentBasis(label, r, s, [], [])


def map_matrices(r: int, s: int, cache: ComponentCache | None = None) -> tuple[Matrix, Matrix]:
    """Matrices of the two maps through W(L0) at cell (r, s).

    M_e: W(L1)_{r-1/2, s-r+1/4} -> W(L0)_{r,s} via e^{alpha/2}, and
    M_o: W(L0)_{r,s} -> W(L1)_{r+1/2, s+1/4} via o(e^{alpha/2}).
    Columns hold the image coordinates in the target's reduced basis.
    """
    middle = component_basis(LAMBDA0, r, s, cache)
    if r >= 1 and s - r >= 0:
        left = component_basis(LAMBDA1, r - 1, s - r, cache)
    else:
        left = _empty(LAMBDA1, max(r - 1, 0), max(s - r, 0))
    right = component_basis(LAMBDA1, r, s, cache)
    return _image_matrix(e_half, left, middle), _image_matrix(o_operator, middle, right)


def exactness_cell(r: int, s: int, cache: ComponentCache | None = None) -> dict:
    m_e, m_o = map_matrices(r, s, cache)
    dim_src, dim_mid = m_e.ncols, m_e.nrows
    dim_tgt = m_o.nrows
    rank_e, rank_o = m_e.rank(), m_o.rank()
    composite_zero = (m_o @ m_e).is_zero()
    kernel_o = dim_mid - rank_o
    bd = bidegree_of(LAMBDA0, r, s)
    row = {
        "charge2": bd.charge2,
        "weight4": bd.weight4,
        "dim_source": dim_src,
        "dim_middle": dim_mid,
        "dim_target": dim_tgt,
        "rank_e": rank_e,
        "rank_o": rank_o,
        "composite_zero": composite_zero,
        "injective": rank_e == dim_src,
        "surjective": rank_o == dim_tgt,
        "exact_middle": kernel_o == rank_e,
        "euler": dim_mid == dim_src + dim_tgt,
    }
    row["ok"] = all(row[k] for k in ("composite_zero", "injective", "surjective", "exact_middle", "euler"))
    return row


def _exactness_job(args) -> dict:
    r, s, cache = args
    return exactness_cell(r, s, cache)


def verify_exactness(
    cap4: int, max_charge: int | None = None, cache: ComponentCache | None = None, mapper=map
) -> Check:
    """Exactness of 0 -> W(L1) -> W(L0) -> W(L1) -> 0 at every W(L0) cell with weight4 <= cap4."""
    top = cap4 // 4
    cells = [
        (r, s)
        for s in range(top + 1)
        for r in range(s + 1 if max_charge is None else min(s, max_charge) + 1)
        if r > 0 or s == 0
    ]
    rows = list(mapper(_exactness_job, [(r, s, cache) for r, s in cells]))
    rows.sort(key=lambda row: (row["weight4"], row["charge2"]))
    return first_failure("exactness", rows)


def euler_sides(
    max_charge: int, cap4: int, cache: ComponentCache | None = None, mapper=map
) -> tuple[BivariateSeries, BivariateSeries, BivariateSeries]:
    """(chi_0, chi_1 up to cap4 + 1, right side of the Euler relation), all at cap4."""
    chi0 = character(LAMBDA0, max_charge, cap4, cache, mapper)
    chi1_wide = character(LAMBDA1, max_charge, cap4 + 1, cache, mapper)
    # x^{-1/2} q^{-1/4} chi_1(x,q) + x^{1/2} q^{1/4} chi_1(xq,q)
    rhs = chi1_wide.shift(-1, -1) + chi1_wide.substitute_x_by_xqk(1).shift(1, 1)
    rhs = rhs.with_cap(cap4).restrict_charge(2 * max_charge)
    return chi0, chi1_wide, rhs


def verify_euler(
    max_charge: int, cap4: int, cache: ComponentCache | None = None, mapper=map
) -> list[Check]:
    chi0, chi1_wide, rhs = euler_sides(max_charge, cap4, cache, mapper)
    checks = [series_check("euler_characteristic", chi0, rhs)]

    chi1 = chi1_wide.with_cap(cap4)
    shifted = chi0.substitute_x_by_xqk(1).shift(1, 1).restrict_charge(2 * max_charge + 1)
    checks.append(series_check("charged_shift_series", chi1, shifted))

    residual = recursion_residual(chi0).restrict_charge(2 * max_charge)
    checks.append(series_check("character_recursion", residual, BivariateSeries.zero(cap4)))
    return checks


def series_check(name: str, lhs: BivariateSeries, rhs: BivariateSeries) -> Check:
    keys = sorted(set(lhs.terms) | set(rhs.terms), key=lambda bd: (bd.weight4, bd.charge2))
    rows = []
    for bd in keys:
        a, b = lhs.coefficient(*bd), rhs.coefficient(*bd)
        rows.append({"charge2": bd.charge2, "weight4": bd.weight4, "lhs": str(a), "rhs": str(b), "ok": a == b})
    return first_failure(name, rows)

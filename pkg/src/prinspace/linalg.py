"""Exact sparse row reduction over the rationals.

Vectors are dicts ``column -> Fraction`` with columns drawn from any totally
ordered key set.  The pivot of a row is its smallest column, which makes the
reduced basis independent of insertion order once it is fully reduced.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence


class EchelonBasis:
    """Incrementally maintained reduced row echelon basis of a span."""

    def __init__(self, vectors: Iterable[Mapping] = ()):
        self._rows: dict[Hashable, dict] = {}  # pivot -> row with row[pivot] == 1
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list:
        return sorted(self._rows)

    def rows(self) -> list[dict]:
        """Reduced rows ordered by pivot."""
        return [dict(sorted(self._rows[p].items())) for p in self.pivots]

    def reduce(self, vector: Mapping) -> dict:
        """Residual of ``vector`` modulo the span."""
        v = {c: Fraction(x) for c, x in vector.items() if x}
        for p in [c for c in v if c in self._rows]:
            coeff = v.get(p)
            if not coeff:
                continue
            for c, x in self._rows[p].items():
                nv = v.get(c, 0) - coeff * x
                if nv:
                    v[c] = nv
                else:
                    v.pop(c, None)
        return v

    def add(self, vector: Mapping) -> bool:
        """Insert ``vector``; return True if it enlarged the span."""
        v = self.reduce(vector)
        if not v:
            return False
        pivot = min(v)
        inv = 1 / v[pivot]
        v = {c: x * inv for c, x in v.items()}
        for row in self._rows.values():
            coeff = row.get(pivot)
            if coeff:
                for c, x in v.items():
                    nx = row.get(c, 0) - coeff * x
                    if nx:
                        row[c] = nx
                    else:
                        del row[c]
        self._rows[pivot] = v
        return True

    def contains(self, vector: Mapping) -> bool:
        return not self.reduce(vector)

    def coordinates(self, vector: Mapping) -> list[Fraction] | None:
        """Coefficients on the reduced rows, or None if ``vector`` is outside the span."""
        if self.reduce(vector):
            return None
        return [Fraction(vector.get(p, 0)) for p in self.pivots]


def rank(vectors: Iterable[Mapping]) -> int:
    return EchelonBasis(vectors).rank


@dataclass(frozen=True)
class Matrix:
    """Dense exact matrix with an explicit shape (so 0 x n and n x 0 are distinct)."""

    nrows: int
    ncols: int
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Sequence]) -> "Matrix":
        entries = tuple(tuple(Fraction(col[i]) for col in columns) for i in range(nrows))
        return cls(nrows, len(columns), entries)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols, tuple((Fraction(0),) * ncols for _ in range(nrows)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        entries = tuple(
            tuple(
                sum((self.entries[i][t] * other.entries[t][j] for t in range(self.ncols)), Fraction(0))
                for j in range(other.ncols)
            )
            for i in range(self.nrows)
        )
        return Matrix(self.nrows, other.ncols, entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def rank(self) -> int:
        return rank({j: x for j, x in enumerate(row) if x} for row in self.entries)

    def tolist(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]

from fractions import Fraction

import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from prinspace.linalg import EchelonBasis, Matrix, rank


def test_rank_simple():
    assert rank([{0: 1, 1: 2}, {0: 2, 1: 4}, {1: 1}]) == 2
    assert rank([]) == 0
    assert rank([{}]) == 0


def test_reduced_rows_independent_of_order():
    vecs = [{0: 1, 1: 1, 2: 1}, {1: 2, 2: 3}, {0: 3, 2: 5}]
    a = EchelonBasis(vecs).rows()
    b = EchelonBasis(reversed(vecs)).rows()
    assert a == b


def test_coordinates():
    basis = EchelonBasis([{"a": 1, "b": 2}, {"b": 1, "c": -1}])
    v = {"a": 2, "b": 7, "c": -3}
    coords = basis.coordinates(v)
    rows = basis.rows()
    rebuilt = {}
    for c, row in zip(coords, rows):
        for k, x in row.items():
            rebuilt[k] = rebuilt.get(k, 0) + c * x
    assert {k: x for k, x in rebuilt.items() if x} == {k: Fraction(x) for k, x in v.items()}
    assert basis.coordinates({"c": 1, "d": 1}) is None


matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=6)
)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_rank_agrees_with_sympy(rows):
    ours = rank({j: x for j, x in enumerate(r) if x} for r in rows)
    assert ours == sp.Matrix(rows).rank()


def test_matrix_shapes_and_product():
    a = Matrix.from_columns(2, [[1, 2], [3, 4], [5, 6]])
    assert a.shape == (2, 3)
    assert a.entries[0] == (1, 3, 5)
    b = Matrix.zeros(3, 0)
    assert (a @ b).shape == (2, 0)
    assert Matrix.zeros(0, 4).rank() == 0
    ident = Matrix.from_columns(2, [[1, 0], [0, 1]])
    assert ident @ ident == ident

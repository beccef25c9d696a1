import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prinspace.ideal import (
    YPolynomial,
    cross_check_hilbert,
    hilbert_series,
    ideal_component_span,
    monomials,
    quotient_dim,
    raise_indices,
    relation,
    shift_S,
    verify_S_stability,
)
from prinspace.linalg import EchelonBasis
from prinspace.principal import LAMBDA1, component_dim
from prinspace.series import diff2_count

from oracles import brute_diff2

P = YPolynomial.monomial


def test_relation_examples():
    assert relation(-2) == P((1, 1))
    assert relation(-3) == P((2, 1), 2)
    assert relation(-5) == P((4, 1), 2) + P((3, 2), 2)
    assert relation(-4) == P((2, 2)) + P((3, 1), 2)


def test_relation_domain():
    with pytest.raises(ValueError):
        relation(-1)


@pytest.mark.parametrize("n", range(-14, -1))
def test_relation_symmetric_and_homogeneous(n):
    r = relation(n)
    assert r.bidegrees() == {(2, -n)}
    # ordered pairs: each unordered pair {i, j} with i != j appears twice
    for mono, coeff in r.terms.items():
        assert coeff == (1 if mono[0] == mono[1] else 2)


def test_ideal_component_span_examples():
    assert ideal_component_span(2, 2) == [relation(-2)]
    assert ideal_component_span(2, 3) == [relation(-3)]
    got = set(ideal_component_span(3, 5))
    expected = {
        P((3,)) * relation(-2),
        P((2,)) * relation(-3),
        P((1,)) * relation(-4),
    }
    assert got == expected
    assert ideal_component_span(1, 5) == []


def test_ideal_component_span_exhaustive():
    for r in range(2, 5):
        for s in range(0, 13):
            gens = ideal_component_span(r, s)
            expected = sum(len(monomials(r - 2, s - k)) for k in range(2, s + 1))
            assert len(gens) == expected
            for g in gens:
                assert g.bidegrees() == {(r, s)}


def test_hilbert_examples():
    hs = hilbert_series(4, 60)
    for s in range(1, 16):
        assert hs.coefficient(2, 4 * s) == 1
    assert hs.coefficient(4, 8) == 0
    assert hs.coefficient(4, 24) == 2
    assert hs.coefficient(4, 16) == 1


def test_hilbert_matches_partition_oracle():
    hs = hilbert_series(4, 64)
    for r in range(5):
        for s in range(17):
            assert hs.coefficient(2 * r, 4 * s) == brute_diff2(s, r, 1)


def test_shift_S_examples():
    assert shift_S(relation(-4)) == relation(-2)
    assert shift_S(relation(-3)).is_zero()
    assert shift_S(relation(-2)).is_zero()
    assert shift_S(P((3, 2))) == P((2, 1))


@pytest.mark.parametrize("n", range(-12, -3))
def test_shift_S_on_relations(n):
    assert shift_S(relation(n)) == relation(n + 2)


poly_strategy = st.dictionaries(
    st.lists(st.integers(1, 5), max_size=3).map(lambda m: tuple(sorted(m, reverse=True))),
    st.fractions(max_denominator=5),
    max_size=4,
).map(YPolynomial)


@settings(max_examples=80, deadline=None)
@given(poly_strategy, poly_strategy)
def test_shift_S_is_multiplicative(p, q):
    assert shift_S(p * q) == shift_S(p) * shift_S(q)


@settings(max_examples=60, deadline=None)
@given(poly_strategy, poly_strategy)
def test_shift_S_is_additive(p, q):
    assert shift_S(p + q) == shift_S(p) + shift_S(q)


def test_S_stability_examples():
    zero_image = shift_S(P((1, 1)) * P((4, 2)))
    assert zero_image.is_zero()
    image = shift_S(P((2,)) * relation(-4))
    assert image == P((1,)) * relation(-2)
    span = EchelonBasis(p.terms for p in ideal_component_span(3, 3))
    assert span.contains(image.terms)
    assert shift_S(P(raise_indices((1,))) * relation(-5)) == P((1,)) * relation(-3)


def test_verify_S_stability():
    check = verify_S_stability(4, 64)
    assert check.passed
    assert check.rows


def test_cross_check_hilbert():
    check = cross_check_hilbert(3, 48)
    assert check.passed
    row = next(r for r in check.rows if (r["charge2"], r["weight4"]) == (4, 16))
    assert row["hilbert"] == row["character"] == 1


def test_charged_relations_are_shifted_vacuum_relations():
    # A'/B_{L1} has the dims of A/A_{L0} moved by y_-j -> y_-j-1
    for r in range(0, 4):
        for s in range(0, 14):
            assert component_dim(LAMBDA1, r, s) == (quotient_dim(r, s - r) if s >= r else 0)


def test_str():
    assert str(relation(-4)) == "y_-2^2 + 2*y_-3*y_-1"
    assert str(YPolynomial()) == "0"
    assert str(P(()) * 3) == "3"


def test_quotient_dim_charge_one():
    for s in range(1, 10):
        assert quotient_dim(1, s) == 1 == diff2_count(s, 1, 1)

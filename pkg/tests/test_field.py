from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from akinv.field import GF, QQ, FieldError, Scalar, binomial, binomial_in, binomial_mod_p, is_prime

from strategies import fields, raw_values


def test_binomial_examples():
    assert binomial(6, 3) == 20
    assert binomial(9, 0) == 1
    assert binomial(7, 8) == 0


def test_binomial_pascal_rows():
    row = [1]
    for n in range(1, 40):
        row = [1] + [row[i] + row[i + 1] for i in range(n - 1)] + [1]
        assert [binomial(n, r) for r in range(n + 1)] == row


def test_binomial_mod_p_examples():
    assert binomial_mod_p(6, 3, 3) == 2
    assert binomial_mod_p(6, 2, 2) == binomial(6, 2) % 2 == 1
    for p in (2, 3, 5):
        assert binomial_mod_p(17, 0, p) == 1


def test_binomial_mod_p_rejects_composite():
    with pytest.raises(FieldError):
        binomial_mod_p(6, 2, 4)
    with pytest.raises(FieldError):
        GF(9)


def test_binomial_mod_p_past_n_is_zero():
    assert binomial_mod_p(3, 5, 7) == 0


@given(st.integers(0, 2000), st.integers(0, 2000), st.sampled_from([2, 3, 5, 7, 11, 13, 97]))
def test_lucas_matches_exact(n, r, p):
    assert binomial_mod_p(n, r, p).value == comb(n, r) % p


@given(st.sampled_from([2, 3, 5, 7]), st.integers(0, 8), st.integers(1, 60))
def test_prime_power_fact(p, j, q):
    assert binomial_mod_p(p**j * q, p**j, p) == q % p


def test_binomial_in_fields():
    assert binomial_in(QQ, 10, 4) == Fraction(210)
    assert binomial_in(GF(5), 10, 5) == 2


@given(fields, st.data())
def test_field_axioms(F, data):
    a, b, c = (data.draw(raw_values(F)) for _ in range(3))
    A, B, C = Scalar(F(a), F), Scalar(F(b), F), Scalar(F(c), F)
    assert (A + B) + C == A + (B + C)
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert A + B == B + A and A * B == B * A
    assert A - A == 0
    if not A.is_zero():
        assert A * A.inverse() == 1
        assert (B / A) * A == B


@given(st.sampled_from([2, 3, 5, 7]), st.integers(-1000, 1000))
def test_residues_canonical(p, n):
    v = GF(p)(n)
    assert 0 <= v < p and (v - n) % p == 0


def test_rationals_lowest_terms():
    v = QQ(Fraction(6, -4))
    assert v == Fraction(-3, 2) and v.denominator == 2


def test_mixed_characteristics_rejected():
    with pytest.raises(FieldError):
        Scalar(1, GF(2)) + Scalar(1, GF(3))


def test_fraction_into_fp():
    assert GF(5)(Fraction(1, 2)) == 3
    with pytest.raises(ZeroDivisionError):
        GF(5)(Fraction(1, 5))


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]

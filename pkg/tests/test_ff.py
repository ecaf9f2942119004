import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fqzeta.ff import (
    DenseArrays, DivisionByZero, FieldMismatch, InvalidDegree, InvalidPrime, LogTables,
    build_field, enumerate_elements, frobenius, inv, is_irreducible, power,
)
from oracles import irreducible_by_trial_division

BUDGET_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 6)]


def test_prime_field_has_formal_modulus():
    assert build_field(5, 1).defining_poly == (0, 1)


@pytest.mark.parametrize("p,m,poly", [
    (2, 2, (1, 1, 1)),   # x^2 + x + 1
    (3, 2, (1, 0, 1)),   # x^2 + 1
])
def test_canonical_modulus(p, m, poly):
    assert build_field(p, m).defining_poly == poly


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)])
def test_canonical_modulus_is_first_irreducible_by_scan(p, m):
    # independent scan with trial division
    for k in range(p**m):
        low = [(k // p**i) % p for i in range(m)]
        if irreducible_by_trial_division(low + [1], p):
            break
    assert build_field(p, m).defining_poly == tuple(low + [1])


@pytest.mark.parametrize("f,p,expected", [
    ((1, 1, 1), 2, True),
    ((1, 0, 1), 2, False),
    ((1, 0, 1), 5, False),
])
def test_is_irreducible_examples(f, p, expected):
    assert is_irreducible(f, p) is expected


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (2, 6)])
def test_is_irreducible_matches_trial_division(p, m):
    for low in product(range(p), repeat=m):
        f = list(low) + [1]
        assert is_irreducible(f, p) == irreducible_by_trial_division(f, p), f


def test_build_field_errors():
    with pytest.raises(InvalidPrime):
        build_field(4, 1)
    with pytest.raises(InvalidPrime):
        build_field(1, 1)
    with pytest.raises(InvalidDegree):
        build_field(3, 0)


def test_arithmetic_examples():
    F4 = build_field(2, 2)
    x = F4.gen
    assert x * x == F4.element([1, 1])
    F5 = build_field(5)
    assert inv(F5.scalar(2)) == F5.scalar(3)
    F9 = build_field(3, 2)
    assert F9.gen * F9.gen == F9.scalar(2)


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        inv(build_field(3, 2).zero)
    with pytest.raises(ZeroDivisionError):
        build_field(7).one / build_field(7).zero


def test_mixed_fields():
    with pytest.raises(FieldMismatch):
        build_field(2, 2).one + build_field(2, 3).one


def test_frobenius_examples():
    F4 = build_field(2, 2)
    assert frobenius(F4.gen) == F4.element([1, 1])
    for a in F4.elements():
        assert frobenius(frobenius(a)) == a
    F7 = build_field(7)
    assert all(frobenius(a) == a for a in F7.elements())


def test_enumeration_order():
    assert [int(a) for a in enumerate_elements(build_field(3))] == [0, 1, 2]
    F4 = build_field(2, 2)
    assert [a.coeffs for a in F4.elements()] == [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert sum(1 for _ in build_field(2, 3).elements()) == 8
    els = list(build_field(5, 2).elements())
    assert els[0] == els[0].field.zero and els[1] == els[1].field.one
    assert len(set(els)) == 25


@pytest.mark.parametrize("p,m", BUDGET_FIELDS)
def test_group_order_and_fermat(p, m):
    F = build_field(p, m)
    rng = random.Random(p * 100 + m)
    q = F.order
    for _ in range(50):
        a = F.from_int(rng.randrange(q))
        assert power(a, q) == a
        if a:
            assert power(a, q - 1) == F.one
            b = inv(a)
            assert a * b == F.one and b * a == F.one


@pytest.mark.parametrize("p,m", BUDGET_FIELDS)
def test_multiplicative_group_is_cyclic_of_order_q_minus_1(p, m):
    T = LogTables(build_field(p, m))
    assert sorted(T.exp.tolist()) == list(range(1, p**m))


@pytest.mark.parametrize("p,m", BUDGET_FIELDS)
def test_frobenius_is_ring_homomorphism(p, m):
    F = build_field(p, m)
    rng = random.Random(7 * p + m)
    for _ in range(50):
        a, b = F.from_int(rng.randrange(F.order)), F.from_int(rng.randrange(F.order))
        assert frobenius(a + b) == frobenius(a) + frobenius(b)
        assert frobenius(a * b) == frobenius(a) * frobenius(b)
    a = F.from_int(rng.randrange(F.order))
    b = a
    for _ in range(m):
        b = frobenius(b)
    assert b == a


def test_build_field_deterministic():
    build_field.cache_clear()
    a = build_field(3, 3)
    build_field.cache_clear()
    assert build_field(3, 3) == a


@pytest.mark.parametrize("p,m", [(2, 3), (3, 2), (5, 1), (2, 6), (7, 2)])
def test_vector_backends_agree_with_scalar(p, m):
    F = build_field(p, m)
    T = LogTables(F)
    D = DenseArrays(F)
    rng = np.random.default_rng(p + m)
    a = rng.integers(0, F.order, 200)
    b = rng.integers(0, F.order, 200)
    want_mul = [int(F.from_int(int(x)) * F.from_int(int(y))) for x, y in zip(a, b)]
    want_add = [int(F.from_int(int(x)) + F.from_int(int(y))) for x, y in zip(a, b)]
    assert T.mul(a, b).tolist() == want_mul
    assert T.add(a, b).tolist() == want_add
    assert D.encode(D.mul(D.decode(a), D.decode(b))).tolist() == want_mul
    assert D.encode(D.add(D.decode(a), D.decode(b))).tolist() == want_add
    assert D.encode(D.pow(D.decode(a), 5)).tolist() == [int(F.from_int(int(x)) ** 5) for x in a]


@given(st.sampled_from(BUDGET_FIELDS), st.data())
def test_field_axioms(pm, data):
    F = build_field(*pm)
    el = st.integers(0, F.order - 1).map(F.from_int)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == F.zero
    assert a - b == a + (-b)
    if a:
        assert a / a == F.one

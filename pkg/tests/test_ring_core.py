import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import M22, M32, Q1, Q2, Z4, Z6, Z8
from starring import (
    DescriptorError,
    GaussianRational,
    RingDescriptor,
    RingMismatchError,
    add,
    classify,
    mul,
    power,
    star,
    sub,
    validate_ring,
)
from starring.backends import random_element
from starring.predicates import is_hermitian, is_idempotent, is_normal, is_projection


def Z(r, v):
    return r.element(v)


# Gaussian rationals


@pytest.mark.parametrize("text, re, im", [
    ("3/2-1/2i", Fraction(3, 2), Fraction(-1, 2)),
    ("i", 0, 1),
    ("-i", 0, -1),
    ("1/2i", 0, Fraction(1, 2)),
    ("7", 7, 0),
    ("-4/6", Fraction(-2, 3), 0),
    ("1/2+1/2i", Fraction(1, 2), Fraction(1, 2)),
])
def test_gaussian_parse(text, re, im):
    z = GaussianRational.parse(text)
    assert (z.re, z.im) == (re, im)
    assert GaussianRational.parse(str(z)) == z


@pytest.mark.parametrize("bad", ["", "1/0", "2+", "i i", "abc", "1/2/3"])
def test_gaussian_parse_rejects(bad):
    with pytest.raises(ValueError):
        GaussianRational.parse(bad)


def test_gaussian_field_ops():
    z = GaussianRational(Fraction(1, 2), Fraction(-3))
    assert z * z.inverse() == GaussianRational(1)
    assert z.conjugate() == GaussianRational(Fraction(1, 2), 3)
    assert z.norm() == Fraction(1, 4) + 9
    with pytest.raises(ZeroDivisionError):
        GaussianRational(0).inverse()


# descriptors


def test_descriptor_json_round_trip():
    for r in (Z6, M22, M32, Q1, Q2):
        assert RingDescriptor.from_json(json.dumps(r.to_json())) == r
    assert str(Z6) == "ZMod(6)" and str(M22) == "MatZp(2,2)" and str(Q2) == "MatQi(2)"


@pytest.mark.parametrize("obj", [
    {"kind": "MatZp", "p": 4, "k": 2},
    {"kind": "ZMod", "n": 1},
    {"kind": "ZMod", "n": 0},
    {"kind": "MatQi", "k": 0},
    {"kind": "Poly", "n": 3},
    {"kind": "ZMod", "n": 6, "k": 2},
    {"kind": "ZMod", "n": 6, "involution": "transpose"},
])
def test_descriptor_errors(obj):
    with pytest.raises(DescriptorError):
        RingDescriptor.from_json(obj)


def test_descriptor_accepts_matching_involution():
    assert RingDescriptor.from_json({"kind": "MatZp", "p": 3, "k": 2,
                                     "involution": "Transpose"}) == M32


# arithmetic examples


def test_mul_examples():
    assert mul(Z(Z6, 4), Z(Z6, 2)) == Z(Z6, 2)
    a = M22.element([[1, 1], [0, 0]])
    assert mul(a, M22.element([[1, 0], [1, 0]])) == M22.zero
    for r in (Z6, M22, Q2):
        x = random_element(r, random.Random(1))
        assert mul(x, r.one) == x and mul(r.one, x) == x


def test_star_examples():
    assert star(Z(Z6, 2)) == Z(Z6, 2)
    assert star(M22.element([[1, 1], [0, 0]])) == M22.element([[1, 0], [1, 0]])
    assert star(Q1.element([[GaussianRational(0, 1)]])) == Q1.element([[GaussianRational(0, -1)]])


def test_power_examples():
    for r in (Z6, M22, Q2):
        assert power(random_element(r, random.Random(2)), 0) == r.one
    assert power(Z(Z6, 4), 2) == Z(Z6, 4)
    a = M22.element([[1, 1], [0, 0]])
    assert power(a, 2) == a
    with pytest.raises(ValueError):
        power(a, -1)


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        Z(Z6, 1) + Z(Z8, 1)
    with pytest.raises(RingMismatchError):
        mul(Z(Z6, 1), Z(Z4, 1))


def test_element_canonicalizes():
    assert Z(Z6, 8) == Z(Z6, 2)
    assert M32.element([[1, 2], [0, 5]]) == M32.element([[1, 2], [0, 2]])


# classify / validate_ring


def test_classify_examples():
    for r in (Z6, M22, Q2):
        f = classify(r.one)
        assert all(vars(f).values())
    f = classify(Z(Z6, 3))
    assert f.idempotent and f.projection and f.hermitian and f.normal
    assert not f.unit and not f.left_invertible and not f.right_invertible
    f = classify(Q2.element([[0, 1], [0, 0]]))
    assert not any(vars(f).values())


def test_validate_ring_examples():
    rep = validate_ring(Z6)
    assert rep.passed and rep.pairs_checked == 36 and rep.exhaustive
    rep = validate_ring(M22)
    assert rep.passed and rep.pairs_checked == 256
    with pytest.raises(DescriptorError):
        validate_ring(RingDescriptor.from_json({"kind": "MatZp", "p": 4, "k": 2}))


def test_validate_ring_sampled():
    rep = validate_ring(Q2, budget=200, seed=3)
    assert rep.passed and not rep.exhaustive and rep.pairs_checked == 200 and rep.seed == 3
    rep = validate_ring(M32, budget=100)
    assert rep.passed and not rep.exhaustive
    assert json.loads(json.dumps(rep.to_json()))["ring"] == M32.to_json()


# properties

RINGS = [Z6, Z8, RingDescriptor.zmod(24), M22, M32, Q1, Q2, RingDescriptor.matqi(3)]


@st.composite
def ring_and_elements(draw, count=3):
    r = draw(st.sampled_from(RINGS))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    return (r, *[random_element(r, rng) for _ in range(count)])


@settings(max_examples=150, deadline=None)
@given(ring_and_elements())
def test_involution_laws(data):
    r, a, b, _ = data
    assert star(star(a)) == a
    assert star(mul(a, b)) == mul(star(b), star(a))
    assert star(add(a, b)) == add(star(a), star(b))
    assert star(r.one) == r.one


@settings(max_examples=150, deadline=None)
@given(ring_and_elements())
def test_ring_laws(data):
    r, a, b, c = data
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert add(a, b) == add(b, a)
    assert sub(a, a) == r.zero


@settings(max_examples=100, deadline=None)
@given(ring_and_elements(), st.integers(0, 6), st.integers(0, 6))
def test_power_additive(data, i, j):
    _, a, _, _ = data
    if i + j <= 6:
        assert mul(power(a, i), power(a, j)) == power(a, i + j)


@settings(max_examples=150, deadline=None)
@given(ring_and_elements())
def test_classify_matches_definitions(data):
    r, a, _, _ = data
    f = classify(a)
    assert f.idempotent == (a * a == a) == is_idempotent(a)
    assert f.hermitian == (a.star() == a) == is_hermitian(a)
    assert f.projection == (f.idempotent and f.hermitian) == is_projection(a)
    assert f.normal == (a * a.star() == a.star() * a) == is_normal(a)
    assert f.unit == (f.left_invertible and f.right_invertible)

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superpoisson.algebra import (
    INHOMOGENEOUS,
    Generator,
    Signature,
    SignatureError,
    de_rham_d,
    degree_parity,
    mul,
    partial,
    random_element,
    random_homogeneous,
    right_partial,
    split_parity,
)
from superpoisson.expr import element

seeds = st.integers(min_value=0, max_value=2**31 - 1)
fast = settings(max_examples=60, deadline=None, derandomize=True)

S22 = Signature(2, 2, True)
S03 = Signature(0, 3)
S23 = Signature(2, 3)


def e(text, sig=S22):
    return element(text, sig)


# -- mul -----------------------------------------------------------------------


def test_unit_is_neutral():
    a = e("x1 + 2*th1*th2 - 1/3*x2^2*th1")
    assert mul(S22.one(), a) == a
    assert mul(a, S22.one()) == a


def test_odd_generators_anticommute():
    assert mul(e("th2"), e("th1")) == -e("th1*th2")


def test_mixed_product():
    assert mul(e("x1 + th1*th2"), e("th1")) == e("x1*th1")


def test_mul_signature_mismatch():
    with pytest.raises(SignatureError):
        mul(S22.x(1), S23.x(1))


def test_odd_square_vanishes():
    for j in range(1, S23.n + 1):
        assert (S23.th(j) * S23.th(j)).is_zero()


# -- de Rham d ------------------------------------------------------------------


def test_de_rham_examples():
    assert de_rham_d(e("th1")).is_zero()
    assert de_rham_d(e("x1*x2")) == e("x2*th1 + x1*th2")
    assert de_rham_d(e("x1*th2")) == e("th1*th2")


def test_de_rham_needs_structure():
    with pytest.raises(ValueError):
        de_rham_d(S23.x(1))


def test_de_rham_signature_rule():
    with pytest.raises(ValueError):
        Signature(2, 3, True)


@fast
@given(seeds)
def test_d_squared_is_zero(seed):
    a = random_element(S22, seed, max_poly_degree=3, terms=4)
    assert de_rham_d(de_rham_d(a)).is_zero()


# -- partial derivatives ----------------------------------------------------------


def test_partial_examples():
    assert partial(e("x1"), "th1").is_zero()
    assert partial(e("th1*th2"), "th1") == e("th2")
    assert partial(e("th1*th2"), "th2") == -e("th1")
    assert partial(e("x1^3*x2"), "x1") == e("3*x1^2*x2")


def test_right_partial_sign():
    # the right derivative counts odd factors after the generator
    assert right_partial(e("th1*th2"), "th1") == -e("th2")
    assert right_partial(e("th1*th2"), "th2") == e("th1")


def test_partial_unknown_generator():
    with pytest.raises(ValueError):
        partial(e("x1"), "x7")


@fast
@given(seeds)
def test_odd_partials_anticommute(seed):
    a = random_element(S23, seed, max_poly_degree=2, max_form_degree=3, terms=4)
    for i in range(1, 4):
        for j in range(1, 4):
            gi, gj = Generator("th", i), Generator("th", j)
            total = partial(partial(a, gj), gi) + partial(partial(a, gi), gj)
            assert total.is_zero()


# -- grading ------------------------------------------------------------------------


def test_degree_parity_examples():
    assert degree_parity(element("th1*th2", S23)) == (2, 0)
    assert degree_parity(element("x1*th3", S23)) == (1, 1)
    assert degree_parity(element("x1 + th1*th2", S23)) == (INHOMOGENEOUS, 0)


def test_split_parity_recombines():
    a = e("x1 + th1 + x2*th1*th2 - th2")
    parts = split_parity(a)
    assert sorted(p for p, _ in parts) == [0, 1]
    total = S22.zero()
    for _, piece in parts:
        total = total + piece
    assert total == a


# -- random elements --------------------------------------------------------------------


def test_random_element_constant_bounds():
    a = random_element(S22, 5, max_poly_degree=0, max_form_degree=0)
    assert all(k == ((0, 0), (), (), (0, 0)) for k, _ in a.items())


def test_random_element_deterministic():
    assert random_element(S23, 11) == random_element(S23, 11)


@fast
@given(seeds)
def test_random_element_respects_bounds(seed):
    a = random_element(S23, seed, max_poly_degree=2, max_form_degree=2)
    for (exps, odd, dx, dth), c in a.items():
        assert sum(exps) <= 2 and len(odd) <= 2
        assert isinstance(c, Fraction)


# -- ring laws -------------------------------------------------------------------------------


@fast
@given(seeds)
def test_supercommutativity(seed):
    import random

    rng = random.Random(seed)
    a = random_homogeneous(S23, rng, max_poly_degree=2, max_degree=3)
    b = random_homogeneous(S23, rng, max_poly_degree=2, max_degree=3)
    sign = -1 if a.parity() * b.parity() else 1
    assert a * b == (b * a).scale(sign)


@fast
@given(seeds)
def test_associativity(seed):
    a, b, c = (random_element(S23, seed + i, terms=3) for i in range(3))
    assert (a * b) * c == a * (b * c)


@fast
@given(seeds)
def test_distributivity(seed):
    a, b, c = (random_element(S22, seed + i, terms=3) for i in range(3))
    assert a * (b + c) == a * b + a * c


@fast
@given(seeds)
def test_normal_form_idempotent(seed):
    a = random_element(S23, seed, terms=4)
    again = type(a)(a.sig, dict(a.items()))
    assert again == a and hash(again) == hash(a)


def test_polynomial_view():
    a = e("3*x1^2*th1 + x2*th1 - th1*th2")
    coeffs = a.coefficients()
    assert set(coeffs) == {(1,), (1, 2)}
    assert coeffs[(1,)].total_degree() == 2


def test_generator_parse():
    assert Generator.parse("th3") == Generator("th", 3)
    assert str(Generator.parse("x12")) == "x12"
    with pytest.raises(ValueError):
        Generator.parse("y1")

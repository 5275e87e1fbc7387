import random

import pytest
from hypothesis import given, settings, strategies as st

from superpoisson.algebra import Generator, Signature, random_homogeneous
from superpoisson.expr import element
from superpoisson.poisson import (
    GradedPoissonStructure,
    bracket,
    broken_so3,
    check_axioms,
    from_bivector,
    from_classical,
    from_metric_cosharp,
    from_pseudoeuclidean,
    jacobiator,
    so3,
)

from corpus import passing_structures

seeds = st.integers(min_value=0, max_value=2**31 - 1)
fast = settings(max_examples=30, deadline=None, derandomize=True)

STRUCTURES = passing_structures()


def el(P, text):
    return element(text, P.sig)


# -- bracket examples ----------------------------------------------------------------


def test_unit_is_central():
    P = so3()
    assert bracket(P, 1, el(P, "x1*x2 + 3")).is_zero()


def test_metric_bracket_on_exterior_algebra():
    P = from_pseudoeuclidean([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert bracket(P, el(P, "th1"), el(P, "th1*th2")) == el(P, "th2")


def test_bivector_brackets():
    P = from_bivector([["0", "x1"], ["-x1", "0"]])
    assert bracket(P, el(P, "th1"), el(P, "x2")) == el(P, "x1")
    assert bracket(P, el(P, "th1"), el(P, "th2")) == el(P, "th1")


def test_jacobiator_examples():
    P = so3()
    assert jacobiator(P, P.sig.one(), el(P, "x2"), el(P, "x3")).is_zero()
    assert jacobiator(P, el(P, "x1"), el(P, "x2"), el(P, "x3")).is_zero()
    B = broken_so3()
    assert jacobiator(B, el(B, "x1"), el(B, "x2"), el(B, "x3")) == el(B, "x1 + x2 + x3")


def test_jacobiator_rejects_inhomogeneous():
    P = from_pseudoeuclidean([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        jacobiator(P, el(P, "th1 + 1"), el(P, "th2"), el(P, "th1"))


def test_unknown_method():
    with pytest.raises(ValueError):
        bracket(so3(), 1, 1, method="sideways")


# -- builders ---------------------------------------------------------------------------


def test_pseudoeuclidean_builder():
    P = from_pseudoeuclidean([[1, 0], [0, 1]])
    assert P.k == -2 and (P.sig.m, P.sig.n) == (0, 2)
    assert P.lookup("th1", "th1") == P.sig.one()
    assert P.lookup("th1", "th2").is_zero()
    Q = from_pseudoeuclidean([[1, 0], [0, -1]])
    assert Q.lookup("th2", "th2") == -Q.sig.one()
    assert not from_pseudoeuclidean([[0, 0], [0, 0]]).table


def test_metric_builder():
    P = from_metric_cosharp([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]])
    assert P.lookup("th1", "th1") == P.sig.one()
    Q = from_metric_cosharp([["1 + x1^2", "0"], ["0", "1 + x1^2"]])
    assert Q.lookup("th1", "th1") == el(Q, "1 + x1^2")
    assert bracket(Q, el(Q, "x1"), el(Q, "th1")).is_zero()


def test_bivector_builder():
    P = from_bivector([["0", "1"], ["-1", "0"]])
    assert P.k == -1
    assert P.lookup("th1", "th2").is_zero()
    assert P.lookup("th1", "x2") == P.sig.one()
    assert not from_bivector([["0", "0"], ["0", "0"]]).table


def test_classical_builder():
    P = from_classical([["0", "1"], ["-1", "0"]])
    assert P.lookup("x1", "x2") == P.sig.one()
    assert check_axioms(P).passed
    assert check_axioms(so3()).passed
    assert not from_classical([["0", "0"], ["0", "0"]]).table


@pytest.mark.parametrize(
    "builder, matrix",
    [
        (from_pseudoeuclidean, [[1, 2], [0, 1]]),
        (from_metric_cosharp, [["1", "x1"], ["x2", "1"]]),
        (from_bivector, [["0", "1"], ["1", "0"]]),
        (from_classical, [["1", "0"], ["0", "0"]]),
        (from_pseudoeuclidean, [[1, 0, 0], [0, 1]]),
    ],
)
def test_builder_rejects_bad_matrices(builder, matrix):
    with pytest.raises(ValueError):
        builder(matrix)


def test_pseudoeuclidean_needs_constants():
    with pytest.raises(ValueError):
        from_pseudoeuclidean([["th1", "0"], ["0", "1"]])


def test_missing_entries_default_to_zero():
    P = GradedPoissonStructure(Signature(2, 0), 0)
    assert P.lookup("x1", "x2").is_zero()


# -- axioms ---------------------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(STRUCTURES))
def test_builders_pass_axioms(name):
    assert check_axioms(STRUCTURES[name], seed=3, samples=12).passed


def test_broken_table_witness():
    report = check_axioms(broken_so3(), samples=8)
    jac = report["jacobi"]
    assert not jac.passed
    assert jac.witness["inputs"] == ["x1", "x2", "x3"]
    assert report["skew-symmetry"].passed and report["leibniz"].passed


def test_degree_violation_is_reported():
    # degree counts odd generators, so {x1, x2} = th1 breaks k = 0
    sig = Signature(2, 1)
    P = GradedPoissonStructure(sig, 0, {("x1", "x2"): sig.th(1)})
    assert not check_axioms(P, samples=4)["degree"].passed


@pytest.mark.parametrize("seed", range(3))
def test_metric_jacobi_on_generators(seed):
    rng = random.Random(seed)
    rows = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i, 3):
            c = rng.randint(-3, 3)
            rows[i][j] = rows[j][i] = f"{c} + x{rng.randint(1, 3)}^2"
    P = from_metric_cosharp(rows)
    for t in [(u, v, w) for u in P.sig.generators for v in P.sig.generators for w in P.sig.generators]:
        assert jacobiator(P, *(P.sig.gen(g) for g in t)).is_zero()


# -- properties -------------------------------------------------------------------------------


def _sample_pair(P, seed):
    rng = random.Random(seed)
    return random_homogeneous(P.sig, rng, 2), random_homogeneous(P.sig, rng, 2)


@fast
@given(seeds, st.sampled_from(sorted(STRUCTURES)))
def test_factorization_independence(seed, name):
    P = STRUCTURES[name]
    a, b = _sample_pair(P, seed)
    ref = bracket(P, a, b)
    assert bracket(P, a, b, method="left") == ref
    assert bracket(P, a, b, method="right") == ref


@fast
@given(seeds, st.sampled_from(sorted(STRUCTURES)))
def test_odd_squares_are_central(seed, name):
    P = STRUCTURES[name]
    f, _ = _sample_pair(P, seed)
    for j in range(1, P.sig.n + 1):
        sq = P.sig.gen(Generator("th", j))
        assert bracket(P, f, sq * sq).is_zero()


@fast
@given(seeds, st.sampled_from(sorted(STRUCTURES)))
def test_degree_and_parity_additivity(seed, name):
    P = STRUCTURES[name]
    a, b = _sample_pair(P, seed)
    c = bracket(P, a, b)
    if c:
        assert c.degree() == a.degree() + b.degree() + P.k
        assert c.parity() == (a.parity() + b.parity() + P.k) % 2

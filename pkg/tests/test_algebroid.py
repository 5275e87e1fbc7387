import random

import pytest
from hypothesis import given, settings, strategies as st

from superpoisson.algebra import Signature
from superpoisson.algebroid import (
    AlgebroidData,
    PoissonAlgebroid,
    algebroid_bracket,
    anchor,
    check_anchor_skew,
    check_closed_pairs_vanish,
    check_hypotheses,
    check_poisson_type,
    check_superalgebroid,
    formula_bracket,
    induced_bracket,
    induced_structure,
    reconstruct_bracket,
    sample_one_form,
)
from superpoisson.expr import element, form
from superpoisson.forms import Derivation, delta, evaluate
from superpoisson.poisson import bracket, broken_so3, from_bivector, from_metric_cosharp, so3

from corpus import corrupted_so3, even_passing_structures

seeds = st.integers(min_value=0, max_value=2**31 - 1)
fast = settings(max_examples=25, deadline=None, derandomize=True)

METRIC = from_metric_cosharp([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]])
EVEN = even_passing_structures()


def fm(text, sig=METRIC.sig):
    return form(text, sig)


# -- anchor ------------------------------------------------------------------------------


def test_anchor_of_odd_differential():
    A = PoissonAlgebroid(METRIC)
    D = anchor(A, fm("dth1"))
    sig = METRIC.sig
    assert D.value("th1") == sig.one()
    assert all(D.value(g).is_zero() for g in sig.generators if str(g) != "th1")


def test_anchor_of_function_differential_is_zero():
    A = PoissonAlgebroid(METRIC)
    assert anchor(A, fm("dx1")).is_zero()
    assert anchor(A, fm("0")).is_zero()


# -- bracket --------------------------------------------------------------------------------


def test_bracket_examples():
    A = PoissonAlgebroid(METRIC)
    assert algebroid_bracket(A, fm("dth1"), fm("dth2")).is_zero()
    assert algebroid_bracket(A, fm("th1*dth2"), fm("dth1")) == -fm("dth2")


@pytest.mark.parametrize("name", sorted(EVEN))
def test_even_differential_self_bracket(name):
    A = PoissonAlgebroid(EVEN[name])
    sig = A.sig
    if sig.m:
        assert algebroid_bracket(A, fm("dx1", sig), fm("dx1", sig)).is_zero()


def test_bracket_rejects_higher_forms():
    with pytest.raises(ValueError):
        algebroid_bracket(PoissonAlgebroid(METRIC), fm("dx1*dx2"), fm("dx1"))


def test_data_matches_poisson_algebroid():
    P = from_metric_cosharp([["1 + x1^2", "x2"], ["x2", "1"]])
    A, data = PoissonAlgebroid(P), PoissonAlgebroid(P).to_data()
    rng = random.Random(4)
    for _ in range(10):
        a, b = sample_one_form(P.sig, rng), sample_one_form(P.sig, rng)
        assert algebroid_bracket(A, a, b) == algebroid_bracket(data, a, b)


@fast
@given(seeds, st.sampled_from(sorted(EVEN)))
def test_literal_formula_matches_bracket(seed, name):
    A = PoissonAlgebroid(EVEN[name])
    rng = random.Random(seed)
    a, b = sample_one_form(A.sig, rng), sample_one_form(A.sig, rng)
    assert formula_bracket(A, a, b) == algebroid_bracket(A, a, b)


# -- axiom checks ------------------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(EVEN))
def test_poisson_structures_give_superalgebroids(name):
    assert check_superalgebroid(PoissonAlgebroid(EVEN[name]), seed=1, samples=8).passed


def test_corrupted_data_fails_jacobi():
    report = check_superalgebroid(corrupted_so3(), samples=8)
    jac = report["jacobi"]
    assert not jac.passed and jac.witness
    assert report["skew-symmetry"].passed


def test_odd_degree_is_rejected():
    with pytest.raises(ValueError, match="even degree"):
        check_superalgebroid(PoissonAlgebroid(from_bivector([["0", "1"], ["-1", "0"]])), samples=4)


def test_anchor_parity_is_validated():
    sig = Signature(1, 1)
    with pytest.raises(ValueError):
        AlgebroidData(sig, {"x1": Derivation.partial(sig, "th1")})


def test_bracket_entries_are_validated():
    sig = Signature(2, 0)
    with pytest.raises(ValueError):
        AlgebroidData(sig, brackets={("x1", "x2"): form("dx1*dx2", sig)})


# -- induced bracket ------------------------------------------------------------------------------


def test_induced_bracket_roundtrip():
    data = PoissonAlgebroid(METRIC).to_data()
    sig = METRIC.sig
    assert induced_bracket(data, element("th1", sig), element("th2", sig)).is_zero()
    assert induced_bracket(data, element("th1", sig), element("th1", sig)) == sig.one()
    assert induced_bracket(data, element("x1*th2", sig), sig.one()).is_zero()


def test_induced_bracket_from_anchor():
    sig = Signature(2, 0)
    data = AlgebroidData(sig, {"x1": Derivation.partial(sig, "x2")})
    assert induced_bracket(data, sig.x(1), sig.x(2)) == sig.one()


@pytest.mark.parametrize("name", sorted(EVEN))
def test_induced_structure_recovers_table(name):
    P = EVEN[name]
    Q = induced_structure(PoissonAlgebroid(P).to_data())
    for u in P.sig.generators:
        for v in P.sig.generators:
            assert Q.lookup(u, v) == P.lookup(u, v)


# -- anchor skew and Poisson type ------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(EVEN))
def test_anchor_skew_for_poisson_algebroids(name):
    assert check_anchor_skew(PoissonAlgebroid(EVEN[name]), samples=8).passed


def test_anchor_skew_examples():
    sig = Signature(2, 0)
    D = Derivation.partial(sig, "x1")
    assert evaluate(form("dx2", sig), D).is_zero()
    bad = AlgebroidData(sig, {"x1": D})
    result = check_anchor_skew(bad, samples=4)["anchor-skew"]
    assert not result.passed
    assert result.witness["inputs"] == ["dx1", "dx1"]


def test_poisson_type_metric():
    report = check_poisson_type(PoissonAlgebroid(METRIC).to_data(), samples=8)
    assert report.passed and report["poisson-type"].passed


def test_poisson_type_broken():
    report = check_poisson_type(PoissonAlgebroid(broken_so3()).to_data(), samples=8)
    assert not report["induced-jacobi"].passed
    assert not report["anchor-morphism"].passed
    assert report["conditions-agree"].passed
    assert not report["poisson-type"].passed


def test_poisson_type_trivial():
    assert check_poisson_type(AlgebroidData(Signature(2, 2)), samples=4).passed


# -- reconstruction --------------------------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(EVEN))
def test_reconstruction_agrees(name):
    data = PoissonAlgebroid(EVEN[name]).to_data()
    assert check_hypotheses(data, samples=6).passed
    assert reconstruct_bracket(data, samples=6, closed_samples=6).passed


def test_closed_pair_example():
    data = PoissonAlgebroid(METRIC).to_data()
    sig = METRIC.sig
    lhs = algebroid_bracket(data, fm("dx1"), fm("dx2"))
    assert lhs == delta(bracket(METRIC, sig.x(1), sig.x(2))) == fm("0")


def test_trivial_reconstruction():
    data = AlgebroidData(Signature(1, 1))
    assert reconstruct_bracket(data, samples=4, closed_samples=4).passed


def test_reconstruction_reports_failed_hypotheses():
    sig = Signature(2, 0)
    bad = AlgebroidData(sig, {"x1": Derivation.partial(sig, "x1")})
    report = reconstruct_bracket(bad, samples=4, closed_samples=4)
    assert not report["hypothesis:anchor-skew"].passed
    assert report["formula-agreement"].status == "skipped"


def test_closed_pairs_need_not_vanish():
    # the bracket of two exact forms is exact, not zero: [[dth1, dth1]] = d{th1, th1}
    # vanishes only because {th1, th1} is constant; so(3) gives d x3
    data = PoissonAlgebroid(so3()).to_data()
    sig = data.sig
    assert algebroid_bracket(data, fm("dx1", sig), fm("dx2", sig)) == fm("dx3", sig)
    assert not check_closed_pairs_vanish(data, samples=4).passed

"""Lie superalgebroid structures on the module of 1-forms.

Two sources are supported:

* :class:`PoissonAlgebroid` -- anchor ``rho(df) = {f, .}`` and the bracket

      [[a, b]] = rho(a) _| delta b - (-1)**(pa pb) rho(b) _| delta a + delta(b(rho(a)))

  computed literally from a :class:`GradedPoissonStructure`;
* :class:`AlgebroidData` -- raw anchor and bracket values on the generating
  1-forms ``du``, extended to all 1-forms by the Leibniz rule and skew
  symmetry.  This is the input for the converse direction (algebroid to
  Poisson).
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from .algebra import (
    INHOMOGENEOUS,
    AlgebraElement,
    Generator,
    Key,
    Signature,
    SignatureError,
    SuperForm,
    random_homogeneous,
    split_parity,
)
from .forms import Derivation, _coefficient_key, _delta_generators, apply, commutator, contract, delta, evaluate, random_form
from .poisson import GradedPoissonStructure, jacobiator_of
from .report import FAIL, PASS, SKIPPED, CheckResult, Report, first_failure


def _sign(e: int) -> int:
    return -1 if e & 1 else 1


def _one_form_check(alpha: SuperForm):
    if alpha and alpha.form_degree() != 1:
        raise ValueError(f"expected a 1-form, got form degree {alpha.form_degree()}")


def _one_form_terms(alpha: SuperForm):
    """Split a 1-form into ``(coefficient, generator)`` pairs."""
    fd = alpha.form_degree()
    if alpha and fd != 1:
        raise ValueError(f"expected a 1-form, got form degree {fd}")
    sig = alpha.sig
    for k, c in alpha.items():
        (g,) = _delta_generators(k)
        yield AlgebraElement._raw(sig, {_coefficient_key(k): c}), g


def _bilinear(cache: dict, alpha: SuperForm, beta: SuperForm, unit_bracket) -> SuperForm:
    """Extend ``unit_bracket`` on unit monomials bilinearly over the rationals."""
    sig = alpha.sig
    acc = {}
    one = Fraction(1)
    for ka, ca in alpha.items():
        for kb, cb in beta.items():
            unit = cache.get((ka, kb))
            if unit is None:
                unit = cache[(ka, kb)] = unit_bracket(SuperForm._raw(sig, {ka: one}), SuperForm._raw(sig, {kb: one}))
            c = ca * cb
            for key, v in unit.items():
                acc[key] = acc.get(key, 0) + c * v
    return SuperForm._raw(sig, {k: v for k, v in acc.items() if v})


class PoissonAlgebroid:
    """The algebroid induced by a graded Poisson structure."""

    def __init__(self, P: GradedPoissonStructure):
        self.poisson = P
        self.sig = P.sig
        self.k = P.k
        self._cache = {}

    def __repr__(self):
        return f"PoissonAlgebroid({self.poisson!r})"

    def anchor(self, alpha: SuperForm) -> Derivation:
        out = Derivation.zero(self.sig, ((self.k + (alpha.parity() if alpha.parity() != INHOMOGENEOUS else 0)) & 1))
        for a, g in _one_form_terms(alpha):
            out = out + self.poisson.hamiltonian(g).lmul(a)
        return out

    def generator_anchor(self, g: Generator) -> Derivation:
        return self.poisson.hamiltonian(g)

    def bracket(self, alpha: SuperForm, beta: SuperForm) -> SuperForm:
        _one_form_check(alpha)
        _one_form_check(beta)
        return _bilinear(self._cache, alpha, beta, self._bracket_split)

    def _bracket_split(self, alpha: SuperForm, beta: SuperForm) -> SuperForm:
        out = SuperForm(self.sig)
        for pa, a in split_parity(alpha):
            for pb, b in split_parity(beta):
                out = out + self._bracket_homogeneous(a, pa, b, pb)
        return out

    def _bracket_homogeneous(self, a, pa, b, pb) -> SuperForm:
        k = self.k
        ra, rb = self.anchor(a), self.anchor(b)
        first = contract(ra, delta(b))
        second = contract(rb, delta(a)).scale(_sign((pa + k) * (pb + k)))
        third = delta(evaluate(b, ra))
        return first - second + third

    def to_data(self) -> "AlgebroidData":
        """Anchor and bracket on the generating 1-forms, as raw data."""
        gens = self.sig.generators
        anchor = {g: self.poisson.hamiltonian(g) for g in gens}
        brackets = {}
        for u, v in itertools.combinations_with_replacement(gens, 2):
            val = self.bracket(self.sig.d(u), self.sig.d(v))
            if val:
                brackets[(u, v)] = val
        return AlgebroidData(self.sig, anchor, brackets, name=self.poisson.name)


class AlgebroidData:
    """Anchor derivations ``rho(du)`` and brackets ``[[du, dv]]`` on generators.

    The anchor is an even map, so ``rho(du)`` has the parity of ``u``.
    A bracket missing in one orientation is recovered by skew symmetry;
    missing entirely, it is zero.
    """

    k = 0

    def __init__(
        self,
        sig: Signature,
        anchor: Optional[Mapping] = None,
        brackets: Optional[Mapping] = None,
        name: str = "",
    ):
        self.sig = sig
        self.name = name
        self._cache = {}
        self.anchors: Dict[Generator, Derivation] = {}
        for g in sig.generators:
            self.anchors[g] = Derivation.zero(sig, g.parity)
        for g, D in (anchor or {}).items():
            g = sig.check(g)
            if not isinstance(D, Derivation):
                D = Derivation(sig, D, g.parity)
            elif D.parity not in (g.parity,) and not D.is_zero():
                raise ValueError(f"anchor of d{g} must have parity {g.parity}")
            self.anchors[g] = D
        self.brackets: Dict[Tuple[Generator, Generator], SuperForm] = {}
        for (u, v), val in (brackets or {}).items():
            u, v = sig.check(u), sig.check(v)
            if val and val.form_degree() != 1:
                raise ValueError(f"bracket [[d{u}, d{v}]] must be a 1-form")
            if val and val.parity() not in ((u.parity + v.parity) & 1,):
                raise ValueError(f"bracket [[d{u}, d{v}]] has the wrong parity")
            if val:
                self.brackets[(u, v)] = val

    def __repr__(self):
        return f"AlgebroidData({self.name or 'raw'}, sig={self.sig})"

    def generator_anchor(self, g: Generator) -> Derivation:
        return self.anchors[g]

    def generator_bracket(self, u: Generator, v: Generator) -> SuperForm:
        if (u, v) in self.brackets:
            return self.brackets[(u, v)]
        if (v, u) in self.brackets:
            return self.brackets[(v, u)].scale(-_sign(u.parity * v.parity))
        return SuperForm(self.sig)

    def anchor(self, alpha: SuperForm) -> Derivation:
        p = alpha.parity()
        out = Derivation.zero(self.sig, p if p != INHOMOGENEOUS else 0)
        for a, g in _one_form_terms(alpha):
            out = out + self.anchors[g].lmul(a)
        return out

    def bracket(self, alpha: SuperForm, beta: SuperForm) -> SuperForm:
        """Extension by ``[[X, fY]] = rho(X)(f) Y + (-1)**(pX pf) f [[X, Y]]``."""
        _one_form_check(alpha)
        _one_form_check(beta)
        return _bilinear(self._cache, alpha, beta, self._leibniz)

    def _leibniz(self, alpha: SuperForm, beta: SuperForm) -> SuperForm:
        sig = self.sig
        out = SuperForm(sig)
        for a, u in _one_form_terms(alpha):
            pa = a.parity()
            du = sig.d(u)
            for b, v in _one_form_terms(beta):
                pb = b.parity()
                dv = sig.d(v)
                # [[a du, dv]] = -(-1)**((pa+pu) pv) rho(dv)(a) du + a [[du, dv]]
                inner = (apply(self.anchors[v], a) * du).scale(-_sign((pa + u.parity) * v.parity))
                inner = inner + a * self.generator_bracket(u, v)
                # [[a du, b dv]] = rho(a du)(b) dv + (-1)**((pa+pu) pb) b [[a du, dv]]
                term = a * apply(self.anchors[u], b) * dv
                term = term + (b * inner).scale(_sign((pa + u.parity) * pb))
                out = out + term
        return out


Algebroid = Union[PoissonAlgebroid, AlgebroidData]


def as_algebroid(source) -> Algebroid:
    if isinstance(source, (PoissonAlgebroid, AlgebroidData)):
        return source
    if isinstance(source, GradedPoissonStructure):
        return PoissonAlgebroid(source)
    raise TypeError(f"not an algebroid source: {source!r}")


def anchor(A, alpha: SuperForm) -> Derivation:
    """``rho(sum a_i du_i) = sum a_i rho(du_i)``."""
    return as_algebroid(A).anchor(alpha)


def algebroid_bracket(A, alpha: SuperForm, beta: SuperForm) -> SuperForm:
    return as_algebroid(A).bracket(alpha, beta)


def formula_bracket(A, alpha: SuperForm, beta: SuperForm) -> SuperForm:
    """The bracket rebuilt from the anchor alone (superalgebroid signs)::

        rho(a) _| delta b - (-1)**(pa pb) rho(b) _| delta a + delta(b(rho(a)))
    """
    A = as_algebroid(A)
    out = SuperForm(A.sig)
    for pa, a in split_parity(alpha):
        ra = A.anchor(a)
        for pb, b in split_parity(beta):
            rb = A.anchor(b)
            out = (
                out
                + contract(ra, delta(b))
                - contract(rb, delta(a)).scale(_sign(pa * pb))
                + delta(evaluate(b, ra))
            )
    return out


def induced_bracket(A, f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    """``{f, g} = rho(delta f)(g)``."""
    A = as_algebroid(A)
    return apply(A.anchor(delta(f)), g)


def induced_structure(A) -> GradedPoissonStructure:
    """The bracket ``rho(du)(v)`` on generators, as a degree-0 table."""
    A = as_algebroid(A)
    table = {}
    for u in A.sig.generators:
        for v in A.sig.generators:
            table[(u, v)] = apply(A.generator_anchor(u), A.sig.gen(v))
    return GradedPoissonStructure(A.sig, 0, table, name=f"induced({getattr(A, 'name', '')})")


# -- sampling ---------------------------------------------------------------------


def sample_one_form(sig: Signature, rng: random.Random, parity: Optional[int] = None, **kw) -> SuperForm:
    kw.setdefault("max_poly_degree", 1)
    kw.setdefault("max_odd_degree", 1)
    kw.setdefault("terms", 2)
    for _ in range(20):
        p = rng.randint(0, 1) if parity is None else parity
        w = random_form(sig, rng, 1, parity=p, **kw)
        if w:
            return w
    return sig.d(sig.generators[0]) if sig.generators else SuperForm(sig)


def _witness(*forms, defect=None) -> dict:
    out = {"inputs": [str(f) for f in forms]}
    if defect is not None:
        out["defect"] = str(defect)
    return out


def _require_even(A):
    if isinstance(A, PoissonAlgebroid) and A.k % 2:
        raise ValueError(f"superalgebroid checks need an even degree, got k={A.k}")


def check_superalgebroid(A, seed: int = 0, samples: int = 64) -> Report:
    """Skew symmetry, super Jacobi and Leibniz for the bracket on 1-forms."""
    A = as_algebroid(A)
    _require_even(A)
    sig = A.sig
    report = Report(f"Lie superalgebroid ({A!r})", seed)
    dgens = [sig.d(g) for g in sig.generators]
    br = A.bracket

    rng = random.Random(seed)
    pairs = list(itertools.product(dgens, dgens)) + [
        (sample_one_form(sig, rng), sample_one_form(sig, rng)) for _ in range(samples)
    ]
    report.add(
        first_failure(
            "skew-symmetry",
            pairs,
            lambda ab: br(ab[0], ab[1]) + br(ab[1], ab[0]).scale(_sign(ab[0].parity() * ab[1].parity())),
            lambda ab, d: _witness(*ab, defect=d),
        )
    )

    def jacobi_defect(t):
        a, b, c = t
        return br(a, br(b, c)) - br(br(a, b), c) - br(b, br(a, c)).scale(_sign(a.parity() * b.parity()))

    rng = random.Random(seed + 1)
    triples = list(itertools.product(dgens, repeat=3)) + [
        tuple(sample_one_form(sig, rng) for _ in range(3)) for _ in range(samples)
    ]
    report.add(first_failure("jacobi", triples, jacobi_defect, lambda t, d: _witness(*t, defect=d)))

    def leibniz_defect(t):
        X, f, Y = t
        lhs = br(X, f * Y)
        rhs = A.anchor(X)(f) * Y + (f * br(X, Y)).scale(_sign(X.parity() * f.parity()))
        return lhs - rhs

    rng = random.Random(seed + 2)
    cases = [
        (sample_one_form(sig, rng), random_homogeneous(sig, rng), sample_one_form(sig, rng)) for _ in range(samples)
    ]
    report.add(first_failure("leibniz", cases, leibniz_defect, lambda t, d: _witness(*t, defect=d)))
    return report


def check_anchor_skew(A, seed: int = 0, samples: int = 64) -> Report:
    """``a(rho(b)) = -(-1)**(pa pb) b(rho(a))`` on generator and sampled pairs."""
    A = as_algebroid(A)
    sig = A.sig
    report = Report(f"skew-supersymmetric anchor ({A!r})", seed)
    dgens = [sig.d(g) for g in sig.generators]
    rng = random.Random(seed)
    pairs = list(itertools.product(dgens, dgens)) + [
        (sample_one_form(sig, rng), sample_one_form(sig, rng)) for _ in range(samples)
    ]

    def defect(ab):
        a, b = ab
        return evaluate(a, A.anchor(b)) + evaluate(b, A.anchor(a)).scale(_sign(a.parity() * b.parity()))

    report.add(first_failure("anchor-skew", pairs, defect, lambda ab, d: _witness(*ab, defect=d)))
    return report


def check_poisson_type(A, seed: int = 0, samples: int = 64) -> Report:
    """Jacobi for the induced bracket versus the anchor being a morphism.

    The two conditions are checked independently; ``conditions-agree``
    passes when they pass or fail together.  ``poisson-type`` is the
    verdict: skew anchor and Jacobi.
    """
    A = as_algebroid(A)
    sig = A.sig
    report = Report(f"Poisson type ({A!r})", seed)
    gens = sig.generators

    def br(f, g):
        return induced_bracket(A, f, g)

    rng = random.Random(seed)
    triples = [tuple(sig.gen(x) for x in t) for t in itertools.product(gens, repeat=3)]
    triples += [tuple(random_homogeneous(sig, rng) for _ in range(3)) for _ in range(samples)]
    jac = report.add(
        first_failure(
            "induced-jacobi",
            triples,
            lambda t: jacobiator_of(br, 0, *t),
            lambda t, d: _witness(*t, defect=d),
        )
    )

    def morphism_defect(fg):
        f, g = fg
        lhs = commutator(A.anchor(delta(f)), A.anchor(delta(g)))
        rhs = A.anchor(delta(br(f, g)))
        diff = lhs - rhs
        if diff.is_zero():
            return None
        return "; ".join(f"{u} -> {v}" for u, v in zip(sig.generators, diff.values) if v)

    rng = random.Random(seed + 1)
    pairs = [(sig.gen(u), sig.gen(v)) for u, v in itertools.product(gens, gens)]
    pairs += [(random_homogeneous(sig, rng), random_homogeneous(sig, rng)) for _ in range(samples)]
    mor = report.add(
        first_failure("anchor-morphism", pairs, morphism_defect, lambda fg, d: _witness(*fg, defect=d))
    )
    agree = jac.passed == mor.passed
    report.add(
        CheckResult(
            "conditions-agree",
            PASS if agree else FAIL,
            reason=f"jacobi {jac.status}, anchor-morphism {mor.status}",
        )
    )
    skew = check_anchor_skew(A, seed + 2, samples)["anchor-skew"]
    report.add(skew)
    verdict = skew.passed and jac.passed
    report.add(
        CheckResult(
            "poisson-type",
            PASS if verdict else FAIL,
            reason="Poisson type" if verdict else "not Poisson type",
        )
    )
    return report


def sample_closed_one_form(sig: Signature, rng: random.Random) -> SuperForm:
    """A closed 1-form ``delta(f)`` for a random f (closed = exact here)."""
    for _ in range(20):
        f = random_homogeneous(sig, rng, max_poly_degree=2, max_degree=2)
        w = delta(f)
        if w:
            return w
    return SuperForm(sig)


def check_hypotheses(A, seed: int = 0, samples: int = 64) -> Report:
    """Skew anchor and ``[[du, dv]] = delta(rho(du)(v))`` on generators."""
    A = as_algebroid(A)
    sig = A.sig
    report = Report(f"reconstruction hypotheses ({A!r})", seed)
    report.add(check_anchor_skew(A, seed, samples)["anchor-skew"])
    dpairs = list(itertools.product(sig.generators, sig.generators))
    report.add(
        first_failure(
            "exact-generator-brackets",
            dpairs,
            lambda uv: A.bracket(sig.d(uv[0]), sig.d(uv[1])) - delta(induced_bracket(A, sig.gen(uv[0]), sig.gen(uv[1]))),
            lambda uv, d: _witness(sig.d(uv[0]), sig.d(uv[1]), defect=d),
        )
    )
    return report


def reconstruct_bracket(A, seed: int = 0, samples: int = 64, closed_samples: int = 32) -> Report:
    """Compare the bracket with the one rebuilt from the anchor alone.

    When the hypotheses (skew anchor, brackets of exact generators exact)
    hold, the bracket must agree with :func:`formula_bracket` everywhere,
    and the bracket of two closed 1-forms must be closed.  The converse
    argument only covers independent differentials; the generator pairs
    sampled here are ``du, dv`` for distinct or equal generators, and
    random A-combinations.
    """
    A = as_algebroid(A)
    sig = A.sig
    report = Report(f"bracket reconstruction ({A!r})", seed)
    hyp = check_hypotheses(A, seed, samples)
    for c in hyp.checks:
        report.add(CheckResult("hypothesis:" + c.name, c.status, c.samples, c.witness, c.reason))
    if not hyp.passed:
        report.add(CheckResult("formula-agreement", SKIPPED, reason="hypotheses not met"))
        report.add(CheckResult("closed-brackets-closed", SKIPPED, reason="hypotheses not met"))
        return report
    dgens = [sig.d(g) for g in sig.generators]
    rng = random.Random(seed + 3)
    pairs = list(itertools.product(dgens, dgens)) + [
        (sample_one_form(sig, rng), sample_one_form(sig, rng)) for _ in range(samples)
    ]
    agreement = first_failure(
        "formula-agreement",
        pairs,
        lambda ab: A.bracket(*ab) - formula_bracket(A, *ab),
        lambda ab, d: _witness(*ab, defect=d),
    )
    agreement.reason = "generator pairs include dependent ones (du, du); the argument itself only covers independent differentials"
    report.add(agreement)
    rng = random.Random(seed + 4)
    closed = [(sample_closed_one_form(sig, rng), sample_closed_one_form(sig, rng)) for _ in range(closed_samples)]
    report.add(
        first_failure(
            "closed-brackets-closed",
            closed,
            lambda ab: delta(A.bracket(*ab)),
            lambda ab, d: _witness(*ab, defect=d),
        )
    )
    return report


def check_closed_pairs_vanish(A, seed: int = 0, samples: int = 32) -> CheckResult:
    """The literal statement ``delta a = 0 = delta b  =>  [[a, b]] = 0``.

    This is stronger than ``closed-brackets-closed`` and fails for most
    non-abelian structures, e.g. so(3) with ``[[dx1, dx2]] = dx3``.  Kept
    as a separate check so it can be reported without hiding it.
    """
    A = as_algebroid(A)
    rng = random.Random(seed + 4)
    closed = [(sample_closed_one_form(A.sig, rng), sample_closed_one_form(A.sig, rng)) for _ in range(samples)]
    return first_failure(
        "closed-brackets-vanish",
        closed,
        lambda ab: A.bracket(*ab),
        lambda ab, d: _witness(*ab, defect=d),
    )


__all__ = [
    "check_closed_pairs_vanish",
    "PoissonAlgebroid",
    "AlgebroidData",
    "anchor",
    "algebroid_bracket",
    "formula_bracket",
    "induced_bracket",
    "induced_structure",
    "check_superalgebroid",
    "check_anchor_skew",
    "check_poisson_type",
    "check_hypotheses",
    "reconstruct_bracket",
    "sample_one_form",
    "sample_closed_one_form",
]

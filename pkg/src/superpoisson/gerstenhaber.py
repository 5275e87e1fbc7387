"""The Gerstenhaber superbracket on Omega(A).

On forms of degree at most one the bracket is fixed by the relations::

    [f, g] = 0,   [f, dg] = [df, g] = {f, g},   [df, dg] = d{f, g}

and the graded Leibniz rule.  On decomposable forms A = a_1...a_k and
B = b_1...b_l built from 1-forms it is the double sum

    [A, B] = sum_ij (-1)**(a_i + b_j + k - 1) A_i [a_i, b_j] B_j

with ``a_i = p(a_i) sum_{p>i} p(a_p) + i``, ``b_j = p(b_j) sum_{q<j} p(b_q) + j``
and ``A_i``, ``B_j`` the products with the i-th (j-th) factor left out.
Here k is the number of factors of A, not the degree of the Poisson
structure.

A source is a :class:`GradedPoissonStructure` (the relations route) or an
algebroid (:class:`AlgebroidData` / :class:`PoissonAlgebroid`), in which case
the bracket of 1-forms is the algebroid bracket and ``[f, b]`` is read off
the anchor.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import List, Optional, Tuple

from .algebra import AlgebraElement, Signature, SuperForm, random_homogeneous
from .algebroid import AlgebroidData, PoissonAlgebroid, as_algebroid, induced_bracket, sample_one_form
from .forms import _coefficient_key, _delta_generators, apply, delta, random_bihomogeneous
from .poisson import GradedPoissonStructure, bracket as poisson_bracket
from .report import FAIL, PASS, SKIPPED, CheckResult, Report, first_failure


def _sign(e: int) -> int:
    return -1 if e & 1 else 1


def _parity(w: SuperForm) -> int:
    p = w.parity()
    return p if isinstance(p, int) else 0


class _Source:
    """Uniform access to the data the bracket needs."""

    def __init__(self, S):
        if isinstance(S, _Source):
            self.__dict__.update(S.__dict__)
            return
        self.raw = S
        if isinstance(S, GradedPoissonStructure):
            self.poisson: Optional[GradedPoissonStructure] = S
            self.algebroid = None
        else:
            self.poisson = None
            self.algebroid = as_algebroid(S)
        self.sig: Signature = S.sig
        self.k = S.k
        # bracket of unit monomials; the bracket is bilinear over the rationals
        self.cache = {}

    def __repr__(self):
        return repr(self.raw)

    def function_form(self, f: AlgebraElement, beta: SuperForm) -> SuperForm:
        """``[f, beta]`` for a function f and a 1-form beta."""
        sig = self.sig
        out = SuperForm(sig)
        pf = _parity(f)
        for key, c in beta.items():
            (v,) = _delta_generators(key)
            b = AlgebraElement._raw(sig, {_coefficient_key(key): c})
            pb = b.parity()
            if self.poisson is not None:
                # [f, b dv] = (-1)**(pf pb) b {f, v}
                val = b * poisson_bracket(self.poisson, f, sig.gen(v))
                out = out + val.scale(_sign(pf * pb))
            else:
                # [f, beta] = -(-1)**(pf pbeta) rho(beta)(f)
                val = b * apply(self.algebroid.generator_anchor(v), f)
                out = out + val.scale(-_sign(pf * (pb + v.parity)))
        return out

    def one_forms(self, alpha: SuperForm, beta: SuperForm) -> SuperForm:
        """``[alpha, beta]`` for two 1-forms."""
        acc = {}
        one = Fraction(1)
        for ka, ca in alpha.items():
            for kb, cb in beta.items():
                unit = self.cache.get(("1", ka, kb))
                if unit is None:
                    unit = self.cache[("1", ka, kb)] = self._one_form_monomials(ka, one, kb, one)
                c = ca * cb
                for key, v in unit.items():
                    acc[key] = acc.get(key, 0) + c * v
        return SuperForm._raw(self.sig, {k: v for k, v in acc.items() if v})

    def _one_form_monomials(self, ka, ca, kb, cb) -> SuperForm:
        sig = self.sig
        if self.algebroid is not None:
            return self.algebroid.bracket(SuperForm._raw(sig, {ka: ca}), SuperForm._raw(sig, {kb: cb}))
        P = self.poisson
        (u,) = _delta_generators(ka)
        a = AlgebraElement._raw(sig, {_coefficient_key(ka): ca})
        pa, pu = a.parity(), u.parity
        (v,) = _delta_generators(kb)
        b = AlgebraElement._raw(sig, {_coefficient_key(kb): cb})
        pb, pv = b.parity(), v.parity
        du, dv = sig.d(u), sig.d(v)
        # [dv, a du] = -(-1)**(pv pa) {a, v} du + (-1)**(pv pa) a d{v, u}
        inner = (poisson_bracket(P, a, sig.gen(v)) * du).scale(-1) + a * delta(P.lookup(v, u))
        inner = inner.scale(_sign(pv * pa))
        # [a du, dv] = -(-1)**((pa+pu) pv) [dv, a du]
        t2 = inner.scale(-_sign((pa + pu) * pv))
        # [a du, b] dv = -(-1)**(pu pb) a {b, u} dv
        t1 = (a * poisson_bracket(P, b, sig.gen(u)) * dv).scale(-_sign(pu * pb))
        return t1 + (b * t2).scale(_sign((pa + pu) * pb))


def _factors(key, c, sig) -> Tuple[List[SuperForm], AlgebraElement]:
    """``c * key`` as a list of 1-forms ``[c du_1, du_2, ...]``, or a function."""
    gens = _delta_generators(key)
    coeff = AlgebraElement._raw(sig, {_coefficient_key(key): c})
    if not gens:
        return [], coeff
    first = coeff * sig.d(gens[0])
    return [first] + [sig.d(g) for g in gens[1:]], coeff


def _product(forms: List[SuperForm], sig: Signature) -> SuperForm:
    out = sig.one()
    for w in forms:
        out = out * w
    return out


def _function_decomposable(src: _Source, f: AlgebraElement, B: List[SuperForm]) -> SuperForm:
    """``[f, b_1...b_l]`` by the Leibniz rule."""
    sig = src.sig
    pf = _parity(f)
    out = SuperForm(sig)
    before = 0
    for j, b in enumerate(B):
        term = src.function_form(f, b)
        if term:
            piece = _product(B[:j], sig) * term * _product(B[j + 1:], sig)
            out = out + piece.scale(_sign(j + pf * before))
        before += _parity(b)
    return out


def _decomposables(src: _Source, A: List[SuperForm], B: List[SuperForm]) -> SuperForm:
    sig = src.sig
    k = len(A)
    pa = [_parity(a) for a in A]
    pb = [_parity(b) for b in B]
    out = SuperForm(sig)
    for i in range(k):
        ai = pa[i] * sum(pa[i + 1:]) + (i + 1)
        rest_a = _product(A[:i] + A[i + 1:], sig)
        for j in range(len(B)):
            bj = pb[j] * sum(pb[:j]) + (j + 1)
            br = src.one_forms(A[i], B[j])
            if not br:
                continue
            term = rest_a * br * _product(B[:j] + B[j + 1:], sig)
            out = out + term.scale(_sign(ai + bj + k - 1))
    return out


def _bracket_terms(src: _Source, ka, ca, kb, cb) -> SuperForm:
    sig = src.sig
    A, f = _factors(ka, ca, sig)
    B, g = _factors(kb, cb, sig)
    if not A and not B:
        return SuperForm(sig)
    if not A:
        return _function_decomposable(src, f, B)
    if not B:
        # [alpha, g] = -(-1)**((|alpha|-1)(|g|-1) + p p) [g, alpha]
        alpha = _product(A, sig)
        e = (len(A) - 1) + _parity(alpha) * _parity(g)
        return _function_decomposable(src, g, A).scale(-_sign(e))
    return _decomposables(src, A, B)


def gerst_bracket(S, alpha: SuperForm, beta: SuperForm) -> SuperForm:
    """``[alpha, beta]``, bilinear over the monomials of both arguments."""
    src = _Source(S)
    acc = {}
    one = Fraction(1)
    for ka, ca in alpha.items():
        for kb, cb in beta.items():
            unit = src.cache.get((ka, kb))
            if unit is None:
                unit = src.cache[(ka, kb)] = _bracket_terms(src, ka, one, kb, one)
            c = ca * cb
            for key, v in unit.items():
                acc[key] = acc.get(key, 0) + c * v
    return SuperForm._raw(src.sig, {k: v for k, v in acc.items() if v})


def poisson_from_gerstenhaber(S, f, g) -> AlgebraElement:
    """``{f, g} := [f, dg]``."""
    sig = S.sig
    if not isinstance(f, SuperForm):
        f = sig.const(f)
    if not isinstance(g, SuperForm):
        g = sig.const(g)
    return gerst_bracket(S, f, delta(g)).to_element()


# -- checks -----------------------------------------------------------------------


def _odd_degree_skip(src: _Source, report: Report, names) -> bool:
    if src.k % 2:
        for n in names:
            report.add(CheckResult(n, SKIPPED, reason="odd degree"))
        return True
    return False


def sample_form(sig: Signature, rng: random.Random, max_degree: int) -> SuperForm:
    """A nonzero bihomogeneous form of form degree at most ``max_degree``."""
    for _ in range(20):
        r = rng.randint(0, max_degree)
        w = random_bihomogeneous(sig, rng, r, terms=2, max_poly_degree=1, max_odd_degree=1)
        if w:
            return w
    return sig.one()


def _witness(*forms, defect=None) -> dict:
    out = {"inputs": [str(f) for f in forms]}
    if defect is not None:
        out["defect"] = str(defect)
    return out


def _generator_forms(sig: Signature) -> List[SuperForm]:
    return [sig.gen(g) for g in sig.generators] + [sig.d(g) for g in sig.generators]


def check_gerstenhaber(S, seed: int = 0, samples: int = 64, max_degree: int = 3) -> Report:
    """Skew symmetry, Jacobi and Leibniz for the bracket on Omega(A)."""
    if max_degree < 2:
        raise ValueError("max_degree must be at least 2")
    src = _Source(S)
    sig = src.sig
    report = Report(f"Gerstenhaber superalgebra ({src!r})", seed)
    names = ("skew-symmetry", "jacobi", "leibniz")
    if _odd_degree_skip(src, report, names):
        return report

    def br(a, b):
        return gerst_bracket(src, a, b)

    def eps(a, b):
        return _sign((a.form_degree() - 1) * (b.form_degree() - 1) + _parity(a) * _parity(b))

    gens = _generator_forms(sig)
    rng = random.Random(seed)
    pairs = list(itertools.product(gens, gens)) + [
        (sample_form(sig, rng, max_degree), sample_form(sig, rng, max_degree)) for _ in range(samples)
    ]
    report.add(
        first_failure(
            "skew-symmetry",
            pairs,
            lambda ab: br(*ab) + br(ab[1], ab[0]).scale(eps(*ab)),
            lambda ab, d: _witness(*ab, defect=d),
        )
    )

    def jacobi_defect(t):
        a, b, c = t
        return br(a, br(b, c)) - br(br(a, b), c) - br(b, br(a, c)).scale(eps(a, b))

    rng = random.Random(seed + 1)
    triples = list(itertools.product(gens, repeat=3)) + [
        tuple(sample_form(sig, rng, max_degree) for _ in range(3)) for _ in range(samples)
    ]
    report.add(first_failure("jacobi", triples, jacobi_defect, lambda t, d: _witness(*t, defect=d)))

    def leibniz_defect(t):
        a, b, c = t
        e = (a.form_degree() - 1) * b.form_degree() + _parity(a) * _parity(b)
        return br(a, b * c) - br(a, b) * c - (b * br(a, c)).scale(_sign(e))

    rng = random.Random(seed + 2)
    triples = [tuple(sample_form(sig, rng, max_degree) for _ in range(3)) for _ in range(samples)]
    report.add(first_failure("leibniz", triples, leibniz_defect, lambda t, d: _witness(*t, defect=d)))
    return report


def differential_defect(S, alpha: SuperForm, beta: SuperForm) -> SuperForm:
    """``d[a, b] - [da, b] - (-1)**(|a|-1) [a, db]`` for bihomogeneous a."""
    src = _Source(S)
    e = alpha.form_degree() - 1
    return (
        delta(gerst_bracket(src, alpha, beta))
        - gerst_bracket(src, delta(alpha), beta)
        - gerst_bracket(src, alpha, delta(beta)).scale(_sign(e))
    )


def check_differential(S, seed: int = 0, samples: int = 64, max_degree: int = 2) -> Report:
    """Whether d is a degree 1 derivation of the bracket.

    The identity runs on generator pairs, on the reduction cases
    ``(df, g dh)`` and on sampled bihomogeneous pairs.  A differential
    Gerstenhaber superalgebra is in particular a Gerstenhaber
    superalgebra, so the Gerstenhaber axioms are part of the report.
    """
    src = _Source(S)
    sig = src.sig
    report = Report(f"differential Gerstenhaber superalgebra ({src!r})", seed)
    names = ("derivation", "reduction-cases", "gerstenhaber-axioms")
    if _odd_degree_skip(src, report, names):
        return report

    gens = _generator_forms(sig)
    rng = random.Random(seed)
    pairs = list(itertools.product(gens, gens)) + [
        (sample_form(sig, rng, max_degree), sample_form(sig, rng, max_degree)) for _ in range(samples)
    ]
    report.add(
        first_failure(
            "derivation",
            pairs,
            lambda ab: differential_defect(src, *ab),
            lambda ab, d: _witness(*ab, defect=d),
        )
    )

    rng = random.Random(seed + 1)
    cases = []
    for u, v, w in itertools.product(sig.generators, repeat=3):
        cases.append((sig.d(u), sig.gen(v) * sig.d(w)))
    for _ in range(samples):
        f = random_homogeneous(sig, rng, max_poly_degree=2)
        g = random_homogeneous(sig, rng)
        h = random_homogeneous(sig, rng, max_poly_degree=2)
        cases.append((delta(f), g * delta(h)))
    report.add(
        first_failure(
            "reduction-cases",
            cases,
            lambda ab: differential_defect(src, *ab),
            lambda ab, d: _witness(*ab, defect=d),
        )
    )

    gerst = check_gerstenhaber(src, seed + 2, samples // 4, max_degree=2)
    failed = [c for c in gerst.checks if c.status == FAIL]
    if failed:
        c = failed[0]
        report.add(CheckResult("gerstenhaber-axioms", FAIL, c.samples, c.witness, reason=f"{c.name} fails"))
    else:
        report.add(CheckResult("gerstenhaber-axioms", PASS, sum(c.samples for c in gerst.checks)))
    return report


def check_roundtrip(S, seed: int = 0, samples: int = 64) -> Report:
    """``[f, dg]`` against the source's own bracket on A."""
    src = _Source(S)
    sig = src.sig
    report = Report(f"Poisson bracket from [f, dg] ({src!r})", seed)
    if src.poisson is not None:
        def original(f, g):
            return poisson_bracket(src.poisson, f, g)
    else:
        def original(f, g):
            return induced_bracket(src.algebroid, f, g)

    rng = random.Random(seed)
    pairs = [(sig.gen(u), sig.gen(v)) for u, v in itertools.product(sig.generators, repeat=2)]
    pairs += [(random_homogeneous(sig, rng), random_homogeneous(sig, rng)) for _ in range(samples)]
    report.add(
        first_failure(
            "roundtrip",
            pairs,
            lambda fg: poisson_from_gerstenhaber(src, *fg) - original(*fg),
            lambda fg, d: _witness(*fg, defect=d),
        )
    )
    return report


def check_restriction(S, seed: int = 0, samples: int = 64) -> Report:
    """The bracket of two 1-forms against the algebroid bracket."""
    src = _Source(S)
    sig = src.sig
    report = Report(f"restriction to 1-forms ({src!r})", seed)
    if _odd_degree_skip(src, report, ("restriction",)):
        return report
    alg = src.algebroid if src.algebroid is not None else PoissonAlgebroid(src.poisson)
    dgens = [sig.d(g) for g in sig.generators]
    rng = random.Random(seed)
    pairs = list(itertools.product(dgens, dgens)) + [
        (sample_one_form(sig, rng), sample_one_form(sig, rng)) for _ in range(samples)
    ]
    report.add(
        first_failure(
            "restriction",
            pairs,
            lambda ab: gerst_bracket(src, *ab) - alg.bracket(*ab),
            lambda ab, d: _witness(*ab, defect=d),
        )
    )
    return report


__all__ = [
    "gerst_bracket",
    "poisson_from_gerstenhaber",
    "check_gerstenhaber",
    "check_differential",
    "differential_defect",
    "check_roundtrip",
    "check_restriction",
    "sample_form",
]

"""Graded Poisson structures of degree k on A.

A structure is a table of brackets between generators.  It extends to all
of A as a bi-derivation::

    {f, gh} = {f, g} h + (-1)**((|f|+k)|g|) g {f, h}
    {gh, f} = g {h, f} + (-1)**(|h|(|f|+k)) {g, f} h

Missing table entries are zero; a missing orientation ``{v, u}`` is
recovered from ``{u, v}`` by graded skew-symmetry.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .algebra import (
    INHOMOGENEOUS,
    AlgebraElement,
    Generator,
    Key,
    Signature,
    SignatureError,
    SuperForm,
    de_rham_d,
    key_degree,
    partial,
    random_homogeneous,
    right_partial,
)
from .forms import Derivation, apply
from .report import FAIL, PASS, SKIPPED, CheckResult, Report, first_failure


def _sign(e: int) -> int:
    return -1 if e & 1 else 1


class GradedPoissonStructure:
    """Bracket table of degree ``k`` on the generators of ``sig``."""

    def __init__(self, sig: Signature, k: int, table: Optional[Mapping] = None, name: str = ""):
        self.sig = sig
        self.k = int(k)
        self.name = name
        self.table: Dict[Tuple[Generator, Generator], AlgebraElement] = {}
        for (u, v), val in (table or {}).items():
            u, v = sig.check(u), sig.check(v)
            if not isinstance(val, AlgebraElement):
                val = val.to_element() if isinstance(val, SuperForm) else sig.const(val)
            if val.sig != sig:
                raise SignatureError(f"table entry {{{u},{v}}} lives in another signature")
            if val:
                self.table[(u, v)] = val
        self._hamiltonians: Dict[Generator, Derivation] = {}

    def __repr__(self):
        return f"GradedPoissonStructure({self.name or 'table'}, sig={self.sig}, k={self.k})"

    def skew_sign(self, u: Generator, v: Generator) -> int:
        return _sign((u.degree + self.k) * (v.degree + self.k))

    def lookup(self, u, v) -> AlgebraElement:
        """``{u, v}`` on generators: stored value, skew image, or zero."""
        u, v = self.sig.check(u), self.sig.check(v)
        if (u, v) in self.table:
            return self.table[(u, v)]
        if (v, u) in self.table:
            return self.table[(v, u)].scale(-self.skew_sign(u, v))
        return self.sig.zero()

    def hamiltonian(self, u) -> Derivation:
        """The derivation ``{u, .}``, of parity ``|u| + k``."""
        u = self.sig.check(u)
        if u not in self._hamiltonians:
            values = {v: self.lookup(u, v) for v in self.sig.generators}
            self._hamiltonians[u] = Derivation(self.sig, values, (u.degree + self.k) & 1)
        return self._hamiltonians[u]

    def bracket(self, a, b, method: str = "derivative") -> AlgebraElement:
        return bracket(self, a, b, method)


def _as_element(P: GradedPoissonStructure, a) -> AlgebraElement:
    if isinstance(a, AlgebraElement):
        if a.sig != P.sig:
            raise SignatureError(f"signature mismatch: {a.sig} vs {P.sig}")
        return a
    if isinstance(a, SuperForm):
        if a.sig != P.sig:
            raise SignatureError(f"signature mismatch: {a.sig} vs {P.sig}")
        return a.to_element()
    return P.sig.const(a)


def bracket(P: GradedPoissonStructure, a, b, method: str = "derivative") -> AlgebraElement:
    """The bracket ``{a, b}`` of P.

    ``method="derivative"`` evaluates ``sum_u (a d/du) {u, b}`` with right
    partial derivatives in the first slot.  ``"left"`` and ``"right"`` are
    independent recursive evaluations that peel the first or the last
    factor off each monomial of ``a`` (and of ``b``); they exist to test
    that the extension does not depend on how monomials are factored.
    """
    a, b = _as_element(P, a), _as_element(P, b)
    if method == "derivative":
        out = P.sig.zero()
        for u in P.sig.generators:
            ra = right_partial(a, u)
            if ra:
                Xb = apply(P.hamiltonian(u), b)
                if Xb:
                    out = out + ra * Xb
        return out
    if method not in ("left", "right"):
        raise ValueError(f"unknown method {method!r}")
    out = P.sig.zero()
    for fa in _monomial_factors(a):
        for fb in _monomial_factors(b):
            out = out + _recursive(P, fa, fb, method)
    return out


def _monomial_factors(a: AlgebraElement):
    """Each term as ``(coefficient, [generators in written order])``."""
    for (e, o, _, _), c in a.items():
        gens = []
        for i, p in enumerate(e):
            gens.extend([Generator("x", i + 1)] * p)
        gens.extend(Generator("th", j + 1) for j in o)
        yield c, gens


def _word(P, gens) -> AlgebraElement:
    out = P.sig.one()
    for g in gens:
        out = out * P.sig.gen(g)
    return out


def _word_degree(gens) -> int:
    return sum(g.degree for g in gens)


def _recursive(P, fa, fb, method) -> AlgebraElement:
    ca, A = fa
    cb, B = fb
    return _rec_first(P, A, B, method).scale(ca * cb)


def _rec_first(P, A, B, method) -> AlgebraElement:
    """``{word A, word B}`` by the right-derivation rule in the first slot."""
    if not A:
        return P.sig.zero()
    if len(A) == 1:
        return _rec_second(P, A[0], B, method)
    q = _word_degree(B) + P.k
    if method == "left":
        u, rest = A[0], A[1:]
        # {u g, b} = u {g, b} + (-1)**(|g| q) {u, b} g
        first = P.sig.gen(u) * _rec_first(P, rest, B, method)
        second = _rec_second(P, u, B, method) * _word(P, rest)
        return first + second.scale(_sign(_word_degree(rest) * q))
    g, u = A[:-1], A[-1]
    # {g u, b} = g {u, b} + (-1)**(|u| q) {g, b} u
    first = _word(P, g) * _rec_second(P, u, B, method)
    second = _rec_first(P, g, B, method) * P.sig.gen(u)
    return first + second.scale(_sign(u.degree * q))


def _rec_second(P, u: Generator, B, method) -> AlgebraElement:
    """``{u, word B}`` by the Leibniz rule in the second slot."""
    if not B:
        return P.sig.zero()
    if len(B) == 1:
        return P.lookup(u, B[0])
    s = u.degree + P.k
    if method == "left":
        v, rest = B[0], B[1:]
        # {u, v h} = {u, v} h + (-1)**((|u|+k)|v|) v {u, h}
        return P.lookup(u, v) * _word(P, rest) + (P.sig.gen(v) * _rec_second(P, u, rest, method)).scale(
            _sign(s * v.degree)
        )
    g, v = B[:-1], B[-1]
    return _rec_second(P, u, g, method) * P.sig.gen(v) + (_word(P, g) * P.lookup(u, v)).scale(
        _sign(s * _word_degree(g))
    )


def _homogeneous_degree(a: AlgebraElement, what: str) -> int:
    d = a.degree()
    if d == INHOMOGENEOUS:
        raise ValueError(f"{what} must be homogeneous")
    return d


def jacobiator_of(br: Callable, k: int, f, g, h) -> AlgebraElement:
    """``{f,{g,h}} - {{f,g},h} - (-1)**((|f|+k)(|g|+k)) {g,{f,h}}`` for any bracket."""
    df = _homogeneous_degree(f, "f")
    dg = _homogeneous_degree(g, "g")
    _homogeneous_degree(h, "h")
    return br(f, br(g, h)) - br(br(f, g), h) - br(g, br(f, h)).scale(_sign((df + k) * (dg + k)))


def jacobiator(P: GradedPoissonStructure, f, g, h) -> AlgebraElement:
    f, g, h = (_as_element(P, x) for x in (f, g, h))
    return jacobiator_of(lambda a, b: bracket(P, a, b), P.k, f, g, h)


def _gens_text(*gs) -> list:
    return [str(g) for g in gs]


def _sample_triples(sig: Signature, rng: random.Random, count: int, **kw):
    for _ in range(count):
        yield tuple(random_homogeneous(sig, rng, **kw) for _ in range(3))


def check_axioms(P: GradedPoissonStructure, seed: int = 0, samples: int = 64) -> Report:
    """Degree, skew-symmetry, Jacobi and Leibniz checks with witnesses.

    Jacobi runs on every generator triple, which suffices for a
    bi-derivation, plus ``samples`` random homogeneous triples.
    """
    sig, k = P.sig, P.k
    report = Report(f"graded Poisson axioms ({P.name or 'table'}, k={k})", seed)
    gens = sig.generators

    # degree
    def degree_defect(uv):
        u, v = uv
        val = P.lookup(u, v)
        if not val:
            return None
        d = val.degree()
        want = u.degree + v.degree + k
        if d != want:
            return f"degree {d}, expected {want}"
        return None

    report.add(
        first_failure(
            "degree",
            list(itertools.product(gens, gens)),
            degree_defect,
            lambda uv, why: {"inputs": _gens_text(*uv), "value": str(P.lookup(*uv)), "defect": why},
        )
    )

    if not report.checks[-1].passed:
        # the Hamiltonian derivations have no fixed parity, so nothing else is meaningful
        for name in ("skew-symmetry", "jacobi", "leibniz"):
            report.add(CheckResult(name, SKIPPED, reason="table violates the degree constraint"))
        return report

    rng = random.Random(seed)
    pair_samples = [(random_homogeneous(sig, rng), random_homogeneous(sig, rng)) for _ in range(samples)]

    def skew_defect(ab):
        a, b = ab
        da, db = a.degree(), b.degree()
        return bracket(P, a, b) + bracket(P, b, a).scale(_sign((da + k) * (db + k)))

    gen_pairs = [(sig.gen(u), sig.gen(v)) for u, v in itertools.product(gens, gens)]
    report.add(
        first_failure(
            "skew-symmetry",
            gen_pairs + pair_samples,
            skew_defect,
            lambda ab, dfc: {"inputs": [str(x) for x in ab], "defect": str(dfc)},
        )
    )

    gen_triples = [tuple(sig.gen(x) for x in t) for t in itertools.product(gens, repeat=3)]
    rng = random.Random(seed + 1)
    triples = gen_triples + list(_sample_triples(sig, rng, samples))
    report.add(
        first_failure(
            "jacobi",
            triples,
            lambda t: jacobiator(P, *t),
            lambda t, dfc: {"inputs": [str(x) for x in t], "defect": str(dfc)},
        )
    )

    def leibniz_defect(t):
        f, g, h = t
        df, dg = f.degree(), g.degree()
        lhs = bracket(P, f, g * h)
        rhs = bracket(P, f, g) * h + (g * bracket(P, f, h)).scale(_sign((df + k) * dg))
        return lhs - rhs

    rng = random.Random(seed + 2)
    report.add(
        first_failure(
            "leibniz",
            list(_sample_triples(sig, rng, samples)),
            leibniz_defect,
            lambda t, dfc: {"inputs": [str(x) for x in t], "defect": str(dfc)},
        )
    )
    return report


# -- builders ---------------------------------------------------------------------


def _entry(sig: Signature, v) -> AlgebraElement:
    if isinstance(v, AlgebraElement):
        return v
    if isinstance(v, SuperForm):
        return v.to_element()
    if isinstance(v, str):
        from .expr import element

        return element(v, sig)
    return sig.const(Fraction(v))


def _matrix(sig: Signature, rows) -> list:
    rows = [[_entry(sig, v) for v in row] for row in rows]
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise ValueError("matrix must be square")
    return rows


def _require_symmetric(M, antisymmetric: bool = False):
    for i, j in itertools.combinations_with_replacement(range(len(M)), 2):
        other = -M[j][i] if antisymmetric else M[j][i]
        if M[i][j] != other:
            kind = "antisymmetric" if antisymmetric else "symmetric"
            raise ValueError(f"matrix is not {kind} at ({i + 1},{j + 1})")


def from_pseudoeuclidean(g) -> GradedPoissonStructure:
    """Exterior algebra on n odd generators with ``{th_i, th_j} = g_ij``, k = -2."""
    n = len(g)
    sig = Signature(0, n)
    M = _matrix(sig, g)
    _require_symmetric(M)
    for row in M:
        for v in row:
            if v and v.degree() != 0:
                raise ValueError("pseudoeuclidean metric entries must be constants")
    table = {}
    for i, j in itertools.combinations_with_replacement(range(n), 2):
        table[(Generator("th", i + 1), Generator("th", j + 1))] = M[i][j]
    return GradedPoissonStructure(sig, -2, table, name="pseudoeuclidean")


def from_metric_cosharp(gij) -> GradedPoissonStructure:
    """Forms on R^m with ``{x_i, .} = 0`` and ``{th_i, th_j} = g^{ij}(x)``, k = -2.

    ``gij`` are the inverse-metric components, polynomials in x.
    """
    m = len(gij)
    sig = Signature(m, m, True)
    M = _matrix(sig, gij)
    _require_symmetric(M)
    for row in M:
        for v in row:
            if v and v.degree() != 0:
                raise ValueError("metric components must be functions of x only")
    table = {}
    for i, j in itertools.combinations_with_replacement(range(m), 2):
        table[(Generator("th", i + 1), Generator("th", j + 1))] = M[i][j]
    return GradedPoissonStructure(sig, -2, table, name="metric")


def from_bivector(pij) -> GradedPoissonStructure:
    """Forms on a Poisson manifold R^m, k = -1.

    ``{x_i, x_j} = 0``, ``{th_i, x_j} = pi^{ij}``, ``{th_i, th_j} = d pi^{ij}``,
    where ``th_i`` stands for ``d x_i``.
    """
    m = len(pij)
    sig = Signature(m, m, True)
    M = _matrix(sig, pij)
    _require_symmetric(M, antisymmetric=True)
    for row in M:
        for v in row:
            if v and v.degree() != 0:
                raise ValueError("bivector components must be functions of x only")
    table = {}
    for i in range(m):
        for j in range(m):
            table[(Generator("th", i + 1), Generator("x", j + 1))] = M[i][j]
    for i, j in itertools.combinations(range(m), 2):
        table[(Generator("th", i + 1), Generator("th", j + 1))] = de_rham_d(M[i][j])
    return GradedPoissonStructure(sig, -1, table, name="bivector")


def from_classical(pij) -> GradedPoissonStructure:
    """Polynomial Poisson algebra on R^m (no odd generators), k = 0."""
    m = len(pij)
    sig = Signature(m, 0)
    M = _matrix(sig, pij)
    _require_symmetric(M, antisymmetric=True)
    table = {}
    for i, j in itertools.combinations(range(m), 2):
        table[(Generator("x", i + 1), Generator("x", j + 1))] = M[i][j]
    return GradedPoissonStructure(sig, 0, table, name="classical")


def so3() -> GradedPoissonStructure:
    """The Lie-Poisson structure of so(3): ``{x1,x2} = x3`` and cyclic."""
    return from_classical([["0", "x3", "-x2"], ["-x3", "0", "x1"], ["x2", "-x1", "0"]])


def broken_so3() -> GradedPoissonStructure:
    """``{x1,x2} = x1, {x2,x3} = x2, {x3,x1} = x3``; fails Jacobi."""
    sig = Signature(3, 0)
    x = [Generator("x", i) for i in (1, 2, 3)]
    table = {(x[0], x[1]): sig.x(1), (x[1], x[2]): sig.x(2), (x[2], x[0]): sig.x(3)}
    return GradedPoissonStructure(sig, 0, table, name="broken")


__all__ = [
    "GradedPoissonStructure",
    "bracket",
    "jacobiator",
    "jacobiator_of",
    "check_axioms",
    "from_pseudoeuclidean",
    "from_metric_cosharp",
    "from_bivector",
    "from_classical",
    "so3",
    "broken_so3",
]

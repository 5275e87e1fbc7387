"""Exterior calculus on the form algebra: delta, contraction, derivations."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra import (
    INHOMOGENEOUS,
    AlgebraElement,
    Generator,
    Key,
    Signature,
    SignatureError,
    SuperForm,
    _random_coeff,
    key_form_degree,
    key_parity,
    mono_mul,
    partial,
    random_monomial_key,
)


def _check_sig(a, b):
    if a.sig != b.sig:
        raise SignatureError(f"signature mismatch: {a.sig} vs {b.sig}")


def wedge(alpha: SuperForm, beta: SuperForm) -> SuperForm:
    _check_sig(alpha, beta)
    return alpha * beta


def _coefficient_key(k: Key) -> Key:
    e, o, _, t = k
    return (e, o, (), (0,) * len(t))


def _delta_generators(k: Key) -> List[Generator]:
    """The dx/dth factors of a monomial, in written order, repeated by multiplicity."""
    _, _, x, t = k
    gens = [Generator("x", i + 1) for i in x]
    for j, mult in enumerate(t):
        gens.extend([Generator("th", j + 1)] * mult)
    return gens


def delta(omega: SuperForm) -> SuperForm:
    """Exterior derivative: even, form degree +1, ``delta(u) = du``, ``delta**2 = 0``.

    A term ``c * w`` with ``w`` a product of differentials maps to
    ``sum_u du * (partial_u c) * w``.
    """
    sig = omega.sig
    terms: Dict[Key, Fraction] = {}
    for k, c in omega.items():
        e, o, x, t = k
        coeff = AlgebraElement._raw(sig, {_coefficient_key(k): c})
        tail = (tuple(0 for _ in e), (), x, t)
        for g in sig.generators:
            dc = partial(coeff, g)
            if not dc:
                continue
            dk = next(iter(sig.d(g)._terms))
            for ck, cv in dc.items():
                r1 = mono_mul(dk, ck)
                if r1 is None:
                    continue
                r2 = mono_mul(r1[1], tail)
                if r2 is None:
                    continue
                kk = r2[1]
                v = terms.get(kk, 0) + r1[0] * r2[0] * cv
                if v:
                    terms[kk] = v
                else:
                    terms.pop(kk, None)
    return SuperForm._raw(sig, terms)


class Derivation:
    """A derivation of A, stored by its values on the generators.

    ``D(a) = sum_u D(u) * partial_u(a)``.  ``parity`` is 0 or 1, or ``None``
    for a sum of derivations of different parity.
    """

    __slots__ = ("sig", "values", "parity")

    def __init__(self, sig: Signature, values: Mapping, parity: Optional[int] = None):
        self.sig = sig
        vals: List[AlgebraElement] = []
        given = {sig.check(g): v for g, v in values.items()}
        for g in sig.generators:
            v = given.get(g, sig.zero())
            if not isinstance(v, AlgebraElement):
                v = v.to_element() if isinstance(v, SuperForm) else sig.const(v)
            if v.sig != sig:
                raise SignatureError(f"value for {g} lives in {v.sig}, expected {sig}")
            vals.append(v)
        self.values: Tuple[AlgebraElement, ...] = tuple(vals)
        inferred = self._infer_parity()
        if parity is None:
            self.parity = inferred if inferred != INHOMOGENEOUS else None
        else:
            if inferred not in (None, parity):
                raise ValueError(f"declared parity {parity} does not match values (parity {inferred})")
            self.parity = parity

    def _infer_parity(self):
        ps = set()
        for g, v in zip(self.sig.generators, self.values):
            for k, _ in v.items():
                ps.add((key_parity(k) + g.parity) & 1)
        if len(ps) > 1:
            return INHOMOGENEOUS
        return ps.pop() if ps else None

    @classmethod
    def zero(cls, sig: Signature, parity: int = 0) -> "Derivation":
        return cls(sig, {}, parity)

    @classmethod
    def partial(cls, sig: Signature, gen) -> "Derivation":
        g = sig.check(gen)
        return cls(sig, {g: sig.one()}, g.parity)

    def value(self, gen) -> AlgebraElement:
        g = self.sig.check(gen)
        return self.values[self.sig.generators.index(g)]

    def __call__(self, a: AlgebraElement) -> AlgebraElement:
        return apply(self, a)

    def is_zero(self) -> bool:
        return not any(self.values)

    def homogeneous_parts(self) -> List["Derivation"]:
        if self.parity is not None:
            return [self]
        parts: Dict[int, Dict[Generator, Dict[Key, Fraction]]] = {}
        for g, v in zip(self.sig.generators, self.values):
            for k, c in v.items():
                p = (key_parity(k) + g.parity) & 1
                parts.setdefault(p, {}).setdefault(g, {})[k] = c
        return [
            Derivation(self.sig, {g: AlgebraElement._raw(self.sig, t) for g, t in vals.items()}, p)
            for p, vals in sorted(parts.items())
        ]

    def _combine(self, other: "Derivation", sign: int) -> "Derivation":
        _check_sig(self, other)
        vals = {g: a + b.scale(sign) for g, a, b in zip(self.sig.generators, self.values, other.values)}
        if self.is_zero():
            parity = other.parity
        elif other.is_zero():
            parity = self.parity
        else:
            parity = self.parity if self.parity == other.parity else None
        out = Derivation(self.sig, vals)
        if out.is_zero() and parity is not None:
            out.parity = parity
        return out

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return Derivation(self.sig, {g: -v for g, v in zip(self.sig.generators, self.values)}, self.parity)

    def lmul(self, a: AlgebraElement) -> "Derivation":
        """The derivation ``h -> a * D(h)``."""
        _check_sig(self, a)
        pa = a.parity()
        parity = None
        if pa != INHOMOGENEOUS and self.parity is not None:
            parity = (pa + self.parity) & 1
        out = Derivation(self.sig, {g: a * v for g, v in zip(self.sig.generators, self.values)})
        if out.is_zero() and parity is not None:
            out.parity = parity
        return out

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.sig == other.sig and self.values == other.values

    def __hash__(self):
        return hash((self.sig, self.values))

    def __repr__(self):
        inner = ", ".join(f"{g}: {v}" for g, v in zip(self.sig.generators, self.values) if v)
        return f"Derivation({{{inner}}}, parity={self.parity})"


def apply(D: Derivation, a: AlgebraElement) -> AlgebraElement:
    """``D(a) = sum_u D(u) * partial_u(a)`` with left partial derivatives."""
    _check_sig(D, a)
    if not isinstance(a, AlgebraElement):
        a = a.to_element()
    out = D.sig.zero()
    for g, v in zip(D.sig.generators, D.values):
        if not v:
            continue
        p = partial(a, g)
        if p:
            out = out + v * p
    return out


def commutator(D1: Derivation, D2: Derivation) -> Derivation:
    """Supercommutator ``D1 D2 - (-1)**(p1 p2) D2 D1``."""
    _check_sig(D1, D2)
    if D1.parity is None or D2.parity is None:
        raise ValueError("commutator needs derivations of homogeneous parity")
    sign = -1 if (D1.parity * D2.parity) & 1 else 1
    vals = {}
    for g, v1, v2 in zip(D1.sig.generators, D1.values, D2.values):
        vals[g] = apply(D1, v2) - apply(D2, v1).scale(sign)
    return Derivation(D1.sig, vals, (D1.parity + D2.parity) & 1)


def contract(D: Derivation, omega: SuperForm) -> SuperForm:
    """Interior product: form degree -1, parity of D, ``contract(D, du) = D(u)``.

    Derivation rule::

        D _| (a ^ b) = (D _| a) ^ b + (-1)**(r_a + p_D p_a) a ^ (D _| b)
    """
    _check_sig(D, omega)
    if D.parity is None:
        out = SuperForm(omega.sig)
        for part in D.homogeneous_parts():
            out = out + contract(part, omega)
        return out
    sig = omega.sig
    pD = D.parity
    out = SuperForm(sig)
    for k, c in omega.items():
        gens = _delta_generators(k)
        if not gens:
            continue
        coeff = AlgebraElement._raw(sig, {_coefficient_key(k): c})
        # the coefficient has form degree 0; it only contributes a parity sign
        base_sign = -1 if (pD * coeff.parity()) & 1 else 1
        factors = [sig.d(g) for g in gens]
        prefix = SuperForm._raw(sig, {sig._key(): Fraction(1)})
        prefix_parity = 0
        for i, g in enumerate(gens):
            val = D.values[sig.generators.index(g)]
            if val:
                sign = base_sign * (-1 if (i + pD * prefix_parity) & 1 else 1)
                piece = coeff * prefix * val
                for f in factors[i + 1:]:
                    piece = piece * f
                out = out + piece.scale(sign)
            prefix = prefix * factors[i]
            prefix_parity ^= g.parity
    return out


def evaluate(omega: SuperForm, D: Derivation) -> AlgebraElement:
    """The pairing of a 1-form with a derivation.

    ``evaluate(a du, D) = (-1)**(p_D p_a) a D(u)``: the form is a right
    module for the pairing, so a left coefficient picks up a Koszul sign
    when D is moved past it.
    """
    _check_sig(omega, D)
    fd = omega.form_degree()
    if omega and fd != 1:
        raise ValueError(f"evaluate needs a 1-form, got form degree {fd}")
    if D.parity is None:
        out = omega.sig.zero()
        for part in D.homogeneous_parts():
            out = out + evaluate(omega, part)
        return out
    sig = omega.sig
    out = sig.zero()
    for k, c in omega.items():
        (g,) = _delta_generators(k)
        a = AlgebraElement._raw(sig, {_coefficient_key(k): c})
        term = a * D.values[sig.generators.index(g)]
        if (D.parity * a.parity()) & 1:
            term = -term
        out = out + term
    return out


def de_rham_derivation(sig: Signature) -> Derivation:
    """The de Rham differential as an odd derivation ``x_i -> th_i``."""
    if not sig.de_rham:
        raise SignatureError("signature has no de Rham structure")
    return Derivation(sig, {Generator("x", i): sig.th(i) for i in range(1, sig.m + 1)}, 1)


def random_form(
    sig: Signature,
    seed,
    form_degree: int,
    *,
    parity: Optional[int] = None,
    max_poly_degree: int = 1,
    max_odd_degree: int = 1,
    terms: int = 2,
) -> SuperForm:
    """Pseudo-random form of fixed form degree, optionally of fixed parity."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    gens = sig.generators
    if form_degree and not gens:
        return SuperForm(sig)
    if parity == 1 and sig.n == 0:
        # every monomial is even without odd generators
        return SuperForm(sig)
    dkeys = [next(iter(sig.d(g)._terms)) for g in gens]
    out: Dict[Key, Fraction] = {}
    target = rng.randint(1, max(1, terms))
    attempts = 0
    while len(out) < target and attempts < 50:
        attempts += 1
        coeff_key = random_monomial_key(sig, rng, max_poly_degree, rng.randint(0, min(sig.n, max_odd_degree)))
        key = coeff_key
        sign = 1
        for _ in range(form_degree):
            res = mono_mul(key, rng.choice(dkeys))
            if res is None:
                key = None
                break
            sign *= res[0]
            key = res[1]
        if key is None:
            continue
        if parity is not None and key_parity(key) != parity:
            continue
        out[key] = out.get(key, 0) + sign * _random_coeff(rng)
    return SuperForm(sig, out)


def random_bihomogeneous(sig: Signature, rng: random.Random, form_degree: int, **kw) -> SuperForm:
    """Nonzero sample of fixed form degree and random parity when possible."""
    for _ in range(20):
        p = rng.randint(0, 1)
        w = random_form(sig, rng, form_degree, parity=p, **kw)
        if w:
            return w
    return random_form(sig, rng, form_degree, **kw)


__all__ = [
    "wedge",
    "delta",
    "contract",
    "evaluate",
    "apply",
    "commutator",
    "Derivation",
    "de_rham_derivation",
    "random_form",
    "random_bihomogeneous",
]

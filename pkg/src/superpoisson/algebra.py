"""Free supercommutative algebra and its bigraded form algebra.

An element is stored as a flat dict from monomial keys to ``Fraction``
coefficients.  A key is ``(exps, odd, dx, dth)``:

* ``exps`` -- exponents of the even generators ``x1..xm``
* ``odd``  -- strictly increasing 0-based indices of the odd generators ``th``
* ``dx``   -- strictly increasing 0-based indices of the ``dx`` factors
* ``dth``  -- multiplicities of the ``dth`` factors (length n)

The written order of a monomial is ``x^e * th_S * dx_T * dth^M``.  The
coefficient part (x, th) has form degree 0, so :class:`AlgebraElement` is
simply a :class:`SuperForm` whose keys all have empty ``dx``/``dth`` parts.

Sign rule: two bihomogeneous factors of form degrees r, s and parities
p, q commute up to ``(-1)**(r*s + p*q)``.  ``th`` is odd of form degree 0,
``dx`` is even of form degree 1 and ``dth`` is odd of form degree 1.
"""
from __future__ import annotations

import functools

import random
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

Scalar = Fraction
Key = Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]

INHOMOGENEOUS = "inhomogeneous"


class SignatureError(ValueError):
    """Operands live in different algebras, or a generator is unknown."""


@dataclass(frozen=True, order=True)
class Generator:
    """A generator ``x<i>`` (even, degree 0) or ``th<i>`` (odd, degree 1).

    ``index`` is 1-based, as in the printed syntax.
    """

    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in ("x", "th"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.index < 1:
            raise ValueError("generator indices start at 1")

    @property
    def parity(self) -> int:
        return 1 if self.kind == "th" else 0

    degree = parity

    def __str__(self):
        return f"{self.kind}{self.index}"

    def __repr__(self):
        return f"Generator({self})"

    @classmethod
    def parse(cls, token: str) -> "Generator":
        token = token.strip()
        for kind in ("th", "x"):
            if token.startswith(kind) and token[len(kind):].isdigit():
                return cls(kind, int(token[len(kind):]))
        raise ValueError(f"not a generator token: {token!r}")


@dataclass(frozen=True)
class Signature:
    """m even generators, n odd generators, optional de Rham structure.

    With ``de_rham=True`` (only legal when ``n == m``) the odd generator
    ``th_i`` plays the role of ``d x_i`` for the odd derivation
    :func:`de_rham_d`.
    """

    m: int
    n: int
    de_rham: bool = False

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("generator counts must be nonnegative")
        if self.de_rham and self.m != self.n:
            raise ValueError("de Rham structure requires n == m")

    @functools.cached_property
    def generators(self) -> Tuple[Generator, ...]:
        return tuple(Generator("x", i + 1) for i in range(self.m)) + tuple(
            Generator("th", j + 1) for j in range(self.n)
        )

    def check(self, g: Generator) -> Generator:
        if isinstance(g, str):
            g = Generator.parse(g)
        bound = self.m if g.kind == "x" else self.n
        if g.index > bound:
            raise SignatureError(f"generator {g} out of range for signature (m={self.m}, n={self.n})")
        return g

    # -- element constructors ------------------------------------------------

    def _key(self, exps=None, odd=(), dx=(), dth=None) -> Key:
        return (
            tuple(exps) if exps is not None else (0,) * self.m,
            tuple(odd),
            tuple(dx),
            tuple(dth) if dth is not None else (0,) * self.n,
        )

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        return self.const(1)

    def const(self, c) -> "AlgebraElement":
        return AlgebraElement(self, {self._key(): Fraction(c)})

    @functools.lru_cache(maxsize=None)
    def gen(self, g) -> "AlgebraElement":
        g = self.check(g)
        if g.kind == "x":
            exps = [0] * self.m
            exps[g.index - 1] = 1
            return AlgebraElement(self, {self._key(exps=exps): Fraction(1)})
        return AlgebraElement(self, {self._key(odd=(g.index - 1,)): Fraction(1)})

    def x(self, i: int) -> "AlgebraElement":
        return self.gen(Generator("x", i))

    def th(self, j: int) -> "AlgebraElement":
        return self.gen(Generator("th", j))

    @functools.lru_cache(maxsize=None)
    def d(self, g) -> "SuperForm":
        """The differential ``delta g`` of a generator, a 1-form."""
        g = self.check(g)
        if g.kind == "x":
            return SuperForm(self, {self._key(dx=(g.index - 1,)): Fraction(1)})
        dth = [0] * self.n
        dth[g.index - 1] = 1
        return SuperForm(self, {self._key(dth=dth): Fraction(1)})

    def dx(self, i: int) -> "SuperForm":
        return self.d(Generator("x", i))

    def dth(self, j: int) -> "SuperForm":
        return self.d(Generator("th", j))


# -- monomial kernels ---------------------------------------------------------


def _merge_sign(a: Tuple[int, ...], b: Tuple[int, ...]):
    """Sort the concatenation of two strictly increasing index tuples.

    Returns ``(sign, merged)`` or ``None`` when an index repeats.
    """
    if not a:
        return 1, b
    if not b:
        return 1, a
    inversions = 0
    for i in a:
        pos = bisect_left(b, i)
        if pos < len(b) and b[pos] == i:
            return None
        inversions += pos
    merged = tuple(sorted(a + b))
    return (-1 if inversions & 1 else 1), merged


@functools.lru_cache(maxsize=1 << 16)
def mono_mul(k1: Key, k2: Key):
    """Product of two monomials in normal form: ``(sign, key)`` or ``None``."""
    e1, o1, x1, t1 = k1
    e2, o2, x2, t2 = k2
    res = _merge_sign(o1, o2)
    if res is None:
        return None
    sign, odd = res
    res = _merge_sign(x1, x2)
    if res is None:
        return None
    s, dx = res
    sign *= s
    # the odd coefficient part of k2 and the dx part of k2 both cross dth^t1
    t1_deg = sum(t1)
    if (t1_deg * (len(o2) + len(x2))) & 1:
        sign = -sign
    exps = tuple(a + b for a, b in zip(e1, e2))
    dth = tuple(a + b for a, b in zip(t1, t2))
    return sign, (exps, odd, dx, dth)


def key_form_degree(k: Key) -> int:
    return len(k[2]) + sum(k[3])


def key_parity(k: Key) -> int:
    return (len(k[1]) + sum(k[3])) & 1


def key_degree(k: Key) -> int:
    """Degree of the coefficient part (number of odd factors)."""
    return len(k[1])


# -- elements -------------------------------------------------------------------


class SuperForm:
    """An element of the form algebra over A, with coefficients on the left.

    Instances are immutable.  ``*`` is the bigraded (wedge) product.
    """

    __slots__ = ("sig", "_terms", "_hash")

    def __init__(self, sig: Signature, terms: Optional[Mapping[Key, Fraction]] = None):
        self.sig = sig
        self._terms: Dict[Key, Fraction] = {k: Fraction(v) for k, v in (terms or {}).items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, sig, terms):
        obj = cls.__new__(cls)
        obj.sig = sig
        obj._terms = terms
        obj._hash = None
        return obj

    # -- introspection -----------------------------------------------------

    def items(self) -> Iterator[Tuple[Key, Fraction]]:
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def terms(self) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], "AlgebraElement"]:
        """Map from form monomial ``(dx, dth)`` to its left coefficient in A."""
        out: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Dict[Key, Fraction]] = {}
        for (e, o, x, t), c in self._terms.items():
            out.setdefault((x, t), {})[(e, o, (), (0,) * self.sig.n)] = c
        return {fm: AlgebraElement._raw(self.sig, d) for fm, d in out.items()}

    def form_degree(self):
        """Form degree r, ``"inhomogeneous"`` if mixed; 0 for the zero form."""
        degs = {key_form_degree(k) for k in self._terms}
        if len(degs) > 1:
            return INHOMOGENEOUS
        return degs.pop() if degs else 0

    def parity(self):
        ps = {key_parity(k) for k in self._terms}
        if len(ps) > 1:
            return INHOMOGENEOUS
        return ps.pop() if ps else 0

    def bidegree(self):
        return self.form_degree(), self.parity()

    def is_bihomogeneous(self) -> bool:
        return INHOMOGENEOUS not in self.bidegree()

    def bihomogeneous_parts(self) -> Dict[Tuple[int, int], "SuperForm"]:
        parts: Dict[Tuple[int, int], Dict[Key, Fraction]] = {}
        for k, c in self._terms.items():
            parts.setdefault((key_form_degree(k), key_parity(k)), {})[k] = c
        return {bd: type(self)._raw(self.sig, d) for bd, d in sorted(parts.items())}

    def part(self, form_degree: int) -> "SuperForm":
        return SuperForm._raw(
            self.sig, {k: c for k, c in self._terms.items() if key_form_degree(k) == form_degree}
        )

    def monomials(self) -> Iterator["SuperForm"]:
        """Single-term summands, in canonical order."""
        from .expr import sort_key

        for k in sorted(self._terms, key=sort_key):
            yield type(self)._raw(self.sig, {k: self._terms[k]})

    def to_element(self) -> "AlgebraElement":
        if any(key_form_degree(k) for k in self._terms):
            raise ValueError("form has positive form degree; not an element of A")
        return AlgebraElement._raw(self.sig, dict(self._terms))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "SuperForm":
        if isinstance(other, SuperForm):
            if other.sig != self.sig:
                raise SignatureError(f"signature mismatch: {self.sig} vs {other.sig}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.sig.const(other)
        return NotImplemented

    def _result_type(self, other):
        if isinstance(self, AlgebraElement) and isinstance(other, AlgebraElement):
            return AlgebraElement
        return SuperForm

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for k, c in other._terms.items():
            v = terms.get(k, 0) + c
            if v:
                terms[k] = v
            else:
                terms.pop(k, None)
        return self._result_type(other)._raw(self.sig, terms)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(self.sig, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SuperForm":
        if c == 1:
            return self
        if c == -1:
            return -self
        c = Fraction(c)
        if not c:
            return type(self)._raw(self.sig, {})
        return type(self)._raw(self.sig, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Key, Fraction] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                res = mono_mul(k1, k2)
                if res is None:
                    continue
                s, k = res
                c = c1 * c2
                v = terms.get(k, 0) + (c if s > 0 else -c)
                if v:
                    terms[k] = v
                else:
                    terms.pop(k, None)
        return self._result_type(other)._raw(self.sig, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.sig.one() if isinstance(self, AlgebraElement) else SuperForm._raw(
            self.sig, {self.sig._key(): Fraction(1)}
        )
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, SuperForm):
            return self.sig == other.sig and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._terms
            return self._terms == {self.sig._key(): Fraction(other)}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sig, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        from .expr import to_text

        return to_text(self)

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class AlgebraElement(SuperForm):
    """An element of A: polynomial coefficients in x, exterior in th."""

    __slots__ = ()

    def __init__(self, sig: Signature, terms: Optional[Mapping[Key, Fraction]] = None):
        super().__init__(sig, terms)
        for k in self._terms:
            if key_form_degree(k):
                raise ValueError("algebra elements have form degree 0")

    def degree(self):
        degs = {key_degree(k) for k in self._terms}
        if len(degs) > 1:
            return INHOMOGENEOUS
        return degs.pop() if degs else 0

    def homogeneous_parts(self) -> Dict[int, "AlgebraElement"]:
        parts: Dict[int, Dict[Key, Fraction]] = {}
        for k, c in self._terms.items():
            parts.setdefault(key_degree(k), {})[k] = c
        return {d: AlgebraElement._raw(self.sig, t) for d, t in sorted(parts.items())}

    def coefficients(self) -> Dict[Tuple[int, ...], "Polynomial"]:
        """Map from odd monomial (1-based indices) to its polynomial coefficient."""
        out: Dict[Tuple[int, ...], Dict[Tuple[int, ...], Fraction]] = {}
        for (e, o, _, _), c in self._terms.items():
            out.setdefault(tuple(i + 1 for i in o), {})[e] = c
        return {o: Polynomial(self.sig.m, t) for o, t in out.items()}


Element = Union[AlgebraElement, SuperForm]


class Polynomial:
    """Commutative polynomial in m variables over the rationals."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[Tuple[int, ...], Fraction]] = None):
        self.nvars = nvars
        self.terms = {tuple(e): Fraction(c) for e, c in (terms or {}).items() if c}
        for e in self.terms:
            if len(e) != nvars or min(e, default=0) < 0:
                raise ValueError(f"bad exponent vector {e}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(self.nvars, terms)

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial(self.nvars, terms)

    def partial(self, i: int) -> "Polynomial":
        """Derivative in the 0-based variable ``i``."""
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                terms[tuple(e2)] = c * e[i]
        return Polynomial(self.nvars, terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self.terms})"


# -- operations -------------------------------------------------------------------


def _same_sig(a: SuperForm, b: SuperForm):
    if a.sig != b.sig:
        raise SignatureError(f"signature mismatch: {a.sig} vs {b.sig}")


def mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Supercommutative product in A."""
    _same_sig(a, b)
    return a * b


def partial(a: AlgebraElement, gen) -> AlgebraElement:
    """Left partial derivative with respect to a generator.

    For an odd generator the factor is brought to the front before it is
    removed, so ``partial(th1*th2, th2) == -th1``.
    """
    g = a.sig.check(gen)
    terms: Dict[Key, Fraction] = {}
    if g.kind == "x":
        i = g.index - 1
        for (e, o, x, t), c in a.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[(e2, o, x, t)] = c * e[i]
    else:
        j = g.index - 1
        for (e, o, x, t), c in a.items():
            if j in o:
                pos = o.index(j)
                terms[(e, o[:pos] + o[pos + 1:], x, t)] = -c if pos & 1 else c
    return type(a)._raw(a.sig, terms)


def right_partial(a: AlgebraElement, gen) -> AlgebraElement:
    """Right partial derivative: the factor is moved to the back first."""
    g = a.sig.check(gen)
    if g.kind == "x":
        return partial(a, g)
    j = g.index - 1
    terms: Dict[Key, Fraction] = {}
    for (e, o, x, t), c in a.items():
        if j in o:
            pos = o.index(j)
            after = len(o) - pos - 1
            terms[(e, o[:pos] + o[pos + 1:], x, t)] = -c if after & 1 else c
    return type(a)._raw(a.sig, terms)


def de_rham_d(a: AlgebraElement) -> AlgebraElement:
    """The odd derivation ``x_i -> th_i``, ``th_i -> 0`` (forms on R^m)."""
    sig = a.sig
    if not sig.de_rham:
        raise SignatureError("signature has no de Rham structure")
    out = sig.zero()
    for i in range(1, sig.m + 1):
        p = partial(a, Generator("x", i))
        if p:
            out = out + sig.th(i) * p
    return out


def degree_parity(a: SuperForm):
    """``(degree, parity)`` of an element of A, each possibly ``"inhomogeneous"``."""
    if isinstance(a, AlgebraElement):
        return a.degree(), a.parity()
    return a.to_element().degree(), a.parity()


def _random_coeff(rng: random.Random) -> Fraction:
    num = rng.choice([-3, -2, -1, 1, 1, 2, 3])
    den = rng.choice([1, 1, 1, 2, 3])
    return Fraction(num, den)


def random_monomial_key(sig: Signature, rng: random.Random, max_poly_degree: int, odd_degree: int) -> Key:
    exps = [0] * sig.m
    if sig.m:
        for _ in range(rng.randint(0, max_poly_degree)):
            exps[rng.randrange(sig.m)] += 1
    odd = tuple(sorted(rng.sample(range(sig.n), odd_degree)))
    return (tuple(exps), odd, (), (0,) * sig.n)


def random_element(
    sig: Signature,
    seed,
    max_poly_degree: int = 2,
    max_form_degree: int = 2,
    *,
    degree: Optional[int] = None,
    parity: Optional[int] = None,
    terms: int = 3,
) -> AlgebraElement:
    """Deterministic pseudo-random element of A.

    ``max_form_degree`` bounds the number of odd factors per monomial.
    Passing ``degree`` (or ``parity``) makes the sample homogeneous.
    ``seed`` may be an int or a :class:`random.Random`.
    """
    if max_poly_degree < 0 or max_form_degree < 0:
        raise ValueError("bounds must be nonnegative")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    top = min(sig.n, max_form_degree)
    if degree is not None:
        choices = [degree] if degree <= sig.n else []
    else:
        choices = list(range(top + 1))
        if parity is not None:
            choices = [d for d in choices if d % 2 == parity]
    if not choices:
        return sig.zero()
    out: Dict[Key, Fraction] = {}
    for _ in range(rng.randint(1, max(1, terms))):
        k = random_monomial_key(sig, rng, max_poly_degree, rng.choice(choices))
        out[k] = out.get(k, 0) + _random_coeff(rng)
    return AlgebraElement(sig, out)


def random_homogeneous(sig: Signature, rng: random.Random, max_poly_degree=1, max_degree=2, terms=2) -> AlgebraElement:
    """Nonzero homogeneous sample (when the algebra allows it)."""
    for _ in range(20):
        d = rng.randint(0, min(sig.n, max_degree))
        a = random_element(sig, rng, max_poly_degree, max_degree, degree=d, terms=terms)
        if a:
            return a
    return sig.one()


def split_parity(a: SuperForm) -> List[Tuple[int, SuperForm]]:
    """Parity-homogeneous summands, as ``(parity, part)`` pairs."""
    parts: Dict[int, Dict[Key, Fraction]] = {}
    for k, c in a.items():
        parts.setdefault(key_parity(k), {})[k] = c
    return [(p, type(a)._raw(a.sig, t)) for p, t in sorted(parts.items())]

"""Exact symbolic graded Poisson algebras, Lie superalgebroids and
Gerstenhaber superalgebras over free supercommutative algebras."""

from .algebra import (
    AlgebraElement,
    Generator,
    Polynomial,
    Scalar,
    Signature,
    SignatureError,
    SuperForm,
    de_rham_d,
    degree_parity,
    mul,
    partial,
    random_element,
    right_partial,
)
from .expr import ParseError, element, form, parse, to_text
from .forms import Derivation, apply, commutator, contract, delta, evaluate, wedge

__version__ = "0.1.0"
from .poisson import GradedPoissonStructure, bracket, check_axioms, jacobiator
from .algebroid import (
    AlgebroidData,
    PoissonAlgebroid,
    algebroid_bracket,
    anchor,
    check_anchor_skew,
    check_poisson_type,
    check_superalgebroid,
    induced_bracket,
    reconstruct_bracket,
)
from .gerstenhaber import check_differential, check_gerstenhaber, gerst_bracket, poisson_from_gerstenhaber

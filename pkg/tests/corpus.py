"""Structures shared by the test modules."""
import random
from fractions import Fraction
from pathlib import Path

from superpoisson.algebroid import AlgebroidData, PoissonAlgebroid
from superpoisson.expr import form
from superpoisson.poisson import (
    broken_so3,
    from_bivector,
    from_metric_cosharp,
    from_pseudoeuclidean,
    so3,
)

FIXTURES = Path(__file__).parent / "fixtures"


def random_symmetric(size: int, seed: int):
    rng = random.Random(seed)
    M = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            M[i][j] = M[j][i] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return [[str(v) for v in row] for row in M]


def passing_structures():
    """Criterion-1 structures that satisfy the axioms, by name."""
    return {
        "pseudoeuclidean diag(1,1)": from_pseudoeuclidean([[1, 0], [0, 1]]),
        "pseudoeuclidean diag(1,-1)": from_pseudoeuclidean([[1, 0], [0, -1]]),
        "pseudoeuclidean random 3x3": from_pseudoeuclidean(random_symmetric(3, 7)),
        "metric R2 constant": from_metric_cosharp([["2", "1"], ["1", "3"]]),
        "metric R2 polynomial": from_metric_cosharp([["1 + x1^2", "x2"], ["x2", "1"]]),
        "metric R3 constant": from_metric_cosharp([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]),
        "metric R3 polynomial": from_metric_cosharp(
            [["1 + x2^2", "x3", "0"], ["x3", "1", "x1"], ["0", "x1", "2 + x1*x2"]]
        ),
        "bivector pi=1": from_bivector([["0", "1"], ["-1", "0"]]),
        "bivector pi=x1": from_bivector([["0", "x1"], ["-x1", "0"]]),
        "classical so(3)": so3(),
    }


def even_passing_structures():
    return {k: v for k, v in passing_structures().items() if v.k % 2 == 0}


def corrupted_so3() -> AlgebroidData:
    """so(3) algebroid data with ``[[dx1, dx2]]`` perturbed by ``dx1``."""
    data = PoissonAlgebroid(so3()).to_data()
    sig = data.sig
    brackets = dict(data.brackets)
    key = (sig.check("x1"), sig.check("x2"))
    brackets[key] = brackets[key] + form("dx1", sig)
    return AlgebroidData(sig, data.anchors, brackets, name="corrupted")


__all__ = [
    "FIXTURES",
    "broken_so3",
    "corrupted_so3",
    "even_passing_structures",
    "passing_structures",
    "random_symmetric",
]

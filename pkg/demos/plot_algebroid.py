"""
The Lie superalgebroid of 1-forms
=================================

Anchor, bracket of 1-forms and the reconstruction of the bracket from the
anchor, on the euclidean metric of R^3.
"""

from superpoisson import form
from superpoisson.algebroid import (
    PoissonAlgebroid,
    algebroid_bracket,
    anchor,
    check_poisson_type,
    check_superalgebroid,
    reconstruct_bracket,
)
from superpoisson.poisson import broken_so3, from_metric_cosharp

P = from_metric_cosharp([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]])
A = PoissonAlgebroid(P)
sig = P.sig

print("rho(dth1) =", anchor(A, form("dth1", sig)))
print("rho(dx1)  =", anchor(A, form("dx1", sig)))
print("[[th1 dth2, dth1]] =", algebroid_bracket(A, form("th1*dth2", sig), form("dth1", sig)))

print(check_superalgebroid(A, samples=16).text())

# stored data on generators, then everything rebuilt from it
data = A.to_data()
print(check_poisson_type(data, samples=16).text())
print(reconstruct_bracket(data, samples=16, closed_samples=8).text())

# with a bracket that fails Jacobi both conditions fail together
bad = PoissonAlgebroid(broken_so3()).to_data()
print(check_poisson_type(bad, samples=8).text())

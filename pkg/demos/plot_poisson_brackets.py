"""
Graded Poisson brackets on a few small algebras
===============================================

Build the standard structures, evaluate brackets and run the axiom checks.
"""

from superpoisson import Signature, element
from superpoisson.poisson import bracket, broken_so3, check_axioms, from_bivector, from_pseudoeuclidean, so3

# an exterior algebra on three generators with the euclidean metric, k = -2
P = from_pseudoeuclidean([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
th1, th12 = element("th1", P.sig), element("th1*th2", P.sig)
print("{th1, th1 th2} =", bracket(P, th1, th12))

# forms on the plane with pi^12 = x1, k = -1; th_i plays the role of d x_i
B = from_bivector([["0", "x1"], ["-x1", "0"]])
print("{th1, th2} =", bracket(B, element("th1", B.sig), element("th2", B.sig)))

# the three ways of extending a table agree
a = element("x1*th1*th2 + th2", B.sig)
b = element("x2^2*th1", B.sig)
print("factorization independent:", len({str(bracket(B, a, b, m)) for m in ("derivative", "left", "right")}) == 1)

for Q in (P, B, so3()):
    print(check_axioms(Q, seed=0, samples=16).text())

# a table that is skew but not Jacobi
print(check_axioms(broken_so3(), samples=16).text())

# the signature alone is enough for quick arithmetic
S = Signature(1, 2)
print("(x1 + th1)(x1 - th1) =", element("(x1 + th1)*(x1 - th1)", S))

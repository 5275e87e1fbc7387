"""
The Gerstenhaber bracket on all forms
=====================================

Extend the bracket to forms of any degree, check the axioms, and recover the
Poisson bracket from it.
"""

from superpoisson import form, to_text
from superpoisson.gerstenhaber import (
    check_differential,
    check_gerstenhaber,
    gerst_bracket,
    poisson_from_gerstenhaber,
)
from superpoisson.poisson import so3

P = so3()
sig = P.sig


def show(a, b):
    print(f"[{a}, {b}] =", to_text(gerst_bracket(P, form(a, sig), form(b, sig))))


show("x1", "x2")
show("x1", "dx2")
show("dx1", "dx2")
show("dx1*dx2", "dx3")
show("x1*dx1*dx2", "x2*dx3")

print("{x1, x2} from [x1, d x2]:", poisson_from_gerstenhaber(P, sig.x(1), sig.x(2)))

print(check_gerstenhaber(P, samples=16).text())
print(check_differential(P, samples=16).text())

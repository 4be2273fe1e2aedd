"""Exact arithmetic: cyclotomic integers and a small field tower."""

import numpy as np

from fewweight.cyclotomic import CycInt, gauss_period
from fewweight.field_tower import build_field

z = CycInt.root(3, 1)  # zeta_3
print("zeta^2           =", z**2)  # -1 - zeta, the canonical form
print("(1+z)(1+z^2)     =", (1 + z) * (1 + z**2))
g = gauss_period(3)
print("Gauss period      =", g, "~", complex(g))  # i sqrt(3)
print("g * conj(g)       =", g * g.conj())

F = build_field(3, 6)
print(F)
print("modulus (low coefficients first):", F.modulus)
x, y = 100, 321
print("x*y =", F.mul(x, y), " x/y =", F.div(x, y), " Tr(x) =", F.trace(x))

# the subfield GF(9) inside GF(3^6): fixed points of x -> x^9
xs = F.elements()
fixed = np.nonzero(F.v_frobenius(xs, 2) == xs)[0]
print("GF(9) inside GF(729):", sorted(fixed.tolist()))
print("subfield order       :", F.subfield_elements(2))

"""Brute-force and closed-form character sums side by side."""

import random

from fewweight import char_sums as cs
from fewweight.field_tower import build_field

F = build_field(3, 6)
P = cs.SumParams(3, 6, 6, 2)
c = cs.constants(F, P)
print("kappa =", c.kappa, " epsilon =", c.epsilon, " kappa2 =", c.kappa2)

for k in (1, 2, 3, 6):
    print(f"G(eta^({k})) brute={cs.gauss_sum_bruteforce(F, k)}  closed={cs.gauss_sum_closed(F, k)}")

rng = random.Random(0)
for _ in range(3):
    a, b = rng.randrange(1, F.q), rng.randrange(1, F.q)
    brute = cs.weil_sum_S2_bruteforce(F, P, a, b)
    closed = cs.weil_sum_S2_closed(F, P, a, b)
    print(f"S(a={a}, b={b}) = {brute}  closed form agrees: {brute == closed}")

# L sums split by the quadratic class of Delta
_, delta = cs.gamma_all(F, P)
for b in (1, 2, 40):
    d = int(delta[b])
    cls = "0" if d == 0 else ("square" if F.quadratic_character(d, 2) == 1 else "non-square")
    vals = [cs.L_sum_bruteforce(F, P, b, 0, u) for u in range(3)]
    print(f"b={b:3d} Delta class {cls:10s} L(0, u) for u=0,1,2:", [str(v) for v in vals])
